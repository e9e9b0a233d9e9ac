// DOM and event wiring. All logic worth testing lives in the imported
// modules; this file just connects them to the page.

import "./style.css";
import { ApiClient, ApiError } from "./api";
import { defaultPose, orbit, pan, zoom } from "./camera";
import { GRID_COLS, GRID_ROWS, GridRenderer } from "./grid";
import type { GL } from "./gl";
import { defaultMesh, validateMesh, MeshValidationError } from "./mesh";
import { AppState } from "./state";

const api = new ApiClient();
const state = new AppState();
const pose = defaultPose();

const canvas = document.getElementById("view") as HTMLCanvasElement;
const overlay = document.getElementById("overlay") as HTMLDivElement;
const statusLine = document.getElementById("status") as HTMLSpanElement;
const panel = document.getElementById("panel") as HTMLElement;
const panelTitle = document.getElementById("panel-title") as HTMLSpanElement;
const panelList = document.getElementById("panel-list") as HTMLUListElement;

const gl = canvas.getContext("webgl") as unknown as GL | null;
if (!gl) {
  statusLine.textContent = "WebGL is not available in this browser";
  throw new Error("webgl unavailable");
}

const grid = new GridRenderer(gl, (slot, message) => {
  console.error(`cell ${slot} shader failed:`, message);
});
grid.setMesh(defaultMesh());

let clockStart = performance.now();

// --- overlay cells -----------------------------------------------------

const cells: HTMLDivElement[] = [];
for (let slot = 0; slot < GRID_COLS * GRID_ROWS; slot++) {
  const cell = document.createElement("div");
  cell.className = "cell";
  const caption = document.createElement("span");
  caption.className = "caption";
  cell.appendChild(caption);
  cell.addEventListener("click", () => {
    if (dragging) return;
    if (state.toggleSelect(slot)) {
      syncCells();
    }
  });
  overlay.appendChild(cell);
  cells.push(cell);
}

function syncCells(): void {
  cells.forEach((cell, slot) => {
    cell.classList.toggle("selected", state.isSelected(slot));
    cell.classList.toggle("error", grid.cellError(slot) !== null);
    const caption = cell.querySelector(".caption") as HTMLSpanElement;
    caption.textContent = state.candidates[slot]?.expr ?? "";
  });
}

function setStatus(text: string): void {
  statusLine.textContent = text;
}

// --- camera controls (one pose, all nine viewports) --------------------

let dragging = false;
let lastX = 0;
let lastY = 0;
let pointerDown = false;

overlay.addEventListener("mousedown", (event) => {
  pointerDown = true;
  dragging = false;
  lastX = event.clientX;
  lastY = event.clientY;
});
window.addEventListener("mousemove", (event) => {
  if (!pointerDown) return;
  const dx = event.clientX - lastX;
  const dy = event.clientY - lastY;
  if (dragging || Math.abs(dx) + Math.abs(dy) > 3) {
    dragging = true;
    orbit(pose, dx, dy);
    lastX = event.clientX;
    lastY = event.clientY;
  }
});
window.addEventListener("mouseup", () => {
  pointerDown = false;
  // keep `dragging` until the click event fires, then release it
  setTimeout(() => {
    dragging = false;
  }, 0);
});
overlay.addEventListener("wheel", (event) => {
  event.preventDefault();
  zoom(pose, event.deltaY);
}, { passive: false });

window.addEventListener("keydown", (event) => {
  if (event.target instanceof HTMLInputElement) return;
  switch (event.key) {
    case "ArrowLeft":
      pan(pose, -1, 0);
      break;
    case "ArrowRight":
      pan(pose, 1, 0);
      break;
    case "ArrowUp":
      pan(pose, 0, 1);
      break;
    case "ArrowDown":
      pan(pose, 0, -1);
      break;
    case "n":
      void stepGenerations();
      break;
  }
});

// --- toolbar actions ----------------------------------------------------

const startForm = document.getElementById("start-form") as HTMLFormElement;
const seedInput = document.getElementById("seed-input") as HTMLInputElement;
const populationInput = document.getElementById("population-input") as HTMLInputElement;
const subsetInput = document.getElementById("subset-input") as HTMLInputElement;
const generationsInput = document.getElementById("generations-input") as HTMLInputElement;
const nextButton = document.getElementById("next-button") as HTMLButtonElement;
const saveName = document.getElementById("save-name") as HTMLInputElement;
const saveButton = document.getElementById("save-button") as HTMLButtonElement;
const modelFile = document.getElementById("model-file") as HTMLInputElement;
const browseModels = document.getElementById("browse-models") as HTMLButtonElement;
const browseTransformations = document.getElementById(
  "browse-transformations",
) as HTMLButtonElement;
const panelClose = document.getElementById("panel-close") as HTMLButtonElement;

const buttons = [nextButton, saveButton, browseModels, browseTransformations];

async function runExclusive(action: () => Promise<void>): Promise<void> {
  if (state.busy) return;
  state.busy = true;
  buttons.forEach((b) => (b.disabled = true));
  try {
    await action();
  } catch (error) {
    if (error instanceof ApiError || error instanceof MeshValidationError) {
      setStatus(`error: ${error.message}`);
    } else {
      setStatus("unexpected error (see console)");
      console.error(error);
    }
  } finally {
    state.busy = false;
    buttons.forEach((b) => (b.disabled = false));
  }
}

startForm.addEventListener("submit", (event) => {
  event.preventDefault();
  void runExclusive(async () => {
    const body = await api.createSession({
      seed: Number(seedInput.value),
      population_size: Number(populationInput.value),
      subset_size: Number(subsetInput.value),
    });
    state.startSession(body);
    grid.setCandidates(state.candidates);
    clockStart = performance.now();
    syncCells();
    setStatus(`session ${body.session_id?.slice(0, 8)}, generation ${body.generation}`);
  });
});

async function stepGenerations(): Promise<void> {
  if (!state.sessionId) {
    setStatus("start a session first");
    return;
  }
  await runExclusive(async () => {
    const generations = Math.max(1, Number(generationsInput.value) || 1);
    const body = await api.step(state.sessionId!, state.selectedSlots(), generations);
    state.applyCandidates(body);
    grid.setCandidates(state.candidates);
    syncCells();
    setStatus(`generation ${body.generation}`);
  });
}

nextButton.addEventListener("click", () => void stepGenerations());

saveButton.addEventListener("click", () => {
  const picks = state.selectedSlots();
  if (!state.sessionId || picks.length !== 1) {
    setStatus("select exactly one cell to save");
    return;
  }
  void runExclusive(async () => {
    const record = await api.saveTransformation(
      state.sessionId!,
      picks[0],
      saveName.value || "untitled",
    );
    setStatus(`saved ${record.name} (${record.id.slice(0, 8)})`);
  });
});

modelFile.addEventListener("change", () => {
  const file = modelFile.files?.[0];
  modelFile.value = "";
  if (!file) return;
  void runExclusive(async () => {
    const text = await file.text();
    let doc: unknown;
    try {
      doc = JSON.parse(text);
    } catch {
      throw new MeshValidationError("file is not valid JSON");
    }
    const mesh = validateMesh(doc);
    await api.uploadModel(mesh);
    grid.setMesh(mesh);
    setStatus(`model ${mesh.name} loaded (${mesh.vertices.length / 3} vertices)`);
  });
});

function showPanel(title: string, items: { label: string; pick: () => void }[]): void {
  panelTitle.textContent = title;
  panelList.replaceChildren(
    ...items.map((item) => {
      const li = document.createElement("li");
      li.textContent = item.label;
      li.addEventListener("click", item.pick);
      return li;
    }),
  );
  panel.hidden = false;
}

panelClose.addEventListener("click", () => {
  panel.hidden = true;
});

browseModels.addEventListener("click", () => {
  void runExclusive(async () => {
    const models = await api.listModels();
    showPanel(
      `models (${models.length})`,
      models.map((m) => ({
        label: `${m.name} - ${m.vertices.length / 3} vertices`,
        pick: () =>
          void runExclusive(async () => {
            const full = await api.getModel(m.id!);
            grid.setMesh(validateMesh(full));
            panel.hidden = true;
            setStatus(`model ${full.name} loaded`);
          }),
      })),
    );
  });
});

browseTransformations.addEventListener("click", () => {
  void runExclusive(async () => {
    const records = await api.listTransformations();
    showPanel(
      `transformations (${records.length})`,
      records.map((r) => ({
        label: `${r.name} - ${r.expr}`,
        pick: () => {
          if (!state.sessionId) {
            setStatus("start a session first");
            return;
          }
          void runExclusive(async () => {
            const body = await api.seed(state.sessionId!, r.id);
            state.applyCandidates(body);
            grid.setCandidates(state.candidates);
            syncCells();
            panel.hidden = true;
            setStatus(`seeded ${r.name} into the population`);
          });
        },
      })),
    );
  });
});

// --- render loop --------------------------------------------------------

function resize(): void {
  const rect = canvas.getBoundingClientRect();
  const dpr = Math.min(window.devicePixelRatio || 1, 2);
  canvas.width = Math.max(1, Math.floor(rect.width * dpr));
  canvas.height = Math.max(1, Math.floor(rect.height * dpr));
}

window.addEventListener("resize", resize);
resize();

function frame(): void {
  const seconds = (performance.now() - clockStart) / 1000;
  grid.draw(pose, seconds, canvas.width, canvas.height);
  requestAnimationFrame(frame);
}

requestAnimationFrame(frame);
