// UI-side session state: which candidates are on screen and which cells
// the user has marked. Pure data logic, no DOM, no GL.

import type { CandidateView, SessionResponse } from "./api";

export class AppState {
  sessionId: string | null = null;
  generation = 0;
  candidates: CandidateView[] = [];
  selected = new Set<number>();
  busy = false;

  get hasSession(): boolean {
    return this.sessionId !== null;
  }

  /** Starting (or restarting) evolution discards any previous session. */
  startSession(body: SessionResponse): void {
    this.sessionId = body.session_id ?? null;
    this.applyCandidates(body);
  }

  /** A step/seed response replaces every cell and clears the pending picks. */
  applyCandidates(body: SessionResponse): void {
    this.generation = body.generation;
    this.candidates = body.candidates;
    this.selected.clear();
  }

  /** Toggle one cell's mark. Multi-select and zero-select are both fine. */
  toggleSelect(slot: number): boolean {
    if (this.busy || slot < 0 || slot >= this.candidates.length) {
      return false;
    }
    if (this.selected.has(slot)) {
      this.selected.delete(slot);
    } else {
      this.selected.add(slot);
    }
    return true;
  }

  isSelected(slot: number): boolean {
    return this.selected.has(slot);
  }

  selectedSlots(): number[] {
    return [...this.selected].sort((a, b) => a - b);
  }
}
