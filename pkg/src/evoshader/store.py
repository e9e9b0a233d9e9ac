"""File-backed persistence for saved transformations and uploaded meshes.

Every record is one JSON document under the data directory
(``transformations/<id>.json`` and ``models/<id>.json``); the in-memory
index is rebuilt by scanning those directories at startup.  Writes go
through a temp file and an atomic rename, ids are 128-bit random tokens,
and expression text is validated at write time so the store never hands
back something that fails to parse.

Everything in the store is public; there is no ownership or auth layer.
"""

from __future__ import annotations

import json
import math
import os
import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .expr import ExprError, deserialize

MAX_NAME_LENGTH = 128


class StoreValidationError(ValueError):
    """A record failed validation; the message names the failing rule."""


class NotFoundError(KeyError):
    """No record with the requested id."""


@dataclass(frozen=True)
class TransformationRecord:
    id: str
    name: str
    expr_sexpr: str
    created_at: str  # ISO-8601, UTC
    model_id: str | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "expr": self.expr_sexpr,
            "created_at": self.created_at,
            "model_id": self.model_id,
        }

    @classmethod
    def from_json(cls, doc: dict) -> TransformationRecord:
        return cls(
            id=doc["id"],
            name=doc["name"],
            expr_sexpr=doc["expr"],
            created_at=doc["created_at"],
            model_id=doc.get("model_id"),
        )


@dataclass(frozen=True)
class MeshModel:
    id: str
    name: str
    vertices: tuple[float, ...]
    indices: tuple[int, ...]
    normals: tuple[float, ...] | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "vertices": list(self.vertices),
            "indices": list(self.indices),
            "normals": list(self.normals) if self.normals is not None else None,
        }

    @classmethod
    def from_json(cls, doc: dict) -> MeshModel:
        normals = doc.get("normals")
        return cls(
            id=doc["id"],
            name=doc["name"],
            vertices=tuple(doc["vertices"]),
            indices=tuple(doc["indices"]),
            normals=tuple(normals) if normals is not None else None,
        )


def _validate_name(name: str) -> None:
    if not isinstance(name, str) or not name:
        raise StoreValidationError("name must be a non-empty string")
    if len(name) > MAX_NAME_LENGTH:
        raise StoreValidationError(f"name longer than {MAX_NAME_LENGTH} characters")


def _validate_mesh(vertices, indices, normals) -> None:
    if not vertices or len(vertices) % 3 != 0:
        raise StoreValidationError("vertices length must be a positive multiple of 3")
    if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in vertices):
        raise StoreValidationError("vertex coordinates must be finite numbers")
    if not indices or len(indices) % 3 != 0:
        raise StoreValidationError("indices length must be a positive multiple of 3 (triangles)")
    vertex_count = len(vertices) // 3
    for i in indices:
        if not isinstance(i, int) or isinstance(i, bool) or i < 0:
            raise StoreValidationError("indices must be non-negative integers")
        if i >= vertex_count:
            raise StoreValidationError(f"index {i} out of range for {vertex_count} vertices")
    if normals is not None:
        if len(normals) != len(vertices):
            raise StoreValidationError("normals length must equal vertices length")
        if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in normals):
            raise StoreValidationError("normal components must be finite numbers")


class Store:
    """One data directory holding transformations and mesh models."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self._transformations_dir = self.data_dir / "transformations"
        self._models_dir = self.data_dir / "models"
        self._transformations_dir.mkdir(parents=True, exist_ok=True)
        self._models_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._transformations: dict[str, TransformationRecord] = {}
        self._models: dict[str, MeshModel] = {}
        self._load()

    def _load(self) -> None:
        for path in self._transformations_dir.glob("*.json"):
            doc = json.loads(path.read_text())
            record = TransformationRecord.from_json(doc)
            self._transformations[record.id] = record
        for path in self._models_dir.glob("*.json"):
            doc = json.loads(path.read_text())
            model = MeshModel.from_json(doc)
            self._models[model.id] = model

    @staticmethod
    def _new_id() -> str:
        return secrets.token_hex(16)

    def _write_json(self, path: Path, doc: dict) -> None:
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, indent=2))
        os.replace(tmp, path)

    # -- transformations --------------------------------------------

    def save_transformation(
        self, name: str, expr_sexpr: str, model_id: str | None = None
    ) -> TransformationRecord:
        """Validate and durably persist one named expression."""
        _validate_name(name)
        try:
            deserialize(expr_sexpr)
        except ExprError as exc:
            raise StoreValidationError(f"expression does not parse: {exc}") from exc
        record = TransformationRecord(
            id=self._new_id(),
            name=name,
            expr_sexpr=expr_sexpr,
            created_at=datetime.now(timezone.utc).isoformat(),
            model_id=model_id,
        )
        with self._lock:
            self._write_json(self._transformations_dir / f"{record.id}.json", record.to_json())
            self._transformations[record.id] = record
        return record

    def list_transformations(self) -> list[TransformationRecord]:
        """All saved transformations, newest first."""
        return sorted(
            self._transformations.values(),
            key=lambda r: (r.created_at, r.id),
            reverse=True,
        )

    def get_transformation(self, record_id: str) -> TransformationRecord:
        try:
            return self._transformations[record_id]
        except KeyError:
            raise NotFoundError(f"no transformation with id {record_id!r}") from None

    # -- mesh models -------------------------------------------------

    def save_model(
        self,
        name: str,
        vertices: list[float],
        indices: list[int],
        normals: list[float] | None = None,
    ) -> MeshModel:
        """Validate and durably persist one triangle mesh."""
        _validate_name(name)
        _validate_mesh(vertices, indices, normals)
        model = MeshModel(
            id=self._new_id(),
            name=name,
            vertices=tuple(float(v) for v in vertices),
            indices=tuple(indices),
            normals=tuple(float(v) for v in normals) if normals is not None else None,
        )
        with self._lock:
            self._write_json(self._models_dir / f"{model.id}.json", model.to_json())
            self._models[model.id] = model
        return model

    def list_models(self) -> list[MeshModel]:
        return sorted(self._models.values(), key=lambda m: m.id)

    def get_model(self, model_id: str) -> MeshModel:
        try:
            return self._models[model_id]
        except KeyError:
            raise NotFoundError(f"no model with id {model_id!r}") from None
