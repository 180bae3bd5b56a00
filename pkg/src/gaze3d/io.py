"""File formats: scanpath JSON, dataset manifests, raw volumes, splits.

Writers are deterministic (fixed key order, repr float formatting) so a
write/read/write cycle is byte-stable.  Readers reject invalid data with
field-level diagnostics instead of repairing it.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from gaze3d.core import Fixation, Scanpath, VolumeGeometry
from gaze3d.errors import (
    BadRatios,
    HeaderMismatch,
    InvariantViolation,
    ParseError,
    SchemaVersionError,
)
from gaze3d.saliency import ScalarVolume
from gaze3d.synth import Fixation2D

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class ManifestEntry:
    case_id: str
    geometry: VolumeGeometry
    gt_path: str
    pred_path: str | None = None


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[ManifestEntry, ...]
    splits: dict | None = None


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _dump_json(obj, path):
    text = json.dumps(obj, indent=2)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def _check_schema(doc, path):
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: unsupported schema_version {version!r}"
        )


def _geometry_from_dict(d, path) -> VolumeGeometry:
    try:
        return VolumeGeometry(
            width_vox=d["width_vox"],
            height_vox=d["height_vox"],
            depth_vox=d["depth_vox"],
            pixels_per_degree=d["pixels_per_degree"],
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: bad geometry: {exc}") from exc


def _geometry_to_dict(g: VolumeGeometry) -> dict:
    return {
        "width_vox": g.width_vox,
        "height_vox": g.height_vox,
        "depth_vox": g.depth_vox,
        "pixels_per_degree": g.pixels_per_degree,
    }


def read_scanpath(path) -> tuple[Scanpath, VolumeGeometry]:
    """Load and validate one scanpath file."""
    doc = _load_json(path)
    _check_schema(doc, path)
    geom = _geometry_from_dict(doc.get("geometry", {}), path)
    fixations = []
    for i, row in enumerate(doc.get("fixations", [])):
        try:
            fixations.append(Fixation(row["x"], row["y"], row["z"], row["t"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{path}: fixations[{i}]: {exc}") from exc
        except InvariantViolation as exc:
            raise InvariantViolation(f"{path}: fixations[{i}]: {exc}") from exc
    if not fixations:
        raise ParseError(f"{path}: no fixations")
    return Scanpath(doc.get("id", ""), tuple(fixations)), geom


def write_scanpath(sp: Scanpath, g: VolumeGeometry, path):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "id": sp.id,
        "geometry": _geometry_to_dict(g),
        "fixations": [
            {"x": f.x, "y": f.y, "z": f.z, "t": f.t} for f in sp.fixations
        ],
    }
    _dump_json(doc, path)


def read_fixations_2d(path) -> tuple[str, list[Fixation2D]]:
    """Load the 2D variant of the fixation schema: {x, y, t} rows."""
    doc = _load_json(path)
    _check_schema(doc, path)
    out = []
    for i, row in enumerate(doc.get("fixations", [])):
        try:
            out.append(Fixation2D(row["x"], row["y"], row["t"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{path}: fixations[{i}]: {exc}") from exc
        except InvariantViolation as exc:
            raise InvariantViolation(f"{path}: fixations[{i}]: {exc}") from exc
    if not out:
        raise ParseError(f"{path}: no fixations")
    return doc.get("id", ""), out


def write_fixations_2d(id: str, fixations: list[Fixation2D], path):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "id": id,
        "fixations": [{"x": f.x, "y": f.y, "t": f.t} for f in fixations],
    }
    _dump_json(doc, path)


def read_manifest(path, check_files: bool = True) -> DatasetManifest:
    doc = _load_json(path)
    _check_schema(doc, path)
    base = os.path.dirname(os.path.abspath(path))

    def resolve(p):
        return p if os.path.isabs(p) else os.path.join(base, p)

    entries = []
    seen = set()
    for i, row in enumerate(doc.get("entries", [])):
        try:
            case_id = row["case_id"]
            geom = _geometry_from_dict(row["geometry"], path)
            gt_path = resolve(row["gt_path"])
            pred_path = resolve(row["pred_path"]) if row.get("pred_path") else None
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{path}: entries[{i}]: {exc}") from exc
        if case_id in seen:
            raise ParseError(f"{path}: duplicate case_id {case_id!r}")
        seen.add(case_id)
        if check_files:
            for p in (gt_path, pred_path):
                if p is not None and not os.path.exists(p):
                    raise ParseError(f"{path}: entries[{i}]: missing file {p}")
        entries.append(ManifestEntry(case_id, geom, gt_path, pred_path))
    return DatasetManifest(tuple(entries), doc.get("splits"))


# Raw tensor format: little-endian float32 payload with a JSON sidecar at
# <path>.json recording dims (x-fastest ordering), dtype and peak value.


def write_tensor(data: np.ndarray, path):
    arr = np.asarray(data, dtype="<f4")
    header = {
        "dims": list(arr.shape),
        "dtype": "float32",
        "byte_order": "little",
        "scale": float(arr.max()) if arr.size else 0.0,
    }
    _dump_json(header, str(path) + ".json")
    with open(path, "wb") as fh:
        fh.write(arr.ravel(order="F").tobytes())


def read_tensor(path) -> np.ndarray:
    header = _load_json(str(path) + ".json")
    dims = tuple(header.get("dims", []))
    if header.get("dtype") != "float32" or header.get("byte_order") != "little":
        raise HeaderMismatch(f"{path}: unsupported dtype/byte order")
    expected = int(np.prod(dims)) * 4
    with open(path, "rb") as fh:
        payload = fh.read()
    if len(payload) != expected:
        raise HeaderMismatch(
            f"{path}: payload is {len(payload)} bytes, expected {expected}"
        )
    return np.frombuffer(payload, dtype="<f4").reshape(dims, order="F").copy()


def write_volume(v: ScalarVolume, path):
    write_tensor(v.data, path)


def read_volume(path) -> ScalarVolume:
    data = read_tensor(path)
    if data.ndim != 3:
        raise HeaderMismatch(f"{path}: expected 3 dims, got {data.ndim}")
    return ScalarVolume(tuple(data.shape), data.astype(float))


def split_dataset(
    ids: list[str],
    ratios: tuple[float, float, float] = (0.70, 0.10, 0.20),
    seed: int = 0,
) -> dict[str, str]:
    """Deterministic shuffled train/val/test partition.

    Sizes are floored for the leading splits and the remainder goes to the
    last split, so they always sum to the total (909 at 70:10:20 gives
    636/90/183).
    """
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise BadRatios(f"ratios {ratios} must sum to 1")
    if any(r < 0 for r in ratios):
        raise BadRatios(f"ratios {ratios} must be nonnegative")
    rng = np.random.default_rng(seed)
    order = list(ids)
    rng.shuffle(order)
    n = len(order)
    n_train = int(n * ratios[0])
    n_val = int(n * ratios[1])
    out = {}
    for i, case_id in enumerate(order):
        if i < n_train:
            out[case_id] = "train"
        elif i < n_train + n_val:
            out[case_id] = "val"
        else:
            out[case_id] = "test"
    return out
