"""On-disk case directory format (version "1").

A case directory holds ``meta.json`` plus flat little-endian arrays in C
order (D slowest):

    ct.f32raw, dose.f32raw        float32
    masks.u8raw, body.u8raw       uint8
    scribbles.u8raw               uint8, 255 = unlabeled (written by scribbles)
    svlabels.i32raw               int32  (supervoxel cache)
    softboundary.f32raw           float32 (supervoxel cache)
"""

import json
from pathlib import Path

import numpy as np

from .volumes import Case, Volume3D, validate_case

FORMAT_VERSION = "1"

SCRIBBLE_UNLABELED = 255


class CaseFormatError(ValueError):
    """Raised when a case directory is missing files or internally inconsistent."""


def _write_raw(path: Path, arr: np.ndarray, dtype) -> None:
    path.write_bytes(np.ascontiguousarray(arr, dtype=dtype).tobytes())


def _read_raw(path: Path, dtype, dims, name: str) -> np.ndarray:
    if not path.is_file():
        raise CaseFormatError(f"missing array: {name}")
    raw = np.frombuffer(path.read_bytes(), dtype=dtype)
    expected = int(np.prod(dims))
    if raw.size != expected:
        raise CaseFormatError(
            f"shape mismatch: {path.name} has {raw.size} values, "
            f"expected {expected} for dims {list(dims)}"
        )
    return raw.reshape(dims).copy()


def write_case(case: Case, case_dir) -> None:
    """Write a complete case; round-trips bit-exactly through read_case."""
    case_dir = Path(case_dir)
    case_dir.mkdir(parents=True, exist_ok=True)
    meta = {
        "format_version": FORMAT_VERSION,
        "case_id": case.case_id,
        "dims": list(case.ct.shape),
        "spacing_mm": list(case.ct.spacing),
        "prescription_gy": case.prescription,
        "rng_seed": case.rng_seed,
        "class_names": case.class_names,
    }
    (case_dir / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True))
    _write_raw(case_dir / "ct.f32raw", case.ct.data, "<f4")
    _write_raw(case_dir / "dose.f32raw", case.dose_ref.data, "<f4")
    _write_raw(case_dir / "masks.u8raw", case.masks.data, np.uint8)
    _write_raw(case_dir / "body.u8raw", case.body_mask.data, np.uint8)


def read_meta(case_dir) -> dict:
    path = Path(case_dir) / "meta.json"
    if not path.is_file():
        raise CaseFormatError(f"missing meta.json in {case_dir}")
    meta = json.loads(path.read_text())
    version = meta.get("format_version")
    if version != FORMAT_VERSION:
        raise CaseFormatError(f"unknown format version: {version!r}")
    return meta


def read_case(case_dir) -> Case:
    case_dir = Path(case_dir)
    meta = read_meta(case_dir)
    dims = tuple(meta["dims"])
    spacing = tuple(meta["spacing_mm"])
    ct = _read_raw(case_dir / "ct.f32raw", "<f4", dims, "ct")
    dose = _read_raw(case_dir / "dose.f32raw", "<f4", dims, "dose")
    masks = _read_raw(case_dir / "masks.u8raw", np.uint8, dims, "masks")
    body = _read_raw(case_dir / "body.u8raw", np.uint8, dims, "body")
    case = Case(
        case_id=meta["case_id"],
        ct=Volume3D(ct, spacing),
        masks=Volume3D(masks, spacing, kind="categorical"),
        dose_ref=Volume3D(dose, spacing),
        body_mask=Volume3D(body, spacing, kind="categorical"),
        prescription=float(meta["prescription_gy"]),
        rng_seed=int(meta["rng_seed"]),
        class_names=list(meta["class_names"]),
    )
    validate_case(case)
    return case


def _update_meta(case_dir: Path, extra: dict) -> None:
    meta = read_meta(case_dir)
    meta.update(extra)
    (case_dir / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True))


def write_scribbles(case_dir, labels: np.ndarray, scribble_seed: int,
                    slice_stride: int) -> None:
    case_dir = Path(case_dir)
    _write_raw(case_dir / "scribbles.u8raw", labels, np.uint8)
    _update_meta(case_dir, {"scribble_seed": int(scribble_seed),
                            "slice_stride": int(slice_stride)})


def read_scribbles(case_dir) -> np.ndarray:
    case_dir = Path(case_dir)
    dims = tuple(read_meta(case_dir)["dims"])
    return _read_raw(case_dir / "scribbles.u8raw", np.uint8, dims, "scribbles")


def write_boundary_cache(case_dir, sv_labels: np.ndarray,
                         soft_boundary: np.ndarray) -> None:
    case_dir = Path(case_dir)
    _write_raw(case_dir / "svlabels.i32raw", sv_labels, "<i4")
    _write_raw(case_dir / "softboundary.f32raw", soft_boundary, "<f4")


def read_boundary_cache(case_dir) -> tuple[np.ndarray, np.ndarray]:
    case_dir = Path(case_dir)
    dims = tuple(read_meta(case_dir)["dims"])
    sv = _read_raw(case_dir / "svlabels.i32raw", "<i4", dims, "svlabels")
    soft = _read_raw(case_dir / "softboundary.f32raw", "<f4", dims, "softboundary")
    return sv, soft


def has_boundary_cache(case_dir) -> bool:
    case_dir = Path(case_dir)
    return (case_dir / "svlabels.i32raw").is_file() and \
        (case_dir / "softboundary.f32raw").is_file()


def has_scribbles(case_dir) -> bool:
    return (Path(case_dir) / "scribbles.u8raw").is_file()


def list_case_dirs(root) -> list[Path]:
    """Sorted case directories directly under ``root`` (those with meta.json)."""
    root = Path(root)
    return sorted(p for p in root.iterdir() if (p / "meta.json").is_file())
