"""Reproducible synthetic cases: ellipsoid anatomy plus an analytic dose field.

The dose model couples structure to dose on purpose: prescription inside the
target, isotropic Gaussian falloff outside it, and a multiplicative
suppression dip around each organ-at-risk. That gives training a learnable
structure-to-dose signal without any beam physics.
"""

import numpy as np

from .edt import squared_edt
from .volumes import Case, Volume3D, MIN_DIM, MAX_DIM, validate_case

# Fixed HU values so supervoxels find intensity boundaries.
HU_AIR = -1000.0
HU_TISSUE = 40.0
HU_PTV = 100.0
HU_OAR = -50.0

_PLACEMENT_ATTEMPTS = 100


def _ellipsoid(shape, center, semi_axes):
    zz, yy, xx = np.ogrid[: shape[0], : shape[1], : shape[2]]
    return (
        ((zz - center[0]) / semi_axes[0]) ** 2
        + ((yy - center[1]) / semi_axes[1]) ** 2
        + ((xx - center[2]) / semi_axes[2]) ** 2
    ) <= 1.0


def generate_phantom(seed: int, dims=(32, 32, 32), n_oars: int = 1,
                     prescription: float = 60.0) -> Case:
    """Build a deterministic synthetic case: body + PTV + ``n_oars`` OARs.

    Same (seed, dims, n_oars, prescription) always yields bit-identical
    volumes.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3 or any(not (MIN_DIM <= d <= MAX_DIM) for d in dims):
        raise ValueError(f"dims {dims} outside [{MIN_DIM}, {MAX_DIM}] per axis")
    if not (1 <= n_oars <= 3):
        raise ValueError(f"n_oars must be in [1, 3], got {n_oars}")
    if not (20.0 <= prescription <= 80.0):
        raise ValueError(f"prescription must be in [20, 80] Gy, got {prescription}")

    rng = np.random.default_rng(seed)
    dims_arr = np.asarray(dims, dtype=float)
    center = (dims_arr - 1.0) / 2.0

    body_semi = 0.42 * dims_arr
    body = _ellipsoid(dims, center, body_semi)

    ptv_mask, ptv_semi = _place_structure(
        rng, dims, center, body_semi, body, forbidden=np.zeros(dims, bool),
        semi_range=(0.10, 0.15), what="PTV",
    )

    occupied = ptv_mask.copy()
    oar_semis = []
    oar_union = np.zeros(dims, bool)
    masks = np.zeros(dims, np.uint8)
    masks[ptv_mask] = 1
    for j in range(n_oars):
        oar_mask, oar_semi = _place_structure(
            rng, dims, center, body_semi, body, forbidden=occupied,
            semi_range=(0.08, 0.13), what=f"OAR {j + 1}",
        )
        occupied |= oar_mask
        oar_union |= oar_mask
        oar_semis.append(oar_semi)
        masks[oar_mask] = 2 + j

    ct = np.full(dims, HU_AIR, np.float64)
    ct[body] = HU_TISSUE
    ct[ptv_mask] = HU_PTV
    ct[oar_union] = HU_OAR

    # Analytic reference dose.
    sq_ptv = squared_edt(ptv_mask)
    sigma_f = 0.5 * float(np.mean(ptv_semi))
    falloff = np.exp(-sq_ptv / (2.0 * sigma_f**2))
    sq_oar = squared_edt(oar_union)
    sigma_o = float(np.mean(oar_semis))
    suppression = 1.0 - 0.5 * np.exp(-sq_oar / sigma_o**2)
    dose = prescription * falloff * suppression
    dose[ptv_mask] = prescription
    dose[~body] = 0.0
    np.clip(dose, 0.0, prescription, out=dose)

    case = Case(
        case_id=f"case_{seed:05d}",
        ct=Volume3D(ct.astype(np.float32)),
        masks=Volume3D(masks, kind="categorical"),
        dose_ref=Volume3D(dose.astype(np.float32)),
        body_mask=Volume3D(body.astype(np.uint8), kind="categorical"),
        prescription=float(prescription),
        rng_seed=int(seed),
    )
    validate_case(case)
    return case


def _place_structure(rng, dims, center, body_semi, body, forbidden, semi_range, what):
    """Rejection-sample an ellipsoid fully inside the body, disjoint from
    ``forbidden``, with at least 27 voxels."""
    dims_arr = np.asarray(dims, dtype=float)
    for _ in range(_PLACEMENT_ATTEMPTS):
        semi = np.maximum(rng.uniform(*semi_range, size=3) * dims_arr, 2.2)
        offset = rng.uniform(-0.55, 0.55, size=3) * body_semi
        mask = _ellipsoid(dims, center + offset, semi)
        if mask.sum() < 27:
            continue
        if (mask & ~body).any() or (mask & forbidden).any():
            continue
        return mask, semi
    raise RuntimeError(
        f"failed to place {what} after {_PLACEMENT_ATTEMPTS} attempts "
        f"(dims={dims}, body too crowded)"
    )
