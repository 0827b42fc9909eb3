"""Core volumetric containers: 3D grids and complete patient-equivalent cases."""

from dataclasses import dataclass, field

import numpy as np

# Desk-scale bounds on every axis of a volume.
MIN_DIM = 8
MAX_DIM = 128

# Label conventions for the categorical mask volume.
BACKGROUND = 0
PTV = 1
FIRST_OAR = 2


@dataclass(eq=False)
class Volume3D:
    """A scalar grid of shape (D, H, W) with physical voxel spacing in mm.

    ``kind`` is either "continuous" (CT in HU, dose in Gy) or "categorical"
    (integer labels). Continuous volumes must be finite everywhere.
    """

    data: np.ndarray
    spacing: tuple[float, float, float] = (1.0, 1.0, 1.0)
    kind: str = "continuous"

    def __post_init__(self):
        self.data = np.asarray(self.data)
        if self.data.ndim != 3:
            raise ValueError(f"expected a 3D grid, got shape {self.data.shape}")
        for n in self.data.shape:
            if not (MIN_DIM <= n <= MAX_DIM):
                raise ValueError(
                    f"axis length {n} outside desk-scale bounds [{MIN_DIM}, {MAX_DIM}]"
                )
        if len(self.spacing) != 3 or any(s <= 0 for s in self.spacing):
            raise ValueError(f"spacing must be three positive values, got {self.spacing}")
        self.spacing = tuple(float(s) for s in self.spacing)
        if self.kind not in ("continuous", "categorical"):
            raise ValueError(f"unknown volume kind {self.kind!r}")
        if self.kind == "continuous" and not np.isfinite(self.data).all():
            raise ValueError("continuous volume contains NaN/Inf")

    @property
    def shape(self):
        return self.data.shape

    def __eq__(self, other):
        if not isinstance(other, Volume3D):
            return NotImplemented
        return (
            self.spacing == other.spacing
            and self.kind == other.kind
            and self.data.dtype == other.data.dtype
            and np.array_equal(self.data, other.data)
        )


@dataclass(eq=False)
class Case:
    """One patient-equivalent sample.

    ``masks`` is a categorical volume with 0=background, 1=PTV, and 2..K-1 the
    organs-at-risk, in the order of ``class_names``.
    """

    case_id: str
    ct: Volume3D
    masks: Volume3D
    dose_ref: Volume3D
    body_mask: Volume3D
    prescription: float
    rng_seed: int
    class_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.class_names:
            n_struct = int(self.masks.data.max())
            self.class_names = ["background", "ptv"] + [
                f"oar_{j:02d}" for j in range(1, n_struct)
            ]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def structure_mask(self, k: int) -> np.ndarray:
        return self.masks.data == k

    def __eq__(self, other):
        if not isinstance(other, Case):
            return NotImplemented
        return (
            self.case_id == other.case_id
            and self.prescription == other.prescription
            and self.rng_seed == other.rng_seed
            and self.class_names == other.class_names
            and self.ct == other.ct
            and self.masks == other.masks
            and self.dose_ref == other.dose_ref
            and self.body_mask == other.body_mask
        )


def validate_case(case: Case) -> None:
    """Check the structural invariants every case must satisfy."""
    masks = case.masks.data
    body = case.body_mask.data.astype(bool)
    dose = case.dose_ref.data

    if masks.shape != body.shape or dose.shape != body.shape or case.ct.shape != body.shape:
        raise ValueError("case volumes disagree in shape")
    if ((masks > 0) & ~body).any():
        raise ValueError("structure voxels found outside the body mask")
    for k in range(1, case.n_classes):
        n = int((masks == k).sum())
        if n < 27:
            raise ValueError(f"structure {case.class_names[k]!r} has {n} voxels, need >= 27")
    if (dose < 0).any():
        raise ValueError("reference dose has negative voxels")
    if dose[~body].any():
        raise ValueError("reference dose is nonzero outside the body")
    if (dose > case.prescription + 1e-6).any():
        raise ValueError("reference dose exceeds the prescription")
