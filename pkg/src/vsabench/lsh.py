"""Locality sensitive hashing: project feature vectors into the hyperspace.

A projector is a seeded n x m matrix whose rows are standard-normal samples
normalized to unit length. Features are normalized to unit length before
projection, so every output entry is a dot product of two unit vectors and
lands in [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, InvalidArgumentError
from .hv import check_seed

QUANTIZE_MODES = ("none", "sign")


@dataclass(frozen=True)
class LshProjector:
    """Immutable random projection matrix; ``rows`` has shape (n, m)."""

    rows: np.ndarray = field(repr=False)
    m: int
    n: int
    seed: int


def new_projector(m: int, n: int, seed: int) -> LshProjector:
    """Build a projector with unit-norm standard-normal rows, deterministic in (m, n, seed)."""
    if m < 1 or n < 1:
        raise InvalidArgumentError(f"m and n must be >= 1, got m={m}, n={n}")
    rng = np.random.default_rng(check_seed(seed))
    rows = rng.standard_normal(size=(n, m))
    rows /= np.linalg.norm(rows, axis=1, keepdims=True)
    rows.setflags(write=False)
    return LshProjector(rows=rows, m=m, n=n, seed=int(seed))


def project(p: LshProjector, f, quantize: str = "none") -> np.ndarray:
    """Project one feature vector into [-1, 1]^n.

    The feature is normalized to unit length first, so the projection is
    invariant to positive rescaling of the input. ``sign`` quantization maps
    entries to {-1, +1} with sign(0) -> +1, which restores exact unbinding at
    the cost of similarity fidelity.
    """
    if quantize not in QUANTIZE_MODES:
        raise InvalidArgumentError(f"quantize must be one of {QUANTIZE_MODES}, got {quantize!r}")
    fv = np.asarray(f, dtype=np.float64)
    if fv.ndim != 1 or fv.shape[0] != p.m:
        raise InvalidArgumentError(f"feature length {fv.shape} does not match projector m={p.m}")
    if not np.all(np.isfinite(fv)):
        raise InvalidArgumentError("feature entries must be finite")
    norm = np.linalg.norm(fv)
    if norm == 0.0:
        raise DegenerateInputError("cannot project a zero feature vector")
    out = p.rows @ (fv / norm)
    # rows and input are unit vectors; clamp float round-off at the boundary
    out = np.clip(out, -1.0, 1.0)
    if quantize == "sign":
        out = np.where(out >= 0.0, 1.0, -1.0)
    return out


def project_batch(p: LshProjector, fs, quantize: str = "none") -> list[np.ndarray]:
    """Apply ``project`` to each feature vector, preserving order.

    Accepts a PatchFeatureSet or any iterable of feature vectors. Per-item
    failures are re-raised with the patch index attached.
    """
    vectors = getattr(fs, "vectors", fs)
    out = []
    for i, f in enumerate(vectors):
        try:
            out.append(project(p, f, quantize=quantize))
        except (InvalidArgumentError, DegenerateInputError) as exc:
            raise type(exc)(f"patch {i}: {exc}") from exc
    return out
