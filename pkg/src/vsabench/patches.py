"""Assemble per-patch concatenated feature vectors from multi-layer feature maps.

Each layer is tiled into a grid of patches; all layers must produce the same
grid shape so that patch i of every layer covers the same receptive field.
Within a grid cell the layer blocks are concatenated in layer order, each
flattened row-major (row, then column, then channel). With dilation d > 1 a
cell samples coordinates spaced d apart, covering a footprint of side * d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InvalidArgumentError
from .vsaf import FeatureMapSet


@dataclass(frozen=True)
class PatchSpec:
    """Per-layer patch side lengths plus a shared dilation factor."""

    sides: tuple[int, ...]
    dilation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sides", tuple(int(s) for s in self.sides))
        if not self.sides or any(s < 1 for s in self.sides):
            raise InvalidArgumentError(f"patch sides must be positive, got {self.sides}")
        if self.dilation < 1:
            raise InvalidArgumentError(f"dilation must be >= 1, got {self.dilation}")


@dataclass(frozen=True)
class PatchFeatureSet:
    """Row-major-ordered patch vectors stacked as a (patch_count, m) array."""

    vectors: np.ndarray = field(repr=False)
    patch_count: int
    m: int


def expected_vector_length(fm: FeatureMapSet, spec: PatchSpec) -> int:
    """m = sum over layers of side^2 * channels."""
    return sum(s * s * layer.data.shape[2] for s, layer in zip(spec.sides, fm.layers))


def block_lengths(fm: FeatureMapSet, spec: PatchSpec) -> list[int]:
    """Length of each layer's block within an assembled patch vector."""
    return [s * s * layer.data.shape[2] for s, layer in zip(spec.sides, fm.layers)]


def normalize_blocks(patches: PatchFeatureSet, lengths: list[int]) -> PatchFeatureSet:
    """Scale each layer block of every patch vector to unit Euclidean norm.

    Used when feature normalization is scoped per layer rather than over the
    whole concatenated vector. Zero-norm blocks are left untouched.
    """
    if sum(lengths) != patches.m:
        raise InvalidArgumentError(f"block lengths {lengths} do not sum to m={patches.m}")
    out = patches.vectors.copy()
    start = 0
    for length in lengths:
        block = out[:, start : start + length]
        norms = np.linalg.norm(block, axis=1, keepdims=True)
        np.divide(block, norms, out=block, where=norms > 0)
        start += length
    return PatchFeatureSet(vectors=out, patch_count=patches.patch_count, m=patches.m)


def assemble_patches(fm: FeatureMapSet, spec: PatchSpec) -> PatchFeatureSet:
    if len(spec.sides) != len(fm.layers):
        raise InvalidArgumentError(
            f"patch spec has {len(spec.sides)} sides for {len(fm.layers)} layers"
        )
    d = spec.dilation
    grid_shape = None
    for side, layer in zip(spec.sides, fm.layers):
        h, w, _ = layer.data.shape
        footprint = side * d
        if (side - 1) * d + 1 > h or (side - 1) * d + 1 > w:
            raise InvalidArgumentError(
                f"layer {layer.name!r}: patch side {side} with dilation {d} "
                f"exceeds spatial extent {h}x{w}"
            )
        if h % footprint != 0 or w % footprint != 0:
            raise ConfigError(
                f"layer {layer.name!r}: extent {h}x{w} does not tile by "
                f"footprint {footprint} (side {side} * dilation {d})"
            )
        shape = (h // footprint, w // footprint)
        if grid_shape is None:
            grid_shape = shape
        elif shape != grid_shape:
            raise ConfigError(
                f"layer {layer.name!r}: grid {shape} does not match {grid_shape} "
                f"of earlier layers"
            )

    gh, gw = grid_shape
    patches = []
    for gi in range(gh):
        for gj in range(gw):
            blocks = []
            for side, layer in zip(spec.sides, fm.layers):
                footprint = side * d
                rows = gi * footprint + d * np.arange(side)
                cols = gj * footprint + d * np.arange(side)
                block = layer.data[np.ix_(rows, cols)]
                blocks.append(block.astype(np.float64).reshape(-1))
            patches.append(np.concatenate(blocks))

    vectors = np.stack(patches)
    m = expected_vector_length(fm, spec)
    assert vectors.shape == (gh * gw, m)
    return PatchFeatureSet(vectors=vectors, patch_count=gh * gw, m=m)
