"""VSAF binary tensor files.

Layout (all integers little-endian):

    magic ``VSAF`` | u32 version (=1) | u32 layer count
    per layer: u16 name length | UTF-8 name | u32 H | u32 W | u32 C
    then per layer, in header order: H*W*C little-endian float32 values,
    row-major (row, then column, then channel).

Round-trips are bit-exact for float32 payloads.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadMagicError,
    DimensionOverflowError,
    InvalidArgumentError,
    TruncatedPayloadError,
    VersionError,
)

MAGIC = b"VSAF"
VERSION = 1

# cap on H*W*C to bound allocation from a hostile or corrupt header
MAX_ELEMENTS = 2**31


@dataclass(frozen=True)
class FeatureMapLayer:
    """One named H x W x C float32 tensor."""

    name: str
    data: np.ndarray  # shape (H, W, C), float32

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.data.shape  # type: ignore[return-value]


@dataclass(frozen=True)
class FeatureMapSet:
    """Ordered list of uniquely named feature map layers."""

    layers: tuple[FeatureMapLayer, ...]

    def __post_init__(self):
        names = [l.name for l in self.layers]
        if len(set(names)) != len(names):
            raise InvalidArgumentError(f"layer names must be unique, got {names}")
        for layer in self.layers:
            if layer.data.ndim != 3 or min(layer.data.shape) < 1:
                raise InvalidArgumentError(
                    f"layer {layer.name!r} must be H x W x C with all dims >= 1, "
                    f"got shape {layer.data.shape}"
                )
            if not np.all(np.isfinite(layer.data)):
                raise InvalidArgumentError(f"layer {layer.name!r} has non-finite entries")


def feature_map_set(named_tensors) -> FeatureMapSet:
    """Build a FeatureMapSet from (name, array) pairs, converting to float32."""
    layers = tuple(
        FeatureMapLayer(name, np.ascontiguousarray(data, dtype=np.float32))
        for name, data in named_tensors
    )
    return FeatureMapSet(layers)


def write_feature_file(fm: FeatureMapSet, path) -> None:
    chunks = [MAGIC, struct.pack("<II", VERSION, len(fm.layers))]
    for layer in fm.layers:
        name_bytes = layer.name.encode("utf-8")
        if len(name_bytes) > 0xFFFF:
            raise InvalidArgumentError(f"layer name too long: {len(name_bytes)} bytes")
        h, w, c = layer.data.shape
        chunks.append(struct.pack("<H", len(name_bytes)))
        chunks.append(name_bytes)
        chunks.append(struct.pack("<III", h, w, c))
    for layer in fm.layers:
        payload = np.ascontiguousarray(layer.data, dtype="<f4")
        chunks.append(payload.tobytes())
    Path(path).write_bytes(b"".join(chunks))


class _Reader:
    def __init__(self, blob: bytes):
        self.blob = blob
        self.pos = 0

    def take(self, count: int) -> bytes:
        if self.pos + count > len(self.blob):
            raise TruncatedPayloadError(
                f"need {count} bytes at offset {self.pos}, file has {len(self.blob)}"
            )
        out = self.blob[self.pos : self.pos + count]
        self.pos += count
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def read_feature_file(path) -> FeatureMapSet:
    reader = _Reader(Path(path).read_bytes())
    magic = reader.take(4)
    if magic != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}, got {magic!r}")
    (version, layer_count) = reader.unpack("<II")
    if version != VERSION:
        raise VersionError(f"unsupported VSAF version {version} (expected {VERSION})")

    headers = []
    for _ in range(layer_count):
        (name_len,) = reader.unpack("<H")
        name = reader.take(name_len).decode("utf-8")
        h, w, c = reader.unpack("<III")
        if h < 1 or w < 1 or c < 1:
            raise DimensionOverflowError(f"layer {name!r} declares zero dimension {h}x{w}x{c}")
        if h * w * c > MAX_ELEMENTS:
            raise DimensionOverflowError(
                f"layer {name!r} declares {h}x{w}x{c} = {h * w * c} elements (cap {MAX_ELEMENTS})"
            )
        headers.append((name, h, w, c))

    layers = []
    for name, h, w, c in headers:
        raw = reader.take(h * w * c * 4)
        data = np.frombuffer(raw, dtype="<f4").reshape(h, w, c).astype(np.float32)
        layers.append(FeatureMapLayer(name, data))
    return FeatureMapSet(tuple(layers))


HYPERVECTOR_LAYER = "hypervectors"


def write_hypervectors(hvs, path, layer_name: str = HYPERVECTOR_LAYER) -> None:
    """Serialize a (count, dim) stack of hypervectors as a 1 x count x dim layer."""
    stack = np.atleast_2d(np.asarray(hvs, dtype=np.float64))
    if stack.ndim != 2 or stack.size == 0:
        raise InvalidArgumentError(f"expected a nonempty (count, dim) stack, got shape {stack.shape}")
    write_feature_file(feature_map_set([(layer_name, stack[np.newaxis, :, :])]), path)


def read_hypervectors(path) -> np.ndarray:
    """Read a hypervector file back as a (count, dim) float64 array."""
    fm = read_feature_file(path)
    if len(fm.layers) != 1 or fm.layers[0].data.shape[0] != 1:
        raise InvalidArgumentError(
            f"expected a single 1 x count x dim layer, got "
            f"{[(l.name, l.shape) for l in fm.layers]}"
        )
    return fm.layers[0].data[0].astype(np.float64)
