"""Cleanup (item) memory: recover the nearest known symbol by cosine similarity.

Deliberately a linear scan over all entries. Memories at this scale hold at
most a few hundred symbols, and an exact scan keeps retrieval deterministic.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError, InvalidArgumentError, InvalidStateError
from .hv import as_hypervector


class ItemMemory:
    """Ordered store of labeled hypervectors, queried by cosine similarity."""

    def __init__(self):
        self._labels: list[str] = []
        self._vectors: list[np.ndarray] = []
        self._dim: int | None = None

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> list[str]:
        return list(self._labels)

    @property
    def dim(self) -> int | None:
        return self._dim

    def add(self, label: str, vector) -> "ItemMemory":
        """Append an entry; labels are unique and insertion order is preserved."""
        if label in self._labels:
            raise InvalidArgumentError(f"duplicate label {label!r}")
        v = as_hypervector(vector)
        if self._dim is None:
            self._dim = v.shape[0]
        elif v.shape[0] != self._dim:
            raise InvalidArgumentError(
                f"vector dim {v.shape[0]} does not match memory dim {self._dim}"
            )
        if np.linalg.norm(v) == 0.0:
            raise DegenerateInputError(f"cannot store zero-norm vector for {label!r}")
        self._labels.append(label)
        self._vectors.append(v)
        return self

    def cleanup(self, query, k: int = 1) -> list[tuple[str, float]]:
        """Top-k (label, cosine similarity), ties broken by insertion order."""
        if not self._labels:
            raise InvalidStateError("cleanup on an empty memory")
        if k < 1:
            raise InvalidArgumentError(f"k must be >= 1, got {k}")
        q = as_hypervector(query)
        if q.shape[0] != self._dim:
            raise InvalidArgumentError(f"query dim {q.shape[0]} does not match memory dim {self._dim}")
        qn2 = np.dot(q, q)
        if qn2 == 0.0:
            raise DegenerateInputError("cleanup query has zero norm")
        stack = np.stack(self._vectors)
        sims = (stack @ q) / np.sqrt(np.sum(stack * stack, axis=1) * qn2)
        order = sorted(range(len(sims)), key=lambda i: (-sims[i], i))
        return [(self._labels[i], float(sims[i])) for i in order[: min(k, len(sims))]]
