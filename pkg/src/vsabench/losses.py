"""Score-space loss functions: cyclic consistency, adversarial terms, total objective.

The discriminator itself is out of scope; the adversarial losses take batches
of externally supplied scores. The nll variant reads scores as probabilities
in (0, 1); the hinge variant takes unbounded reals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InvalidArgumentError
from .hv import cosine_distance

VARIANTS = ("nll", "hinge")


@dataclass(frozen=True)
class LossConfig:
    """Weights of the objective: cyclic weight, the two fake-term weights, GAN variant."""

    lam: float = 10.0
    fake_term_weights: tuple[float, float] = (1.0, 1.0)
    variant: str = "hinge"

    def __post_init__(self):
        if self.lam < 0:
            raise InvalidArgumentError(f"lam must be >= 0, got {self.lam}")
        if len(self.fake_term_weights) != 2 or any(w < 0 for w in self.fake_term_weights):
            raise InvalidArgumentError(
                f"fake_term_weights must be two nonnegative reals, got {self.fake_term_weights}"
            )
        if self.variant not in VARIANTS:
            raise InvalidArgumentError(f"variant must be one of {VARIANTS}, got {self.variant!r}")


def _scores(batch, name: str) -> np.ndarray:
    arr = np.asarray(batch, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidArgumentError(f"{name} must be a nonempty 1-D score batch, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains non-finite scores")
    return arr


def vsa_cyclic_loss(v_x, v_cycled) -> float:
    """Mean cosine distance between original and cycled patch hypervectors; range [0, 2]."""
    xs, cs = list(v_x), list(v_cycled)
    if not xs or len(xs) != len(cs):
        raise InvalidArgumentError(
            f"need equal nonempty lists, got {len(xs)} and {len(cs)} hypervectors"
        )
    return float(np.mean([cosine_distance(a, b) for a, b in zip(xs, cs)]))


def gan_loss_nll(real, fake_translated, fake_mapped, cfg: LossConfig = LossConfig()) -> tuple[float, float]:
    """Non-saturating log-likelihood adversarial loss over probability scores.

    Returns (d_loss, g_loss). The two fake batches are the translated and
    mapped hypervector scores, weighted by cfg.fake_term_weights.
    """
    r = _scores(real, "real")
    ft = _scores(fake_translated, "fake_translated")
    fm = _scores(fake_mapped, "fake_mapped")
    for name, batch in (("real", r), ("fake_translated", ft), ("fake_mapped", fm)):
        if np.any(batch <= 0.0) or np.any(batch >= 1.0):
            raise InvalidArgumentError(f"{name}: nll scores must lie strictly in (0, 1)")
    w1, w2 = cfg.fake_term_weights
    d_loss = -(
        np.mean(np.log(r))
        + w1 * np.mean(np.log1p(-ft))
        + w2 * np.mean(np.log1p(-fm))
    )
    g_loss = -(w1 * np.mean(np.log(ft)) + w2 * np.mean(np.log(fm)))
    return float(d_loss), float(g_loss)


def gan_loss_hinge(real, fake_translated, fake_mapped, cfg: LossConfig = LossConfig()) -> tuple[float, float]:
    """Geometric-GAN hinge loss over unbounded scores. Returns (d_loss, g_loss)."""
    r = _scores(real, "real")
    ft = _scores(fake_translated, "fake_translated")
    fm = _scores(fake_mapped, "fake_mapped")
    w1, w2 = cfg.fake_term_weights
    d_loss = (
        np.mean(np.maximum(0.0, 1.0 - r))
        + w1 * np.mean(np.maximum(0.0, 1.0 + ft))
        + w2 * np.mean(np.maximum(0.0, 1.0 + fm))
    )
    g_loss = -(w1 * np.mean(ft) + w2 * np.mean(fm))
    return float(d_loss), float(g_loss)


def gan_loss(real, fake_translated, fake_mapped, cfg: LossConfig = LossConfig()) -> tuple[float, float]:
    """Dispatch on cfg.variant."""
    if cfg.variant == "nll":
        return gan_loss_nll(real, fake_translated, fake_mapped, cfg)
    return gan_loss_hinge(real, fake_translated, fake_mapped, cfg)


def total_loss(gan: float, vsa: float, cfg: LossConfig = LossConfig()) -> float:
    """gan + lam * vsa."""
    if not (np.isfinite(gan) and np.isfinite(vsa)):
        raise InvalidArgumentError(f"loss terms must be finite, got gan={gan}, vsa={vsa}")
    return float(gan + cfg.lam * vsa)


def zero_vector_indices(vs) -> list[int]:
    """Indices of zero-norm hypervectors in a batch; used for diagnostics."""
    out = []
    for i, v in enumerate(vs):
        if np.linalg.norm(np.asarray(v, dtype=np.float64)) == 0.0:
            out.append(i)
    return out


def check_no_zero_vectors(vs, name: str) -> None:
    idx = zero_vector_indices(vs)
    if idx:
        raise DegenerateInputError(f"{name}: zero-norm hypervectors at indices {idx}")
