"""Synthetic semantic-flipping benchmark.

Scenes are bundles of object-attribute bindings over randomly materialized
bipolar symbol vocabularies. A ground-truth mapping built from the scene's
attribute pairs should recover the target-domain scene up to superposition
noise (mean recovery cosine 1/sqrt(k) for k bundled pairs); a random mapping
should leave object cleanup at chance. Sweeps over dimension, pair count,
mapping kind, and a mixing fraction reproduce those trends as CSV reports.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidArgumentError
from .hv import bind, bundle, check_seed, cosine_similarity, sample_hypervector
from .mapping import build_ground_truth_mapping
from .memory import ItemMemory

MAPPING_KINDS = ("ground_truth", "random", "mixed")
SWEEP_AXES = ("dim", "k", "mapping_kind", "lambda_proxy")

CSV_HEADER = "axis,value,dim,k,mapping,trials,recovery_cosine,cleanup_accuracy,flip_rate,seed"


@dataclass(frozen=True)
class DomainSpec:
    """Symbol vocabularies for one benchmark domain pair.

    Source and target attribute vocabularies correspond by index: the i-th
    source attribute translates to the i-th target attribute.
    """

    object_vocab: tuple[str, ...]
    src_attr_vocab: tuple[str, ...]
    tgt_attr_vocab: tuple[str, ...]
    dim: int
    seed: int

    def __post_init__(self):
        for name, vocab in (
            ("object_vocab", self.object_vocab),
            ("src_attr_vocab", self.src_attr_vocab),
            ("tgt_attr_vocab", self.tgt_attr_vocab),
        ):
            if not vocab:
                raise InvalidArgumentError(f"{name} must be nonempty")
            if len(set(vocab)) != len(vocab):
                raise InvalidArgumentError(f"{name} has duplicate labels")
        if len(self.src_attr_vocab) != len(self.tgt_attr_vocab):
            raise InvalidArgumentError(
                "src and tgt attribute vocabularies must have equal length "
                f"({len(self.src_attr_vocab)} vs {len(self.tgt_attr_vocab)})"
            )
        if self.dim < 1:
            raise InvalidArgumentError(f"dim must be >= 1, got {self.dim}")
        check_seed(self.seed)


@dataclass(frozen=True)
class SceneSpec:
    """k object-attribute pairs in one domain ('source' or 'target')."""

    pairs: tuple[tuple[str, str], ...]
    domain: str = "source"

    def __post_init__(self):
        if not self.pairs:
            raise InvalidArgumentError("scene needs at least one pair")
        if self.domain not in ("source", "target"):
            raise InvalidArgumentError(f"domain must be 'source' or 'target', got {self.domain!r}")

    @property
    def k(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class DomainSymbols:
    """One materialization of a DomainSpec: label -> bipolar hypervector."""

    objects: dict[str, np.ndarray]
    src_attrs: dict[str, np.ndarray]
    tgt_attrs: dict[str, np.ndarray]
    dim: int


@dataclass(frozen=True)
class BenchReport:
    """Outcome of one measured configuration; flip_rate = 1 - cleanup_accuracy."""

    recovery_cosine: float
    cleanup_accuracy: float
    flip_rate: float
    dim: int
    k: int
    mapping: str
    trials: int
    seed: int
    recovery_cosine_sem: float = 0.0
    attempts: int = 0


@dataclass(frozen=True)
class BenchConfig:
    """Base configuration for measure_recovery and sweeps."""

    dim: int = 4096
    k: int = 2
    object_vocab_size: int = 32
    attr_vocab_size: int = 16
    mapping: str = "ground_truth"
    mix: float = 1.0
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.mapping not in MAPPING_KINDS:
            raise InvalidArgumentError(f"mapping must be one of {MAPPING_KINDS}, got {self.mapping!r}")
        if self.k < 1 or self.k > min(self.object_vocab_size, self.attr_vocab_size):
            raise InvalidArgumentError(
                f"k must be in [1, min(vocab sizes)], got k={self.k} with "
                f"{self.object_vocab_size} objects and {self.attr_vocab_size} attributes"
            )
        if not 0.0 <= self.mix <= 1.0:
            raise InvalidArgumentError(f"mix must be in [0, 1], got {self.mix}")
        if self.trials < 1:
            raise InvalidArgumentError(f"trials must be >= 1, got {self.trials}")
        check_seed(self.seed)


def default_domain(config: BenchConfig) -> DomainSpec:
    """Synthesize label vocabularies of the configured sizes."""
    return DomainSpec(
        object_vocab=tuple(f"obj{i:02d}" for i in range(config.object_vocab_size)),
        src_attr_vocab=tuple(f"src{i:02d}" for i in range(config.attr_vocab_size)),
        tgt_attr_vocab=tuple(f"tgt{i:02d}" for i in range(config.attr_vocab_size)),
        dim=config.dim,
        seed=config.seed,
    )


def default_scene(config: BenchConfig) -> SceneSpec:
    """Pair the first k objects with the first k source attributes."""
    return SceneSpec(
        pairs=tuple((f"obj{i:02d}", f"src{i:02d}") for i in range(config.k)),
        domain="source",
    )


def materialize(domain: DomainSpec, rng: np.random.Generator | None = None) -> DomainSymbols:
    """Draw an independent bipolar hypervector per label, in a fixed label order."""
    if rng is None:
        rng = np.random.default_rng(domain.seed)
    objects = {label: sample_hypervector(domain.dim, rng) for label in domain.object_vocab}
    src = {label: sample_hypervector(domain.dim, rng) for label in domain.src_attr_vocab}
    tgt = {label: sample_hypervector(domain.dim, rng) for label in domain.tgt_attr_vocab}
    return DomainSymbols(objects=objects, src_attrs=src, tgt_attrs=tgt, dim=domain.dim)


def encode_scene(symbols: DomainSymbols, scene: SceneSpec) -> np.ndarray:
    """Bundle bind(object, attribute) over the scene's pairs."""
    attrs = symbols.src_attrs if scene.domain == "source" else symbols.tgt_attrs
    terms = []
    for obj_label, attr_label in scene.pairs:
        if obj_label not in symbols.objects:
            raise InvalidArgumentError(f"unknown object label {obj_label!r}")
        if attr_label not in attrs:
            raise InvalidArgumentError(f"unknown {scene.domain} attribute label {attr_label!r}")
        terms.append(bind(symbols.objects[obj_label], attrs[attr_label]))
    return bundle(terms, norm="raw_sum")


def target_twin(domain: DomainSpec, scene: SceneSpec) -> SceneSpec:
    """The same objects carrying the index-corresponding target attributes."""
    if scene.domain != "source":
        raise InvalidArgumentError("target_twin expects a source-domain scene")
    src_index = {label: i for i, label in enumerate(domain.src_attr_vocab)}
    pairs = []
    for obj_label, attr_label in scene.pairs:
        if attr_label not in src_index:
            raise InvalidArgumentError(f"unknown source attribute label {attr_label!r}")
        pairs.append((obj_label, domain.tgt_attr_vocab[src_index[attr_label]]))
    return SceneSpec(pairs=tuple(pairs), domain="target")


def scene_mapping(domain: DomainSpec, symbols: DomainSymbols, scene: SceneSpec) -> np.ndarray:
    """Ground-truth mapping vector built from the scene's attribute pairs."""
    twin = target_twin(domain, scene)
    pairs = [
        (symbols.src_attrs[src_label], symbols.tgt_attrs[tgt_label])
        for (_, src_label), (_, tgt_label) in zip(scene.pairs, twin.pairs)
    ]
    return build_ground_truth_mapping(pairs)


def translate_scene(v: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Bind a scene hypervector with a mapping vector."""
    return bind(v, u)


def _trial_rng(seed: int, stream: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream, trial)))


def measure_recovery(
    domain: DomainSpec,
    scene: SceneSpec,
    mapping: str = "ground_truth",
    trials: int = 100,
    seed: int = 0,
    mix: float = 1.0,
    stream: int = 0,
) -> BenchReport:
    """Run seeded trials with fresh symbol draws and report recovery statistics.

    Each trial materializes fresh symbols, encodes the source scene and its
    target twin, builds the requested mapping kind ('mixed' blends the
    ground-truth and a random mapping by ``mix``), translates the source
    scene, and then recovers each object by unbinding the target attribute
    and cleaning up against the full object vocabulary.
    """
    if mapping not in MAPPING_KINDS:
        raise InvalidArgumentError(f"mapping must be one of {MAPPING_KINDS}, got {mapping!r}")
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    check_seed(seed)
    twin = target_twin(domain, scene)

    cosines = np.empty(trials)
    correct = 0
    attempts = 0
    for t in range(trials):
        rng = _trial_rng(seed, stream, t)
        symbols = materialize(domain, rng)
        v_src = encode_scene(symbols, scene)
        v_tgt = encode_scene(symbols, twin)

        u_gt = scene_mapping(domain, symbols, scene)
        if mapping == "ground_truth":
            u = u_gt
        elif mapping == "random":
            u = sample_hypervector(domain.dim, rng)
        else:
            u = mix * u_gt + (1.0 - mix) * sample_hypervector(domain.dim, rng)

        translated = translate_scene(v_src, u)
        cosines[t] = cosine_similarity(translated, v_tgt)

        mem = ItemMemory()
        for label in domain.object_vocab:
            mem.add(label, symbols.objects[label])
        for obj_label, tgt_label in twin.pairs:
            query = bind(translated, symbols.tgt_attrs[tgt_label])
            top_label, _ = mem.cleanup(query, k=1)[0]
            correct += int(top_label == obj_label)
            attempts += 1

    accuracy = correct / attempts
    sem = float(np.std(cosines, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return BenchReport(
        recovery_cosine=float(np.mean(cosines)),
        cleanup_accuracy=accuracy,
        flip_rate=1.0 - accuracy,
        dim=domain.dim,
        k=scene.k,
        mapping=mapping,
        trials=trials,
        seed=seed,
        recovery_cosine_sem=sem,
        attempts=attempts,
    )


def run_config(config: BenchConfig, stream: int = 0) -> BenchReport:
    """measure_recovery on the config's default domain and scene."""
    return measure_recovery(
        default_domain(config),
        default_scene(config),
        mapping=config.mapping,
        trials=config.trials,
        seed=config.seed,
        mix=config.mix,
        stream=stream,
    )


def run_sweep(axis: str, grid, base: BenchConfig) -> list[tuple[object, BenchReport]]:
    """One report per grid point along the named axis; returns (value, report) pairs."""
    if axis not in SWEEP_AXES:
        raise InvalidArgumentError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    grid = list(grid)
    if not grid:
        raise InvalidArgumentError("sweep grid must be nonempty")

    results = []
    for i, value in enumerate(grid):
        if axis == "dim":
            cfg = replace(base, dim=int(value))
        elif axis == "k":
            cfg = replace(base, k=int(value))
        elif axis == "mapping_kind":
            cfg = replace(base, mapping=str(value))
        else:
            cfg = replace(base, mapping="mixed", mix=float(value))
        results.append((value, run_config(cfg, stream=i)))
    return results


def _format_value(value) -> str:
    if isinstance(value, bool):
        raise InvalidArgumentError("boolean axis values are not supported")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):g}"
    return str(value)


def reports_to_csv(axis: str, results: list[tuple[object, BenchReport]]) -> str:
    """Render sweep results with the fixed header and \\n line endings."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for value, r in results:
        buf.write(
            f"{axis},{_format_value(value)},{r.dim},{r.k},{r.mapping},{r.trials},"
            f"{r.recovery_cosine:.6f},{r.cleanup_accuracy:.6f},{r.flip_rate:.6f},{r.seed}\n"
        )
    return buf.getvalue()
