"""Indexed associative-memory search over the encoded database.

Pipeline: load the indexed database, XOR the query into the data register
(so every memory now holds its mismatch mask), then alternate an oracle
with a diffusion step and read the tag register.

Two diffusion references are available:

* ``Diffusion.MEMORY`` (default) reflects about the prepared database
  state ``U|0>``, built as ``U^dag``, a zero-state phase flip, then ``U``.
* ``Diffusion.UNIFORM`` is the textbook inversion about the mean over all
  tag and data qubits (``U = H^n`` in the same construction).

With the binomial query oracle, only the memory reference keeps the
probability of stored tags ordered by Hamming distance for every width;
the uniform one inverts that order for widths between roughly 0.15 and 0.5.
"""
from __future__ import annotations

import enum
import functools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, execute
from .dna import (
    QuantumDatabase,
    build_database_circuit,
    encode_value,
    hamming_distance,
    normalize,
)
from .errors import (
    DimensionTooLarge,
    GammaOutOfRange,
    LayoutInvalid,
    MaxRoundsExceeded,
    NoSolutions,
    QubitCeilingExceeded,
    QueryTooLong,
    SolutionsExceedSpace,
)
from .statevector import (
    MAX_QUBITS,
    ControlledPhase,
    DenseUnitary,
    H,
    X,
    apply,
    marginal,
    new_state,
    sample_distribution,
)

MAX_ORACLE_QUBITS = 12
BOYER_GROWTH = 6 / 5
TIE_TOL = 1e-12


class Schedule(str, enum.Enum):
    SINGLE = "single"
    TWO_PHASE = "two-phase"


class Diffusion(str, enum.Enum):
    MEMORY = "memory"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class Fixed:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"iteration count must be >= 0, got {self.k}")


@dataclass(frozen=True)
class AutoKnown:
    num_solutions: int = 1

    def __post_init__(self):
        if self.num_solutions < 1:
            raise NoSolutions(f"num_solutions must be >= 1, got {self.num_solutions}")


@dataclass(frozen=True)
class BoyerRandomized:
    max_rounds: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.max_rounds < 0:
            raise ValueError(f"max_rounds must be >= 0, got {self.max_rounds}")


@dataclass(frozen=True)
class QueryConfig:
    gamma: float = 0.25
    schedule: Schedule = Schedule.TWO_PHASE
    iterations: object = field(default_factory=lambda: Fixed(1))
    diffusion: Diffusion = Diffusion.MEMORY
    shots: int = 1024
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "schedule", Schedule(self.schedule))
        object.__setattr__(self, "diffusion", Diffusion(self.diffusion))
        _check_gamma(self.gamma)
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if not isinstance(self.iterations, (Fixed, AutoKnown, BoyerRandomized)):
            raise TypeError(f"unknown iteration policy {self.iterations!r}")


# -- distributed query -------------------------------------------------------

def _check_gamma(gamma):
    if not 0.0 < gamma < 1.0:
        raise GammaOutOfRange(f"gamma must lie in (0, 1), got {gamma}")


@dataclass(frozen=True)
class DistributedQuery:
    """Binomial query over ``d`` bits centred on ``center`` (an int bit pattern)."""

    d: int
    gamma: float
    center: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        _check_gamma(self.gamma)
        if self.gamma == 0.5:
            warnings.warn("gamma = 0.5 gives a flat query state", RuntimeWarning, stacklevel=3)
        if not 0 <= self.center < (1 << self.d):
            raise ValueError(f"center {self.center} does not fit in {self.d} bits")


def query_state(q):
    """Amplitudes sqrt(gamma**h * (1-gamma)**(d-h)), h = Hamming distance to the center."""
    x = np.arange(1 << q.d, dtype=np.int64)
    h = np.array([int(v).bit_count() for v in (x ^ q.center)], dtype=np.float64)
    return np.sqrt(q.gamma ** h * (1.0 - q.gamma) ** (q.d - h))


@functools.lru_cache(maxsize=32)
def _reflection_matrix(d, gamma, center):
    b = query_state(DistributedQuery(d, gamma, center))
    mat = np.eye(1 << d, dtype=np.complex128) - 2.0 * np.outer(b, b)
    mat.setflags(write=False)
    return mat


def build_query_oracle(q, qubits=None):
    """``I - 2|b><b|`` as a dense unitary on ``qubits`` (default ``0..d-1``)."""
    if q.d > MAX_ORACLE_QUBITS:
        raise DimensionTooLarge(f"dense oracle limited to {MAX_ORACLE_QUBITS} qubits, got {q.d}")
    qubits = tuple(range(q.d)) if qubits is None else tuple(qubits)
    if len(qubits) != q.d:
        raise ValueError(f"oracle acts on {q.d} qubits, {len(qubits)} given")
    return DenseUnitary(qubits, _reflection_matrix(q.d, q.gamma, q.center), label="query-oracle")


# -- marking and diffusion ---------------------------------------------------

def _flip_basis_state(qubits, value):
    """Phase -1 on the basis state where ``qubits`` read ``value``."""
    dress = [q for j, q in enumerate(qubits) if not (value >> j) & 1]
    return (
        [X(q) for q in dress]
        + [ControlledPhase(tuple(qubits), math.pi)]
        + [X(q) for q in dress]
    )


def build_memory_oracle(db, query):
    """Phase-flip each stored memory at its post-evolution location."""
    if not isinstance(db, QuantumDatabase):
        raise LayoutInvalid("expected a QuantumDatabase")
    mask = encode_value(query)
    qubits = db.tag_qubits + db.data_qubits
    ops = []
    for idx, bits in db.memories:
        ops.extend(_flip_basis_state(qubits, idx | ((bits ^ mask) << db.q_t)))
    return ops


def build_diffusion(num_qubits, qubits=None):
    """Inversion about the mean over ``qubits`` (default all), up to a global phase."""
    if num_qubits < 1:
        raise ValueError("diffusion needs at least one qubit")
    qubits = tuple(range(num_qubits)) if qubits is None else tuple(qubits)
    hs = [H(q) for q in qubits]
    return hs + _flip_basis_state(qubits, 0) + hs


def build_state_reflection(prep):
    """Reflection about ``prep|0...0>``, up to a global phase."""
    qubits = tuple(range(prep.num_qubits))
    return list(prep.inverse().ops) + _flip_basis_state(qubits, 0) + list(prep.ops)


def grover_iterations(space_size, num_solutions):
    """floor(pi/4 * sqrt(space_size / num_solutions))."""
    if num_solutions < 1:
        raise NoSolutions(f"num_solutions must be >= 1, got {num_solutions}")
    if num_solutions >= space_size:
        raise SolutionsExceedSpace(f"{num_solutions} solutions in a space of {space_size}")
    return math.floor(math.pi / 4 * math.sqrt(space_size / num_solutions))


# -- pipeline ----------------------------------------------------------------

class SearchPlan:
    """Gate lists for one (reference, query) pair, reusable across iteration counts."""

    def __init__(self, reference, query, gamma, diffusion, exclusions=(), max_qubits=MAX_QUBITS):
        reference, query = normalize(reference), normalize(query)
        if len(query) > len(reference):
            raise QueryTooLong(f"query length {len(query)} exceeds reference length {len(reference)}")
        self.reference = reference
        self.query = query
        self.db = QuantumDatabase.from_reference(reference, len(query), exclude=exclusions)
        if self.db.num_qubits > max_qubits:
            raise QubitCeilingExceeded(
                f"{self.db.num_qubits} qubits needed, simulator ceiling is {max_qubits}"
            )
        self.prep = build_database_circuit(self.db, query)
        self.query_oracle = [
            build_query_oracle(DistributedQuery(self.db.q_d, gamma), self.db.data_qubits)
        ]
        self.memory_oracle = build_memory_oracle(self.db, query)
        search_qubits = self.db.tag_qubits + self.db.data_qubits
        if Diffusion(diffusion) is Diffusion.MEMORY:
            self.diffusion = build_state_reflection(self.prep)
        else:
            self.diffusion = build_diffusion(self.db.num_qubits, search_qubits)
        self._initial = None

    @property
    def search_space(self):
        """Number of tag values: the space the answer is read from."""
        return 1 << self.db.q_t

    def initial_state(self):
        if self._initial is None:
            self._initial = execute(self.prep, new_state(self.db.num_qubits))
        return self._initial.copy()

    def circuit(self, k, schedule):
        """Complete gate-level circuit for ``k`` iterations (dense oracle included)."""
        ops = list(self.prep.ops)
        for step in self.steps(k, schedule):
            ops.extend(step)
        return Circuit(self.db.num_qubits, tuple(ops), name=f"qibam-k{k}")

    def steps(self, k, schedule):
        schedule = Schedule(schedule)
        for it in range(k):
            if schedule is Schedule.TWO_PHASE and it > 0:
                yield self.memory_oracle + self.diffusion
            else:
                yield self.query_oracle + self.diffusion

    def run(self, k, schedule):
        state = self.initial_state()
        for step in self.steps(k, schedule):
            for op in step:
                apply(state, op)
        return state

    def tag_distribution(self, k, schedule):
        return marginal(self.run(k, schedule), self.db.tag_qubits)

    def classical_distances(self):
        m = self.db.pattern_length
        return {
            i: hamming_distance(self.reference[i:i + m], self.query)
            for i in self.db.stored_indices
        }


def rank_tags(probs, tol=TIE_TOL):
    """Tags by descending probability; values within ``tol`` tie and go lowest index first."""
    order = sorted(range(len(probs)), key=lambda t: (-probs[t], t))
    ranked, group = [], []
    for t in order:
        if group and probs[group[0]] - probs[t] > tol:
            ranked.extend(sorted(group))
            group = []
        group.append(t)
    ranked.extend(sorted(group))
    return tuple(ranked)


@dataclass(frozen=True)
class AlignmentResult:
    tag_probabilities: np.ndarray
    histogram: dict
    ranking: tuple
    classical_distances: dict
    best_index: object
    iterations: int
    stored_tags: tuple

    def to_dict(self):
        return {
            "tag_probabilities": [float(p) for p in self.tag_probabilities],
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "ranking": list(self.ranking),
            "classical_distances": {str(k): v for k, v in self.classical_distances.items()},
            "best_index": self.best_index,
            "iterations": self.iterations,
            "stored_tags": list(self.stored_tags),
        }


def resolve_iterations(policy, space_size):
    if isinstance(policy, Fixed):
        return policy.k
    if isinstance(policy, AutoKnown):
        return grover_iterations(space_size, policy.num_solutions)
    raise TypeError("randomized iteration counts are handled by boyer_search")


def align(reference, query, cfg=None, exclusions=(), max_qubits=MAX_QUBITS):
    """Run the full search and read out the tag register.

    Exact probabilities come from the state vector; ``histogram`` holds
    ``cfg.shots`` seeded samples of the same distribution.
    """
    cfg = cfg or QueryConfig()
    plan = SearchPlan(reference, query, cfg.gamma, cfg.diffusion, exclusions, max_qubits)
    k = resolve_iterations(cfg.iterations, plan.search_space)
    probs = plan.tag_distribution(k, cfg.schedule)
    ranking = rank_tags(probs)
    stored = plan.db.stored_indices
    stored_set = set(stored)
    best = next((t for t in ranking if t in stored_set), None)
    return AlignmentResult(
        tag_probabilities=probs,
        histogram=sample_distribution(probs, cfg.shots, cfg.seed),
        ranking=ranking,
        classical_distances=plan.classical_distances(),
        best_index=best,
        iterations=k,
        stored_tags=stored,
    )


# -- unknown number of solutions ---------------------------------------------

@dataclass(frozen=True)
class BoyerOutcome:
    tag: object
    verified: bool
    rounds: int
    iterations: tuple = ()


def _round_seed(seed, r):
    return int(np.random.SeedSequence([int(seed), int(r)]).generate_state(1, np.uint64)[0])


def boyer_search(reference, query, cfg, exclusions=(), max_qubits=MAX_QUBITS):
    """Randomized-iteration search with classical verification of each shot.

    Round r draws k uniformly from [0, m), runs k iterations, measures the
    tag once and accepts it if its window is at the best stored distance;
    otherwise m grows by 6/5 up to sqrt(search space). Raises
    :class:`MaxRoundsExceeded` (carrying the best tag seen) on exhaustion.
    """
    policy = cfg.iterations
    if not isinstance(policy, BoyerRandomized):
        raise TypeError("boyer_search needs cfg.iterations = BoyerRandomized(...)")
    plan = SearchPlan(reference, query, cfg.gamma, cfg.diffusion, exclusions, max_qubits)
    distances = plan.classical_distances()
    if not distances:
        raise LayoutInvalid("database holds no memories")
    target = min(distances.values())
    rng = np.random.Generator(np.random.Philox(key=policy.seed))
    cap = math.sqrt(plan.search_space)
    m = 1.0
    best_tag, best_d = None, None
    used = []
    for r in range(1, policy.max_rounds + 1):
        k = int(rng.integers(0, math.ceil(m)))
        used.append(k)
        probs = plan.tag_distribution(k, cfg.schedule)
        (tag,) = sample_distribution(probs, 1, _round_seed(policy.seed, r))
        d = distances.get(tag)
        if d is not None:
            if d == target:
                return BoyerOutcome(tag, True, r, tuple(used))
            if best_d is None or d < best_d:
                best_tag, best_d = tag, d
        m = min(BOYER_GROWTH * m, cap)
    raise MaxRoundsExceeded(BoyerOutcome(best_tag, False, policy.max_rounds, tuple(used)))
