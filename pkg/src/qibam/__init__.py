"""QiBAM: indexed associative-memory search for DNA read alignment,
simulated on a dense state vector."""

from .circuit import Circuit, CircuitBuilder, execute
from .classical import ClassicalAlignment, classical_align
from .dna import (
    QuantumDatabase,
    build_hamming_evolution,
    build_qpd_circuit,
    encode_pattern,
    hamming_distance,
    substrings,
)
from .kernels import BACKEND
from .qasm import parse, serialize
from .resources import ResourceEstimate, estimate
from .search import (
    AlignmentResult,
    AutoKnown,
    BoyerRandomized,
    Diffusion,
    DistributedQuery,
    Fixed,
    QueryConfig,
    Schedule,
    align,
    boyer_search,
    build_diffusion,
    build_memory_oracle,
    build_query_oracle,
    grover_iterations,
    query_state,
)
from .statevector import (
    H,
    X,
    ControlledPhase,
    ControlledX,
    DenseUnitary,
    Ry,
    Rz,
    StateVector,
    apply,
    marginal,
    new_state,
    probabilities,
    sample,
)

__version__ = "0.1.0"
