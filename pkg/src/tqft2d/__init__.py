"""Two-dimensional TQFTs as commutative Frobenius algebras."""

from .cobordism import Cobordism, Component, Generator, compose, evaluate, generator, normal_form, reverse, surface, tensor
from .errors import (
    ArityMismatch,
    AxiomViolation,
    FormNotPositive,
    IncompatiblePair,
    NotCommuting,
    NotPositiveDefinite,
    RankDeficient,
    SingularMatrix,
    TQFTError,
)
from .frobenius import (
    FrobeniusAlgebra,
    closed_surface,
    comultiplication,
    copairing,
    handle_operator,
    pairing,
    verify_axioms,
)
from .hermitian import (
    HermitianStructure,
    RealForm,
    adjoint_residual,
    build_involution,
    extract_real_form,
    induced_dual_form,
    induced_tensor_form,
    verify_adjoint,
)
from .linalg import DEFAULT_TOL, ConjugateLinearMap
from .unitary import UnitaryClassification, classify, closed_surface_series, cstar_check, handle_spectrum

__version__ = "0.1.0"
