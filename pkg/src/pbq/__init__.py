"""Exact representation theory of the deformed para-Bose superalgebra pB_q at roots of unity."""
from .algebra import AlgebraElement, Generator, Grade, ParaBoseAlgebra, casimir_element, grade, normal_order, omega
from .classify import (
    AlgebraParams,
    CaseTag,
    IrrepDescriptor,
    canonicalize,
    casimir_eigenvalue,
    central_checks,
    closed_form_L,
    find_intertwiner,
    is_admissible,
    vacuum_irreps,
)
from .exactnum import (
    ApproxComplex,
    ApproxQ,
    CyclotomicNumber,
    ExactQ,
    RationalAngle,
    TrigKind,
    UndefinedParameterError,
    q_brace,
    q_bracket,
    to_complex,
    trig_sign,
)
from .fockrep import (
    ModuleSpec,
    RepMatrices,
    evaluate_element,
    is_irreducible,
    module_matrices,
    quotient_module,
    singular_vectors,
    verify_relations,
    verma_action,
)
from .grammar import ParseError, UnboundParameterError, parse_expression, pretty_print
from .unitary import (
    UnitarityStatus,
    UnitarityVerdict,
    classify_unitarizable,
    is_unitarizable,
    orthonormal_matrices,
    unitarity_ratios,
    verify_unitarity,
)

__version__ = "0.1.0"
