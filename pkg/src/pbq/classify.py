"""Admissible parameters, vacuum irreps, Casimir values and module equivalences.

The deformation parameter is ``q = exp(i*pi*m/(2k))`` with ``m/k`` an
admissible fraction (``k >= 2``, ``1 <= m <= k-1``, ``gcd(m, k) = 1``).
Three regimes behave differently and are tagged by :class:`CaseTag`.

Equivalence is decided with the shift map ``|p;n> -> |p';n+shift>``. Every
module handled here is generated by a^+ from its lowest basis vector, and on
such a module a^- has kernel spanned by singular basis vectors, so any
intertwiner is a scalar multiple of the shift map. Comparing the K, a^+ and
a^- bands entry by entry is therefore a complete test.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .algebra import ParaBoseAlgebra, casimir_element
from .exactnum import (
    ApproxComplex,
    CyclotomicNumber,
    ExactQ,
    UndefinedParameterError,
    scalar_to_json,
    to_complex,
)
from .fockrep import (
    ModuleSpec,
    RelationReport,
    RepMatrices,
    evaluate_element,
    is_zero_matrix,
    module_matrices,
    parse_weight,
    verify_relations,
    verma_coefficient,
)

__all__ = [
    "AlgebraParams",
    "CaseTag",
    "CentralReport",
    "EquivalenceClaim",
    "GeneratorMap",
    "IntertwinerCertificate",
    "IrrepDescriptor",
    "admissible_pairs",
    "canonicalize",
    "casimir_eigenvalue",
    "casimir_matrix",
    "central_checks",
    "closed_form_L",
    "default_p_grid",
    "descriptors_to_csv",
    "descriptors_to_json",
    "dimension_coincidences",
    "equivalence_instances",
    "find_intertwiner",
    "integer_window",
    "is_admissible",
    "is_scalar_matrix",
    "quadruple_modules",
    "scan_L",
    "vacuum_irreps",
]


class CaseTag(enum.Enum):
    EVEN_K_ODD_M = "k even, m odd"
    ODD_K_ODD_M = "k odd, m odd"
    ODD_K_EVEN_M = "k odd, m even"


def is_admissible(m: int, k: int) -> bool:
    return k >= 2 and 1 <= m <= k - 1 and math.gcd(m, k) == 1


def admissible_pairs(max_k: int, min_k: int = 2) -> list[tuple[int, int]]:
    return [(m, k) for k in range(min_k, max_k + 1) for m in range(1, k) if math.gcd(m, k) == 1]


@dataclass(frozen=True)
class AlgebraParams:
    """An admissible pair ``(m, k)``."""

    m: int
    k: int

    def __post_init__(self) -> None:
        if not is_admissible(self.m, self.k):
            raise ValueError(f"(m={self.m}, k={self.k}) is not admissible; use canonicalize()")

    @property
    def case(self) -> CaseTag:
        if self.k % 2 == 0:
            return CaseTag.EVEN_K_ODD_M
        return CaseTag.ODD_K_ODD_M if self.m % 2 else CaseTag.ODD_K_EVEN_M

    @property
    def q(self) -> ExactQ:
        return ExactQ(self.m, self.k)

    @property
    def window(self) -> int:
        """Upper end W of the weight window ``0 < p <= W``."""
        if self.case is CaseTag.ODD_K_EVEN_M:
            return 2 * self.k if self.m % 4 == 2 else self.k
        return 4 * self.k

    @property
    def generic_top(self) -> int:
        """Top index L of the vacuum irrep at non-integer weight (when simple)."""
        return self.k - 1 if self.case is CaseTag.ODD_K_ODD_M else 2 * self.k - 1

    @property
    def weight_period(self) -> int:
        """Multiplicative order of q; K-spectra depend on p modulo it."""
        return 4 * self.k if self.m % 2 else 2 * self.k

    def algebra(self) -> ParaBoseAlgebra:
        return ParaBoseAlgebra(self.q)

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k, "case": self.case.value}

    def __str__(self) -> str:
        return f"(m={self.m}, k={self.k})"


# --------------------------------------------------------------------------
# canonicalization


@dataclass(frozen=True)
class GeneratorMap:
    """Raw generators expressed through the canonical ones.

    ``swap`` exchanges a^+ and a^-; ``k_sign`` multiplies K (and K^-1).
    ``steps`` records the elementary maps applied, each ``+1`` or ``-1``.
    """

    swap: bool = False
    k_sign: int = 1
    steps: tuple[int, ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.swap and self.k_sign == 1

    def then(self, xi: int) -> GeneratorMap:
        """Compose with a further elementary map of type ``xi``."""
        if xi == 1:
            return GeneratorMap(self.swap, -self.k_sign, self.steps + (1,))
        return GeneratorMap(not self.swap, self.k_sign, self.steps + (-1,))

    def as_dict(self) -> dict[str, str]:
        sign = "-" if self.k_sign < 0 else ""
        return {
            "a+": "a-" if self.swap else "a+",
            "a-": "a+" if self.swap else "a-",
            "K": f"{sign}K",
            "K^-1": f"{sign}K^-1",
        }

    def apply(self, rep: RepMatrices, raw_q: ExactQ) -> RepMatrices:
        """Matrices of the raw generators on a canonical-parameter module."""
        ap, am = (rep.A_minus, rep.A_plus) if self.swap else (rep.A_plus, rep.A_minus)
        s = self.k_sign
        return rep.replace(q=raw_q, A_plus=ap, A_minus=am, Kmat=rep.Kmat * s, Kinv=rep.Kinv * s)

    def to_json(self) -> dict:
        return {"map": self.as_dict(), "steps": list(self.steps)}


@dataclass(frozen=True)
class Canonicalization:
    raw: tuple[int, int]
    reduced: tuple[int, int]
    params: AlgebraParams
    generator_map: GeneratorMap

    def __iter__(self):
        return iter((self.params, self.generator_map))

    def raw_q(self, d: int = 1) -> ExactQ:
        m, k = self.reduced
        return ExactQ(m, k, d)

    def verify(self, p: object = Fraction(1, 2), L: int | None = None) -> RelationReport:
        """Check the raw relations on the mapped canonical module."""
        spec = ModuleSpec(self.params.m, self.params.k, p, 0, self.params.generic_top if L is None else L)
        rep = module_matrices(spec)
        d = rep.q.d
        return verify_relations(self.generator_map.apply(rep, self.raw_q(d)))

    def to_json(self) -> dict:
        return {
            "raw": {"m": self.raw[0], "k": self.raw[1]},
            "canonical": self.params.to_json(),
            "generator_map": self.generator_map.to_json(),
        }


def canonicalize(m_raw: int, k_raw: int) -> Canonicalization:
    """Bring ``q = exp(i*pi*m_raw/(2*k_raw))`` into the admissible window.

    Returns an object that unpacks as ``(params, generator_map)``.
    """
    if k_raw == 0:
        raise ValueError("k must be nonzero")
    g = math.gcd(m_raw, k_raw)
    m, k = m_raw // g, k_raw // g
    if k < 0:
        m, k = -m, -k
    if k == 1:
        raise UndefinedParameterError(f"q = exp(i*pi*{m_raw}/{2 * k_raw}) is one of +-1, +-i")
    m %= 4 * k
    reduced = (m, k)
    gmap = GeneratorMap()
    if m > 2 * k:
        m -= 2 * k
        gmap = gmap.then(1)
    if m > k:
        m = 2 * k - m
        gmap = gmap.then(-1)
    return Canonicalization((m_raw, k_raw), reduced, AlgebraParams(m, k), gmap)


# --------------------------------------------------------------------------
# top indices


def closed_form_L(params: AlgebraParams, p: int) -> int:
    """Top index of the vacuum irrep at integer weight ``p`` in the window."""
    m, k = params.m, params.k
    if not 0 < p <= params.window:
        raise ValueError(f"p={p} outside the window 0 < p <= {params.window}")
    case = params.case
    if case is CaseTag.EVEN_K_ODD_M:
        if p % 2 == 0:
            return 2 * k - p if p <= 2 * k else 4 * k - p
        if p < k:
            return k - p
        if p in (k + 1, 3 * k + 1):
            return 2 * k - 1
        if p < 3 * k:
            return 3 * k - p
        return 5 * k - p
    if case is CaseTag.ODD_K_ODD_M:
        if p % 2 == 1 or p in (k + 1, 3 * k + 1):
            return k - 1
        if p < k:
            return k - p
        if p <= 2 * k:
            return 2 * k - p
        if p < 3 * k:
            return 3 * k - p
        return 4 * k - p
    if p % 2 == 0:
        return 2 * k - p
    if p <= k:
        return k - p
    if m % 4 == 2:
        return 3 * k - p
    raise ValueError(f"no top-index rule for p={p} at {params}")


def scan_L(m: int, k: int, p: object, n_max: int | None = None) -> int:
    """First index n >= 1 with ``a^-|p;n> = 0``, minus one (exact scan)."""
    w = parse_weight(p)
    q = ExactQ(m, k).for_weight(w) if isinstance(w, Fraction) else None
    if q is None:
        raise TypeError("scan_L needs a rational weight")
    limit = n_max if n_max is not None else 4 * k
    for n in range(1, limit + 1):
        if verma_coefficient(q, w, n) == 0:
            return n - 1
    raise RuntimeError(f"no singular vector up to n={limit}")


def integer_window(params: AlgebraParams) -> list[Fraction]:
    return [Fraction(p) for p in range(1, params.window + 1)]


def default_p_grid(params: AlgebraParams) -> list[Fraction]:
    """Integers and half-integers in ``0 < p <= window``."""
    return [Fraction(j, 2) for j in range(1, 2 * params.window + 1)]


# --------------------------------------------------------------------------
# descriptors


def casimir_eigenvalue(params: AlgebraParams, p: object):
    """``(q^(2p-2) + q^(-2p+2))/2 + 2``."""
    w = parse_weight(p)
    if isinstance(w, Fraction):
        q = params.q.for_weight(w)
        return (q.q_pow(2 * w - 2) + q.q_pow(-2 * w + 2)) * Fraction(1, 2) + 2
    from .exactnum import ApproxQ

    q = ApproxQ.from_root(params.m, params.k, w.digits)
    return (q.q_pow(w * 2 - 2) + q.q_pow(-(w * 2) + 2)) * Fraction(1, 2) + 2


@dataclass(frozen=True, eq=False)
class IrrepDescriptor:
    """The vacuum module ``W(|p;0>, |p;L>)``."""

    params: AlgebraParams
    p: Union[Fraction, ApproxComplex]
    L: int
    K_spectrum: tuple = ()
    casimir: object = None
    unitarizable: object = None
    generic: bool = True
    simple: bool = True

    @property
    def dimension(self) -> int:
        return self.L + 1

    @property
    def spec(self) -> ModuleSpec:
        return ModuleSpec(self.params.m, self.params.k, self.p, 0, self.L)

    def _key(self):
        p = self.p
        if isinstance(p, Fraction):
            p = p % self.params.weight_period
        else:
            p = str(p)
        return (self.params, p, self.L)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IrrepDescriptor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def with_verdict(self, verdict) -> IrrepDescriptor:
        return IrrepDescriptor(
            self.params, self.p, self.L, self.K_spectrum, self.casimir, verdict, self.generic, self.simple
        )

    def to_json(self) -> dict:
        verdict = self.unitarizable
        return {
            "m": self.params.m,
            "k": self.params.k,
            "case": self.params.case.value,
            "p": str(self.p),
            "L": self.L,
            "dim": self.dimension,
            "K_spectrum": [scalar_to_json(x) for x in self.K_spectrum],
            "casimir": scalar_to_json(self.casimir),
            "generic": self.generic,
            "simple": self.simple,
            "unitarizable": None if verdict is None else verdict.to_json(),
        }


def make_descriptor(params: AlgebraParams, p: object, L: int, generic: bool = True) -> IrrepDescriptor:
    w = parse_weight(p)
    q = params.q.for_weight(w)
    spectrum = tuple(q.q_pow(2 * n + w) for n in range(L + 1))
    return IrrepDescriptor(params, w, L, spectrum, casimir_eigenvalue(params, w), None, generic, True)


def vacuum_irreps(params: AlgebraParams, p_grid: Iterable[object] | None = None) -> list[IrrepDescriptor]:
    """Simple vacuum modules for every integer weight in the window plus ``p_grid``.

    Integer weights in the window take their top index from the closed-form
    tables. Other weights are scanned exactly; a non-integer weight whose top
    index falls short of the generic value is flagged ``generic=False``.
    """
    weights = set(integer_window(params))
    grid = default_p_grid(params) if p_grid is None else p_grid
    for p in grid:
        w = parse_weight(p)
        if not isinstance(w, Fraction):
            raise TypeError("vacuum_irreps needs rational weights")
        weights.add(w)
    out = []
    for w in sorted(weights):
        if w.denominator == 1 and 0 < w <= params.window:
            out.append(make_descriptor(params, w, closed_form_L(params, int(w))))
        else:
            L = scan_L(params.m, params.k, w)
            generic = w.denominator == 1 or L == params.generic_top
            out.append(make_descriptor(params, w, L, generic))
    return sorted(out, key=lambda d: (d.p, d.L))


def descriptors_to_json(descs: Sequence[IrrepDescriptor]) -> str:
    return json.dumps([d.to_json() for d in descs], indent=2, sort_keys=True)


CSV_COLUMNS = ("m", "k", "case", "p", "L", "dim", "casimir_re", "casimir_im", "unitarizable")


def descriptors_to_csv(descs: Sequence[IrrepDescriptor], digits: int = 20) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for d in descs:
        z = to_complex(d.casimir, max(digits, 16)) if isinstance(d.casimir, CyclotomicNumber) else d.casimir
        import mpmath

        verdict = "" if d.unitarizable is None else d.unitarizable.status.value
        writer.writerow(
            [
                d.params.m,
                d.params.k,
                d.params.case.value,
                str(d.p),
                d.L,
                d.dimension,
                mpmath.nstr(z.real, digits),
                mpmath.nstr(z.imag, digits),
                verdict,
            ]
        )
    return buf.getvalue()


# --------------------------------------------------------------------------
# Casimir and central elements


def is_scalar_matrix(mat: np.ndarray, q, tol=None) -> tuple[bool, object]:
    """Whether ``mat`` is a multiple of the identity, with the multiple."""
    d = mat.shape[0]
    if d == 0:
        return True, q.zero()
    lam = mat[0, 0]
    off = mat.copy()
    for r in range(d):
        off[r, r] = mat[r, r] - lam
    return is_zero_matrix(off, q, tol), lam


def casimir_matrix(spec: ModuleSpec) -> RepMatrices | np.ndarray:
    rep = module_matrices(spec)
    alg = ParaBoseAlgebra(ExactQ(spec.m, spec.k))
    return evaluate_element(casimir_element(alg), rep)


@dataclass(frozen=True)
class CentralReport:
    a_plus_power_zero: bool
    a_minus_power_zero: bool
    K_power_scalar: bool
    K_power_value: object

    @property
    def passed(self) -> bool:
        return self.a_plus_power_zero and self.a_minus_power_zero and self.K_power_scalar

    def to_json(self) -> dict:
        return {
            "a_plus_power_zero": self.a_plus_power_zero,
            "a_minus_power_zero": self.a_minus_power_zero,
            "K_power_scalar": self.K_power_scalar,
            "K_power_value": scalar_to_json(self.K_power_value),
            "passed": self.passed,
        }


def central_checks(desc: IrrepDescriptor) -> CentralReport:
    """``(a^+-)^(4k) = 0`` and ``K^(2k)`` scalar on the module of ``desc``."""
    k = desc.params.k
    rep = module_matrices(desc.spec)
    alg = ParaBoseAlgebra(ExactQ(desc.params.m, k))
    q = rep.q
    ap = evaluate_element(alg.monomial(i=4 * k), rep)
    am = evaluate_element(alg.monomial(j=4 * k), rep)
    kk = evaluate_element(alg.monomial(s=2 * k), rep)
    scalar, value = is_scalar_matrix(kk, q)
    return CentralReport(is_zero_matrix(ap, q), is_zero_matrix(am, q), scalar, value)


# --------------------------------------------------------------------------
# equivalences


@dataclass(frozen=True)
class IntertwinerCertificate:
    """The shift map ``|p;n> -> |p';n+shift>`` checked on every basis vector."""

    source: ModuleSpec
    target: ModuleSpec
    shift: int
    weight_shift: object
    verified: bool
    mismatches: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "index_map": {"shift": self.shift, "weight_shift": str(self.weight_shift)},
            "verified": self.verified,
            "mismatches": list(self.mismatches),
        }


def _is_module(spec: ModuleSpec, q) -> bool:
    """Truncation is invariant: bottom annihilated by a^-, top+1 singular."""
    lo_ok = spec.n_lo == 0 or q.is_zero(verma_coefficient(q, spec.p, spec.n_lo))
    hi_ok = q.is_zero(verma_coefficient(q, spec.p, spec.n_hi + 1))
    return lo_ok and hi_ok


def check_shift_map(source: ModuleSpec, target: ModuleSpec) -> IntertwinerCertificate:
    """Compare K, a^+ and a^- actions under the shift map; never returns None."""
    shift = target.n_lo - source.n_lo
    wshift = target.p - source.p
    if (source.m, source.k) != (target.m, target.k) or source.dimension != target.dimension:
        return IntertwinerCertificate(source, target, shift, wshift, False, ("parameters or dimension",))
    if source.exact and target.exact:
        q = ExactQ(source.m, source.k).for_weight(source.p).with_denominator(target.p.denominator)
        tol = None
    else:
        from .exactnum import ApproxQ

        q = ApproxQ.from_root(source.m, source.k)
        tol = None
    bad = []
    if not _is_module(source, q):
        bad.append("source is not a module")
    if not _is_module(target, q):
        bad.append("target is not a module")
    for r in range(source.dimension):
        n, nt = source.n_lo + r, target.n_lo + r
        if not q.is_zero(q.q_pow(2 * n + source.p) - q.q_pow(2 * nt + target.p), tol):
            bad.append(f"K at n={n}")
        if r > 0:
            c1 = verma_coefficient(q, source.p, n)
            c2 = verma_coefficient(q, target.p, nt)
            if not q.is_zero(c1 - c2, tol):
                bad.append(f"a- at n={n}")
    # a^+ is the unit shift on both sides and vanishes at both tops.
    return IntertwinerCertificate(source, target, shift, wshift, not bad, tuple(bad))


def find_intertwiner(source: ModuleSpec, target: ModuleSpec) -> IntertwinerCertificate | None:
    """A verified certificate for ``source ~ target``, or None."""
    if source.n_hi is None or target.n_hi is None:
        raise ValueError("find_intertwiner needs finite modules")
    if source.dimension != target.dimension:
        return None
    cert = check_shift_map(source, target)
    return cert if cert.verified else None


@dataclass(frozen=True)
class EquivalenceClaim:
    family: str
    source: ModuleSpec
    target: ModuleSpec


def _halves_and_integers(upper: int) -> list[Fraction]:
    return [Fraction(j, 2) for j in range(1, 2 * upper + 1)]


def equivalence_instances(params: AlgebraParams, translation_weights: Iterable[object] | None = None) -> list[EquivalenceClaim]:
    """Every asserted module equivalence for ``params``, as concrete pairs."""
    m, k = params.m, params.k
    case = params.case
    out: list[EquivalenceClaim] = []

    def W(p, lo, hi) -> ModuleSpec:
        return ModuleSpec(m, k, p, lo, hi)

    def add(family, p, lo, hi, p2, lo2, hi2):
        out.append(EquivalenceClaim(family, W(p, lo, hi), W(p2, lo2, hi2)))

    weights = [parse_weight(p) for p in translation_weights] if translation_weights is not None else _halves_and_integers(4 * k)
    for p in weights:
        for s in (-1, 1, 2):
            for N in (0, 1, 2):
                add("translation by 4ks, shift by 2kN", p, 0, 2 * k - 1, p + 4 * k * s, 2 * k * N, 2 * k * (N + 1) - 1)

    if case is CaseTag.EVEN_K_ODD_M:
        for p in range(2, 4 * k + 1, 2):
            pp = 4 * k - p + 2
            if p <= 2 * k:
                add("even-weight tail", p, 2 * k - p + 1, 2 * k - 1, pp, 0, 4 * k - pp)
            else:
                add("even-weight tail", p, 4 * k - p + 1, 2 * k - 1, pp, 0, 2 * k - pp)
        for p in range(1, 4 * k, 2):
            if p < k:
                pp = 2 * k - p + 2
                add("odd-weight tail", p, k - p + 1, 2 * k - 1, pp, 0, 3 * k - pp)
            elif k + 3 <= p <= 2 * k + 1:
                pp = 2 * k - p + 2
                add("odd-weight tail", p, 3 * k - p + 1, 2 * k - 1, pp, 0, k - pp)
            elif 2 * k + 3 <= p <= 3 * k - 1:
                pp = 6 * k - p + 2
                add("odd-weight tail", p, 3 * k - p + 1, 2 * k - 1, pp, 0, 5 * k - pp)
            elif 3 * k + 3 <= p:
                pp = 6 * k - p + 2
                add("odd-weight tail", p, 5 * k - p + 1, 2 * k - 1, pp, 0, 3 * k - pp)

    elif case is CaseTag.ODD_K_ODD_M:
        for p in _halves_and_integers(4 * k):
            p2 = p + 2 * k if p <= 2 * k else p - 2 * k
            add("half-period translation", p, 0, k - 1, p2, k, 2 * k - 1)
        for p in range(2, 4 * k + 1, 2):
            if p < k:
                pp = 2 * k - p + 2
                add("even-weight tail", p, k - p + 1, k - 1, pp, 0, 2 * k - pp)
            elif k + 3 <= p <= 2 * k:
                pp = 4 * k - p + 2
                add("even-weight tail", p, 2 * k - p + 1, k - 1, pp, 0, 3 * k - pp)
            elif 2 * k + 2 <= p <= 3 * k - 1:
                pp = 6 * k - p + 2
                add("even-weight tail", p, 3 * k - p + 1, k - 1, pp, 0, 4 * k - pp)
            elif 3 * k + 3 <= p:
                pp = 4 * k - p + 2
                add("even-weight tail", p, 4 * k - p + 1, k - 1, pp, 0, k - pp)

    else:
        for p in _halves_and_integers(2 * k):
            add("weight translation by 2k", p, 0, 2 * k - 1, p + 2 * k, 0, 2 * k - 1)
        if m % 4 == 0:
            for p in _halves_and_integers(k):
                add("weight translation by k", p, 0, 2 * k - 1, p + k, 0, 2 * k - 1)
        add("odd-weight tail", 1, k, 2 * k - 1, 1, 0, k - 1)
        for p in range(3, 2 * k, 2):
            if m % 4 == 2 and p <= k:
                pp = 2 * k - p + 2
                add("odd-weight tail", p, k - p + 1, 2 * k - 1, pp, 0, 3 * k - pp)
            elif m % 4 == 2:
                pp = 2 * k - p + 2
                add("odd-weight tail", p, 3 * k - p + 1, 2 * k - 1, pp, 0, k - pp)
            elif p <= k:
                pp = k - p + 2
                add("odd-weight tail", p, k - p + 1, 2 * k - 1, pp, 0, 2 * k - pp)
        for p in range(2, 2 * k + 1, 2):
            pp = 2 * k - p + 2
            add("even-weight tail", p, 2 * k - p + 1, 2 * k - 1, pp, 0, 2 * k - pp)
    return out


def dimension_coincidences(params: AlgebraParams) -> list[tuple[ModuleSpec, ModuleSpec]]:
    """Pairs of vacuum irreps with equal dimension and equal Casimir value."""
    m, k = params.m, params.k

    def V(p, L):
        return ModuleSpec(m, k, p, 0, L)

    pairs = []
    if params.case is CaseTag.EVEN_K_ODD_M:
        for p in range(2, 2 * k + 1, 2):
            pairs.append((V(p, 2 * k - p), V(p + 2 * k, 2 * k - p)))
        for p in range(1, k, 2):
            pairs.append((V(p, k - p), V(p + 2 * k, k - p)))
        for p in range(k + 3, 2 * k, 2):
            pairs.append((V(p, 3 * k - p), V(p + 2 * k, 3 * k - p)))
    elif params.case is CaseTag.ODD_K_ODD_M:
        for p in range(2, k, 2):
            pairs.append((V(p, k - p), V(p + 2 * k, k - p)))
        for p in range(k + 3, 2 * k + 1, 2):
            pairs.append((V(p, 2 * k - p), V(p + 2 * k, 2 * k - p)))
        pairs.append((V(k + 1, k - 1), V(3 * k + 1, k - 1)))
    return pairs


def quadruple_modules(params: AlgebraParams, p: int) -> list[ModuleSpec]:
    """Four inequivalent vacuum irreps sharing a Casimir value (even ``p <= 2k``)."""
    if params.case is not CaseTag.EVEN_K_ODD_M or p % 2 or not 2 <= p <= 2 * params.k:
        raise ValueError("quadruple is defined for k even, m odd and even 2 <= p <= 2k")
    m, k = params.m, params.k
    return [
        ModuleSpec(m, k, p, 0, 2 * k - p),
        ModuleSpec(m, k, p + 2 * k, 0, 2 * k - p),
        ModuleSpec(m, k, 2 * k - p + 2, 0, p - 2),
        ModuleSpec(m, k, 4 * k - p + 2, 0, p - 2),
    ]
