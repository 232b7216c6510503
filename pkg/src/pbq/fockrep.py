"""Fock (Verma) modules F(p) of pB_q and their finite truncations.

Basis ``|p;n>``, n = 0, 1, 2, ... with

    K   |p;n> = q^(2n+p) |p;n>
    a^+ |p;n> = |p;n+1>
    a^- |p;n> = c_n |p;n-1>,   c_n = [n]{n+p-1} (n even),  [n+p-1]{n} (n odd)

A truncation ``W(n_lo..n_hi)`` keeps the span of ``|p;n_lo> .. |p;n_hi>``
and sets ``a^+|p;n_hi> = 0``. It is a genuine module exactly when
``c_{n_lo} = 0`` (or ``n_lo = 0``) and ``c_{n_hi+1} = 0``.
"""
from __future__ import annotations

import enum
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath
import numpy as np

from .algebra import AlgebraElement, Generator
from .exactnum import (
    DEFAULT_DIGITS,
    ApproxComplex,
    ApproxQ,
    CyclotomicNumber,
    ExactQ,
    _ctx,
    scalar_to_json,
    to_complex,
)

__all__ = [
    "BasisKind",
    "InvalidQuotientError",
    "ModuleSpec",
    "RelationReport",
    "RepMatrices",
    "SingularVectorReport",
    "evaluate_element",
    "is_irreducible",
    "is_zero_matrix",
    "module_matrices",
    "parse_weight",
    "quotient_module",
    "singular_vectors",
    "sparse_matmul",
    "verify_relations",
    "verma_action",
    "verma_coefficient",
]

Weight = Union[Fraction, ApproxComplex]
QParam = Union[ExactQ, ApproxQ]


class InvalidQuotientError(ValueError):
    """The requested cut is not at a singular vector."""


def parse_weight(p: object, digits: int = DEFAULT_DIGITS) -> Weight:
    """Exact rational for ints, Fractions and strings like ``"3/2"``; Approx otherwise."""
    if isinstance(p, bool):
        raise TypeError("weight cannot be a bool")
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    if isinstance(p, ApproxComplex):
        return p
    if isinstance(p, str):
        text = p.strip()
        try:
            if "." not in text and "e" not in text.lower() and "j" not in text:
                return Fraction(text)
        except ValueError:
            pass
        ctx = _ctx(digits)
        try:
            return ApproxComplex(ctx.mpc(complex(text.replace(" ", ""))) if "j" in text else ctx.mpf(text), digits)
        except (ValueError, TypeError):
            raise ValueError(f"cannot read weight {p!r}") from None
    if isinstance(p, (float, complex, mpmath.mpf, mpmath.mpc)):
        return ApproxComplex(p, digits)
    raise TypeError(f"unsupported weight type {type(p).__name__}")


@dataclass(frozen=True)
class ModuleSpec:
    """The truncated module ``W(|p;n_lo>, |p;n_hi>)`` at ``q = exp(i*pi*m/2k)``.

    ``n_hi=None`` stands for the full (lazy) Fock module.
    """

    m: int
    k: int
    p: Weight
    n_lo: int = 0
    n_hi: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", parse_weight(self.p))
        if self.n_lo < 0:
            raise ValueError("n_lo must be nonnegative")
        if self.n_hi is not None and self.n_hi < self.n_lo:
            raise ValueError("n_hi must be >= n_lo")

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)

    @property
    def finite(self) -> bool:
        return self.n_hi is not None

    @property
    def dimension(self) -> int:
        if self.n_hi is None:
            raise ValueError("infinite module has no finite dimension")
        return self.n_hi - self.n_lo + 1

    def qparam(self, digits: int | None = None) -> QParam:
        """Exact q when possible; ``digits`` forces the Approx backend."""
        if self.exact and digits is None:
            return ExactQ(self.m, self.k).for_weight(self.p)
        return ApproxQ.from_root(self.m, self.k, digits or DEFAULT_DIGITS)

    def with_range(self, n_lo: int, n_hi: int | None) -> ModuleSpec:
        return ModuleSpec(self.m, self.k, self.p, n_lo, n_hi)

    def to_json(self) -> dict:
        p = str(self.p) if self.exact else self.p.to_json()
        return {"m": self.m, "k": self.k, "p": p, "n_lo": self.n_lo, "n_hi": self.n_hi}

    def __str__(self) -> str:
        top = "inf" if self.n_hi is None else self.n_hi
        return f"W(m={self.m}, k={self.k}, p={self.p}; {self.n_lo}..{top})"


# --------------------------------------------------------------------------
# Verma action


def _factors(q: QParam, p: Weight, n: int) -> tuple[tuple[str, object], tuple[str, object]]:
    """The two q-number factors of c_n with their labels."""
    if n % 2 == 0:
        return (("[n]", q.bracket(n)), ("{n+p-1}", q.brace(_shift(p, n - 1))))
    return (("[n+p-1]", q.bracket(_shift(p, n - 1))), ("{n}", q.brace(n)))


def _shift(p: Weight, t: int):
    return p + t


def verma_coefficient(q: QParam, p: Weight, n: int):
    """``c_n`` with ``a^-|p;n> = c_n |p;n-1>``; zero at n = 0."""
    if n == 0:
        return q.zero()
    (_, f1), (_, f2) = _factors(q, p, n)
    return f1 * f2


def verma_action(spec: ModuleSpec, g: Generator | str, n: int, *, digits: int | None = None):
    """Return ``(coefficient, target)``; ``target`` is None when annihilated."""
    g = Generator(g)
    if n < spec.n_lo or (spec.n_hi is not None and n > spec.n_hi):
        raise IndexError(f"index {n} outside {spec.n_lo}..{spec.n_hi}")
    q = spec.qparam(digits)
    if g is Generator.K:
        return q.q_pow(_shift(spec.p, 2 * n)), n
    if g is Generator.K_INV:
        return q.q_pow(-_shift(spec.p, 2 * n)), n
    if g is Generator.A_PLUS:
        if spec.n_hi is not None and n == spec.n_hi:
            return q.zero(), None
        return q.one(), n + 1
    if n == spec.n_lo:
        return q.zero(), None
    c = verma_coefficient(q, spec.p, n)
    return c, (n - 1 if not q.is_zero(c) else None)


@dataclass(frozen=True)
class SingularVectorReport:
    """Indices n with ``a^-|p;n> = 0``, each with the factor(s) that vanished."""

    indices: tuple[int, ...]
    factors: dict[int, tuple[str, ...]]
    tolerance_based: bool
    n_max: int

    def __contains__(self, n: int) -> bool:
        return n in self.indices

    def interior(self, n_lo: int = 0) -> tuple[int, ...]:
        return tuple(n for n in self.indices if n > n_lo)

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "factors": {str(n): list(v) for n, v in self.factors.items()},
            "tolerance_based": self.tolerance_based,
            "n_max": self.n_max,
        }


def singular_vectors(
    m: int | None,
    k: int | None,
    p: object,
    n_max: int,
    *,
    q: QParam | None = None,
    digits: int = DEFAULT_DIGITS,
) -> SingularVectorReport:
    """Scan ``c_n`` for n = 0..n_max.

    Exact for rational ``p`` at a root of unity. Otherwise (complex ``p`` or
    an explicit ``q`` off the roots) each factor counts as zero when its
    modulus is below ``10^(-digits/2)`` and the report is flagged.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    w = parse_weight(p, digits)
    if q is None:
        q = ExactQ(m, k).for_weight(w) if isinstance(w, Fraction) else ApproxQ.from_root(m, k, digits)
    elif q.exact and isinstance(w, Fraction):
        q = q.for_weight(w)
    if not q.exact and isinstance(w, Fraction):
        w = ApproxComplex(w, q.digits)
    tol = None if q.exact else _ctx(q.digits).mpf(10) ** (-(q.digits // 2))
    indices = [0]
    factors: dict[int, tuple[str, ...]] = {0: ("vacuum",)}
    for n in range(1, n_max + 1):
        zero = tuple(label for label, v in _factors(q, w, n) if q.is_zero(v, tol))
        if zero:
            indices.append(n)
            factors[n] = zero
    return SingularVectorReport(tuple(indices), factors, not q.exact, n_max)


def quotient_module(spec: ModuleSpec, cut: int) -> ModuleSpec:
    """Factor ``spec`` by the submodule generated by ``|p;cut>``.

    ``cut = n_hi + 1`` returns the module unchanged.
    """
    if spec.n_hi is not None and cut == spec.n_hi + 1:
        return spec
    top = spec.n_hi if spec.n_hi is not None else cut
    if not spec.n_lo < cut <= top:
        raise InvalidQuotientError(f"cut {cut} outside ({spec.n_lo}, {top}]")
    q = spec.qparam()
    if not q.is_zero(verma_coefficient(q, spec.p, cut)):
        raise InvalidQuotientError(f"|p;{cut}> is not singular for {spec}")
    return spec.with_range(spec.n_lo, cut - 1)


def is_irreducible(spec: ModuleSpec) -> bool:
    """True iff no ``|p;n>`` with ``n_lo < n <= n_hi`` is singular.

    Because ker(a^-) on a truncation is spanned by singular basis vectors,
    this is equivalent to simplicity.
    """
    if spec.n_hi is None:
        raise ValueError("is_irreducible needs a finite range")
    q = spec.qparam()
    return all(not q.is_zero(verma_coefficient(q, spec.p, n)) for n in range(spec.n_lo + 1, spec.n_hi + 1))


# --------------------------------------------------------------------------
# matrices


class BasisKind(enum.Enum):
    VERMA = "verma"
    ORTHONORMAL = "orthonormal"


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RepMatrices:
    """Matrices of a^+, a^-, K, K^-1 on a finite module.

    Entries are Scalars stored in numpy object arrays, column j holding the
    image of basis vector ``basis_labels[j]``.
    """

    spec: ModuleSpec
    q: QParam
    A_plus: np.ndarray
    A_minus: np.ndarray
    Kmat: np.ndarray
    Kinv: np.ndarray
    basis_kind: BasisKind = BasisKind.VERMA
    basis_labels: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(range(self.spec.n_lo, self.spec.n_lo + self.dim)))
        for name in ("A_plus", "A_minus", "Kmat", "Kinv"):
            arr = np.array(getattr(self, name), dtype=object)
            if arr.shape != (self.dim, self.dim):
                raise ValueError(f"{name} has shape {arr.shape}, expected {(self.dim, self.dim)}")
            object.__setattr__(self, name, _readonly(arr))

    @property
    def dim(self) -> int:
        return len(np.asarray(self.A_plus))

    @property
    def exact(self) -> bool:
        return self.q.exact

    def generator(self, g: Generator | str) -> np.ndarray:
        return {
            Generator.A_PLUS: self.A_plus,
            Generator.A_MINUS: self.A_minus,
            Generator.K: self.Kmat,
            Generator.K_INV: self.Kinv,
        }[Generator(g)]

    def replace(self, **changes) -> RepMatrices:
        """Copy with some matrices swapped (used for negative controls)."""
        data = {
            "spec": self.spec,
            "q": self.q,
            "A_plus": self.A_plus,
            "A_minus": self.A_minus,
            "Kmat": self.Kmat,
            "Kinv": self.Kinv,
            "basis_kind": self.basis_kind,
            "basis_labels": self.basis_labels,
        }
        data.update(changes)
        return RepMatrices(**data)

    def to_approx(self, digits: int = DEFAULT_DIGITS) -> RepMatrices:
        conv = np.vectorize(lambda x: to_complex(x, digits) if isinstance(x, CyclotomicNumber) else x, otypes=[object])
        return RepMatrices(
            self.spec,
            ApproxQ.from_root(self.spec.m, self.spec.k, digits),
            conv(self.A_plus),
            conv(self.A_minus),
            conv(self.Kmat),
            conv(self.Kinv),
            self.basis_kind,
            self.basis_labels,
        )

    def to_json(self, shadow_digits: int | None = None) -> dict:
        out: dict = {
            "spec": self.spec.to_json(),
            "exact": self.exact,
            "basis_kind": self.basis_kind.value,
            "basis_labels": list(self.basis_labels),
        }
        for name in ("A_plus", "A_minus", "Kmat", "Kinv"):
            out[name] = [[scalar_to_json(x) for x in row] for row in getattr(self, name)]
        if shadow_digits is not None:
            shadow: dict = {"digits": shadow_digits}
            for name in ("A_plus", "A_minus", "Kmat", "Kinv"):
                shadow[name] = [[_decimal_pair(x, shadow_digits) for x in row] for row in getattr(self, name)]
            out["shadow"] = shadow
        return out


def _decimal_pair(x, digits: int) -> list[str]:
    z = to_complex(x, digits) if isinstance(x, CyclotomicNumber) else x
    ctx = _ctx(digits)
    return [ctx.nstr(z.real, digits), ctx.nstr(z.imag, digits)]


def module_matrices(spec: ModuleSpec, *, digits: int | None = None) -> RepMatrices:
    """Verma-basis matrices of ``spec`` with ``a^+|p;n_hi> = 0``.

    Exact for rational ``p`` unless ``digits`` is given.
    """
    if spec.n_hi is None:
        raise ValueError("module_matrices needs a finite range")
    q = spec.qparam(digits)
    w = spec.p
    if not q.exact and isinstance(w, Fraction):
        w = ApproxComplex(w, q.digits)
    dim = spec.dimension
    zero = q.zero()
    ap = np.full((dim, dim), zero, dtype=object)
    am = np.full((dim, dim), zero, dtype=object)
    kd = np.full((dim, dim), zero, dtype=object)
    ki = np.full((dim, dim), zero, dtype=object)
    for r in range(dim):
        n = spec.n_lo + r
        kd[r, r] = q.q_pow(_shift(w, 2 * n))
        ki[r, r] = q.q_pow(-_shift(w, 2 * n))
        if r + 1 < dim:
            ap[r + 1, r] = q.one()
        if r > 0:
            am[r - 1, r] = verma_coefficient(q, w, n)
    return RepMatrices(spec, q, ap, am, kd, ki)


def _is_zero_entry(x, q: QParam, tol=None) -> bool:
    return q.is_zero(x, tol) if not isinstance(x, int) else x == 0


def sparse_matmul(a: np.ndarray, b: np.ndarray, zero) -> np.ndarray:
    """Object-array product that skips zero entries of ``a``."""
    n, kdim = a.shape
    _, mdim = b.shape
    out = np.full((n, mdim), zero, dtype=object)
    b_rows = [[(j, b[t, j]) for j in range(mdim) if not _trivially_zero(b[t, j])] for t in range(kdim)]
    for i in range(n):
        for t in range(kdim):
            x = a[i, t]
            if _trivially_zero(x):
                continue
            for j, y in b_rows[t]:
                out[i, j] = out[i, j] + x * y
    return out


def _trivially_zero(x) -> bool:
    if isinstance(x, CyclotomicNumber):
        return x.is_zero()
    if isinstance(x, ApproxComplex):
        return x.value == 0
    return x == 0


def _band(rep: RepMatrices):
    """Diagonal/off-diagonal bands, or None if the matrices are not banded."""
    d = rep.dim
    kd = [rep.Kmat[r, r] for r in range(d)]
    ki = [rep.Kinv[r, r] for r in range(d)]
    ap = [rep.A_plus[r + 1, r] for r in range(d - 1)]
    am = [rep.A_minus[r - 1, r] for r in range(1, d)]
    for r in range(d):
        for c in range(d):
            if r != c and not (_trivially_zero(rep.Kmat[r, c]) and _trivially_zero(rep.Kinv[r, c])):
                return None
            if r != c + 1 and not _trivially_zero(rep.A_plus[r, c]):
                return None
            if r + 1 != c and not _trivially_zero(rep.A_minus[r, c]):
                return None
    return kd, ki, ap, am


def _dense_power(mat: np.ndarray, n: int, q: QParam) -> np.ndarray:
    d = mat.shape[0]
    out = np.full((d, d), q.zero(), dtype=object)
    for r in range(d):
        out[r, r] = q.one()
    for _ in range(n):
        out = sparse_matmul(out, mat, q.zero())
    return out


def evaluate_element(e: AlgebraElement, rep: RepMatrices) -> np.ndarray:
    """Substitute the generator matrices of ``rep`` into the normal form of ``e``."""
    q = rep.q
    eq = e.algebra.q
    if eq != q and (eq.m is None or (eq.m, eq.k) != (q.m, q.k)):
        raise ValueError("element and module are over different q")
    d = rep.dim
    out = np.full((d, d), q.zero(), dtype=object)
    bands = _band(rep)
    if bands is None:
        for (i, j, s), c in e.items():
            kpow = _dense_power(rep.Kmat if s >= 0 else rep.Kinv, abs(s), q)
            mono = sparse_matmul(
                sparse_matmul(_dense_power(rep.A_plus, i, q), _dense_power(rep.A_minus, j, q), q.zero()),
                kpow,
                q.zero(),
            )
            out = out + mono * q.coerce(c)
        return out
    kd, ki, ap, am = bands
    for (i, j, s), c in e.items():
        c = q.coerce(c)
        kb = kd if s >= 0 else ki
        for r in range(d):
            tgt = r - j + i
            if r - j < 0 or tgt >= d:
                continue
            v = c * kb[r] ** abs(s) if s else c
            for t in range(j):
                v = v * am[r - t - 1]
            base = r - j
            for t in range(i):
                v = v * ap[base + t]
            out[tgt, r] = out[tgt, r] + v
    return out


def is_zero_matrix(mat: np.ndarray, q: QParam, tol=None) -> bool:
    return all(_is_zero_entry(x, q, tol) for x in np.asarray(mat).flat)


def _identity(d: int, q: QParam) -> np.ndarray:
    out = np.full((d, d), q.zero(), dtype=object)
    for r in range(d):
        out[r, r] = q.one()
    return out


def max_abs(mat: np.ndarray, digits: int = 30):
    """Largest entry modulus (as an mpf) of a Scalar matrix."""
    best = mpmath.mpf(0)
    for x in np.asarray(mat).flat:
        if _trivially_zero(x):
            continue
        z = to_complex(x, digits) if isinstance(x, CyclotomicNumber) else x
        best = max(best, abs(z))
    return best


@dataclass(frozen=True)
class RelationReport:
    """Residuals of the defining relations on a concrete module."""

    exact: bool
    residuals: dict[str, object]
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_residual(self):
        return max(self.residuals.values(), default=mpmath.mpf(0))

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "passed": self.passed,
            "failures": list(self.failures),
            "residuals": {k: mpmath.nstr(v, 6) for k, v in self.residuals.items()},
        }


def _graded_bracket(x: np.ndarray, y: np.ndarray, odd_x: bool, odd_y: bool, zero) -> np.ndarray:
    xy = sparse_matmul(x, y, zero)
    yx = sparse_matmul(y, x, zero)
    return xy + yx if (odd_x and odd_y) else xy - yx


def verify_relations(rep: RepMatrices, tol=None) -> RelationReport:
    """Check ``K K^-1 = K^-1 K = 1``, ``K a^+- K^-1 = q^(+-2) a^+-`` and the
    anticommutator, plus the Z2 grading ``P a^+- P = -a^+-``, ``P K P = K``
    with ``P = diag((-1)^n)`` and the graded bracket of the odd generators."""
    q = rep.q
    zero = q.zero()
    mm: Callable[[np.ndarray, np.ndarray], np.ndarray] = lambda a, b: sparse_matmul(a, b, zero)
    d = rep.dim
    ident = _identity(d, q)
    ap, am, kd, ki = rep.A_plus, rep.A_minus, rep.Kmat, rep.Kinv
    inv_qdiff = 1 / (q.q_pow(1) - q.q_pow(-1))
    parity = np.full((d, d), zero, dtype=object)
    for r, n in enumerate(rep.basis_labels):
        parity[r, r] = q.one() if n % 2 == 0 else -q.one()
    checks = {
        "K Kinv = 1": mm(kd, ki) - ident,
        "Kinv K = 1": mm(ki, kd) - ident,
        "K a+ = q^2 a+ K": mm(kd, ap) - mm(ap, kd) * q.q_pow(2),
        "K a- = q^-2 a- K": mm(kd, am) - mm(am, kd) * q.q_pow(-2),
        "{a+, a-} = [K]": mm(ap, am) + mm(am, ap) - (kd - ki) * inv_qdiff,
        "graded [a+, a-}": _graded_bracket(ap, am, True, True, zero) - (kd - ki) * inv_qdiff,
        "graded [K, a+}": _graded_bracket(kd, ap, False, True, zero) - mm(ap, kd) * (q.q_pow(2) - 1),
        "P a+ P = -a+": mm(mm(parity, ap), parity) + ap,
        "P a- P = -a-": mm(mm(parity, am), parity) + am,
        "P K P = K": mm(mm(parity, kd), parity) - kd,
    }
    residuals = {}
    failures = []
    for name, mat in checks.items():
        residuals[name] = max_abs(mat)
        if not is_zero_matrix(mat, q, tol):
            failures.append(name)
    return RelationReport(q.exact, residuals, tuple(failures))


def iter_singular_interior(spec: ModuleSpec) -> Iterable[int]:
    q = spec.qparam()
    for n in range(spec.n_lo + 1, spec.n_hi + 1):
        if q.is_zero(verma_coefficient(q, spec.p, n)):
            yield n
