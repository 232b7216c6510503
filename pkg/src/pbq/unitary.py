"""Unitarizability of vacuum irreps under ``(a^-)^dagger = a^+``, ``K^dagger = K^-1``.

Rescaling the Verma basis as ``|p;n> = alpha_n |p;n)`` with ``|p;n)``
orthonormal turns the contract into

    |alpha_(n+1) / alpha_n|^2 = c_(n+1),   n = 0 .. L-1

where ``c_n`` is the a^- coefficient of the Verma action. A module is
unitarizable iff every ``c_(n+1)`` is positive. Signs are decided exactly
for rational weights; square roots are taken numerically afterwards.
"""
from __future__ import annotations

import enum
import json
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Union

import mpmath
import numpy as np

from .classify import AlgebraParams, IrrepDescriptor, vacuum_irreps
from .exactnum import (
    DEFAULT_DIGITS,
    ApproxComplex,
    ApproxQ,
    ExactQ,
    RationalAngle,
    TrigKind,
    _ctx,
    to_complex,
    trig_sign,
)
from .fockrep import (
    BasisKind,
    ModuleSpec,
    RelationReport,
    RepMatrices,
    module_matrices,
    parse_weight,
    verify_relations,
    verma_coefficient,
)

__all__ = [
    "NormalizationLadder",
    "NotUnitarizableError",
    "UnitarityReport",
    "UnitarityStatus",
    "UnitarityVerdict",
    "attach_verdicts",
    "classify_unitarizable",
    "fixture_four_dim",
    "fixture_two_dim",
    "is_unitarizable",
    "load_golden",
    "orthonormal_matrices",
    "rescale_verma",
    "unitarity_ratios",
    "unitarity_scan",
    "verify_unitarity",
]

ParamsLike = Union[AlgebraParams, tuple[int, int]]


class NotUnitarizableError(ValueError):
    """Orthonormal matrices were requested for a module that has none."""


class UnitarityStatus(enum.Enum):
    UNITARIZABLE = "unitarizable"
    NOT_UNITARIZABLE = "not_unitarizable"
    BOUNDARY = "boundary"


def _mk(params: ParamsLike) -> tuple[int, int]:
    if isinstance(params, AlgebraParams):
        return params.m, params.k
    m, k = params
    return int(m), int(k)


def _real_weight(p: object, digits: int):
    w = parse_weight(p, digits)
    if isinstance(w, ApproxComplex) and not w.is_zero() and abs(w.imag) > _ctx(w.digits).mpf(10) ** (-(w.digits // 2)):
        raise ValueError(f"unitarity needs a real weight, got {w}")
    return w


@dataclass(frozen=True)
class NormalizationLadder:
    """``ratios[n] = |alpha_(n+1)/alpha_n|^2`` for n = 0..L-1 with ``alpha_0 = 1``.

    Exact weights give cyclotomic (real) ratios with exact signs.
    """

    m: int
    k: int
    p: object
    L: int
    ratios: tuple
    signs: tuple[int, ...]

    def alphas(self, digits: int = DEFAULT_DIGITS) -> list:
        """``alpha_n`` for n = 0..L (requires nonnegative ratios)."""
        ctx = _ctx(digits)
        out = [ctx.mpf(1)]
        for r, s in zip(self.ratios, self.signs):
            if s < 0:
                raise NotUnitarizableError("negative ratio has no real square root")
            z = to_complex(r, digits) if not isinstance(r, ApproxComplex) else r
            out.append(out[-1] * ctx.sqrt(z.real))
        return out

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "p": str(self.p),
            "L": self.L,
            "ratios": [mpmath.nstr((to_complex(r, 30) if not isinstance(r, ApproxComplex) else r).real, 20) for r in self.ratios],
            "signs": list(self.signs),
        }


def _exact_sign(m: int, k: int, p: Fraction, n: int) -> int:
    theta = Fraction(m, 2 * k)
    if n % 2 == 0:
        a = trig_sign(RationalAngle(theta * (n + p)), TrigKind.SIN)
        b = trig_sign(RationalAngle(theta * (n + 1)), TrigKind.COS)
    else:
        a = trig_sign(RationalAngle(theta * (n + 1)), TrigKind.SIN)
        b = trig_sign(RationalAngle(theta * (n + p)), TrigKind.COS)
    c = trig_sign(RationalAngle(2 * theta), TrigKind.SIN)
    return a * b * c


def unitarity_ratios(params: ParamsLike, p: object, L: int, digits: int = DEFAULT_DIGITS) -> NormalizationLadder:
    """The ladder ``c_1 .. c_L`` with exact signs for rational ``p``.

    For even n the ratio is ``2 sin(t(n+p)) cos(t(n+1)) / sin(2t)`` and for
    odd n ``2 sin(t(n+1)) cos(t(n+p)) / sin(2t)`` with ``t = pi m/(2k)``.
    """
    m, k = _mk(params)
    w = _real_weight(p, digits)
    if L < 0:
        raise ValueError("L must be nonnegative")
    if isinstance(w, Fraction):
        q = ExactQ(m, k).for_weight(w)
        ratios = tuple(verma_coefficient(q, w, n + 1) for n in range(L))
        signs = tuple(_exact_sign(m, k, w, n) for n in range(L))
    else:
        q = ApproxQ.from_root(m, k, digits)
        wr = ApproxComplex(w.real, w.digits)
        ratios = tuple(verma_coefficient(q, wr, n + 1) for n in range(L))
        tol = _ctx(digits).mpf(10) ** (-(digits // 2))
        signs = tuple(0 if abs(r.real) < tol else (1 if r.real > 0 else -1) for r in ratios)
    return NormalizationLadder(m, k, w, L, ratios, signs)


@dataclass(frozen=True)
class UnitarityVerdict:
    status: UnitarityStatus
    witnesses: tuple[int, ...]
    first_failing: int | None = None
    first_zero: int | None = None
    exact: bool = True

    @property
    def unitarizable(self) -> bool:
        return self.status is UnitarityStatus.UNITARIZABLE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "witnesses": list(self.witnesses),
            "first_failing": self.first_failing,
            "first_zero": self.first_zero,
            "exact": self.exact,
        }


def _verdict(ladder: NormalizationLadder) -> UnitarityVerdict:
    signs = ladder.signs
    exact = isinstance(ladder.p, Fraction)
    neg = next((n for n, s in enumerate(signs) if s < 0), None)
    zero = next((n for n, s in enumerate(signs) if s == 0), None)
    if neg is not None:
        return UnitarityVerdict(UnitarityStatus.NOT_UNITARIZABLE, signs, neg, zero, exact)
    if zero is not None:
        return UnitarityVerdict(UnitarityStatus.BOUNDARY, signs, None, zero, exact)
    return UnitarityVerdict(UnitarityStatus.UNITARIZABLE, signs, None, None, exact)


def is_unitarizable(params: ParamsLike, p: object, L: int) -> UnitarityVerdict:
    """Decide the sign of every ladder ratio; exact zeros give ``boundary``."""
    return _verdict(unitarity_ratios(params, p, L))


def attach_verdicts(descs: Iterable[IrrepDescriptor]) -> list[IrrepDescriptor]:
    return [d.with_verdict(is_unitarizable(d.params, d.p, d.L)) for d in descs]


def unitarity_scan(params: AlgebraParams, p_grid: Iterable[object] | None = None) -> list[IrrepDescriptor]:
    """Every vacuum irrep on the grid with its verdict attached."""
    return attach_verdicts(vacuum_irreps(params, p_grid))


def classify_unitarizable(params: AlgebraParams, p_grid: Iterable[object] | None = None) -> list[IrrepDescriptor]:
    """Unitarizable irreps of dimension >= 2 on the grid (integer window always included).

    One-dimensional modules satisfy the contract vacuously and are left out.
    """
    return [d for d in unitarity_scan(params, p_grid) if d.L > 0 and d.unitarizable.unitarizable]


# --------------------------------------------------------------------------
# orthonormal matrices


def orthonormal_matrices(params: ParamsLike, p: object, L: int, precision: int = DEFAULT_DIGITS) -> RepMatrices:
    """Generators in the orthonormal basis: real nonnegative a^+- entries,
    ``a^+`` the transpose of ``a^-``, K unchanged."""
    if precision < 16:
        raise ValueError("precision must be at least 16 digits")
    m, k = _mk(params)
    ladder = unitarity_ratios((m, k), p, L, precision)
    verdict = _verdict(ladder)
    if not verdict.unitarizable:
        raise NotUnitarizableError(f"(m={m}, k={k}, p={p}, L={L}) is {verdict.status.value}")
    ctx = _ctx(precision)
    q = ApproxQ.from_root(m, k, precision)
    w = ladder.p
    d = L + 1
    zero = q.zero()
    ap = np.full((d, d), zero, dtype=object)
    am = np.full((d, d), zero, dtype=object)
    kd = np.full((d, d), zero, dtype=object)
    ki = np.full((d, d), zero, dtype=object)
    for n in range(d):
        e = w + 2 * n if isinstance(w, Fraction) else ApproxComplex(w.real, precision) + 2 * n
        kd[n, n] = q.q_pow(e)
        ki[n, n] = q.q_pow(-e)
    for n, r in enumerate(ladder.ratios):
        z = to_complex(r, precision + 10) if not isinstance(r, ApproxComplex) else r
        root = ApproxComplex(ctx.sqrt(_ctx(precision + 10).re(z.value)), precision)
        ap[n + 1, n] = root
        am[n, n + 1] = root
    spec = ModuleSpec(m, k, w, 0, L)
    return RepMatrices(spec, q, ap, am, kd, ki, BasisKind.ORTHONORMAL)


def rescale_verma(params: ParamsLike, p: object, L: int, precision: int = DEFAULT_DIGITS) -> RepMatrices:
    """``D M D^-1`` with ``D = diag(alpha_n)`` applied to the Verma matrices."""
    m, k = _mk(params)
    ladder = unitarity_ratios((m, k), p, L, precision)
    alphas = ladder.alphas(precision)
    spec = ModuleSpec(m, k, p, 0, L)
    verma = module_matrices(spec, digits=precision)
    d = L + 1

    def conj(mat):
        out = np.empty((d, d), dtype=object)
        for r in range(d):
            for c in range(d):
                out[r, c] = mat[r, c] * alphas[r] / alphas[c]
        return out

    return RepMatrices(
        spec, verma.q, conj(verma.A_plus), conj(verma.A_minus), verma.Kmat, verma.Kinv, BasisKind.ORTHONORMAL
    )


@dataclass(frozen=True)
class UnitarityReport:
    precondition_ok: bool
    adjoint_residual: object
    K_residual: object
    relations: RelationReport | None
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "precondition_ok": self.precondition_ok,
            "adjoint_residual": mpmath.nstr(self.adjoint_residual, 6),
            "K_residual": mpmath.nstr(self.K_residual, 6),
            "relations": None if self.relations is None else self.relations.to_json(),
            "failures": list(self.failures),
        }


def _dagger(mat: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda x: x.conj(), otypes=[object])(mat).T


def verify_unitarity(rep: RepMatrices, precision: int = DEFAULT_DIGITS) -> UnitarityReport:
    """``A_minus^dagger = A_plus`` and ``K^dagger = K^-1`` to ``10^(1-precision)``,
    plus the defining relations."""
    from .fockrep import max_abs

    ctx = _ctx(precision)
    tol = ctx.mpf(10) ** (1 - precision)
    failures = []
    if rep.basis_kind is not BasisKind.ORTHONORMAL:
        return UnitarityReport(False, ctx.inf, ctx.inf, None, ("basis is not orthonormal",))
    if rep.exact:
        rep = rep.to_approx(precision)
    adj = max_abs(_dagger(rep.A_minus) - rep.A_plus, precision)
    kres = max_abs(_dagger(rep.Kmat) - rep.Kinv, precision)
    if adj > tol:
        failures.append("A_minus^dagger != A_plus")
    if kres > tol:
        failures.append("K^dagger != K^-1")
    rel = verify_relations(rep, tol=tol)
    failures.extend(rel.failures)
    return UnitarityReport(True, adj, kres, rel, tuple(failures))


# --------------------------------------------------------------------------
# closed-form fixtures


def fixture_two_dim(m: int, k: int, digits: int = DEFAULT_DIGITS) -> dict:
    """The 2-dim irrep at ``p = k-1`` (m = 1 mod 4) or ``p = 3k-1`` (m = 3 mod 4).

    a^- has the single entry ``sqrt(cos t / sin t)``; ``K = diag(i e^(-it), i e^(it))``.
    """
    if m % 2 == 0:
        raise ValueError("the 2-dim fixture needs odd m")
    ctx = _ctx(digits + 10)
    t = ctx.pi * m / (2 * k)
    x = ctx.sqrt(ctx.cos(t) / ctx.sin(t))
    p = k - 1 if m % 4 == 1 else 3 * k - 1
    return {
        "m": m,
        "k": k,
        "p": p,
        "L": 1,
        "A_minus": [[0, x], [0, 0]],
        "Kmat": [[1j * ctx.expj(-t), 0], [0, 1j * ctx.expj(t)]],
    }


def fixture_four_dim(k: int, digits: int = DEFAULT_DIGITS) -> dict:
    """The 4-dim irrep at ``m = 3``, ``p = 3k-3``."""
    ctx = _ctx(digits + 10)
    pi = ctx.pi
    x = ctx.sqrt(ctx.cos(9 * pi / (2 * k)) / ctx.sin(3 * pi / (2 * k)))
    y = ctx.sqrt(2 * ctx.sin(3 * pi / k))
    phases = [-9, -3, 3, 9]
    return {
        "m": 3,
        "k": k,
        "p": 3 * k - 3,
        "L": 3,
        "A_minus": [[0, x, 0, 0], [0, 0, y, 0], [0, 0, 0, x], [0, 0, 0, 0]],
        "Kmat": [[1j * ctx.expj(f * pi / (2 * k)) if r == c else 0 for c, f in enumerate(phases)] for r in range(4)],
    }


def fixture_to_json(fx: dict, digits: int = DEFAULT_DIGITS) -> dict:
    ctx = _ctx(digits)

    def enc(v):
        z = ctx.mpc(v)
        return [ctx.nstr(z.real, digits), ctx.nstr(z.imag, digits)]

    out = {key: fx[key] for key in ("m", "k", "p", "L")}
    out["digits"] = digits
    out["A_minus"] = [[enc(v) for v in row] for row in fx["A_minus"]]
    out["Kmat"] = [[enc(v) for v in row] for row in fx["Kmat"]]
    return out


def load_golden(name: str) -> list[dict]:
    """Golden fixture records shipped with the package (``two_dim`` or ``four_dim``)."""
    text = resources.files("pbq.fixtures").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def golden_matrix(record: dict, key: str, digits: int = DEFAULT_DIGITS) -> np.ndarray:
    ctx = _ctx(digits)
    rows = record[key]
    out = np.empty((len(rows), len(rows)), dtype=object)
    for r, row in enumerate(rows):
        for c, (re, im) in enumerate(row):
            out[r, c] = ApproxComplex(ctx.mpc(ctx.mpf(re), ctx.mpf(im)), digits)
    return out


def max_entry_difference(a: np.ndarray, b: np.ndarray, digits: int = DEFAULT_DIGITS):
    """Largest ``|a_ij - b_ij|`` with both sides read as complex numbers."""
    ctx = _ctx(digits)
    best = ctx.mpf(0)
    for x, y in zip(np.asarray(a).flat, np.asarray(b).flat):
        zx = x.value if isinstance(x, ApproxComplex) else ctx.mpc(x)
        zy = y.value if isinstance(y, ApproxComplex) else ctx.mpc(y)
        best = max(best, abs(zx - zy))
    return best


def write_golden(directory, max_k: int = 9, four_dim_ks: Iterable[int] = (10, 12, 14), digits: int = DEFAULT_DIGITS) -> None:
    """Regenerate the golden fixture files from the closed forms."""
    from pathlib import Path

    from .classify import admissible_pairs

    path = Path(directory)
    two = [fixture_to_json(fixture_two_dim(m, k, digits), digits) for m, k in admissible_pairs(max_k) if m % 2]
    four = [fixture_to_json(fixture_four_dim(k, digits), digits) for k in four_dim_ks]
    (path / "two_dim.json").write_text(json.dumps(two, indent=1) + "\n")
    (path / "four_dim.json").write_text(json.dumps(four, indent=1) + "\n")
