"""Command-line front end: ``pbq <subcommand> ...``.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .algebra import ParaBoseAlgebra, casimir_element
from .classify import (
    AlgebraParams,
    CaseTag,
    admissible_pairs,
    canonicalize,
    casimir_eigenvalue,
    central_checks,
    closed_form_L,
    descriptors_to_csv,
    descriptors_to_json,
    dimension_coincidences,
    equivalence_instances,
    find_intertwiner,
    is_admissible,
    is_scalar_matrix,
    quadruple_modules,
    scan_L,
    vacuum_irreps,
)
from .exactnum import DEFAULT_DIGITS, ApproxQ, CyclotomicNumber, ExactQ, scalar_to_json, to_complex
from .fockrep import ModuleSpec, evaluate_element, is_zero_matrix, module_matrices, parse_weight, verify_relations
from .grammar import ParseError, parse_expression
from .unitary import (
    classify_unitarizable,
    golden_matrix,
    load_golden,
    max_entry_difference,
    orthonormal_matrices,
    unitarity_scan,
    verify_unitarity,
)

FORMATS = ("pretty", "json", "csv")


class UsageError(Exception):
    """Bad arguments that argparse cannot detect on its own."""


# --------------------------------------------------------------------------
# argument helpers


def parse_p_grid(text: str) -> list[Fraction]:
    """Comma list of rationals and ``start:step:end`` ranges (end inclusive)."""
    out: list[Fraction] = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            if ":" in item:
                parts = item.split(":")
                if len(parts) != 3:
                    raise ValueError
                start, step, end = (Fraction(x) for x in parts)
                if step <= 0:
                    raise ValueError
                x = start
                while x <= end:
                    out.append(x)
                    x += step
            else:
                out.append(Fraction(item))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad --p-grid entry {item!r}") from None
    if not out:
        raise UsageError("empty --p-grid")
    return sorted(set(out))


def _precision(text: str) -> int:
    value = int(text)
    if value < 16:
        raise argparse.ArgumentTypeError("precision must be at least 16 digits")
    return value


def _admissible(args) -> AlgebraParams:
    if not is_admissible(args.m, args.k):
        raise UsageError(f"(m={args.m}, k={args.k}) is not admissible; see `pbq canon --m {args.m} --k {args.k}`")
    return AlgebraParams(args.m, args.k)


def _fmt_scalar(x, digits: int = 12) -> str:
    if isinstance(x, CyclotomicNumber):
        z = to_complex(x, max(digits, 16))
        return _fmt_complex(z, digits)
    return _fmt_complex(x, digits)


def _fmt_complex(z, digits: int) -> str:
    import mpmath

    re, im = z.real, z.imag
    eps = mpmath.mpf(10) ** (-digits)
    if abs(im) < eps:
        return mpmath.nstr(re if abs(re) >= eps else 0, digits)
    if abs(re) < eps:
        return mpmath.nstr(im, digits) + "j"
    sign = "+" if im >= 0 else "-"
    return f"{mpmath.nstr(re, digits)}{sign}{mpmath.nstr(abs(im), digits)}j"


def _table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _matrix_text(mat: np.ndarray, digits: int) -> str:
    rows = [[_fmt_scalar(x, digits) for x in row] for row in mat]
    width = max((len(c) for row in rows for c in row), default=1)
    return "\n".join("  [" + "  ".join(c.rjust(width) for c in row) + "]" for row in rows) + "\n"


# --------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> tuple[str, int]:
    params = _admissible(args)
    grid = parse_p_grid(args.p_grid) if args.p_grid else None
    descs = unitarity_scan(params, grid)
    if args.format == "json":
        return descriptors_to_json(descs) + "\n", 0
    if args.format == "csv":
        return descriptors_to_csv(descs), 0
    rows = [
        (str(d.p), d.L, d.dimension, _fmt_scalar(d.casimir), d.unitarizable.status.value, "" if d.generic else "exceptional")
        for d in descs
    ]
    head = f"{params}  case: {params.case.value}  window: 0 < p <= {params.window}\n"
    return head + _table(("p", "L", "dim", "casimir", "unitarity", "note"), rows), 0


def cmd_unitary(args) -> tuple[str, int]:
    params = _admissible(args)
    grid = parse_p_grid(args.p_grid) if args.p_grid else None
    descs = classify_unitarizable(params, grid)
    if args.format == "json":
        return descriptors_to_json(descs) + "\n", 0
    if args.format == "csv":
        return descriptors_to_csv(descs), 0
    rows = [(str(d.p), d.L, d.dimension, f"W(|{d.p};0>, |{d.p};{d.L}>)") for d in descs]
    head = f"unitarizable irreps of {params} (dimension >= 2)\n"
    return head + _table(("p", "L", "dim", "module"), rows), 0


def cmd_matrices(args) -> tuple[str, int]:
    p = parse_weight(args.p, args.precision)
    if args.orthonormal:
        rep = orthonormal_matrices((args.m, args.k), p, args.L, args.precision)
    else:
        spec = ModuleSpec(args.m, args.k, p, 0, args.L)
        rep = module_matrices(spec, digits=None if spec.exact else args.precision)
    if args.format == "json" or args.format == "csv":
        return json.dumps(rep.to_json(shadow_digits=args.precision if rep.exact else None), indent=1) + "\n", 0
    out = [f"{rep.spec}  basis: {rep.basis_kind.value}\n"]
    for name in ("A_plus", "A_minus", "Kmat", "Kinv"):
        out.append(f"{name} =\n" + _matrix_text(getattr(rep, name), 12))
    return "".join(out), 0


def cmd_eval(args) -> tuple[str, int]:
    p = parse_weight(args.p, args.precision)
    spec = ModuleSpec(args.m, args.k, p, 0, args.L)
    if spec.exact:
        alg = ParaBoseAlgebra(ExactQ(args.m, args.k))
        rep = module_matrices(spec)
    else:
        alg = ParaBoseAlgebra(ApproxQ.from_root(args.m, args.k, args.precision))
        rep = module_matrices(spec, digits=args.precision)
    element = parse_expression(args.expr, alg)
    mat = evaluate_element(element, rep)
    q = rep.q
    zero = is_zero_matrix(mat, q)
    scalar, value = is_scalar_matrix(mat, q)
    offdiag = mat.copy()
    for r in range(mat.shape[0]):
        offdiag[r, r] = q.zero()
    diagonal = is_zero_matrix(offdiag, q)
    if args.format in ("json", "csv"):
        data = {
            "spec": spec.to_json(),
            "normal_form": str(element),
            "element": element.to_json(),
            "matrix": [[scalar_to_json(x) for x in row] for row in mat],
            "zero": zero,
            "scalar": scalar,
            "scalar_value": scalar_to_json(value) if scalar else None,
            "diagonal": diagonal,
        }
        return json.dumps(data, indent=1) + "\n", 0
    kind = "zero" if zero else "scalar" if scalar else "non-scalar diagonal" if diagonal else "non-diagonal"
    text = f"{spec}\nnormal form: {element}\nmatrix =\n{_matrix_text(mat, 12)}classification: {kind}\n"
    if scalar and not zero:
        text += f"scalar value: {_fmt_scalar(value)}\n"
    return text, 0


def cmd_canon(args) -> tuple[str, int]:
    c = canonicalize(args.m, args.k)
    report = c.verify()
    data = c.to_json()
    data["raw_relations_hold"] = report.passed
    if args.format in ("json", "csv"):
        return json.dumps(data, indent=1) + "\n", 0 if report.passed else 1
    mapping = ", ".join(f"{k} -> {v}" for k, v in c.generator_map.as_dict().items())
    steps = " then ".join(f"xi={'+' if s > 0 else '-'}" for s in c.generator_map.steps) or "identity"
    text = (
        f"raw (m={args.m}, k={args.k}) -> canonical {c.params}, case: {c.params.case.value}\n"
        f"maps: {steps}\n"
        f"raw generators: {mapping}\n"
        f"raw relations on mapped canonical module: {'ok' if report.passed else 'FAILED'}\n"
    )
    return text, 0 if report.passed else 1


# --------------------------------------------------------------------------
# verify


@dataclass(frozen=True)
class CheckResult:
    m: int
    k: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _check_L(params: AlgebraParams) -> str | None:
    bad = [p for p in range(1, params.window + 1) if closed_form_L(params, p) != scan_L(params.m, params.k, p)]
    return f"mismatch at p={bad}" if bad else None


def _check_relations(params: AlgebraParams) -> str | None:
    bad = [str(d.p) for d in vacuum_irreps(params) if not verify_relations(module_matrices(d.spec)).passed]
    return f"relations fail for p={bad}" if bad else None


def _casimir_mats(params: AlgebraParams):
    alg = ParaBoseAlgebra(params.q)
    c2 = casimir_element(alg)
    for d in vacuum_irreps(params):
        rep = module_matrices(d.spec)
        yield d, rep, evaluate_element(c2, rep)


def _check_casimir_scalar(params: AlgebraParams) -> str | None:
    bad = [str(d.p) for d, rep, mat in _casimir_mats(params) if not is_scalar_matrix(mat, rep.q)[0]]
    return f"C2 not scalar for p={bad}" if bad else None


def _check_casimir_value(params: AlgebraParams) -> str | None:
    bad = []
    for d, rep, mat in _casimir_mats(params):
        _, lam = is_scalar_matrix(mat, rep.q)
        if lam != casimir_eigenvalue(params, d.p):
            bad.append(str(d.p))
    return f"C2 eigenvalue differs from the closed form for p={bad[:6]}{'...' if len(bad) > 6 else ''}" if bad else None


def _check_central(params: AlgebraParams) -> str | None:
    bad = [str(d.p) for d in vacuum_irreps(params) if not central_checks(d).passed]
    return f"central checks fail for p={bad}" if bad else None


def _check_certificates(params: AlgebraParams) -> str | None:
    weights = [Fraction(j, 2) for j in range(1, 8 * params.k + 1, 3)]
    bad = [c for c in equivalence_instances(params, weights) if find_intertwiner(c.source, c.target) is None]
    return f"{len(bad)} claimed equivalences not certified, e.g. {bad[0].source} ~ {bad[0].target}" if bad else None


def _check_inequivalence(params: AlgebraParams) -> str | None:
    specs = [d.spec for d in vacuum_irreps(params, [])]
    bad = [(a, b) for a, b in combinations(specs, 2) if find_intertwiner(a, b) is not None]
    bad += [(a, b) for a, b in dimension_coincidences(params) if find_intertwiner(a, b) is not None]
    return f"{len(bad)} supposedly distinct irreps are equivalent" if bad else None


def _check_quadruple(params: AlgebraParams) -> str | None:
    if params.case is not CaseTag.EVEN_K_ODD_M:
        return None
    alg = ParaBoseAlgebra(params.q)
    c2 = casimir_element(alg)
    for p in range(2, 2 * params.k + 1, 2):
        mods = quadruple_modules(params, p)
        values = set()
        for spec in mods:
            rep = module_matrices(spec)
            ok, lam = is_scalar_matrix(evaluate_element(c2, rep), rep.q)
            if not ok:
                return f"C2 not scalar on {spec}"
            values.add(lam)
        if len(values) != 1:
            return f"quadruple at p={p} has {len(values)} distinct C2 values"
        if any(find_intertwiner(a, b) is not None for a, b in combinations(mods, 2)):
            return f"quadruple at p={p} has an equivalent pair"
    return None


def _check_unitarity(params: AlgebraParams) -> str | None:
    found = classify_unitarizable(params)
    for d in found:
        rep = orthonormal_matrices(params, d.p, d.L)
        if not verify_unitarity(rep).passed:
            return f"orthonormal matrices fail the contract at p={d.p}"
    return None


def _check_even_m_empty(params: AlgebraParams) -> str | None:
    if params.m % 2:
        return None
    found = classify_unitarizable(params)
    return f"unitarizable irreps at p={[str(d.p) for d in found]}" if found else None


def _check_golden(params: AlgebraParams) -> str | None:
    if params.m % 2 == 0:
        return None
    for rec in load_golden("two_dim") + load_golden("four_dim"):
        if (rec["m"], rec["k"]) != (params.m, params.k):
            continue
        rep = orthonormal_matrices(params, rec["p"], rec["L"])
        for key in ("A_minus", "Kmat"):
            diff = max_entry_difference(getattr(rep, key), golden_matrix(rec, key))
            if diff > 1e-40:
                return f"{key} differs from golden fixture by {float(diff):.3g}"
    return None


def _check_canonical(params: AlgebraParams) -> str | None:
    m, k = params.m, params.k
    for raw in (m, 2 * k - m, 2 * k + m, 4 * k - m, m - 4 * k):
        c = canonicalize(raw, k)
        if c.params != params or not c.verify().passed:
            return f"canonicalization of m={raw} fails"
    return None


CHECKS: dict[str, Callable[[AlgebraParams], str | None]] = {
    "top index tables": _check_L,
    "defining relations": _check_relations,
    "casimir scalar": _check_casimir_scalar,
    "casimir closed form": _check_casimir_value,
    "central elements": _check_central,
    "equivalence certificates": _check_certificates,
    "pairwise inequivalence": _check_inequivalence,
    "casimir quadruple": _check_quadruple,
    "unitarity contract": _check_unitarity,
    "even m has no unitarizable irreps": _check_even_m_empty,
    "golden fixtures": _check_golden,
    "canonicalization": _check_canonical,
}


def run_checks(pair: tuple[int, int]) -> list[CheckResult]:
    params = AlgebraParams(*pair)
    out = []
    for name, fn in CHECKS.items():
        t = time.perf_counter()
        try:
            detail = fn(params)
        except Exception as exc:  # a crash is a failed check, not a crashed run
            detail = f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(params.m, params.k, name, detail is None, detail or "", time.perf_counter() - t))
    return out


def cmd_verify(args) -> tuple[str, int]:
    if (args.m is None) != (args.k is None):
        raise UsageError("give both --m and --k, or neither")
    if args.m is not None:
        _admissible(args)
        pairs = [(args.m, args.k)]
    else:
        pairs = admissible_pairs(args.max_k)
    if args.jobs == 1 or len(pairs) == 1:
        results = [r for pair in pairs for r in run_checks(pair)]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = [r for batch in pool.map(run_checks, pairs) for r in batch]
    failed = [r for r in results if not r.passed]
    code = 1 if failed else 0
    if args.format == "json":
        data = {
            "passed": not failed,
            "results": [
                {"m": r.m, "k": r.k, "check": r.name, "passed": r.passed, "detail": r.detail} for r in results
            ],
        }
        return json.dumps(data, indent=1) + "\n", code
    if args.format == "csv":
        rows = ["m,k,check,passed,detail"]
        rows += [f'{r.m},{r.k},{r.name},{r.passed},"{r.detail}"' for r in results]
        return "\n".join(rows) + "\n", code
    summary: dict[str, list[CheckResult]] = {}
    for r in results:
        summary.setdefault(r.name, []).append(r)
    rows = []
    for name, rs in summary.items():
        bad = [r for r in rs if not r.passed]
        example = f"(m={bad[0].m}, k={bad[0].k}) {bad[0].detail}" if bad else ""
        rows.append((name, f"{len(rs) - len(bad)}/{len(rs)}", "ok" if not bad else "FAIL", example))
    text = f"verified {len(pairs)} algebra(s)\n" + _table(("check", "passed", "status", "first failure"), rows)
    return text, code


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="pretty")
    common.add_argument("--precision", type=_precision, default=DEFAULT_DIGITS, help="decimal digits (>= 16)")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="pbq", description="Root-of-unity representations of pB_q.")
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_args(p, required=True):
        p.add_argument("--m", type=int, required=required)
        p.add_argument("--k", type=int, required=required)

    p = sub.add_parser("classify", parents=[common], help="vacuum irreps of an admissible algebra")
    algebra_args(p)
    p.add_argument("--p-grid", help='weights, e.g. "1/2,1,3/2" or "0:1/2:4"; default: integers and halves in the window')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("unitary", parents=[common], help="unitarizable irreps")
    algebra_args(p)
    p.add_argument("--p-grid")
    p.set_defaults(func=cmd_unitary)

    p = sub.add_parser("matrices", parents=[common], help="generator matrices of W(|p;0>, |p;L>)")
    algebra_args(p)
    p.add_argument("--p", required=True, help='weight: fraction ("3/2") or decimal ("0.37")')
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--orthonormal", action="store_true")
    p.set_defaults(func=cmd_matrices)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    algebra_args(p, required=False)
    p.add_argument("--max-k", type=int, default=9)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression on a module")
    algebra_args(p)
    p.add_argument("--p", required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("canon", parents=[common], help="canonical parameters and generator map")
    algebra_args(p)
    p.set_defaults(func=cmd_canon)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = args.func(args)
    except (UsageError, ParseError, ValueError, TypeError) as exc:
        print(f"pbq {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
