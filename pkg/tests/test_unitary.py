from fractions import Fraction

import mpmath
import numpy as np
import pytest

from pbq.algebra import ParaBoseAlgebra, casimir_element
from pbq.classify import AlgebraParams, admissible_pairs, vacuum_irreps
from pbq.exactnum import ApproxComplex, to_complex
from pbq.fockrep import BasisKind, ModuleSpec, evaluate_element, module_matrices, verma_coefficient
from pbq.unitary import (
    NotUnitarizableError,
    UnitarityStatus,
    classify_unitarizable,
    fixture_four_dim,
    fixture_two_dim,
    golden_matrix,
    is_unitarizable,
    load_golden,
    max_entry_difference,
    orthonormal_matrices,
    rescale_verma,
    unitarity_ratios,
    verify_unitarity,
)

mpf = mpmath.mpf


def as_complex(x):
    return complex(x.value) if isinstance(x, ApproxComplex) else complex(to_complex(x, 30).value)


def as_mpc(x, digits=40):
    return x.value if isinstance(x, ApproxComplex) else to_complex(x, digits).value


def test_ladder_examples():
    lad = unitarity_ratios((1, 3), 1, 2)
    assert [as_complex(r) for r in lad.ratios] == pytest.approx([1, 1], abs=1e-25)
    assert lad.signs == (1, 1)
    single = unitarity_ratios(AlgebraParams(1, 2), 1, 1)
    assert as_complex(single.ratios[0]) == pytest.approx(1, abs=1e-25)


def test_ladder_matches_trig_formula():
    for m, k in [(1, 4), (3, 7), (5, 9)]:
        t = mpmath.pi * m / (2 * k)
        for p in (Fraction(1, 2), Fraction(3), Fraction(7, 2)):
            lad = unitarity_ratios((m, k), p, 2 * k - 1)
            for n, r in enumerate(lad.ratios):
                if n % 2 == 0:
                    want = 2 * mpmath.sin(t * (n + p)) * mpmath.cos(t * (n + 1)) / mpmath.sin(2 * t)
                else:
                    want = 2 * mpmath.sin(t * (n + 1)) * mpmath.cos(t * (n + p)) / mpmath.sin(2 * t)
                assert abs(as_complex(r) - complex(want)) < 1e-12
                sign = 0 if abs(want) < 1e-12 else (1 if want > 0 else -1)
                assert lad.signs[n] == sign


def test_alphas_follow_ratios():
    lad = unitarity_ratios((1, 5), Fraction(3, 2), 4)
    alphas = lad.alphas(40)
    assert alphas[0] == 1
    for n, r in enumerate(lad.ratios):
        assert abs((alphas[n + 1] / alphas[n]) ** 2 - as_mpc(r).real) < 1e-30


def test_boundary_witness():
    verdict = is_unitarizable((1, 2), 4, 1)
    assert verdict.status is UnitarityStatus.BOUNDARY
    assert verdict.first_zero == 0 and verdict.witnesses == (0,)


@pytest.mark.parametrize(
    "mk,p,L,status",
    [
        ((1, 5), Fraction(3, 2), 4, UnitarityStatus.UNITARIZABLE),
        ((1, 4), 3, 1, UnitarityStatus.UNITARIZABLE),
        ((1, 3), 2, 2, UnitarityStatus.BOUNDARY),
        ((1, 3), Fraction(5, 2), 2, UnitarityStatus.NOT_UNITARIZABLE),
    ],
)
def test_verdict_examples(mk, p, L, status):
    assert is_unitarizable(mk, p, L).status is status


def test_not_unitarizable_reports_first_failure():
    v = is_unitarizable((1, 3), Fraction(5, 2), 2)
    assert v.first_failing is not None and v.witnesses[v.first_failing] == -1


def test_even_m_integer_weights_are_never_unitarizable():
    for m, k in admissible_pairs(9):
        if m % 2 == 0:
            assert classify_unitarizable(AlgebraParams(m, k), p_grid=[]) == []
    for d in vacuum_irreps(AlgebraParams(2, 3), p_grid=[]):
        if d.L > 0:
            assert is_unitarizable((2, 3), d.p, d.L).status is UnitarityStatus.NOT_UNITARIZABLE


def test_complex_weight_rejected():
    with pytest.raises(ValueError):
        unitarity_ratios((1, 3), "0.5+0.5j", 2)


def test_classify_examples():
    got = [(d.p, d.L) for d in classify_unitarizable(AlgebraParams(3, 10))]
    assert got == [(27, 3), (29, 1)]
    got = [(d.p, d.L) for d in classify_unitarizable(AlgebraParams(5, 7))]
    assert got == [(6, 1)]


def test_row_one_family_on_small_grid():
    grid = [0, Fraction(1, 2), 1, Fraction(3, 2), 2]
    found = {(d.p, d.L) for d in classify_unitarizable(AlgebraParams(1, 3), p_grid=grid)}
    for p in (Fraction(1, 2), 1, Fraction(3, 2)):
        assert (p, 2) in found
    assert (2, 2) not in found


def expected_two_by_two(m, k):
    t = mpmath.pi * m / (2 * k)
    x = mpmath.sqrt(mpmath.cos(t) / mpmath.sin(t))
    return x, [1j * mpmath.expj(-t), 1j * mpmath.expj(t)]


def test_orthonormal_two_dim_example():
    rep = orthonormal_matrices((1, 2), 1, 1, precision=40)
    assert rep.basis_kind is BasisKind.ORTHONORMAL
    with mpmath.workdps(40):
        x, diag = expected_two_by_two(1, 2)
        assert abs(rep.A_minus[0, 1].value - x) < mpf(10) ** -35
        assert abs(x - 1) < mpf(10) ** -35
        for n in range(2):
            assert abs(rep.Kmat[n, n].value - diag[n]) < mpf(10) ** -35


def test_orthonormal_four_dim_example():
    k = 10
    rep = orthonormal_matrices((3, k), 27, 3, precision=40)
    with mpmath.workdps(40):
        pi = mpmath.pi
        x = mpmath.sqrt(mpmath.cos(9 * pi / (2 * k)) / mpmath.sin(3 * pi / (2 * k)))
        y = mpmath.sqrt(2 * mpmath.sin(3 * pi / k))
        for (r, c), want in {(0, 1): x, (1, 2): y, (2, 3): x}.items():
            assert abs(rep.A_minus[r, c].value - want) < mpf(10) ** -35
        for n, f in enumerate([-9, -3, 3, 9]):
            assert abs(rep.Kmat[n, n].value - 1j * mpmath.expj(f * pi / (2 * k))) < mpf(10) ** -35


def test_a_plus_is_transpose_of_a_minus():
    rep = orthonormal_matrices((1, 5), Fraction(3, 2), 4)
    assert (rep.A_plus == rep.A_minus.T).all()
    assert all(x.value.imag == 0 and x.value.real >= 0 for x in rep.A_minus.flat)


def test_orthonormal_refuses_non_unitarizable():
    with pytest.raises(NotUnitarizableError):
        orthonormal_matrices((1, 3), Fraction(5, 2), 2)
    with pytest.raises(NotUnitarizableError):
        orthonormal_matrices((1, 3), 2, 2)
    with pytest.raises(ValueError):
        orthonormal_matrices((1, 2), 1, 1, precision=10)


def test_rescaled_verma_matches_orthonormal():
    for mk, p, L in [((1, 5), Fraction(3, 2), 4), ((3, 10), 27, 3), ((1, 4), 3, 1)]:
        a = orthonormal_matrices(mk, p, L, precision=50)
        b = rescale_verma(mk, p, L, precision=50)
        for name in ("A_plus", "A_minus", "Kmat", "Kinv"):
            assert max_entry_difference(getattr(a, name), getattr(b, name), 50) < mpf(10) ** -45


def test_orthonormal_entries_square_to_verma_products():
    mk, p, L = (1, 7), Fraction(1, 2), 6
    rep = orthonormal_matrices(mk, p, L, precision=40)
    verma = module_matrices(ModuleSpec(*mk, p, 0, L))
    for n in range(L):
        prod = as_mpc(verma.A_minus[n, n + 1]) * as_mpc(verma.A_plus[n + 1, n])
        assert abs(rep.A_minus[n, n + 1].value ** 2 - prod) < 1e-30


def test_verify_unitarity_on_fixtures():
    assert verify_unitarity(orthonormal_matrices((1, 2), 1, 1, 64), 64).passed
    report = verify_unitarity(orthonormal_matrices((3, 10), 27, 3, 64), 64)
    assert report.passed and report.precondition_ok
    assert report.adjoint_residual < mpf(10) ** -63


def test_verify_unitarity_rejects_verma_basis():
    report = verify_unitarity(module_matrices(ModuleSpec(1, 2, 1, 0, 1)))
    assert not report.passed and not report.precondition_ok


def test_verify_unitarity_catches_broken_adjoint():
    rep = orthonormal_matrices((1, 4), 3, 1, 40)
    am = np.array(rep.A_minus, dtype=object)
    am[0, 1] = am[0, 1] * 2
    report = verify_unitarity(rep.replace(A_minus=am), 40)
    assert not report.passed
    assert "A_minus^dagger != A_plus" in report.failures


def test_lowest_weight_annihilation_is_exact():
    for m, k in admissible_pairs(9):
        params = AlgebraParams(m, k)
        for d in classify_unitarizable(params, p_grid=[]):
            q = params.q.for_weight(d.p)
            assert verma_coefficient(q, d.p, d.L + 1) == 0


def test_casimir_is_hermitian_on_unitarizable_modules():
    for m, k in [(1, 3), (1, 4), (3, 10), (5, 7)]:
        params = AlgebraParams(m, k)
        c = casimir_element(ParaBoseAlgebra.at_root(m, k))
        for d in classify_unitarizable(params):
            rep = orthonormal_matrices(params, d.p, d.L, 40)
            mat = evaluate_element(c, rep)
            for r in range(rep.dim):
                for s in range(rep.dim):
                    assert abs(mat[r, s].value - mpmath.conj(mat[s, r].value)) < mpf(10) ** -30


def test_golden_fixtures_match_live_construction():
    for name in ("two_dim", "four_dim"):
        for rec in load_golden(name):
            rep = orthonormal_matrices((rec["m"], rec["k"]), rec["p"], rec["L"], 64)
            for key in ("A_minus", "Kmat"):
                assert max_entry_difference(golden_matrix(rec, key), getattr(rep, key), 64) < mpf(10) ** -40


def test_closed_form_fixture_builders():
    fx = fixture_two_dim(3, 5)
    assert fx["p"] == 14 and fx["L"] == 1
    assert fixture_four_dim(14)["p"] == 39
    with pytest.raises(ValueError):
        fixture_two_dim(2, 5)
