import csv
import io
import itertools
import json
from fractions import Fraction

import pytest

from pbq.classify import (
    AlgebraParams,
    CaseTag,
    GeneratorMap,
    admissible_pairs,
    canonicalize,
    casimir_eigenvalue,
    casimir_matrix,
    central_checks,
    check_shift_map,
    closed_form_L,
    default_p_grid,
    descriptors_to_csv,
    descriptors_to_json,
    dimension_coincidences,
    equivalence_instances,
    find_intertwiner,
    integer_window,
    is_admissible,
    is_scalar_matrix,
    make_descriptor,
    quadruple_modules,
    scan_L,
    vacuum_irreps,
)
from pbq.exactnum import ExactQ, UndefinedParameterError
from pbq.fockrep import ModuleSpec, module_matrices, verify_relations

from oracles import l_table


@pytest.mark.parametrize("m,k,ok", [(1, 2, True), (2, 4, False), (3, 3, False), (0, 5, False), (1, 1, False)])
def test_admissibility(m, k, ok):
    assert is_admissible(m, k) is ok


def test_non_admissible_params_rejected():
    with pytest.raises(ValueError):
        AlgebraParams(3, 2)


def test_case_tags_partition_admissible_pairs():
    for m, k in admissible_pairs(12):
        tag = AlgebraParams(m, k).case
        expected = (
            CaseTag.EVEN_K_ODD_M if k % 2 == 0 else CaseTag.ODD_K_ODD_M if m % 2 else CaseTag.ODD_K_EVEN_M
        )
        assert tag is expected


@pytest.mark.parametrize(
    "raw,canon,swap,k_sign",
    [((3, 2), (1, 2), True, 1), ((1, 2), (1, 2), False, 1), ((5, 3), (1, 3), True, 1), ((7, 4), (1, 4), True, 1), ((11, 4), (3, 4), False, -1), ((13, 6), (1, 6), False, -1), ((15, 4), (1, 4), True, -1)],
)
def test_canonicalize_examples(raw, canon, swap, k_sign):
    params, gmap = canonicalize(*raw)
    assert (params.m, params.k) == canon
    assert gmap.swap is swap and gmap.k_sign == k_sign


def test_canonicalize_reduces_common_factors_and_signs():
    params, _ = canonicalize(2, 4)
    assert (params.m, params.k) == (1, 2)
    params, gmap = canonicalize(-1, 4)
    assert (params.m, params.k) == (1, 4)
    assert not gmap.is_identity


def test_canonicalize_is_idempotent():
    for m, k in [(3, 2), (7, 4), (13, 6), (9, 4), (-5, 7)]:
        params, _ = canonicalize(m, k)
        again, gmap = canonicalize(params.m, params.k)
        assert again == params and gmap.is_identity


def test_canonicalize_excluded_parameters():
    for m, k in [(0, 3), (4, 2), (6, 6), (3, 3), (2, 1)]:
        with pytest.raises(UndefinedParameterError):
            canonicalize(m, k)


def test_generator_map_reproduces_raw_relations():
    for raw in [(3, 2), (7, 4), (5, 3), (-1, 4), (11, 6), (13, 6), (9, 4), (17, 5)]:
        for p in (Fraction(1, 2), Fraction(1)):
            c = canonicalize(*raw)
            L = None if p.denominator > 1 else scan_L(c.params.m, c.params.k, p)
            assert c.verify(p, L).passed, (raw, p)


def test_wrong_generator_map_is_detected():
    c = canonicalize(15, 4)
    spec = ModuleSpec(c.params.m, c.params.k, Fraction(1, 2), 0, c.params.generic_top)
    rep = module_matrices(spec)
    raw_q = c.raw_q(rep.q.d)
    assert verify_relations(c.generator_map.apply(rep, raw_q)).passed
    for wrong in (GeneratorMap(), GeneratorMap(swap=True), GeneratorMap(k_sign=-1)):
        assert wrong != c.generator_map
        assert not verify_relations(wrong.apply(rep, raw_q)).passed


def test_generator_map_dict():
    assert canonicalize(3, 2).generator_map.as_dict()["a+"] == "a-"
    assert canonicalize(11, 4).generator_map.as_dict()["K"] == "-K"


def test_closed_form_matches_hand_table():
    for m, k in admissible_pairs(12):
        params = AlgebraParams(m, k)
        for p in integer_window(params):
            assert closed_form_L(params, int(p)) == l_table(m, k, int(p)), (m, k, p)


def test_closed_form_matches_scan_small_k():
    for m, k in admissible_pairs(5):
        params = AlgebraParams(m, k)
        for p in integer_window(params):
            assert closed_form_L(params, int(p)) == scan_L(m, k, p)


def test_closed_form_outside_window_rejected():
    with pytest.raises(ValueError):
        closed_form_L(AlgebraParams(1, 2), 9)


def test_vacuum_irreps_examples():
    descs = vacuum_irreps(AlgebraParams(1, 2), p_grid=[])
    got = {(int(d.p), d.L) for d in descs}
    assert got == {(2, 2), (4, 0), (6, 2), (8, 0), (1, 1), (3, 3), (5, 1), (7, 3)}
    odd = [d for d in vacuum_irreps(AlgebraParams(1, 3), p_grid=[]) if d.p % 2 == 1]
    assert [int(d.p) for d in odd] == [1, 3, 5, 7, 9, 11]
    assert all(d.L == 2 for d in odd)
    (d,) = [d for d in vacuum_irreps(AlgebraParams(2, 3), p_grid=[]) if d.p == 1]
    assert d.L == 2


def test_descriptor_counts_per_case():
    for m, k in admissible_pairs(9):
        params = AlgebraParams(m, k)
        descs = [d for d in vacuum_irreps(params, p_grid=[]) if d.p.denominator == 1]
        even = [d for d in descs if d.p % 2 == 0]
        odd = [d for d in descs if d.p % 2 == 1]
        if params.case is not CaseTag.ODD_K_EVEN_M:
            assert len(even) == len(odd) == 2 * k
        if params.case is CaseTag.ODD_K_ODD_M:
            assert all(d.dimension == k for d in odd)


def test_non_integer_weights_flag_non_generic_cases():
    descs = vacuum_irreps(AlgebraParams(3, 4), p_grid=[Fraction(1, 3), Fraction(1, 5)])
    third = next(d for d in descs if d.p == Fraction(1, 3))
    fifth = next(d for d in descs if d.p == Fraction(1, 5))
    assert not third.generic and third.L < 7
    assert fifth.generic and fifth.L == 7


def test_descriptor_grid_contains_integers_and_halves():
    params = AlgebraParams(1, 2)
    grid = default_p_grid(params)
    assert Fraction(1, 2) in grid and Fraction(8) in grid and Fraction(0) not in grid


def test_descriptor_equality_is_modulo_weight_period():
    params = AlgebraParams(1, 2)
    assert make_descriptor(params, 1, 1) == make_descriptor(params, 9, 1)
    assert make_descriptor(params, 1, 1) != make_descriptor(params, 3, 1)


def test_casimir_closed_form_examples():
    params = AlgebraParams(1, 2)
    assert casimir_eigenvalue(params, 1) == 3
    for p in range(1, 9):
        assert casimir_eigenvalue(params, p).conj() == casimir_eigenvalue(params, p)


def test_casimir_matrix_is_scalar_on_vacuum_irreps():
    for m, k in [(1, 2), (3, 4), (1, 3), (2, 5)]:
        for d in vacuum_irreps(AlgebraParams(m, k), p_grid=[Fraction(1, 2)]):
            mat = casimir_matrix(d.spec)
            scalar, value = is_scalar_matrix(mat, d.spec.qparam())
            assert scalar, (m, k, d.p)


def test_casimir_matrix_value_on_small_module():
    # the literal normal-form element acts as (q^(2p-2) + q^(2-2p))/2
    spec = ModuleSpec(1, 2, 3, 0, 3)
    scalar, value = is_scalar_matrix(casimir_matrix(spec), spec.qparam())
    q = ExactQ(1, 2)
    assert scalar and value == (q.q_pow(4) + q.q_pow(-4)) * Fraction(1, 2)


def test_quadruple_shares_casimir_and_is_pairwise_inequivalent():
    params = AlgebraParams(1, 4)
    quad = quadruple_modules(params, 2)
    assert [s.dimension for s in quad] == [7, 7, 1, 1]
    values = {casimir_eigenvalue(params, s.p) for s in quad}
    assert len(values) == 1
    for a, b in itertools.combinations(quad, 2):
        assert find_intertwiner(a, b) is None


def test_quadruple_needs_even_weight():
    with pytest.raises(ValueError):
        quadruple_modules(AlgebraParams(1, 4), 3)


def test_translation_intertwiner_example():
    src = ModuleSpec(1, 2, Fraction(1, 2), 0, 3)
    tgt = ModuleSpec(1, 2, Fraction(1, 2) + 8, 4, 7)
    cert = find_intertwiner(src, tgt)
    assert cert is not None and cert.verified
    assert cert.shift == 4 and cert.weight_shift == 8


def test_equal_dimension_different_spectrum_not_equivalent():
    a = ModuleSpec(1, 4, 2, 0, 6)
    b = ModuleSpec(1, 4, 10, 0, 6)
    assert find_intertwiner(a, b) is None
    cert = check_shift_map(a, b)
    assert not cert.verified and any(s.startswith("K") for s in cert.mismatches)


def test_self_intertwiner_is_identity():
    s = ModuleSpec(1, 3, 2, 0, 1)
    cert = find_intertwiner(s, s)
    assert cert.verified and cert.shift == 0 and cert.weight_shift == 0


def test_dimension_mismatch_has_no_intertwiner():
    assert find_intertwiner(ModuleSpec(1, 2, 1, 0, 1), ModuleSpec(1, 2, 3, 0, 3)) is None


def test_non_module_truncations_are_not_certified():
    # same K and a- data, but |p;2> is not singular so 0..1 is not a submodule
    a = ModuleSpec(1, 2, Fraction(1, 3), 0, 1)
    cert = check_shift_map(a, a)
    assert not cert.verified
    assert "source is not a module" in cert.mismatches


def test_equivalence_instances_verify_for_small_k():
    for m, k in admissible_pairs(4):
        for claim in equivalence_instances(AlgebraParams(m, k)):
            cert = find_intertwiner(claim.source, claim.target)
            assert cert is not None, (m, k, claim)


def test_dimension_coincidence_pairs_are_inequivalent():
    for m, k in admissible_pairs(7):
        params = AlgebraParams(m, k)
        for a, b in dimension_coincidences(params):
            assert a.dimension == b.dimension
            assert casimir_eigenvalue(params, a.p) == casimir_eigenvalue(params, b.p)
            assert find_intertwiner(a, b) is None


def test_pairwise_inequivalence_of_integer_irreps():
    for m, k in [(1, 2), (3, 4), (1, 5), (2, 5)]:
        descs = vacuum_irreps(AlgebraParams(m, k), p_grid=[])
        for a, b in itertools.combinations(descs, 2):
            assert find_intertwiner(a.spec, b.spec) is None


def test_central_check_examples():
    params = AlgebraParams(1, 2)
    report = central_checks(make_descriptor(params, 1, 1))
    assert report.passed
    assert report.K_power_value == -1
    assert central_checks(make_descriptor(params, 4, 0)).passed


def test_serialisation():
    descs = vacuum_irreps(AlgebraParams(1, 2), p_grid=[Fraction(1, 2)])
    rows = list(csv.reader(io.StringIO(descriptors_to_csv(descs))))
    assert rows[0] == ["m", "k", "case", "p", "L", "dim", "casimir_re", "casimir_im", "unitarizable"]
    assert len(rows) == len(descs) + 1
    data = json.loads(descriptors_to_json(descs))
    assert data[0]["p"] == "1/2" and "K_spectrum" in data[0]
    assert canonicalize(3, 2).to_json()["canonical"]["m"] == 1
