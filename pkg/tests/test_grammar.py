from fractions import Fraction

import pytest

from pbq.algebra import ParaBoseAlgebra, casimir_element
from pbq.exactnum import CyclotomicNumber
from pbq.grammar import ParseError, UnboundParameterError, parse, parse_expression, pretty_print, tokenize


@pytest.fixture(scope="module")
def alg():
    return ParaBoseAlgebra.at_root(1, 2)


def test_parse_examples(alg):
    e = parse_expression("a- a+", alg)
    assert len(e) == 3
    assert parse_expression("K K^-1", alg) == alg.one
    assert parse_expression("2 a+ + a+", alg) == alg.a_plus * 3
    assert str(parse_expression("2 a+ + a+", alg)) == "3 a+"


def test_juxtaposition_binds_tighter_than_sum(alg):
    assert parse_expression("a+ a- + a- a+", alg) == alg.a_plus * alg.a_minus + alg.a_minus * alg.a_plus
    assert parse_expression("a+ * a-", alg) == parse_expression("a+ a-", alg)


def test_powers_and_parentheses(alg):
    assert parse_expression("(a+ + K)^2", alg) == (alg.a_plus + alg.K) ** 2
    assert parse_expression("K^(-2)", alg) == alg.K_inv ** 2
    assert parse_expression("a+^3", alg) == alg.a_plus ** 3


def test_scalars(alg):
    q = alg.q
    assert parse_expression("3/4", alg) == alg.scalar(Fraction(3, 4))
    assert parse_expression("q^2 K", alg) == alg.K * q.q_pow(2)
    assert parse_expression("zeta(4)", alg) == alg.scalar(CyclotomicNumber.zeta(4).lift(q.order))
    assert parse_expression("- a+", alg) == -alg.a_plus


def test_syntax_error_carries_position(alg):
    with pytest.raises(ParseError) as info:
        parse_expression("a+ + * K", alg)
    assert info.value.position == 5


def test_unknown_symbol_rejected(alg):
    with pytest.raises(ParseError) as info:
        parse_expression("a+ H", alg)
    assert info.value.position == 3
    with pytest.raises(ParseError):
        tokenize("a+ $")


def test_q_requires_bound_parameters():
    with pytest.raises(UnboundParameterError) as info:
        parse_expression("a+ + q K")
    assert info.value.position == 5
    with pytest.raises(UnboundParameterError):
        parse_expression("a+ a-")


def test_parse_without_algebra_returns_tree():
    tree = parse("a+ a- + 2")
    assert tree is not None


def test_zeta_outside_field_rejected(alg):
    with pytest.raises(ParseError):
        parse_expression("zeta(5)", alg)


def test_negative_power_of_non_monomial_rejected(alg):
    with pytest.raises(ParseError):
        parse_expression("(a+ + K)^-1", alg)


def test_pretty_print_round_trip():
    for m, k in [(1, 2), (3, 4), (2, 5), (5, 7)]:
        alg = ParaBoseAlgebra.at_root(m, k)
        for e in (
            casimir_element(alg),
            alg.a_minus ** 3 * alg.a_plus ** 2,
            alg.K * Fraction(-3, 2) + alg.zero,
            alg.zero,
            alg.one,
        ):
            assert parse_expression(pretty_print(e), alg) == e


def test_pretty_print_forms(alg):
    assert pretty_print(alg.zero) == "0"
    assert pretty_print(alg.one) == "1"
    assert pretty_print(alg.a_plus * Fraction(-3, 2)) == "-3/2 a+"
