"""The superalgebra pB_q generated by a^+, a^-, K, K^-1.

Relations::

    K K^-1 = K^-1 K = 1
    K a^+- = q^(+-2) a^+- K
    a^+ a^- + a^- a^+ = (K - K^-1) / (q - q^-1)

with a^+- odd and K^+-1 even. Elements are kept in the normal form
``sum c_(i,j,s) (a^+)^i (a^-)^j K^s``.

Two independent routes produce normal forms:

* :meth:`AlgebraElement.__mul__` multiplies normal forms with a closed
  formula for ``(a^-)^j (a^+)^i``;
* :func:`normal_order` runs the pairwise rewriting system on raw words.

Their agreement is the confluence check used by the test-suite.
"""
from __future__ import annotations

import enum
import heapq
import random
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .exactnum import ApproxComplex, ApproxQ, CyclotomicNumber, ExactQ

__all__ = [
    "AlgebraElement",
    "Generator",
    "Grade",
    "ParaBoseAlgebra",
    "casimir_element",
    "grade",
    "normal_order",
    "omega",
]

QParam = Union[ExactQ, ApproxQ]
Key = tuple[int, int, int]


class Generator(enum.Enum):
    A_PLUS = "a+"
    A_MINUS = "a-"
    K = "K"
    K_INV = "K^-1"

    @property
    def odd(self) -> bool:
        return self in (Generator.A_PLUS, Generator.A_MINUS)


class Grade(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


class ParaBoseAlgebra:
    """pB_q for a fixed deformation parameter.

    >>> alg = ParaBoseAlgebra.at_root(1, 2)
    >>> str(alg.a_minus * alg.a_plus) == str(-alg.a_plus * alg.a_minus + alg.bracket_K())
    True
    """

    def __init__(self, q: QParam) -> None:
        self.q = q

    @classmethod
    def at_root(cls, m: int, k: int) -> ParaBoseAlgebra:
        """The algebra at ``q = exp(i*pi*m/(2k))`` with exact scalars."""
        return cls(ExactQ(m, k))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParaBoseAlgebra) and self.q == other.q

    def __hash__(self) -> int:
        return hash(self.q)

    def __repr__(self) -> str:
        return f"ParaBoseAlgebra({self.q!r})"

    @property
    def m(self) -> int | None:
        return self.q.m

    @property
    def k(self) -> int | None:
        return self.q.k

    # -- building blocks ---------------------------------------------------

    def scalar(self, value: object) -> AlgebraElement:
        return AlgebraElement(self, {(0, 0, 0): self.q.coerce(value)})

    def monomial(self, i: int = 0, j: int = 0, s: int = 0, coeff: object = 1) -> AlgebraElement:
        return AlgebraElement(self, {(i, j, s): self.q.coerce(coeff)})

    @property
    def one(self) -> AlgebraElement:
        return self.monomial()

    @property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    @property
    def a_plus(self) -> AlgebraElement:
        return self.monomial(i=1)

    @property
    def a_minus(self) -> AlgebraElement:
        return self.monomial(j=1)

    @property
    def K(self) -> AlgebraElement:
        return self.monomial(s=1)

    @property
    def K_inv(self) -> AlgebraElement:
        return self.monomial(s=-1)

    def generator(self, g: Generator) -> AlgebraElement:
        return {
            Generator.A_PLUS: self.a_plus,
            Generator.A_MINUS: self.a_minus,
            Generator.K: self.K,
            Generator.K_INV: self.K_inv,
        }[g]

    def q_pow(self, n: int):
        return self.q.q_pow(n)

    def bracket_K(self) -> AlgebraElement:
        """``(K - K^-1) / (q - q^-1)``."""
        c = self._inv_qdiff()
        return AlgebraElement(self, {(0, 0, 1): c, (0, 0, -1): -c})

    def _inv_qdiff(self):
        return 1 / (self.q_pow(1) - self.q_pow(-1))

    def parse(self, text: str) -> AlgebraElement:
        from .grammar import parse_expression

        return parse_expression(text, self)

    def word(self, letters: Sequence[Generator]) -> AlgebraElement:
        """Product of generators via the multiplication formula."""
        out = self.one
        for g in letters:
            out = out * self.generator(g)
        return out


def _monomial_product(q: QParam, a: Key, b: Key) -> list[tuple[Key, object]]:
    i1, j1, s1 = a
    i2, j2, s2 = b
    lead = q.q_pow(2 * s1 * (i2 - j2))
    out = []
    for (ip, jp, sp), c in _swap(q, j1, i2):
        out.append(((i1 + ip, jp + j2, sp + s1 + s2), c * lead * q.q_pow(-2 * sp * j2)))
    return out


@lru_cache(maxsize=4096)
def _swap(q: QParam, j: int, i: int) -> tuple[tuple[Key, object], ...]:
    """Normal form of ``(a^-)^j (a^+)^i``."""
    one = q.one()
    if j == 0 or i == 0:
        return (((i, j, 0), one),)
    c = 1 / (q.q_pow(1) - q.q_pow(-1))
    # a^- (a^+)^i
    first: dict[Key, object] = {(i, 1, 0): one * (-1) ** i}
    kp = (i - 1, 0, 1)
    km = (i - 1, 0, -1)
    acc_p = q.zero()
    acc_m = q.zero()
    for t in range(i):
        sign = (-1) ** t
        acc_p = acc_p + c * q.q_pow(2 * (i - 1 - t)) * sign
        acc_m = acc_m - c * q.q_pow(-2 * (i - 1 - t)) * sign
    first[kp] = acc_p
    first[km] = acc_m
    if j == 1:
        return tuple((key, v) for key, v in first.items() if not q.is_zero(v))
    # (a^-)^(j-1) times each term of a^- (a^+)^i
    acc: dict[Key, object] = {}
    for (ip, jp, sp), v in first.items():
        if q.is_zero(v):
            continue
        for key, w in _monomial_product(q, (0, j - 1, 0), (ip, jp, sp)):
            acc[key] = acc[key] + v * w if key in acc else v * w
    return tuple((key, v) for key, v in sorted(acc.items()) if not q.is_zero(v))


class AlgebraElement:
    """A normal-ordered element ``sum c (a^+)^i (a^-)^j K^s`` of pB_q.

    Zero coefficients are never stored; instances are immutable.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: ParaBoseAlgebra, terms: Mapping[Key, object]) -> None:
        q = algebra.q
        self.algebra = algebra
        self._terms = {key: v for key, v in sorted(terms.items()) if not q.is_zero(v)}

    @property
    def terms(self) -> Mapping[Key, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int, s: int):
        return self._terms.get((i, j, s), self.algebra.q.zero())

    # -- ring operations --------------------------------------------------

    def _lift(self, other: object) -> AlgebraElement | None:
        if isinstance(other, AlgebraElement):
            if other.algebra != self.algebra:
                raise ValueError("elements belong to different algebras")
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber, ApproxComplex)) and not isinstance(other, bool):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other: object) -> AlgebraElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for key, v in o._terms.items():
            terms[key] = terms[key] + v if key in terms else v
        return AlgebraElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, {key: -v for key, v in self._terms.items()})

    def __sub__(self, other: object) -> AlgebraElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> AlgebraElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> AlgebraElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        q = self.algebra.q
        acc: dict[Key, object] = {}
        for ka, va in self._terms.items():
            for kb, vb in o._terms.items():
                for key, w in _monomial_product(q, ka, kb):
                    val = va * vb * w
                    acc[key] = acc[key] + val if key in acc else val
        return AlgebraElement(self.algebra, acc)

    def __rmul__(self, other: object) -> AlgebraElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, n: int) -> AlgebraElement:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.algebra.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> AlgebraElement:
        """Inverse of a single term ``c K^s``; other elements are not invertible here."""
        if len(self._terms) != 1:
            raise ValueError("only single K-monomials are invertible")
        (i, j, s), c = next(iter(self._terms.items()))
        if i or j:
            raise ValueError("a^+- monomials are not invertible")
        return AlgebraElement(self.algebra, {(0, 0, -s): 1 / c})

    def __eq__(self, other: object) -> bool:
        o = self._lift(other) if not isinstance(other, AlgebraElement) else other
        if o is None:
            return NotImplemented
        if o.algebra != self.algebra or self._terms.keys() != o._terms.keys():
            return False
        q = self.algebra.q
        return all(q.is_zero(self._terms[key] - o._terms[key]) for key in self._terms)

    __hash__ = None  # type: ignore[assignment]

    # -- structure ---------------------------------------------------------

    def grade(self) -> Grade:
        return grade(self)

    def omega(self) -> AlgebraElement:
        return omega(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"

    def __str__(self) -> str:
        from .grammar import pretty_print

        return pretty_print(self)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": i, "j": j, "s": s, "coeff": v.to_json()} for (i, j, s), v in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, algebra: ParaBoseAlgebra, data: dict) -> AlgebraElement:
        from .exactnum import scalar_from_json

        return cls(
            algebra,
            {(t["i"], t["j"], t["s"]): algebra.q.coerce(scalar_from_json(t["coeff"])) for t in data["terms"]},
        )


# --------------------------------------------------------------------------
# rewriting on raw words

Word = tuple[Generator, ...]

_AP, _AM, _K, _KI = Generator.A_PLUS, Generator.A_MINUS, Generator.K, Generator.K_INV


def _rules(q: QParam) -> dict[tuple[Generator, Generator], list[tuple[Word, object]]]:
    one = q.one()
    c = 1 / (q.q_pow(1) - q.q_pow(-1))
    return {
        (_K, _KI): [((), one)],
        (_KI, _K): [((), one)],
        (_K, _AP): [((_AP, _K), q.q_pow(2))],
        (_K, _AM): [((_AM, _K), q.q_pow(-2))],
        (_KI, _AP): [((_AP, _KI), q.q_pow(-2))],
        (_KI, _AM): [((_AM, _KI), q.q_pow(2))],
        (_AM, _AP): [((_AP, _AM), -one), ((_K,), c), ((_KI,), -c)],
    }


def _word_key(word: Word) -> Key:
    return (word.count(_AP), word.count(_AM), word.count(_K) - word.count(_KI))


_RANK = {_AP: 0, _AM: 1, _K: 2, _KI: 2}


def _measure(word: Word) -> tuple[int, int]:
    """(length, inversions); every rewrite rule strictly lowers it."""
    inv = 0
    seen = [0, 0, 0]
    for g in word:
        r = _RANK[g]
        inv += sum(seen[r + 1 :])
        seen[r] += 1
    return len(word), inv


def normal_order(
    word: Iterable[Generator | str] | Mapping[Sequence[Generator | str], object],
    algebra: ParaBoseAlgebra,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
) -> AlgebraElement:
    """Rewrite a raw word (or a linear combination of words) to normal form.

    ``strategy`` picks which reducible adjacent pair is rewritten first:
    ``"leftmost"``, ``"rightmost"`` or ``"random"`` (driven by ``rng``).
    The result does not depend on the choice.

    Words are processed largest-measure first, so each distinct word is
    rewritten once with its accumulated coefficient.
    """
    q = algebra.q
    rules = _rules(q)
    if strategy not in ("leftmost", "rightmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    if isinstance(word, Mapping):
        start = {tuple(Generator(g) for g in w): q.coerce(c) for w, c in word.items()}
    else:
        start = {tuple(Generator(g) for g in word): q.one()}
    pending: dict[Word, object] = {}
    heap: list[tuple[int, int, int, Word]] = []
    tick = 0

    def push(w: Word, c) -> None:
        nonlocal tick
        if w in pending:
            pending[w] = pending[w] + c
            return
        pending[w] = c
        n, inv = _measure(w)
        heapq.heappush(heap, (-n, -inv, tick, w))
        tick += 1

    for w, c in start.items():
        push(w, c)
    done: dict[Key, object] = {}
    while heap:
        *_, w = heapq.heappop(heap)
        coeff = pending.pop(w)
        if q.is_zero(coeff):
            continue
        redexes = [t for t in range(len(w) - 1) if (w[t], w[t + 1]) in rules]
        if not redexes:
            key = _word_key(w)
            done[key] = done[key] + coeff if key in done else coeff
            continue
        if strategy == "leftmost":
            t = redexes[0]
        elif strategy == "rightmost":
            t = redexes[-1]
        else:
            t = rng.choice(redexes)
        for repl, factor in rules[(w[t], w[t + 1])]:
            push(w[:t] + repl + w[t + 2 :], coeff * factor)
    return AlgebraElement(algebra, done)


# --------------------------------------------------------------------------
# antiinvolution, grading, Casimir


def omega(e: AlgebraElement) -> AlgebraElement:
    """Antilinear antiinvolution with a^+- -> a^-+ and K^+-1 -> K^-+1.

    Each monomial is reversed, its letters mapped and the product is
    re-normal-ordered through ordinary multiplication.
    """
    alg = e.algebra
    out = alg.zero
    for (i, j, s), c in e.items():
        term = alg.K_inv ** s if s >= 0 else alg.K ** (-s)
        term = term * alg.a_plus ** j * alg.a_minus ** i
        out = out + term * c.conj()
    return out


def grade(e: AlgebraElement) -> Grade:
    """Z2 degree of a homogeneous element, or ``Grade.MIXED``."""
    parities = {(i + j) % 2 for (i, j, _s) in e.terms}
    if len(parities) > 1:
        return Grade.MIXED
    return Grade.ODD if parities == {1} else Grade.EVEN


def casimir_element(algebra: ParaBoseAlgebra | int, k: int | None = None) -> AlgebraElement:
    """The quadratic Casimir ``C2`` in normal form.

    Accepts an algebra or a root-of-unity pair ``(m, k)``.

    2 C2 = q^2 K^2 + q^-2 K^-2
           + (q^2 - q^-2)(q - q^-1)(q^2 K + q^-2 K^-1) a^- a^+
           - (q^2 - q^-2)^2 (a^-)^2 (a^+)^2
    """
    alg = ParaBoseAlgebra.at_root(algebra, k) if k is not None else algebra
    qp = alg.q_pow
    d2 = qp(2) - qp(-2)
    d1 = qp(1) - qp(-1)
    two_c = (
        alg.K ** 2 * qp(2)
        + alg.K_inv ** 2 * qp(-2)
        + (alg.K * qp(2) + alg.K_inv * qp(-2)) * alg.a_minus * alg.a_plus * (d2 * d1)
        - alg.a_minus ** 2 * alg.a_plus ** 2 * (d2 * d2)
    )
    return two_c * Fraction(1, 2)
