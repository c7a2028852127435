"""The mod-2 Steenrod algebra in the admissible basis.

Monomials Sq^{i1}...Sq^{ir} are plain tuples of positive integers;
admissible means i_j >= 2 i_{j+1}.  Elements are finite sets of
admissible monomials of a common degree (coefficients live in GF(2), so
a set is the whole story).  Binomial parity everywhere is the bitwise
Lucas criterion; ``binom2`` is the single source of it.

All operations are supported through degree ``DEGREE_CAP``; beyond that
they raise instead of silently truncating.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional

from .f2 import EchelonSpan

DEGREE_CAP = 40

Monomial = tuple[int, ...]


def binom2(n: int, k: int) -> int:
    """Binomial coefficient mod 2 via Lucas; negative n uses the
    reflection binom(n,k) = (-1)^k binom(k-n-1,k)."""
    if k < 0:
        return 0
    if n < 0:
        n = k - n - 1
    if k > n:
        return 0
    return 1 if (n & k) == k else 0


def degree(word: Iterable[int]) -> int:
    return sum(word)


def is_admissible(word: Monomial) -> bool:
    return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))


def _check_cap(word: Iterable[int]) -> None:
    d = sum(word)
    if d > DEGREE_CAP:
        raise ValueError(f"degree {d} exceeds the supported cap {DEGREE_CAP}")


@dataclass(frozen=True)
class SteenrodElement:
    """GF(2)-sum of admissible monomials of one common degree.

    ``degree`` is None exactly for the zero element.
    """

    terms: frozenset[Monomial]
    degree: Optional[int]

    @classmethod
    def zero(cls) -> "SteenrodElement":
        return cls(frozenset(), None)

    @classmethod
    def unit(cls) -> "SteenrodElement":
        return cls(frozenset({()}), 0)

    @classmethod
    def monomial(cls, word: Iterable[int]) -> "SteenrodElement":
        word = tuple(word)
        if not is_admissible(word):
            raise ValueError(f"{word} is not admissible; use adem_reduce")
        return cls(frozenset({word}), sum(word))

    @classmethod
    def from_terms(cls, terms: Iterable[Monomial]) -> "SteenrodElement":
        acc: set[Monomial] = set()
        for t in terms:
            t = tuple(t)
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
        if not acc:
            return cls.zero()
        degs = {sum(t) for t in acc}
        if len(degs) > 1:
            raise ValueError("terms of mixed degree")
        return cls(frozenset(acc), degs.pop())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degree")
        sym = self.terms ^ other.terms
        return SteenrodElement(sym, self.degree if sym else None)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms)

    def __str__(self) -> str:
        return format_element(self)


def sq(k: int) -> SteenrodElement:
    if k < 0:
        raise ValueError("negative Sq power")
    return SteenrodElement.unit() if k == 0 else SteenrodElement.monomial((k,))


@functools.lru_cache(maxsize=None)
def _adem_pair(a: int, b: int) -> frozenset[Monomial]:
    """Sq^a Sq^b for a < 2b rewritten by the Adem relation."""
    out: set[Monomial] = set()
    for c in range(0, a // 2 + 1):
        if binom2(b - c - 1, a - 2 * c):
            word = (a + b - c,) if c == 0 else (a + b - c, c)
            out ^= {word}
    return frozenset(out)


@functools.lru_cache(maxsize=None)
def _adem_word(word: Monomial) -> frozenset[Monomial]:
    for j in range(len(word) - 1):
        if word[j] < 2 * word[j + 1]:
            head, tail = word[:j], word[j + 2:]
            out: set[Monomial] = set()
            for mid in _adem_pair(word[j], word[j + 1]):
                out ^= _adem_word(head + mid + tail)
            return frozenset(out)
    return frozenset({word})


def adem_reduce(word: Iterable[int]) -> SteenrodElement:
    """Rewrite Sq^{word} as a sum of admissible monomials."""
    word = tuple(word)
    if any(i <= 0 for i in word):
        raise ValueError("Sq exponents must be positive")
    _check_cap(word)
    terms = _adem_word(word)
    if not terms:
        return SteenrodElement.zero()
    return SteenrodElement(terms, sum(word))


def product(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    """Bilinear extension of concatenation followed by Adem reduction."""
    if a.is_zero() or b.is_zero():
        return SteenrodElement.zero()
    _check_cap((a.degree + b.degree,))
    acc: set[Monomial] = set()
    for u in a.terms:
        for v in b.terms:
            acc ^= _adem_word(u + v)
    if not acc:
        return SteenrodElement.zero()
    return SteenrodElement(frozenset(acc), a.degree + b.degree)


def coproduct(k: int) -> list[tuple[SteenrodElement, SteenrodElement]]:
    """Cartan diagonal of Sq^k: all (Sq^i, Sq^{k-i})."""
    if k < 0:
        raise ValueError("negative Sq power")
    return [(sq(i), sq(k - i)) for i in range(k + 1)]


@functools.lru_cache(maxsize=None)
def diagonal(word: Monomial) -> frozenset[tuple[Monomial, Monomial]]:
    """Diagonal of a monomial as a GF(2)-set of pairs of admissible
    monomials, extended multiplicatively from the Cartan diagonal."""
    if not word:
        return frozenset({((), ())})
    pairs: set[tuple[Monomial, Monomial]] = set()
    rest = diagonal(word[1:])
    k = word[0]
    for i in range(k + 1):
        for (u, v) in rest:
            left = _adem_word((i,) + u if i else u)
            right = _adem_word((k - i,) + v if k - i else v)
            for lu in left:
                for rv in right:
                    pairs ^= {(lu, rv)}
    return frozenset(pairs)


def element_diagonal(x: SteenrodElement) -> list[tuple[Monomial, Monomial]]:
    acc: set[tuple[Monomial, Monomial]] = set()
    for t in x.terms:
        acc ^= diagonal(t)
    return sorted(acc)


@functools.lru_cache(maxsize=None)
def _chi_sq(k: int) -> frozenset[Monomial]:
    """chi(Sq^k) from the antipode recursion sum_{i+j=k} Sq^i chi(Sq^j) = 0."""
    if k == 0:
        return frozenset({()})
    acc: set[Monomial] = set()
    for i in range(1, k + 1):
        for v in _chi_sq(k - i):
            acc ^= _adem_word((i,) + v)
    return frozenset(acc)


def conjugate(x: SteenrodElement) -> SteenrodElement:
    """The antipode chi, extended over monomials as an anti-homomorphism."""
    if x.is_zero():
        return SteenrodElement.zero()
    acc: set[Monomial] = set()
    for word in x.terms:
        partial: frozenset[Monomial] = frozenset({()})
        for k in word:  # chi(Sq^{i1}...Sq^{ir}) = chi(Sq^{ir})...chi(Sq^{i1})
            nxt: set[Monomial] = set()
            for v in _chi_sq(k):
                for u in partial:
                    nxt ^= _adem_word(v + u)
            partial = frozenset(nxt)
        acc ^= partial
    if not acc:
        return SteenrodElement.zero()
    return SteenrodElement(frozenset(acc), x.degree)


@functools.lru_cache(maxsize=None)
def admissible_monomials(d: int) -> tuple[Monomial, ...]:
    """All admissible monomials of degree d, sorted."""
    if d < 0:
        return ()
    if d == 0:
        return ((),)
    out: list[Monomial] = []

    def build(first_max: int, remaining: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix)[::-1])
            return
        # build from the right: each new leading entry must be >= 2*previous
        lo = 2 * prefix[-1] if prefix else 1
        for i in range(lo, remaining + 1):
            prefix.append(i)
            build(first_max, remaining - i, prefix)
            prefix.pop()

    build(d, d, [])
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# finite subalgebras A(n)


@dataclass(frozen=True)
class SubalgebraId:
    """A(n), generated by Sq^1, ..., Sq^{2^n}; n=None is the whole algebra."""

    n: Optional[int]

    def __post_init__(self) -> None:
        if self.n is not None and self.n < 0:
            raise ValueError("subalgebra level must be >= 0")

    @property
    def is_full(self) -> bool:
        return self.n is None

    def generators(self) -> list[int]:
        if self.is_full:
            raise ValueError("the full algebra has no finite generator list")
        return [2 ** i for i in range(self.n + 1)]

    def __str__(self) -> str:
        return "A" if self.is_full else f"A({self.n})"


A0 = SubalgebraId(0)
A1 = SubalgebraId(1)
A2 = SubalgebraId(2)
FULL = SubalgebraId(None)


class SubalgebraTable:
    """Degreewise echelon bases of A(n) inside the admissible basis,
    with a memoized structure-constant table for products.

    Basis vectors are canonical: the reduced echelon basis of the span
    of all generator words, over the sorted admissible monomials of each
    degree.
    """

    def __init__(self, sub: SubalgebraId):
        if sub.is_full:
            raise ValueError("only finite A(n) can be tabulated")
        self.sub = sub
        # top nonzero degree of A(n): Milnor profile heights 2^{n+2-i} on xi_i
        self.top_degree = sum(
            (2 ** (sub.n + 2 - i) - 1) * (2 ** i - 1) for i in range(1, sub.n + 2)
        )
        self._spans: dict[int, EchelonSpan] = {}
        self._build()
        self._mult: dict[tuple[int, int, int, int], int] = {}

    def _mono_index(self, d: int) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(admissible_monomials(d))}

    def _to_bits(self, terms: Iterable[Monomial], d: int) -> int:
        idx = self._mono_index(d)
        bits = 0
        for t in terms:
            bits ^= 1 << idx[t]
        return bits

    def _build(self) -> None:
        gens = self.sub.generators()
        spans: dict[int, EchelonSpan] = {}
        span0 = EchelonSpan(1)
        span0.add(1)  # the unit
        spans[0] = span0
        # products of generators, built degree by degree: the span in
        # degree d is generated by Sq^{2^i} * (span in degree d - 2^i).
        # Each kept element is the value of a single word in the
        # generators; the kept words per degree form a spanning
        # independent family, recorded for operator decompositions.
        elements: dict[int, list[tuple[Monomial, frozenset[Monomial]]]] = {
            0: [((), frozenset({()}))]
        }
        for d in range(1, self.top_degree + 1):
            n_monos = len(admissible_monomials(d))
            span = EchelonSpan(n_monos)
            elems: list[tuple[Monomial, frozenset[Monomial]]] = []
            for g in gens:
                if g > d:
                    continue
                for prev_word, prev_value in elements.get(d - g, []):
                    acc: set[Monomial] = set()
                    for word in prev_value:
                        acc ^= _adem_word((g,) + word)
                    bits = self._to_bits(acc, d)
                    if bits and span.add(bits):
                        elems.append(((g,) + prev_word, frozenset(acc)))
            spans[d] = span
            elements[d] = elems
        self._spans = spans
        self._word_elements = elements

    def dim(self, d: int) -> int:
        if d < 0 or d > self.top_degree:
            return 0
        return self._spans[d].dim

    def total_dim(self) -> int:
        return sum(self.dim(d) for d in range(self.top_degree + 1))

    def basis(self, d: int) -> list[SteenrodElement]:
        """Canonical echelon basis of A(n) in degree d."""
        if d < 0 or d > self.top_degree:
            return []
        monos = admissible_monomials(d)
        out = []
        for row in self._spans[d].rows:
            terms = frozenset(monos[i] for i in range(len(monos)) if (row >> i) & 1)
            out.append(SteenrodElement(terms, d))
        return out

    def coordinates(self, x: SteenrodElement) -> int:
        """Coordinates of x in the degree-(x.degree) basis, as a bit mask."""
        if x.is_zero():
            return 0
        d = x.degree
        span = self._spans.get(d)
        if span is None:
            raise ValueError(f"degree {d} outside A({self.sub.n})")
        bits = self._to_bits(x.terms, d)
        coords = 0
        for i, p in enumerate(span.pivots):
            if (bits >> p) & 1:
                bits ^= span.rows[i]
                coords |= 1 << i
        if bits:
            raise ValueError(f"element not in A({self.sub.n}): {format_element(x)}")
        return coords

    def contains(self, x: SteenrodElement) -> bool:
        try:
            self.coordinates(x)
            return True
        except ValueError:
            return False

    def generator_words(self, d: int) -> list[Monomial]:
        """Independent spanning words in the generators for degree d."""
        if d < 0 or d > self.top_degree:
            return []
        return [w for w, _ in self._word_elements[d]]

    def word_decompose(self, x: SteenrodElement) -> list[Monomial]:
        """Express x as a GF(2)-sum of generator words (each word is a
        product Sq^{g1} Sq^{g2} ... of algebra generators)."""
        if x.is_zero():
            return []
        d = x.degree
        if d > self.top_degree or d < 0:
            raise ValueError(f"degree {d} outside A({self.sub.n})")
        from .f2 import F2Matrix, F2Vector, solve as f2_solve

        entries = self._word_elements[d]
        n_monos = len(admissible_monomials(d))
        # columns are word values, rows are admissible monomials
        cols = [self._to_bits(value, d) for _, value in entries]
        rows = []
        for r in range(n_monos):
            bits = 0
            for c, col in enumerate(cols):
                if (col >> r) & 1:
                    bits |= 1 << c
            rows.append(bits)
        target = F2Vector(self._to_bits(x.terms, d), n_monos)
        sol = f2_solve(F2Matrix(tuple(rows), len(entries)), target)
        if sol is None:
            raise ValueError(f"element not in A({self.sub.n}): {format_element(x)}")
        return [entries[c][0] for c in range(len(entries)) if sol[c]]

    def multiply(self, d1: int, i: int, d2: int, j: int) -> int:
        """Product of basis elements (deg d1, index i) * (deg d2, index j)
        as coordinates in the degree d1+d2 basis."""
        key = (d1, i, d2, j)
        if key not in self._mult:
            prod = product(self.basis(d1)[i], self.basis(d2)[j])
            self._mult[key] = self.coordinates(prod)
        return self._mult[key]


@functools.lru_cache(maxsize=None)
def subalgebra_table(n: int) -> SubalgebraTable:
    return SubalgebraTable(SubalgebraId(n))


def subalgebra_basis(sub: SubalgebraId, d: int) -> list[SteenrodElement]:
    """Basis of A(n) in degree d.  Each basis vector is a canonical
    GF(2)-sum of admissible monomials (single monomials where possible)."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    if sub.is_full:
        return [SteenrodElement.monomial(m) for m in admissible_monomials(d)]
    return subalgebra_table(sub.n).basis(d)


def subalgebra_dims(sub: SubalgebraId, max_degree: int) -> list[int]:
    if sub.is_full:
        return [len(admissible_monomials(d)) for d in range(max_degree + 1)]
    table = subalgebra_table(sub.n)
    return [table.dim(d) for d in range(max_degree + 1)]


# ---------------------------------------------------------------------------
# text convention: "Sq(i1,i2,...)"


def format_monomial(word: Monomial) -> str:
    return "Sq(" + ",".join(str(i) for i in word) + ")"


def format_element(x: SteenrodElement) -> str:
    if x.is_zero():
        return "0"
    return " + ".join(format_monomial(t) for t in x.sorted_terms())


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if not (text.startswith("Sq(") and text.endswith(")")):
        raise ValueError(f"bad monomial syntax: {text!r}")
    inner = text[3:-1].strip()
    if not inner:
        return ()
    word = tuple(int(p) for p in inner.split(","))
    if not is_admissible(word):
        raise ValueError(f"{word} is not admissible")
    return word


def parse_element(text: str) -> SteenrodElement:
    text = text.strip()
    if text == "0":
        return SteenrodElement.zero()
    return SteenrodElement.from_terms(parse_monomial(p) for p in text.split("+"))
