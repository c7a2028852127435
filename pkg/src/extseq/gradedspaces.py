"""Poincare-series bookkeeping for graded algebras and cohomology models.

Everything here is counting: graded dimensions of polynomial and
exterior algebras, Serre generator enumeration for Eilenberg-MacLane
spaces, graded tensor products, and exact series division for Hopf
quotients.  Homology and cohomology dimensions are identified
throughout (all spaces in range have degreewise finite mod-2 homology).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .steenrod import binom2, admissible_monomials

DEFAULT_MAX_DEGREE = 13


@dataclass(frozen=True)
class GradedDims:
    """Dimension per degree over 0..max_degree."""

    dims: tuple[int, ...]

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1

    def __post_init__(self) -> None:
        if not self.dims:
            raise ValueError("need at least degree 0")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")

    @classmethod
    def from_map(cls, entries: dict[int, int], max_degree: int) -> "GradedDims":
        return cls(tuple(entries.get(d, 0) for d in range(max_degree + 1)))

    @classmethod
    def unit(cls, max_degree: int) -> "GradedDims":
        return cls((1,) + (0,) * max_degree)

    def __getitem__(self, d: int) -> int:
        if d < 0:
            return 0
        if d > self.max_degree:
            raise IndexError(f"degree {d} beyond computed range {self.max_degree}")
        return self.dims[d]

    def truncate(self, max_degree: int) -> "GradedDims":
        if max_degree > self.max_degree:
            raise ValueError("cannot extend a computed range")
        return GradedDims(self.dims[: max_degree + 1])

    def to_json(self) -> dict:
        return {"max": self.max_degree, "dims": list(self.dims)}

    @classmethod
    def from_json(cls, obj: dict) -> "GradedDims":
        dims = tuple(obj["dims"])
        if len(dims) != obj["max"] + 1:
            raise ValueError("dims length does not match max")
        return cls(dims)


@dataclass(frozen=True)
class GeneratorSet:
    """Multiset of (degree, label) generator tags."""

    gens: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        if any(d <= 0 for d, _ in self.gens):
            raise ValueError("generator degrees must be positive")

    @classmethod
    def from_degrees(cls, degrees: Iterable[int], prefix: str = "x") -> "GeneratorSet":
        return cls(tuple((d, f"{prefix}{d}") for d in degrees))

    def degrees(self) -> list[int]:
        return [d for d, _ in self.gens]

    def merged(self, other: "GeneratorSet") -> "GeneratorSet":
        return GeneratorSet(self.gens + other.gens)

    def to_json(self) -> list[dict]:
        return [{"degree": d, "label": label} for d, label in self.gens]


@dataclass(frozen=True)
class EMSpaceSpec:
    """K(coefficient, n) with coefficient 'Z' or 'Z2'."""

    coefficient: str
    n: int

    def __post_init__(self) -> None:
        if self.coefficient not in ("Z", "Z2"):
            raise ValueError("coefficient must be 'Z' or 'Z2'")
        if self.n < 1:
            raise ValueError("fundamental degree must be >= 1")


@dataclass(frozen=True)
class InconsistencyReport:
    """Signals that series division produced a negative coefficient,
    i.e. the claimed sub-algebra inclusion is numerically impossible."""

    degree: int
    deficit: int
    message: str


def poly_dims(gens: GeneratorSet, max_degree: int) -> GradedDims:
    """Dimensions of the free commutative polynomial algebra on gens."""
    dims = [0] * (max_degree + 1)
    dims[0] = 1
    for d in gens.degrees():
        for i in range(d, max_degree + 1):
            dims[i] += dims[i - d]
    return GradedDims(tuple(dims))


def ext_alg_dims(basis: GradedDims, max_degree: int) -> GradedDims:
    """Exterior algebra on a positively graded space with the given
    degreewise dimensions."""
    if basis[0] != 0:
        raise ValueError("exterior algebra input must vanish in degree 0")
    dims = [0] * (max_degree + 1)
    dims[0] = 1
    for d in range(1, min(basis.max_degree, max_degree) + 1):
        for _ in range(basis[d]):
            for i in range(max_degree, d - 1, -1):
                dims[i] += dims[i - d]
    return GradedDims(tuple(dims))


def tensor_dims(a: GradedDims, b: GradedDims, max_degree: int) -> GradedDims:
    """Graded convolution."""
    dims = [0] * (max_degree + 1)
    for d in range(max_degree + 1):
        dims[d] = sum(
            a[i] * b[d - i]
            for i in range(d + 1)
            if i <= a.max_degree and d - i <= b.max_degree
        )
    return GradedDims(tuple(dims))


def series_quotient(
    total: GradedDims, sub: GradedDims, max_degree: int
) -> Union[GradedDims, InconsistencyReport]:
    """The unique q with total = sub (x) q, computed degree by degree."""
    if total[0] != 1 or sub[0] != 1:
        raise ValueError("series division needs connected inputs (dim 1 in degree 0)")
    q = [0] * (max_degree + 1)
    q[0] = 1
    for d in range(1, max_degree + 1):
        acc = sum(sub[a] * q[d - a] for a in range(1, d + 1) if a <= sub.max_degree)
        val = total[d] - acc
        if val < 0:
            return InconsistencyReport(
                degree=d,
                deficit=-val,
                message=(
                    f"series division fails in degree {d}: "
                    f"total {total[d]} < forced {acc}"
                ),
            )
        q[d] = val
    return GradedDims(tuple(q))


def excess(word: tuple[int, ...]) -> int:
    if not word:
        return 0
    return 2 * word[0] - sum(word)


def serre_generators(spec: EMSpaceSpec, max_degree: int) -> GeneratorSet:
    """Polynomial generators Sq^I iota_n of H*(K(pi, n); F2): admissible I
    with excess(I) < n, and i_r > 1 for integral coefficients."""
    gens = []
    iota = f"i{spec.n}"
    for extra in range(0, max_degree - spec.n + 1):
        for word in admissible_monomials(extra):
            if excess(word) >= spec.n:
                continue
            if spec.coefficient == "Z" and word and word[-1] == 1:
                continue
            label = iota if not word else "Sq(" + ",".join(map(str, word)) + ")*" + iota
            gens.append((spec.n + extra, label))
    gens.sort()
    return GeneratorSet(tuple(gens))


def em_dims(spec: EMSpaceSpec, max_degree: int) -> GradedDims:
    return poly_dims(serre_generators(spec, max_degree), max_degree)


def em_product_dims(specs: Iterable[EMSpaceSpec], max_degree: int) -> GradedDims:
    """Dims of a finite product of EM spaces; factors with fundamental
    degree beyond max_degree contribute nothing and are dropped."""
    acc = GradedDims.unit(max_degree)
    for spec in specs:
        if spec.n > max_degree:
            continue
        acc = tensor_dims(acc, em_dims(spec, max_degree), max_degree)
    return acc


def k1_factors(max_degree: int = DEFAULT_MAX_DEGREE) -> list[EMSpaceSpec]:
    """The product of K(Z2, 2^n - 2) for n >= 2, cut at max_degree."""
    out = []
    n = 2
    while 2 ** n - 2 <= max_degree:
        out.append(EMSpaceSpec("Z2", 2 ** n - 2))
        n += 1
    return out


def script_k_factors(max_degree: int = DEFAULT_MAX_DEGREE) -> list[EMSpaceSpec]:
    """The product of K(Z2, 4n-2) for n not a power of two and K(Z, 4n)
    for n > 1, cut at max_degree."""
    out = []
    n = 1
    while 4 * n - 2 <= max_degree:
        if n & (n - 1) != 0:  # n is not a power of two
            out.append(EMSpaceSpec("Z2", 4 * n - 2))
        n += 1
    n = 2
    while 4 * n <= max_degree:
        out.append(EMSpaceSpec("Z", 4 * n))
        n += 1
    out.sort(key=lambda s: (s.n, s.coefficient))
    return out


def k1_dims(max_degree: int = DEFAULT_MAX_DEGREE) -> GradedDims:
    return em_product_dims(k1_factors(max_degree), max_degree)


def script_k_dims(max_degree: int = DEFAULT_MAX_DEGREE) -> GradedDims:
    return em_product_dims(script_k_factors(max_degree), max_degree)


# ---------------------------------------------------------------------------
# Stiefel-Whitney polynomials and the Wu formula

SWMonomial = tuple[tuple[int, int], ...]  # sorted ((index, exponent), ...)


@dataclass(frozen=True)
class SWPolynomial:
    """GF(2)-sum of monomials in Stiefel-Whitney generators w_i."""

    monomials: frozenset[SWMonomial]

    @classmethod
    def zero(cls) -> "SWPolynomial":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "SWPolynomial":
        return cls(frozenset({()}))

    @classmethod
    def w(cls, i: int, exp: int = 1) -> "SWPolynomial":
        if i < 1:
            raise ValueError("w_i needs i >= 1")
        if i == 0 or exp == 0:
            return cls.one()
        return cls(frozenset({((i, exp),)}))

    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: "SWPolynomial") -> "SWPolynomial":
        return SWPolynomial(self.monomials ^ other.monomials)

    def __mul__(self, other: "SWPolynomial") -> "SWPolynomial":
        acc: set[SWMonomial] = set()
        for m in self.monomials:
            for n in other.monomials:
                exps: dict[int, int] = {}
                for i, e in m + n:
                    exps[i] = exps.get(i, 0) + e
                acc ^= {tuple(sorted(exps.items()))}
        return SWPolynomial(frozenset(acc))

    def degree(self) -> Optional[int]:
        degs = {sum(i * e for i, e in m) for m in self.monomials}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("inhomogeneous polynomial")
        return degs.pop()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for m in sorted(self.monomials):
            if not m:
                parts.append("1")
            else:
                parts.append("*".join(f"w{i}" + (f"^{e}" if e > 1 else "") for i, e in m))
        return " + ".join(parts)


def _sq_on_generator(i: int, j: int) -> SWPolynomial:
    """Wu's formula for Sq^i w_j; instability gives 0 for i > j."""
    if i == 0:
        return SWPolynomial.w(j)
    if i > j:
        return SWPolynomial.zero()
    acc = SWPolynomial.zero()
    for k in range(0, i + 1):
        if binom2(j - i + k - 1, k):
            term = SWPolynomial.w(j + k)
            if i - k > 0:
                term = SWPolynomial.w(i - k) * term
            acc = acc + term
    return acc


def _sq_on_factors(i: int, factors: tuple[int, ...]) -> SWPolynomial:
    """Cartan rule over an explicit factor list."""
    if not factors:
        return SWPolynomial.one() if i == 0 else SWPolynomial.zero()
    head, rest = factors[0], factors[1:]
    acc = SWPolynomial.zero()
    for a in range(0, i + 1):
        left = _sq_on_generator(a, head)
        if left.is_zero():
            continue
        right = _sq_on_factors(i - a, rest)
        if right.is_zero():
            continue
        acc = acc + left * right
    return acc


def wu_action(i: int, p: SWPolynomial) -> SWPolynomial:
    """Sq^i on a Stiefel-Whitney polynomial (Wu formula + Cartan)."""
    if i < 0:
        raise ValueError("negative Sq power")
    acc = SWPolynomial.zero()
    for m in p.monomials:
        factors = tuple(j for j, e in m for _ in range(e))
        acc = acc + _sq_on_factors(i, factors)
    return acc
