"""Finitely presented graded modules over A(n), and the concrete
truncated module of exotic characteristic classes in degrees 8..11
together with its dimension bookkeeping.

An FPModule stores the action of the algebra generators Sq^{2^i} only;
the action of an arbitrary subalgebra element is derived through the
generator-word decompositions of the subalgebra table, and
``check_relations`` certifies that the generator tables are consistent
with every relation of A(n).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from . import steenrod as st
from .gradedspaces import (
    GeneratorSet,
    GradedDims,
    InconsistencyReport,
    ext_alg_dims,
    k1_dims,
    poly_dims,
    script_k_dims,
    series_quotient,
    tensor_dims,
)
from .steenrod import SteenrodElement, SubalgebraId, subalgebra_table

MAX_BOOKKEEPING_DEGREE = 11


class NotSplitError(ValueError):
    """The degree-0 class is not acted on trivially, so the module does
    not split off a trivial summand."""


def rk_generator_degrees(k: int) -> GeneratorSet:
    """Degrees 2^{k-i}(2^i - 1) of the k polynomial generators of R[k]*."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return GeneratorSet(
        tuple((2 ** (k - i) * (2 ** i - 1), f"xi_{i}{k}") for i in range(1, k + 1))
    )


def exterior_r2_dims(max_degree: int) -> GradedDims:
    """Exterior algebra on the underlying graded space of R[2]."""
    p2 = poly_dims(rk_generator_degrees(2), max_degree)
    positive = GradedDims((0,) + p2.dims[1:])
    return ext_alg_dims(positive, max_degree)


def gamma_t_dims(max_degree: int) -> Union[GradedDims, InconsistencyReport]:
    """Hopf-quotient series of the 2^n-2 family by the exterior algebra
    on R[2], computed by exact division of recomputed inputs."""
    return series_quotient(k1_dims(max_degree), exterior_r2_dims(max_degree), max_degree)


@dataclass(frozen=True)
class VDecomposition:
    """Degree bookkeeping for the three tensor factors building the
    exotic-class space through degree 11."""

    v1_factor: GradedDims
    gamma_t: GradedDims
    script_k: GradedDims
    total: GradedDims  # v1_factor (x) gamma_t
    provenance: tuple[str, ...]


def v_dims(max_degree: int = MAX_BOOKKEEPING_DEGREE) -> VDecomposition:
    """The combined graded dimensions of the tensor-algebra factor and
    the Hopf-quotient factor, valid through degree 11 only."""
    if max_degree > MAX_BOOKKEEPING_DEGREE:
        raise ValueError(
            f"degree bookkeeping is only supported through {MAX_BOOKKEEPING_DEGREE}"
        )
    gamma = gamma_t_dims(max_degree)
    if isinstance(gamma, InconsistencyReport):
        raise ValueError(f"series division failed: {gamma.message}")
    provenance = (
        "v1-factor degrees 1..8 and 10..11 vanish: no suspended generator "
        "of the complementary tensor factor lands there in this range",
        "v1-factor degree 9 holds the single class complementary to the "
        "Hopf-quotient generator in total degree 9",
    )
    v1 = GradedDims.from_map({0: 1, 9: 1} if max_degree >= 9 else {0: 1}, max_degree)
    total = tensor_dims(v1, gamma, max_degree)
    return VDecomposition(
        v1_factor=v1,
        gamma_t=gamma,
        script_k=script_k_dims(max_degree),
        total=total,
        provenance=provenance,
    )


def cpl_dims(max_degree: int = MAX_BOOKKEEPING_DEGREE) -> GradedDims:
    """Graded dimensions of the exotic-class coalgebra through degree 11."""
    dec = v_dims(max_degree)
    return tensor_dims(dec.total, dec.script_k, max_degree)


# ---------------------------------------------------------------------------
# finitely presented modules


OpMatrix = tuple[int, ...]  # column i -> bit mask of target basis indices


@dataclass(frozen=True)
class FPModule:
    """Graded module over A(n) given by named basis elements and action
    tables for the algebra generators.

    ``actions[g][i]`` is the image of basis element i under Sq^g as a
    bit mask of basis indices.  ``truncation`` marks a degree above
    which all actions were forced to zero; actions that would land
    beyond it are flagged truncation-sensitive.
    """

    algebra: SubalgebraId
    basis: tuple[tuple[str, int], ...]
    actions: tuple[tuple[int, OpMatrix], ...]  # ((g, matrix), ...) sorted by g
    side: str = "left"
    truncation: Optional[int] = None

    def __post_init__(self) -> None:
        if self.algebra.is_full:
            raise ValueError("FPModule needs a finite subalgebra")
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        gens = self.algebra.generators()
        if [g for g, _ in self.actions] != gens:
            raise ValueError(f"actions must cover exactly the generators {gens}")
        degs = dict(enumerate(d for _, d in self.basis))
        for g, mat in self.actions:
            if len(mat) != len(self.basis):
                raise ValueError("action matrix has wrong number of columns")
            for i, bits in enumerate(mat):
                for j in _bit_indices(bits):
                    if degs[j] != degs[i] + g:
                        raise ValueError(
                            f"Sq^{g} maps degree {degs[i]} basis element "
                            f"{self.basis[i][0]} to degree {degs[j]}"
                        )

    # -- construction helpers

    @classmethod
    def from_action_dict(
        cls,
        algebra: SubalgebraId,
        basis: Iterable[tuple[str, int]],
        actions: dict[int, dict[str, Iterable[str]]],
        side: str = "left",
        truncation: Optional[int] = None,
    ) -> "FPModule":
        basis = tuple(basis)
        index = {name: i for i, (name, _) in enumerate(basis)}
        packed = []
        for g in algebra.generators():
            table = actions.get(g, {})
            mat = [0] * len(basis)
            for src, targets in table.items():
                bits = 0
                for t in targets:
                    bits |= 1 << index[t]
                mat[index[src]] = bits
            packed.append((g, tuple(mat)))
        return cls(algebra, basis, tuple(packed), side=side, truncation=truncation)

    @classmethod
    def trivial(cls, algebra: SubalgebraId, name: str = "1", degree: int = 0) -> "FPModule":
        return cls.from_action_dict(algebra, [(name, degree)], {})

    # -- basic queries

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.basis]

    @property
    def degrees(self) -> list[int]:
        return [d for _, d in self.basis]

    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, d in self.basis:
            out[d] = out.get(d, 0) + 1
        return out

    def graded_dims(self, max_degree: Optional[int] = None) -> GradedDims:
        if max_degree is None:
            max_degree = max(self.degrees, default=0)
        return GradedDims.from_map(self.dims(), max_degree)

    def generator_matrix(self, g: int) -> OpMatrix:
        for gg, mat in self.actions:
            if gg == g:
                return mat
        raise KeyError(g)

    def truncated_actions(self) -> list[tuple[int, str]]:
        """(generator, basis name) pairs whose action was cut by the
        truncation degree; these are the truncation-sensitive entries."""
        if self.truncation is None:
            return []
        out = []
        for g, _ in self.actions:
            for name, d in self.basis:
                if d + g > self.truncation:
                    out.append((g, name))
        return out

    # -- derived action of arbitrary subalgebra elements

    def _word_operator(self, word: tuple[int, ...]) -> OpMatrix:
        """Operator of a product word of generators.  For a left module
        the rightmost factor acts first; for a right module the leftmost."""
        order = reversed(word) if self.side == "left" else word
        mats = [self.generator_matrix(g) for g in order]
        op: OpMatrix = tuple(1 << i for i in range(len(self.basis)))  # identity
        for mat in mats:
            op = _compose(mat, op)
        return op

    def operator(self, x: SteenrodElement) -> OpMatrix:
        """Matrix of the action of an arbitrary element of A(n)."""
        if x.is_zero():
            return (0,) * len(self.basis)
        table = subalgebra_table(self.algebra.n)
        op = [0] * len(self.basis)
        for word in table.word_decompose(x):
            wop = self._word_operator(word)
            for i in range(len(self.basis)):
                op[i] ^= wop[i]
        return tuple(op)

    def act(self, x: SteenrodElement, bits: int) -> int:
        op = self.operator(x)
        out = 0
        for i in _bit_indices(bits):
            out ^= op[i]
        return out

    def check_relations(self) -> list[str]:
        """Certify the generator tables against every relation of A(n).

        For each spanning generator word w and each generator g the
        operator of the reduced product g*w must equal the composite of
        the generator operators.  Returns human-readable violations
        (empty list = the module is a genuine A(n)-module presentation).
        """
        table = subalgebra_table(self.algebra.n)
        violations = []
        for d in range(0, table.top_degree + 1):
            for word in table.generator_words(d):
                wop = self._word_operator(word)
                value = _word_value(word)
                for g in self.algebra.generators():
                    gmat = self.generator_matrix(g)
                    if self.side == "left":
                        lhs = _compose(gmat, wop)
                        prod = st.product(st.sq(g), value)
                    else:
                        lhs = _compose(gmat, wop)
                        prod = st.product(value, st.sq(g))
                    rhs = self.operator(prod)
                    if lhs != rhs:
                        side_word = (g,) + word if self.side == "left" else word + (g,)
                        violations.append(
                            "relation failure at word "
                            + "*".join(f"Sq^{a}" for a in side_word)
                        )
        return violations

    # -- serialization

    def to_json(self) -> dict:
        entries = []
        for g, mat in self.actions:
            for i, bits in enumerate(mat):
                if bits:
                    entries.append(
                        {
                            "sq": g,
                            "from": self.basis[i][0],
                            "to": [self.basis[j][0] for j in _bit_indices(bits)],
                        }
                    )
        return {
            "algebra": self.algebra.n,
            "side": self.side,
            "truncation": self.truncation,
            "basis": [{"name": n, "degree": d} for n, d in self.basis],
            "actions": entries,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FPModule":
        algebra = SubalgebraId(obj["algebra"])
        basis = [(b["name"], b["degree"]) for b in obj["basis"]]
        actions: dict[int, dict[str, list[str]]] = {}
        for e in obj.get("actions", []):
            actions.setdefault(e["sq"], {})[e["from"]] = list(e["to"])
        return cls.from_action_dict(
            algebra,
            basis,
            actions,
            side=obj.get("side", "left"),
            truncation=obj.get("truncation"),
        )

    @classmethod
    def load(cls, path: str) -> "FPModule":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _bit_indices(bits: int) -> list[int]:
    out = []
    while bits:
        i = (bits & -bits).bit_length() - 1
        out.append(i)
        bits &= bits - 1
    return out


def _compose(after: OpMatrix, first: OpMatrix) -> OpMatrix:
    out = []
    for i in range(len(first)):
        acc = 0
        for j in _bit_indices(first[i]):
            acc ^= after[j]
        out.append(acc)
    return tuple(out)


def _word_value(word: tuple[int, ...]) -> SteenrodElement:
    acc = SteenrodElement.unit()
    for g in reversed(word):
        acc = st.product(st.sq(g), acc)
    return acc


# ---------------------------------------------------------------------------
# the truncated degree 8..11 module


def cpl_module(truncation: int = 11) -> FPModule:
    """The A(2)-module of exotic classes p8 .. p11, truncated at 11.

    Generator actions follow the explicit degree 8..11 computations;
    anything landing above the truncation is cut to zero and flagged.
    """
    if truncation != 11:
        raise ValueError("only truncation 11 is supported")
    basis = [
        ("p8", 8),
        ("p9_1", 9),
        ("p9_2", 9),
        ("p10_1", 10),
        ("p10_2", 10),
        ("p10_3", 10),
        ("p11_1", 11),
        ("p11_3", 11),
    ]
    actions = {
        1: {"p9_2": ["p10_2"], "p10_1": ["p11_1"], "p10_3": ["p11_3"]},
        2: {"p8": ["p10_1"]},
        4: {},
    }
    return FPModule.from_action_dict(
        SubalgebraId(2), basis, actions, truncation=truncation
    )


def adjoin_unit(m: FPModule, name: str = "1") -> FPModule:
    """Direct sum with a trivial one-dimensional degree-0 module."""
    if any(d == 0 for d in m.degrees):
        raise ValueError("module already has a degree-0 basis element")
    basis = [(name, 0)] + list(m.basis)
    actions: dict[int, dict[str, list[str]]] = {}
    for g, mat in m.actions:
        table = {}
        for i, bits in enumerate(mat):
            if bits:
                table[m.basis[i][0]] = [m.basis[j][0] for j in _bit_indices(bits)]
        actions[g] = table
    return FPModule.from_action_dict(
        m.algebra, basis, actions, side=m.side, truncation=m.truncation
    )


def unit_plus_positive_split(m: FPModule) -> tuple[FPModule, FPModule]:
    """Split a module with a trivially acted degree-0 class as
    (trivial summand, positive part)."""
    zero_idx = [i for i, d in enumerate(m.degrees) if d == 0]
    if len(zero_idx) != 1:
        raise ValueError("need exactly one degree-0 basis element")
    u = zero_idx[0]
    for g, mat in m.actions:
        if mat[u]:
            raise NotSplitError(f"Sq^{g} does not vanish on the degree-0 class")
    unit = FPModule.trivial(m.algebra, name=m.basis[u][0])
    rest_basis = [m.basis[i] for i in range(len(m.basis)) if i != u]
    keep = [i for i in range(len(m.basis)) if i != u]
    reindex = {old: new for new, old in enumerate(keep)}
    actions: dict[int, dict[str, list[str]]] = {}
    for g, mat in m.actions:
        table = {}
        for i in keep:
            if mat[i]:
                table[m.basis[i][0]] = [m.basis[j][0] for j in _bit_indices(mat[i])]
        actions[g] = table
    positive = FPModule.from_action_dict(
        m.algebra, rest_basis, actions, side=m.side, truncation=m.truncation
    )
    del reindex  # naming is by basis name, indices need no translation
    return unit, positive


def tensor_module(b: FPModule, c: FPModule, convention: str = "left") -> FPModule:
    """Tensor product module with the diagonal action.

    left:  a (x (x) y) = sum a' x (x) a'' y
    right: (x (x) y) a = chi(a) acting diagonally, i.e.
           sum chi(a)' x (x) chi(a)'' y
    where primes run over the Cartan diagonal.  The antipode twist is
    what makes the diagonal left action into a genuine right action.
    """
    if convention not in ("left", "right"):
        raise ValueError("convention must be 'left' or 'right'")
    if b.algebra != c.algebra:
        raise ValueError("factors must live over the same subalgebra")
    algebra = b.algebra
    pair_basis = []
    for nb, db in b.basis:
        for nc, dc in c.basis:
            pair_basis.append((f"{nb}(x){nc}", db + dc))

    trunc_candidates = [t for t in (b.truncation, c.truncation) if t is not None]
    joint_trunc: Optional[int] = None
    if trunc_candidates:
        joint_trunc = min(
            min(trunc_candidates) + max(c.degrees, default=0),
            max(d for _, d in pair_basis),
        )

    nb_, nc_ = len(b.basis), len(c.basis)

    def pair_index(i: int, j: int) -> int:
        return i * nc_ + j

    actions: dict[int, dict[str, list[str]]] = {}
    for g in algebra.generators():
        element = st.sq(g)
        if convention == "right":
            element = st.conjugate(element)
        pairs = st.element_diagonal(element)
        for i in range(nb_):
            for j in range(nc_):
                acc = 0
                for lw, rw in pairs:
                    xb = b.act(SteenrodElement.monomial(lw), 1 << i)
                    if not xb:
                        continue
                    yc = c.act(SteenrodElement.monomial(rw), 1 << j)
                    if not yc:
                        continue
                    for ii in _bit_indices(xb):
                        for jj in _bit_indices(yc):
                            acc ^= 1 << pair_index(ii, jj)
                if acc:
                    actions.setdefault(g, {})[pair_basis[pair_index(i, j)][0]] = [
                        pair_basis[k][0] for k in _bit_indices(acc)
                    ]
    return FPModule.from_action_dict(
        algebra,
        pair_basis,
        actions,
        side="left" if convention == "left" else "right",
        truncation=joint_trunc,
    )
