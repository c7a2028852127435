"""Minimal free resolutions over finite subalgebras of the Steenrod
algebra, Ext charts with h_i products and a small naming policy, chart
comparison against reference data, and a deterministic disk cache.

The resolver works degree by degree: at homological level s and
internal degree t the new generators of F_s cover the kernel of the
previous differential modulo what the already chosen generators of F_s
reach, which keeps the resolution minimal by construction and makes
Ext^{s,t} the plain generator count.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cplmodel import FPModule, cpl_module
from .f2 import EchelonSpan, F2Matrix, kernel_basis
from .steenrod import (
    SteenrodElement,
    SubalgebraId,
    subalgebra_table,
)

CHART_FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# resolution


@dataclass(frozen=True)
class FreeGen:
    """Generator of a level of the resolution."""

    s: int
    index: int  # position within its level
    degree: int


class Resolution:
    """Minimal free resolution of a finitely presented module, computed
    through homological level s_max and internal degree t_max.

    ``gens[s]`` lists generator degrees; ``diff_bits[s][k]`` is the
    image of generator k of F_s in (F_{s-1})_{t_k} (level -1 is the
    module itself), packed in the degreewise basis enumeration of
    ``free_basis``.
    """

    def __init__(self, module: FPModule, s_max: int, t_max: int):
        if module.algebra.is_full:
            raise ValueError("resolution needs a finite subalgebra")
        self.module = module
        self.s_max = s_max
        self.t_max = t_max
        self.table = subalgebra_table(module.algebra.n)
        self.gens: list[list[int]] = []
        self.diff_bits: list[list[int]] = []
        self._op_cache: dict[tuple[int, int], tuple[int, ...]] = {}
        self._build()

    # -- degreewise bases of free modules

    def free_basis(self, s: int, t: int) -> list[tuple[int, int]]:
        """Ordered basis [(gen index, algebra basis index)] of (F_s)_t."""
        out = []
        for k, tk in enumerate(self.gens[s]):
            if tk <= t:
                for m in range(self.table.dim(t - tk)):
                    out.append((k, m))
        return out

    def free_dim(self, s: int, t: int) -> int:
        return sum(self.table.dim(t - tk) for tk in self.gens[s] if tk <= t)

    def module_basis_at(self, t: int) -> list[int]:
        return [i for i, (_, d) in enumerate(self.module.basis) if d == t]

    # -- algebra actions

    def _module_op(self, d: int, m: int) -> tuple[int, ...]:
        key = (d, m)
        if key not in self._op_cache:
            self._op_cache[key] = self.module.operator(self.table.basis(d)[m])
        return self._op_cache[key]

    def act_free(self, s: int, d: int, m: int, bits: int, t: int) -> int:
        """Image of a degree-t element of F_s under the algebra basis
        element (d, m); result lives in degree t + d."""
        if d == 0:
            return bits
        src = self.free_basis(s, t)
        dst_index = {pair: p for p, pair in enumerate(self.free_basis(s, t + d))}
        out = 0
        b = bits
        while b:
            p = (b & -b).bit_length() - 1
            b &= b - 1
            k, m2 = src[p]
            prod = self.table.multiply(d, m, t - self.gens[s][k], m2)
            q = prod
            while q:
                r = (q & -q).bit_length() - 1
                q &= q - 1
                out ^= 1 << dst_index[(k, r)]
        return out

    def act_module(self, d: int, m: int, bits: int, t: int) -> int:
        """Same action on the module, degree t to t + d, in the
        degreewise index packing of ``module_basis_at``."""
        if d == 0:
            return bits
        src = self.module_basis_at(t)
        dst = {i: p for p, i in enumerate(self.module_basis_at(t + d))}
        op = self._module_op(d, m)
        out = 0
        b = bits
        while b:
            p = (b & -b).bit_length() - 1
            b &= b - 1
            img = op[src[p]]
            while img:
                j = (img & -img).bit_length() - 1
                img &= img - 1
                out ^= 1 << dst[j]
        return out

    # -- the differential as a matrix in a fixed degree

    def apply_diff(self, s: int, bits: int, t: int) -> int:
        """Boundary of a degree-t element of F_s (landing in F_{s-1},
        or in the module when s is 0)."""
        src = self.free_basis(s, t)
        out = 0
        b = bits
        while b:
            p = (b & -b).bit_length() - 1
            b &= b - 1
            k, m = src[p]
            tk = self.gens[s][k]
            image = self.diff_bits[s][k]
            if s == 0:
                out ^= self.act_module(t - tk, m, image, tk)
            else:
                out ^= self.act_free(s - 1, t - tk, m, image, tk)
        return out

    def diff_matrix(self, s: int, t: int) -> F2Matrix:
        """Columns are the degree-t basis of F_s; rows index the target
        degree-t basis (of F_{s-1} or of the module)."""
        cols = self.free_dim(s, t)
        if s == 0:
            nrows = len(self.module_basis_at(t))
        else:
            nrows = self.free_dim(s - 1, t)
        rows = [0] * nrows
        for c in range(cols):
            img = self.apply_diff(s, 1 << c, t)
            while img:
                r = (img & -img).bit_length() - 1
                img &= img - 1
                rows[r] |= 1 << c
        return F2Matrix(tuple(rows), cols)

    # -- construction

    def _build(self) -> None:
        # level 0: minimal cover of the module
        self.gens.append([])
        self.diff_bits.append([])
        for t in range(self.t_max + 1):
            basis_here = self.module_basis_at(t)
            if not basis_here:
                continue
            reached = EchelonSpan(len(basis_here))
            for k, tk in enumerate(self.gens[0]):
                d = t - tk
                for m in range(self.table.dim(d)):
                    reached.add(self.act_module(d, m, self.diff_bits[0][k], tk))
            for p in range(len(basis_here)):
                v = reached.reduce(1 << p)
                if v:
                    self.gens[0].append(t)
                    self.diff_bits[0].append(v)
                    reached.add(v)
        # higher levels: cover the kernel of the previous differential
        for s in range(1, self.s_max + 1):
            self.gens.append([])
            self.diff_bits.append([])
            for t in range(self.t_max + 1):
                if self.free_dim(s - 1, t) == 0:
                    continue
                kernel = kernel_basis(self.diff_matrix(s - 1, t))
                if not kernel:
                    continue
                reached = EchelonSpan(self.free_dim(s - 1, t))
                for k, tk in enumerate(self.gens[s]):
                    d = t - tk
                    for m in range(self.table.dim(d)):
                        reached.add(self.act_free(s - 1, d, m, self.diff_bits[s][k], tk))
                for v in kernel:
                    w = reached.reduce(v.bits)
                    if w:
                        self._assert_minimal(s, t, w)
                        self.gens[s].append(t)
                        self.diff_bits[s].append(w)
                        reached.add(w)

    def _assert_minimal(self, s: int, t: int, bits: int) -> None:
        # a unit-coefficient component would make the resolution
        # non-minimal; by construction this cannot happen
        for p, (k, m) in enumerate(self.free_basis(s - 1, t)):
            if (bits >> p) & 1 and self.gens[s - 1][k] == t:
                raise AssertionError(
                    f"non-minimal differential at level {s} degree {t}"
                )

    # -- readouts

    def ext_dim(self, s: int, t: int) -> int:
        if s > self.s_max or t > self.t_max:
            raise ValueError("outside computed range")
        return sum(1 for tk in self.gens[s] if tk == t)

    def gen_positions(self, s: int, t: int) -> list[int]:
        return [k for k, tk in enumerate(self.gens[s]) if tk == t]

    def diff_components(self, s: int, k: int) -> dict[int, SteenrodElement]:
        """Image of generator k of F_s written as {target gen: algebra
        element}; only for s >= 1."""
        if s < 1:
            raise ValueError("level 0 maps into the module")
        tk = self.gens[s][k]
        comps: dict[int, SteenrodElement] = {}
        bits = self.diff_bits[s][k]
        basis = self.free_basis(s - 1, tk)
        while bits:
            p = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            j, m = basis[p]
            elem = self.table.basis(tk - self.gens[s - 1][j])[m]
            comps[j] = comps.get(j, SteenrodElement.zero()) + elem
        return {j: e for j, e in comps.items() if not e.is_zero()}

    def verify_complex(self) -> list[str]:
        """Check that consecutive boundary maps compose to zero in
        every computed degree."""
        problems = []
        for s in range(1, len(self.gens)):
            for k, tk in enumerate(self.gens[s]):
                img = self.apply_diff(s, 1 << self._gen_position(s, k, tk), tk)
                out = self.apply_diff(s - 1, img, tk)
                if out:
                    problems.append(f"d o d != 0 at level {s} generator {k}")
        return problems

    def _gen_position(self, s: int, k: int, t: int) -> int:
        pos = 0
        for kk, tk in enumerate(self.gens[s]):
            if kk == k:
                return pos
            if tk <= t:
                pos += self.table.dim(t - tk)
        raise IndexError(k)


# ---------------------------------------------------------------------------
# Ext charts


@dataclass(frozen=True)
class ChartClass:
    name: str
    s: int
    t: int
    flags: tuple[str, ...] = ()

    @property
    def stem(self) -> int:
        return self.t - self.s


@dataclass(frozen=True)
class ChartProduct:
    op: str  # "h0" | "h1" | "h2"
    source: str
    target: str


@dataclass
class ExtChart:
    """Chart of Ext classes with h_i multiplication data.

    Classes are the resolution generators.  ``h_matrices[i][(s, t)]``
    maps the generator coordinates of Ext^{s,t} into Ext^{s+1, t+2^i}.
    """

    s_max: int
    t_max: int
    classes: list[ChartClass] = field(default_factory=list)
    h_matrices: dict[int, dict[tuple[int, int], list[int]]] = field(default_factory=dict)

    def class_names(self, s: int, t: int) -> list[str]:
        return [c.name for c in self.classes if c.s == s and c.t == t]

    def dim(self, s: int, t: int) -> int:
        return len(self.class_names(s, t))

    def dims_by_stem(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for c in self.classes:
            key = (c.stem, c.s)
            out[key] = out.get(key, 0) + 1
        return out

    def h_apply(self, i: int, s: int, t: int, vec: int) -> int:
        """Apply h_i multiplication to a coordinate vector in Ext^{s,t}."""
        mat = self.h_matrices.get(i, {}).get((s, t))
        if mat is None:
            return 0
        out = 0
        v = vec
        while v:
            c = (v & -v).bit_length() - 1
            v &= v - 1
            out ^= mat[c]
        return out

    # -- expression evaluation over named classes

    def locate(self, name: str) -> tuple[int, int, int]:
        """(s, t, coordinate vector) of a named class."""
        for c in self.classes:
            if c.name == name:
                idx = self.class_names(c.s, c.t).index(name)
                return c.s, c.t, 1 << idx
        raise KeyError(f"no chart class named {name!r}")

    def evaluate(self, expr: str) -> tuple[int, int, int]:
        """Evaluate an expression like 'h0^2*p8' or 'h1*omega + tau'.

        Factors are multiplied left to right; every factor after the
        first must be an h_i.  Returns (s, t, vector); all summands
        must agree in bidegree.
        """
        result: Optional[tuple[int, int, int]] = None
        for term in expr.split("+"):
            s, t, vec = self._evaluate_term(term.strip())
            if result is None:
                result = (s, t, vec)
            else:
                if (result[0], result[1]) != (s, t):
                    raise ValueError(f"mixed bidegrees in {expr!r}")
                result = (s, t, result[2] ^ vec)
        if result is None:
            raise ValueError("empty expression")
        return result

    def _evaluate_term(self, term: str) -> tuple[int, int, int]:
        factors: list[str] = []
        for raw in term.split("*"):
            raw = raw.strip()
            if "^" in raw:
                base, exp = raw.split("^")
                factors.extend([base.strip()] * int(exp))
            else:
                factors.append(raw)
        if not factors:
            raise ValueError(f"empty term in {term!r}")
        base = factors[-1]
        s, t, vec = self.locate(base)
        for f in reversed(factors[:-1]):
            if f not in ("h0", "h1", "h2"):
                raise ValueError(f"only h0/h1/h2 can multiply named classes, got {f!r}")
            i = int(f[1])
            vec = self.h_apply(i, s, t, vec)
            s, t = s + 1, t + 2 ** i
            if vec == 0:
                break
        return s, t, vec

    def products(self) -> list[ChartProduct]:
        """h_i edges between single chart classes (entries of the
        multiplication matrices restricted to basis vectors)."""
        out = []
        for i, per_bidegree in sorted(self.h_matrices.items()):
            for (s, t), mat in sorted(per_bidegree.items()):
                src_names = self.class_names(s, t)
                dst_names = self.class_names(s + 1, t + 2 ** i)
                for c, col in enumerate(mat):
                    v = col
                    while v:
                        r = (v & -v).bit_length() - 1
                        v &= v - 1
                        out.append(ChartProduct(f"h{i}", src_names[c], dst_names[r]))
        return out

    # -- serialization

    def to_json(self) -> dict:
        return {
            "format": CHART_FORMAT_VERSION,
            "s_max": self.s_max,
            "t_max": self.t_max,
            "classes": [
                {"name": c.name, "s": c.s, "t": c.t, "flags": list(c.flags)}
                for c in self.classes
            ],
            "products": [
                {"op": p.op, "from": p.source, "to": p.target}
                for p in self.products()
            ],
            "h_matrices": {
                str(i): {f"{s},{t}": mat for (s, t), mat in sorted(per.items())}
                for i, per in sorted(self.h_matrices.items())
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExtChart":
        chart = cls(s_max=obj["s_max"], t_max=obj["t_max"])
        for c in obj["classes"]:
            chart.classes.append(
                ChartClass(c["name"], c["s"], c["t"], tuple(c.get("flags", ())))
            )
        for i, per in obj.get("h_matrices", {}).items():
            chart.h_matrices[int(i)] = {
                tuple(map(int, key.split(","))): list(mat) for key, mat in per.items()
            }
        return chart


def h_product_matrices(res: Resolution) -> dict[int, dict[tuple[int, int], list[int]]]:
    """h_i multiplication read off the minimal resolution: the entry
    from a level-s generator g' to a level-(s+1) generator g is the
    coefficient of Sq^{2^i} g' in the boundary of g."""
    out: dict[int, dict[tuple[int, int], list[int]]] = {0: {}, 1: {}, 2: {}}
    gens_n = res.module.algebra.n
    for i in range(min(3, gens_n + 1)):
        q = 2 ** i
        for s in range(0, len(res.gens) - 1):
            degrees = sorted(set(res.gens[s]))
            for t in degrees:
                src = res.gen_positions(s, t)
                dst = res.gen_positions(s + 1, t + q)
                if not src or not dst:
                    continue
                mat = [0] * len(src)
                for r, gk in enumerate(dst):
                    comps = res.diff_components(s + 1, gk)
                    for c, gj in enumerate(src):
                        elem = comps.get(gj)
                        if elem is not None and (q,) in elem.terms:
                            mat[c] |= 1 << r
                out[i][(s, t)] = mat
    return out


# ---------------------------------------------------------------------------
# naming


def _default_alias_path() -> str:
    return os.path.join(os.path.dirname(__file__), "data", "ext_a2_names.toml")


def load_aliases(path: Optional[str] = None) -> dict[tuple[int, int], str]:
    """Names of indecomposable chart classes by bidegree, from TOML
    entries [[alias]] with fields name, s, t."""
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    if path is None:
        path = _default_alias_path()
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    out = {}
    for entry in data.get("alias", []):
        out[(entry["s"], entry["t"])] = entry["name"]
    return out


def ext_chart(
    res: Resolution,
    aliases: Optional[dict[tuple[int, int], str]] = None,
    base_names: Optional[dict[int, str]] = None,
) -> ExtChart:
    """Chart of a computed resolution with named classes.

    Level-0 generators take names from ``base_names`` (position within
    level 0) or from the single module basis element they cover; other
    classes are named h-monomials on named classes when the h_i
    matrices connect them to one, with positional fallbacks x{s}_{t}_{k}.
    """
    if aliases is None:
        aliases = {}
    if base_names is None:
        base_names = {}
    hmats = h_product_matrices(res)
    chart = ExtChart(s_max=res.s_max, t_max=res.t_max, h_matrices=hmats)

    names: dict[tuple[int, int], list[Optional[str]]] = {}
    for s in range(len(res.gens)):
        for t in sorted(set(res.gens[s])):
            names[(s, t)] = [None] * res.ext_dim(s, t)

    # level 0 names
    for pos, k in enumerate(range(len(res.gens[0]))):
        t = res.gens[0][k]
        slot = res.gen_positions(0, t).index(k)
        if k in base_names:
            names[(0, t)][slot] = base_names[k]
        else:
            cover = [
                res.module.basis[j][0]
                for p, j in enumerate(res.module_basis_at(t))
                if (res.diff_bits[0][k] >> p) & 1
            ]
            if len(cover) == 1:
                names[(0, t)][slot] = cover[0]

    # aliases by bidegree, only for one-dimensional spots
    for (s, t), name in aliases.items():
        if (s, t) in names and len(names[(s, t)]) == 1:
            names[(s, t)][0] = name

    # propagate h-monomial names upward through the chart, preferring
    # lower h index and shorter expressions
    changed = True
    while changed:
        changed = False
        for i in (0, 1, 2):
            q = 2 ** i
            for (s, t), mat in sorted(hmats[i].items()):
                tgt = (s + 1, t + q)
                if tgt not in names:
                    continue
                for c, col in enumerate(mat):
                    src_name = names[(s, t)][c]
                    if src_name is None or col == 0 or col & (col - 1):
                        continue
                    r = col.bit_length() - 1
                    if names[tgt][r] is None:
                        if src_name == "1":
                            names[tgt][r] = f"h{i}"
                        else:
                            names[tgt][r] = f"h{i}*{src_name}"
                        changed = True

    for (s, t), slots in sorted(names.items()):
        for k, name in enumerate(slots):
            if name is None:
                name = f"x{s}_{t}_{k}"
            chart.classes.append(ChartClass(_normalize_name(name), s, t))
    return chart


def _normalize_name(name: str) -> str:
    """Sort commuting h factors and collapse repeats into powers:
    h0*h0*h2*omega becomes h0^2*h2."""
    factors = name.split("*")
    hs = sorted(f for f in factors if f in ("h0", "h1", "h2"))
    rest = [f for f in factors if f not in ("h0", "h1", "h2")]
    parts = []
    for h in ("h0", "h1", "h2"):
        k = hs.count(h)
        if k == 1:
            parts.append(h)
        elif k > 1:
            parts.append(f"{h}^{k}")
    parts.extend(rest)
    return "*".join(parts)


# ---------------------------------------------------------------------------
# comparison


@dataclass(frozen=True)
class DiffReport:
    """Outcome of comparing a computed chart against reference data."""

    matches: bool
    errors: tuple[str, ...]
    warnings: tuple[str, ...]


def chart_compare(
    computed: ExtChart,
    reference: dict,
    stem_max: Optional[int] = None,
    s_max: Optional[int] = None,
) -> DiffReport:
    """Compare per-(stem, s) class counts and h_i edges.

    The reference carries its own coverage window (stem_max, s_max);
    computed classes outside the window are ignored, mismatches in
    cells the reference flags as uncertain become warnings.
    """
    if stem_max is None:
        stem_max = reference["stem_max"]
    if s_max is None:
        s_max = reference["s_max"]
    errors: list[str] = []
    warnings: list[str] = []

    ref_counts: dict[tuple[int, int], int] = {}
    flagged: set[tuple[int, int]] = {
        tuple(cell) for cell in reference.get("uncertain_cells", [])
    }
    for c in reference["classes"]:
        key = (c["stem"], c["s"])
        ref_counts[key] = ref_counts.get(key, 0) + 1
        if c.get("flags"):
            flagged.add(key)

    comp_counts: dict[tuple[int, int], int] = {}
    for c in computed.classes:
        if c.stem <= stem_max and c.s <= s_max:
            key = (c.stem, c.s)
            comp_counts[key] = comp_counts.get(key, 0) + 1

    for key in sorted(set(ref_counts) | set(comp_counts)):
        a = comp_counts.get(key, 0)
        b = ref_counts.get(key, 0)
        if a != b:
            msg = f"stem {key[0]} filtration {key[1]}: computed {a}, reference {b}"
            if key in flagged:
                warnings.append(msg)
            else:
                errors.append(msg)

    if "products" in reference:
        ref_edges = {(p["op"], p["from"], p["to"]) for p in reference["products"]}
        comp_edges = set()
        name_window = {
            c.name for c in computed.classes if c.stem <= stem_max and c.s <= s_max
        }
        for p in computed.products():
            if p.source in name_window and p.target in name_window:
                comp_edges.add((p.op, p.source, p.target))
        for e in sorted(ref_edges - comp_edges):
            errors.append(f"missing product {e[0]}: {e[1]} -> {e[2]}")
        for e in sorted(comp_edges - ref_edges):
            warnings.append(f"extra product {e[0]}: {e[1]} -> {e[2]}")

    return DiffReport(matches=not errors, errors=tuple(errors), warnings=tuple(warnings))


# ---------------------------------------------------------------------------
# the two charts feeding the spectral sequence work


def sphere_chart(s_max: int = 9, t_max: int = 26) -> ExtChart:
    """Ext over A(2) of the trivial module, with the standard names."""
    res = Resolution(FPModule.trivial(SubalgebraId(2)), s_max, t_max)
    return ext_chart(res, aliases=load_aliases(), base_names={0: "1"})


def cpl_chart(s_max: int = 9, t_max: int = 26) -> ExtChart:
    """Ext over A(2) of the truncated degree 8..11 module."""
    res = Resolution(cpl_module(), s_max, t_max)
    return ext_chart(res)


def merge_charts(parts: list[tuple[str, ExtChart]]) -> ExtChart:
    """Disjoint union of charts; each class is tagged with its part and
    the h_i matrices are reassembled block-diagonally so products never
    mix parts."""
    s_max = min(c.s_max for _, c in parts)
    t_max = min(c.t_max for _, c in parts)
    out = ExtChart(s_max=s_max, t_max=t_max)

    dims: dict[tuple[int, int], list[int]] = {}
    for p, (tag, chart) in enumerate(parts):
        for c in chart.classes:
            dims.setdefault((c.s, c.t), [0] * len(parts))[p] += 1
            out.classes.append(ChartClass(c.name, c.s, c.t, c.flags + (tag,)))
    part_order = {tag: p for p, (tag, _) in enumerate(parts)}
    out.classes.sort(key=lambda c: (c.s, c.t, part_order[c.flags[-1]]))
    # positional fallback names can repeat across parts; qualify them
    counts: dict[str, int] = {}
    for c in out.classes:
        counts[c.name] = counts.get(c.name, 0) + 1
    for idx, c in enumerate(out.classes):
        if counts[c.name] > 1:
            out.classes[idx] = ChartClass(
                f"{c.name}@{c.flags[-1]}", c.s, c.t, c.flags
            )

    def offset(cell: tuple[int, int], p: int) -> int:
        return sum(dims.get(cell, [0] * len(parts))[:p])

    for i in (0, 1, 2):
        merged: dict[tuple[int, int], list[int]] = {}
        q = 2 ** i
        cells = {
            (s, t)
            for _, chart in parts
            for (s, t) in chart.h_matrices.get(i, {})
        }
        for (s, t) in cells:
            src_dim = sum(dims.get((s, t), [0] * len(parts)))
            cols = [0] * src_dim
            for p, (_, chart) in enumerate(parts):
                mat = chart.h_matrices.get(i, {}).get((s, t))
                if mat is None:
                    continue
                off_src = offset((s, t), p)
                off_dst = offset((s + 1, t + q), p)
                for c, bits in enumerate(mat):
                    cols[off_src + c] = bits << off_dst
            merged[(s, t)] = cols
        out.h_matrices[i] = merged
    return out


def mpl8_chart(s_max: int = 9, t_max: int = 26) -> ExtChart:
    """Second page of the mod-2 Adams spectral sequence for the
    7-connected cobordism spectrum in the wedge range: sphere-part
    classes tagged 'unit', module-part classes tagged 'cpl'."""
    return merge_charts([("unit", sphere_chart(s_max, t_max)), ("cpl", cpl_chart(s_max, t_max))])


# ---------------------------------------------------------------------------
# disk cache


def cache_dir() -> str:
    root = os.environ.get("EXTSEQ_CACHE_DIR")
    if root:
        return root
    xdg = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(xdg, "extseq")


def _cache_key(kind: str, module_json: dict, s_max: int, t_max: int) -> str:
    payload = json.dumps(
        {"format": CHART_FORMAT_VERSION, "kind": kind, "module": module_json,
         "s_max": s_max, "t_max": t_max},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:24]


def _atomic_write(path: str, data: bytes) -> None:
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def chart_bytes(chart: ExtChart) -> bytes:
    return (json.dumps(chart.to_json(), sort_keys=True, indent=1) + "\n").encode()


def cached_chart(kind: str, s_max: int = 9, t_max: int = 26) -> tuple[ExtChart, str]:
    """Chart for 'sphere', 'cpl' or 'mpl8', backed by the disk cache.

    Returns the chart and the cache file path.  Cache entries are
    written atomically and reread results are byte-identical to cold
    computations because everything downstream of the resolver is
    deterministic.
    """
    builders = {"sphere": sphere_chart, "cpl": cpl_chart, "mpl8": mpl8_chart}
    if kind not in builders:
        raise ValueError(f"unknown chart kind {kind!r}")
    if kind == "sphere":
        module_json = FPModule.trivial(SubalgebraId(2)).to_json()
    elif kind == "cpl":
        module_json = cpl_module().to_json()
    else:
        module_json = {
            "parts": [FPModule.trivial(SubalgebraId(2)).to_json(), cpl_module().to_json()]
        }
    key = _cache_key(kind, module_json, s_max, t_max)
    path = os.path.join(cache_dir(), f"{kind}-{key}.json")
    if os.path.exists(path):
        with open(path, "rb") as fh:
            return ExtChart.from_json(json.loads(fh.read().decode())), path
    chart = builders[kind](s_max, t_max)
    _atomic_write(path, chart_bytes(chart))
    return chart, path


def cache_clear() -> int:
    """Remove every cache entry; returns the number of files removed."""
    root = cache_dir()
    removed = 0
    if os.path.isdir(root):
        for name in sorted(os.listdir(root)):
            if name.endswith(".json"):
                os.unlink(os.path.join(root, name))
                removed += 1
    return removed


def cache_gc(keep_kinds: Iterable[str] = ("sphere", "cpl", "mpl8")) -> int:
    """Drop entries whose kind prefix is no longer in use."""
    root = cache_dir()
    removed = 0
    keep = tuple(f"{k}-" for k in keep_kinds)
    if os.path.isdir(root):
        for name in sorted(os.listdir(root)):
            if name.endswith(".json") and not name.startswith(keep):
                os.unlink(os.path.join(root, name))
                removed += 1
    return removed
