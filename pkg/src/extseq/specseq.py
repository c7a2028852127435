"""Spectral sequence machinery: an Adams page runner driven by
deduction scripts, the algebraic Atiyah-Hirzebruch sequence relating a
filtered module to its associated graded, and Atiyah-Hirzebruch E2
bookkeeping with explicit abelian-group coefficients.

The Adams runner takes a chart, applies the scripted differentials,
closes them under h0/h1/h2 multiplication, and reads off 2-local
homotopy groups through the h0-tower convention: a tower reaching the
chart ceiling is reported as Z, a tower of finite length k as Z_{2^k}.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional, Union

from .cplmodel import FPModule
from .extresolver import ExtChart
from .f2 import EchelonSpan


def _data_path(name: str) -> str:
    return os.path.join(os.path.dirname(__file__), "data", name)


def _load_toml(path: str) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


# ---------------------------------------------------------------------------
# abelian group expressions


_CYCLIC_ORDER = {"Z": 0}


@dataclass(frozen=True)
class AbelianGroupExpr:
    """Direct sum of cyclic summands given by labels 'Z', 'Z4', 'Z24'...
    Odd-torsion labels stay opaque.  ``qualifier`` records caveats such
    as unresolved extensions."""

    summands: tuple[str, ...]
    qualifier: Optional[str] = None

    @classmethod
    def zero(cls) -> "AbelianGroupExpr":
        return cls(())

    @classmethod
    def from_labels(cls, labels, qualifier: Optional[str] = None) -> "AbelianGroupExpr":
        return cls(tuple(sorted(labels, key=_label_key)), qualifier)

    def is_zero(self) -> bool:
        return not self.summands

    def plus(self, other: "AbelianGroupExpr") -> "AbelianGroupExpr":
        q = self.qualifier or other.qualifier
        return AbelianGroupExpr.from_labels(self.summands + other.summands, q)

    def __str__(self) -> str:
        body = " + ".join(self.summands) if self.summands else "0"
        if self.qualifier:
            body += f" ({self.qualifier})"
        return body


def _label_key(label: str) -> tuple[int, int]:
    if label == "Z":
        return (0, 0)
    try:
        return (1, int(label[1:]))
    except ValueError:
        return (2, 0)


class GapError(ValueError):
    """A computation needed a coefficient group recorded as a gap."""


@dataclass(frozen=True)
class CoefficientTable:
    """Graded abelian groups by degree; entries may be a gap."""

    groups: tuple[Union[AbelianGroupExpr, str], ...]

    def __getitem__(self, q: int) -> AbelianGroupExpr:
        if q < 0 or q >= len(self.groups):
            raise IndexError(f"degree {q} beyond recorded range")
        g = self.groups[q]
        if g == "gap":
            raise GapError(f"no recorded group in degree {q}")
        return g

    def is_gap(self, q: int) -> bool:
        return 0 <= q < len(self.groups) and self.groups[q] == "gap"

    @property
    def max_degree(self) -> int:
        return len(self.groups) - 1

    @classmethod
    def load(cls, path: str) -> "CoefficientTable":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)["groups"]
        top = max(int(k) for k in raw)
        groups: list[Union[AbelianGroupExpr, str]] = []
        for q in range(top + 1):
            entry = raw[str(q)]
            if entry == "gap":
                groups.append("gap")
            else:
                groups.append(AbelianGroupExpr.from_labels(entry))
        return cls(tuple(groups))


def mpl8_pi_table() -> CoefficientTable:
    return CoefficientTable.load(_data_path("pi_mpl8_table.json"))


def sphere_pi_table() -> CoefficientTable:
    return CoefficientTable.load(_data_path("pi_sphere_table.json"))


# ---------------------------------------------------------------------------
# Adams page runner


@dataclass(frozen=True)
class ScriptedDifferential:
    page: int
    source: str
    target: str
    reason: str = ""


@dataclass(frozen=True)
class DeductionScript:
    name: str
    differentials: tuple[ScriptedDifferential, ...]

    @classmethod
    def load(cls, path: str) -> "DeductionScript":
        data = _load_toml(path)
        diffs = tuple(
            ScriptedDifferential(
                page=d["page"],
                source=d["source"],
                target=d["target"],
                reason=d.get("reason", ""),
            )
            for d in data.get("differential", [])
        )
        return cls(name=data.get("name", os.path.basename(path)), differentials=diffs)


def mpl8_script() -> DeductionScript:
    return DeductionScript.load(_data_path("adams_deduction_script.toml"))


class SSState:
    """Differential bookkeeping on a chart.

    ``dead[(s, t)]`` spans the coordinates consumed so far in Ext^{s,t},
    by classes that supported a differential or were hit by one."""

    def __init__(self, chart: ExtChart):
        self.chart = chart
        self.dead: dict[tuple[int, int], EchelonSpan] = {}
        self.log: list[str] = []

    def _span(self, s: int, t: int) -> EchelonSpan:
        key = (s, t)
        if key not in self.dead:
            self.dead[key] = EchelonSpan(max(1, self.chart.dim(s, t)))
        return self.dead[key]

    def in_range(self, s: int, t: int) -> bool:
        return s <= self.chart.s_max and t <= self.chart.t_max

    def alive_dim(self, s: int, t: int) -> int:
        return self.chart.dim(s, t) - self._span(s, t).dim

    def describe(self, s: int, t: int, vec: int) -> str:
        names = self.chart.class_names(s, t)
        parts = [names[i] for i in range(len(names)) if (vec >> i) & 1]
        return " + ".join(parts) if parts else "0"


@dataclass
class AdamsResult:
    state: SSState
    groups: dict[int, AbelianGroupExpr]
    log: list[str]


def adams_run(
    chart: ExtChart,
    script: DeductionScript,
    stem_range: tuple[int, int] = (0, 13),
    s_ceiling: Optional[int] = None,
) -> AdamsResult:
    """Run the scripted differentials with h-linear closure and read
    off the 2-local homotopy groups per stem.

    Each scripted d_r(x) = y is expanded to d_r(h x) = h y for
    h in {h0, h1, h2} as long as the multiplied source is nonzero; a
    derived differential only kills when both its source and target
    are still alive on page r.  Pages are processed in ascending order
    and every decision is logged for replay.
    """
    state = SSState(chart)
    by_page: dict[int, list[tuple[int, int, int, int, int, int, str]]] = {}
    for d in script.differentials:
        ss, st, sv = chart.evaluate(d.source)
        ts, tt, tv = chart.evaluate(d.target)
        if (ts, tt) != (ss + d.page, st + d.page - 1):
            raise ValueError(
                f"differential {d.source} -> {d.target} has wrong bidegree "
                f"for page {d.page}"
            )
        if sv == 0 or tv == 0:
            raise ValueError(f"differential {d.source} -> {d.target} names a zero class")
        by_page.setdefault(d.page, []).append(
            (ss, st, sv, ts, tt, tv, f"{d.source} -> {d.target}")
        )

    killed_pairs: set[tuple[int, int, int, int, int, int]] = set()
    for page in sorted(by_page):
        queue = list(by_page[page])
        seen: set[tuple[int, int, int]] = set()
        while queue:
            ss, st, sv, ts, tt, tv, label = queue.pop(0)
            if (ss, st, sv) in seen:
                continue
            seen.add((ss, st, sv))
            # h-linear closure first, from the raw assignment
            for i in (0, 1, 2):
                q = 2 ** i
                if not state.in_range(ss + 1, st + q):
                    continue
                hsv = chart.h_apply(i, ss, st, sv)
                if hsv == 0:
                    continue
                htv = (
                    chart.h_apply(i, ts, tt, tv)
                    if state.in_range(ts + 1, tt + q)
                    else 0
                )
                queue.append(
                    (ss + 1, st + q, hsv, ts + 1, tt + q, htv,
                     f"h{i}*({label})")
                )
            src_span = state._span(ss, st)
            red_src = src_span.reduce(sv)
            if red_src == 0:
                state.log.append(f"d{page} {label}: source already dead, skipped")
                continue
            tgt_span = state._span(ts, tt)
            red_tgt = tgt_span.reduce(tv) if tv else 0
            if red_tgt == 0:
                state.log.append(
                    f"d{page} {label}: target vanishes on page {page}, no kill"
                )
                continue
            key = (ss, st, red_src, ts, tt, red_tgt)
            if key in killed_pairs:
                continue
            killed_pairs.add(key)
            state.log.append(
                f"d{page}: {state.describe(ss, st, red_src)} -> "
                f"{state.describe(ts, tt, red_tgt)}"
            )
            src_span.add(red_src)
            tgt_span.add(red_tgt)

    if s_ceiling is None:
        # kills from pages up to r_max are only fully visible for
        # sources below s_max - r_max; reading higher rows would count
        # classes whose fate lies outside the computed window
        r_max = max(by_page) if by_page else 2
        s_ceiling = chart.s_max - r_max
    state.log.append(f"readout ceiling: filtration {s_ceiling}")
    groups = {
        n: _stem_readout(state, n, s_ceiling)
        for n in range(stem_range[0], stem_range[1] + 1)
    }
    return AdamsResult(state=state, groups=groups, log=state.log)


def _stem_readout(state: SSState, stem: int, s_ceiling: int) -> AbelianGroupExpr:
    """Assemble h0-towers of surviving classes in one stem, below the
    readout ceiling; a tower that reaches the ceiling is reported as Z."""
    chart = state.chart
    consumed: dict[int, EchelonSpan] = {}

    def span_at(s: int) -> EchelonSpan:
        if s not in consumed:
            base = state._span(s, stem + s)
            copy = EchelonSpan(base.ncols)
            for row in base.rows:
                copy.add(row)
            consumed[s] = copy
        return consumed[s]

    towers: list[tuple[int, bool]] = []  # (length, reaches ceiling)
    s = 0
    while s <= s_ceiling and state.in_range(s, stem + s):
        dim = chart.dim(s, stem + s)
        for i in range(dim):
            sp = span_at(s)
            v = sp.reduce(1 << i)
            if v == 0:
                continue
            sp.add(v)
            length = 1
            cur, cs = v, s
            ceiling = False
            while True:
                ns, nt = cs + 1, stem + cs + 1
                if not state.in_range(ns, nt):
                    ceiling = True
                    break
                w = chart.h_apply(0, cs, stem + cs, cur)
                nsp = span_at(ns)
                w = nsp.reduce(w)
                if w == 0:
                    break
                if ns > s_ceiling:
                    # the tower continues alive past the readout window
                    ceiling = True
                    break
                nsp.add(w)
                length += 1
                cur, cs = w, ns
            towers.append((length, ceiling))
        s += 1

    labels = []
    for length, ceiling in towers:
        if ceiling:
            labels.append("Z")
        elif length == 1:
            labels.append("Z2")
        else:
            labels.append(f"Z{2 ** length}")
    qualifier = "up to extension" if len(labels) > 1 else None
    return AbelianGroupExpr.from_labels(labels, qualifier)


# ---------------------------------------------------------------------------
# algebraic Atiyah-Hirzebruch sequence for a filtered module


@dataclass
class AAHSSPage:
    """E1 of the trigraded sequence Ext^{s,s+m} (x) C^n together with
    its d1, and the page-two dimensions per (s, total degree)."""

    e1: dict[tuple[int, int, int], list[tuple[int, int]]]
    e2_dims: dict[tuple[int, int, int], int]

    def e2_total(self, s: int, t: int) -> int:
        return sum(
            d for (ss, m, n), d in self.e2_dims.items() if ss == s and ss + m + n == t
        )


def aahss_e1(chart: ExtChart, module: FPModule, s_max: int, t_max: int) -> AAHSSPage:
    """First page of the sequence computing Ext of a filtered module
    from Ext of the trivial module tensored with the filtration
    quotients, with d1(x (x) b) = sum <Sq1 b', b> h0 x (x) b'."""
    mod_degrees = sorted({d for _, d in module.basis})
    mod_by_degree = {
        d: [i for i, (_, dd) in enumerate(module.basis) if dd == d] for d in mod_degrees
    }
    sq1 = module.generator_matrix(1)

    e1: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    ext_dims: dict[tuple[int, int], int] = {}
    for c in chart.classes:
        ext_dims[(c.s, c.t)] = ext_dims.get((c.s, c.t), 0) + 1
    for (s, tt), dim in ext_dims.items():
        m = tt - s
        for n in mod_degrees:
            if s > s_max or s + m + n > t_max:
                continue
            cell = [(e, b) for e in range(dim) for b in mod_by_degree[n]]
            e1[(s, m, n)] = cell

    def d1_matrix(s: int, m: int, n: int):
        src = e1.get((s, m, n), [])
        dst = e1.get((s + 1, m, n - 1), [])
        if not src or not dst:
            return None
        dst_index = {pair: p for p, pair in enumerate(dst)}
        h0 = chart.h_matrices.get(0, {}).get((s, s + m))
        cols = []
        for e, b in src:
            acc = 0
            if h0 is not None:
                he = h0[e]
                for bp in mod_by_degree.get(n - 1, []):
                    if (sq1[bp] >> b) & 1:
                        x = he
                        while x:
                            r = (x & -x).bit_length() - 1
                            x &= x - 1
                            acc ^= 1 << dst_index[(r, bp)]
            cols.append(acc)
        return cols

    # e2 dims: dim ker(out) - rank(in)
    from .f2 import F2Matrix, rank

    def as_matrix(cols, nrows):
        rows = [0] * nrows
        for c, bits in enumerate(cols):
            x = bits
            while x:
                r = (x & -x).bit_length() - 1
                x &= x - 1
                rows[r] |= 1 << c
        return F2Matrix(tuple(rows), len(cols))

    e2_dims: dict[tuple[int, int, int], int] = {}
    for (s, m, n), cell in e1.items():
        out_cols = d1_matrix(s, m, n)
        out_rank = 0
        if out_cols is not None:
            out_rank = rank(as_matrix(out_cols, len(e1[(s + 1, m, n - 1)])))
        in_rank = 0
        if (s - 1, m, n + 1) in e1:
            in_cols = d1_matrix(s - 1, m, n + 1)
            if in_cols is not None:
                in_rank = rank(as_matrix(in_cols, len(cell)))
        e2_dims[(s, m, n)] = len(cell) - out_rank - in_rank
    return AAHSSPage(e1=e1, e2_dims=e2_dims)


@dataclass(frozen=True)
class CrosscheckReport:
    """Comparison of the after-d1 page against directly resolved Ext
    of the filtered module; mismatches are reported, not failed, since
    later pages can still move classes."""

    agreements: tuple[tuple[int, int], ...]
    mismatches: tuple[str, ...]


def aahss_crosscheck(
    page: AAHSSPage,
    module_chart: ExtChart,
    stem_max: int,
    s_max: int,
) -> CrosscheckReport:
    direct: dict[tuple[int, int], int] = {}
    for c in module_chart.classes:
        direct[(c.s, c.t)] = direct.get((c.s, c.t), 0) + 1
    agreements = []
    mismatches = []
    cells = set(direct)
    for (s, m, n) in page.e2_dims:
        cells.add((s, s + m + n))
    for (s, t) in sorted(cells):
        if t - s > stem_max or s > s_max:
            continue
        a = page.e2_total(s, t)
        b = direct.get((s, t), 0)
        if a == b:
            agreements.append((s, t))
        else:
            mismatches.append(
                f"stem {t - s} filtration {s}: page two {a}, direct resolution {b}"
            )
    return CrosscheckReport(tuple(agreements), tuple(mismatches))


# ---------------------------------------------------------------------------
# Atiyah-Hirzebruch E2 bookkeeping


def thom_homology(cell_degrees) -> dict[int, list[str]]:
    """Integral homology of a Thom spectrum whose base has free
    homology concentrated in the given degrees, normalized so the Thom
    class sits in degree 0."""
    return {d: ["Z"] for d in sorted(cell_degrees)}


def mxi_homology() -> dict[int, list[str]]:
    """The complex-projective-space Thom spectrum feeding the
    13-dimensional bordism computation: one free class every other
    degree through 8."""
    return thom_homology([0, 2, 4, 6, 8])


def _tensor_labels(h_label: str, group: AbelianGroupExpr) -> list[str]:
    if h_label == "Z":
        return list(group.summands)
    if h_label == "Z2":
        out = []
        for g in group.summands:
            if g == "Z" or (g[1:].isdigit() and int(g[1:]) % 2 == 0):
                out.append("Z2")
        return out
    raise ValueError(f"unsupported homology summand {h_label!r}")


def _tor_labels(h_label: str, group: AbelianGroupExpr) -> list[str]:
    if h_label == "Z":
        return []
    if h_label == "Z2":
        out = []
        for g in group.summands:
            if g != "Z" and g[1:].isdigit() and int(g[1:]) % 2 == 0:
                out.append("Z2")
        return out
    raise ValueError(f"unsupported homology summand {h_label!r}")


def ahss_e2(
    homology: dict[int, list[str]],
    coefficients: CoefficientTable,
    p: int,
    q: int,
) -> AbelianGroupExpr:
    """E2_{p,q} = H_p (x) pi_q + Tor(H_{p-1}, pi_q) by universal
    coefficients.  Raises GapError only when a gap coefficient is
    actually hit by a nonzero homology group."""
    labels: list[str] = []
    for h in homology.get(p, []):
        labels.extend(_tensor_labels(h, coefficients[q]))
    for h in homology.get(p - 1, []):
        if h == "Z":
            continue  # free groups have no Tor, and need no table lookup
        labels.extend(_tor_labels(h, coefficients[q]))
    return AbelianGroupExpr.from_labels(labels)


def ahss_antidiagonal(
    homology: dict[int, list[str]],
    coefficients: CoefficientTable,
    total: int,
) -> dict[int, AbelianGroupExpr]:
    """All E2_{p, total-p} entries for 0 <= p <= total."""
    out = {}
    for p in range(total + 1):
        q = total - p
        if q > coefficients.max_degree:
            raise IndexError(f"coefficient table too short for degree {q}")
        out[p] = ahss_e2(homology, coefficients, p, q)
    return out
