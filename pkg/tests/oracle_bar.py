"""Independent Ext oracle: homology of the reduced bar construction.

For a finite subalgebra A and the trivial module, Ext^{s,t} is dual to
the degree-t homology of (A+)^{(x)s} with the boundary that sums the
multiplications of adjacent tensor factors.  This shares nothing with
the minimal-resolution code path except the algebra multiplication
table.
"""

from functools import lru_cache

from extseq.f2 import F2Matrix, rank
from extseq.steenrod import subalgebra_table


@lru_cache(maxsize=None)
def _tensor_basis(n, s, t):
    """Tuples ((d1, i1), ..., (ds, is)) with all dj >= 1 and sum dj = t."""
    table = subalgebra_table(n)
    if s == 0:
        return ((),) if t == 0 else ()
    out = []
    for d in range(1, t - s + 2):
        for m in range(table.dim(d)):
            for rest in _tensor_basis(n, s - 1, t - d):
                out.append(((d, m),) + rest)
    return tuple(out)


def _boundary_matrix(n, s, t):
    """Rows index (A+)^(x)(s-1) in degree t, columns (A+)^(x)s."""
    table = subalgebra_table(n)
    src = _tensor_basis(n, s, t)
    dst = _tensor_basis(n, s - 1, t)
    dst_index = {b: i for i, b in enumerate(dst)}
    rows = [0] * len(dst)
    for c, word in enumerate(src):
        for i in range(s - 1):
            d1, m1 = word[i]
            d2, m2 = word[i + 1]
            prod = table.multiply(d1, m1, d2, m2)
            m = prod
            while m:
                k = (m & -m).bit_length() - 1
                m &= m - 1
                merged = word[:i] + ((d1 + d2, k),) + word[i + 2:]
                rows[dst_index[merged]] ^= 1 << c
    return F2Matrix(tuple(rows), len(src))


def ext_dim(n, s, t):
    """dim Ext^{s,t} of the trivial module over A(n) via bar homology."""
    if s == 0:
        return 1 if t == 0 else 0
    dim_s = len(_tensor_basis(n, s, t))
    if dim_s == 0:
        return 0
    rank_out = rank(_boundary_matrix(n, s, t))
    rank_in = 0
    if _tensor_basis(n, s + 1, t):
        rank_in = rank(_boundary_matrix(n, s + 1, t))
    return dim_s - rank_out - rank_in


def _module_tensor_basis(n, module, s, t):
    """Tuples ((d1, i1), ..., (ds, is), m) with m a module basis index."""
    out = []
    for m, (_, dm) in enumerate(module.basis):
        for word in _tensor_basis(n, s, t - dm):
            out.append(word + (m,))
    return tuple(out)


def _module_boundary_matrix(n, module, s, t):
    table = subalgebra_table(n)
    src = _module_tensor_basis(n, module, s, t)
    dst = _module_tensor_basis(n, module, s - 1, t)
    dst_index = {b: i for i, b in enumerate(dst)}
    rows = [0] * len(dst)
    for c, elem in enumerate(src):
        word, m = elem[:-1], elem[-1]
        for i in range(s - 1):
            d1, m1 = word[i]
            d2, m2 = word[i + 1]
            prod = table.multiply(d1, m1, d2, m2)
            while prod:
                k = (prod & -prod).bit_length() - 1
                prod &= prod - 1
                merged = word[:i] + ((d1 + d2, k),) + word[i + 1:]
                rows[dst_index[merged[:i + 1] + word[i + 2:] + (m,)]] ^= 1 << c
        d_last, m_last = word[-1]
        acted = module.operator(table.basis(d_last)[m_last])[m]
        while acted:
            m2 = (acted & -acted).bit_length() - 1
            acted &= acted - 1
            rows[dst_index[word[:-1] + (m2,)]] ^= 1 << c
    return F2Matrix(tuple(rows), len(src))


def module_ext_dim(n, module, s, t):
    """dim Ext^{s,t} of a finitely generated module over A(n)."""
    if s == 0:
        # Ext^0 is dual to F2 (x)_A M, the module modulo the positive action
        cols = [1 << m for m, (_, dm) in enumerate(module.basis) if dm == t]
        if not cols:
            return 0
        bound = _module_boundary_matrix(n, module, 1, t)
        return len(cols) - rank(bound)
    dim_s = len(_module_tensor_basis(n, module, s, t))
    if dim_s == 0:
        return 0
    rank_out = rank(_module_boundary_matrix(n, module, s, t))
    rank_in = 0
    if _module_tensor_basis(n, module, s + 1, t):
        rank_in = rank(_module_boundary_matrix(n, module, s + 1, t))
    return dim_s - rank_out - rank_in
