"""Assemble the graded cochain model and its Ext chart.

The model is built from Poincare-series bookkeeping (polynomial,
exterior, and divided-power style factors), realized as a finitely
presented module over A(2), and resolved.

Run:  python3 demos/03_module_bookkeeping.py
"""

from extseq.cplmodel import (
    cpl_dims,
    cpl_module,
    gamma_t_dims,
    v_dims,
)
from extseq.extresolver import cpl_chart
from extseq.steenrod import format_element

print("== graded bookkeeping ==")
gamma = gamma_t_dims(11)
v = v_dims(11)
total = cpl_dims(11)
print("  degree:      ", list(range(8, 12)))
print("  Gamma(T):    ", [gamma[d] for d in range(8, 12)])
print("  V total:     ", [v.total[d] for d in range(8, 12)])
print("  model dims:  ", [total[d] for d in range(8, 12)])
for line in v.provenance:
    print("  note:", line)

print("\n== the finitely presented module ==")
module = cpl_module()
for name, degree in module.basis:
    print(f"  basis element {name} in degree {degree}")
print("  nonzero generator actions:")
for g, op in module.actions:
    for i, bits in enumerate(op):
        if bits:
            src = module.basis[i][0]
            dsts = [module.basis[j][0] for j in range(len(module.basis))
                    if bits >> j & 1]
            print(f"    Sq{g} . {src} = {' + '.join(dsts)}")
violations = module.check_relations()
print("  algebra-relation violations:", violations or "none")

print("\n== its Ext chart over A(2) ==")
chart = cpl_chart()
for stem in range(8, 12):
    names = [c.name for c in chart.classes if c.stem == stem and c.s <= 2]
    print(f"  stem {stem:2d} (s <= 2): {', '.join(sorted(names))}")
