"""Build the Ext chart of the trivial module over A(2), draw it, and
check the classical multiplicative relations.

Run:  python3 demos/02_ext_chart.py
"""

from extseq.extresolver import sphere_chart
from extseq.render import render_ascii

chart = sphere_chart()
print(f"chart: s <= {chart.s_max}, t <= {chart.t_max}, "
      f"{len(chart.classes)} classes\n")

print(render_ascii(chart, stem_max=17, s_max=8))

print("\nnamed low-stem classes:")
for name in ["h0", "h1", "h2", "c0", "omega", "tau", "d0", "kappa"]:
    cls = next(c for c in chart.classes if c.name == name)
    print(f"  {name:6s} at (s, t) = ({cls.s}, {cls.t}), stem {cls.stem}")

print("\nmultiplicative relations (computed, not assumed):")
for lhs, rhs in [("h1^3", "h0^2*h2"), ("h2^2*omega", "h0^2*d0"),
                 ("h0^2*kappa", "h1*d0")]:
    a = chart.evaluate(lhs)
    b = chart.evaluate(rhs)
    verdict = "=" if a == b and a[2] != 0 else "!="
    print(f"  {lhs:12s} {verdict} {rhs:10s}   (both in Ext^{{{a[0]},{a[1]}}})")

for expr in ["h1*h2", "h0*h1", "h0^3*h2"]:
    print(f"  {expr:12s} = 0:", chart.evaluate(expr)[2] == 0)
