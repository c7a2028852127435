"""Tour of the Steenrod algebra layer: Adem reduction, conjugation,
and the finite subalgebras A(1) and A(2).

Run:  python3 demos/01_steenrod_basics.py
"""

from extseq.steenrod import (
    A1,
    A2,
    adem_reduce,
    conjugate,
    format_element,
    parse_element,
    product,
    sq,
    subalgebra_dims,
    subalgebra_table,
)

print("== Adem reduction ==")
for word in [(2, 2), (3, 2), (2, 3), (6, 2)]:
    reduced = adem_reduce(word)
    lhs = "".join(f"Sq{a}" for a in word)
    print(f"  {lhs:12s} = {format_element(reduced)}")

print("\n== Conjugation (antipode) ==")
for k in range(1, 8):
    print(f"  chi(Sq{k}) = {format_element(conjugate(sq(k)))}")

x = parse_element("Sq(4,2) + Sq(5,1)")
print(f"\n  chi is an involution: chi(chi(x)) == x for x = {format_element(x)}:",
      conjugate(conjugate(x)) == x)

print("\n== Finite subalgebras ==")
for name, sub in [("A(1)", A1), ("A(2)", A2)]:
    dims = subalgebra_dims(sub, 30)
    total = sum(dims)
    top = max(d for d, k in enumerate(dims) if k)
    print(f"  {name}: total dimension {total}, top degree {top}")
    print(f"         dims by degree: {dims[:top + 1]}")

table = subalgebra_table(1)
elem = sq(5) + product(sq(4), sq(1))
word = table.word_decompose(elem)
print(f"\n  {format_element(elem)} lies in A(1); as a generator word: {word}")
