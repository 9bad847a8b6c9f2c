"""Tensor-word normal form in the free Leibniz algebra.

Words are left-normalized products; the product appends single letters and
splits off the last letter of longer right factors:
    w . z    = wz
    w . (Yz) = (w.Y)z - (wz).Y
Any bracketing expands back into words, and ternary brackets expand through
the iterated product <x,y,z> = (x.y).z.
"""

from algforge.fixtures import BINARY, fixture
from algforge.leibniz import TensorPolynomial, expand_binary_tree, expand_ternary, free_product, holds_in_free
from algforge.parsing import parse_product

print(__doc__)
w = TensorPolynomial.word
lines = [
    ("a . b", free_product(w("a"), w("b"))),
    ("ab . c", free_product(w(("a", "b")), w("c"))),
    ("a . bc", free_product(w("a"), w(("b", "c")))),
    ("ab . cd", free_product(w(("a", "b")), w(("c", "d")))),
    ("a . bcd", free_product(w("a"), w(("b", "c", "d")))),
]
for label, value in lines:
    print(f"  {label:9s} = {value}")

print("\nExpanding bracketings:")
for text in ["(((ab)c)d)", "(ab)(cd)", "a(b(cd))"]:
    print(f"  {text:11s} -> {expand_binary_tree(parse_product(text, BINARY))}")

print("\nTernary brackets through the iterated product:")
from algforge.core import Monomial, Polynomial, Variable, apply_op
from algforge.fixtures import TERNARY

leaf = lambda n: Polynomial({Monomial.leaf(Variable(n)): 1})
br = lambda x, y, z: apply_op(TERNARY, [x, y, z])
a, b, c, d, e = map(leaf, "abcde")
print("  <a,<b,c,d>,e> ->", expand_ternary(br(a, br(b, c, d), e)))

print("\nIdentity checks under the iterated bracket:")
for name in ("lts-a", "lts-b", "l1"):
    print(f"  {name:6s} holds: {holds_in_free(fixture(name))}")
