"""The variant-operation transform, from associativity to two products.

A multilinear identity of degree d in one n-ary operation becomes d
identities in n subscripted operations: each occurrence of the operation is
re-subscripted by where a chosen "central" variable sits relative to it
(inside argument j -> subscript j; strictly left -> 1; strictly right -> n).
Interchange identities then say the subscripts are interchangeable in the
off-diagonal arguments.
"""

from algforge.core import OpSymbol, rename_ops
from algforge.fixtures import BINARY, TERNARY, fixture
from algforge.kp import VarietyPresentation, kp_apply
from algforge.parsing import format_polynomial

print(__doc__)

print("Input: associativity of one binary product")
print(" ", format_polynomial(fixture("assoc").lhs), "= 0")
out = kp_apply(VarietyPresentation([BINARY], [fixture("assoc")]))
print(f"\nPart 1 ({len(out.part1)} identities, one per central variable):")
for ident in out.part1:
    print("  ", format_polynomial(ident.lhs), "= 0")
print(f"Part 2 ({len(out.part2)} interchange identities):")
for ident in out.part2:
    print("  ", format_polynomial(ident.lhs), "= 0")

renaming = {
    BINARY.with_variant(1): OpSymbol("lprod", 2),
    BINARY.with_variant(2): OpSymbol("rprod", 2),
}
print("\nRenaming mul_1 -> lprod, mul_2 -> rprod gives the two-product axioms:")
for ident in out.all_identities():
    print("  ", format_polynomial(rename_ops(ident.lhs, renaming)), "= 0")

print("\nThe same transform on the ternary variety (l1, l2, l3) yields")
out3 = kp_apply(
    VarietyPresentation([TERNARY], [fixture("l1"), fixture("l2"), fixture("l3")])
)
print(f"  {len(out3.part1)} + {len(out3.part2)} identities; the first is")
print("  ", format_polynomial(out3.part1[0].lhs), "= 0")
