"""Structure-constant tables, enveloping algebras, and the quadratic system.

A ternary table is verified against the defining identities on all basis
tuples; its envelope lives on the basis e_1..e_n plus all pairs e_i e_j,
with the four product rules below, and prints in the aligned table layout.

    a.b = ab    ab.c = <a,b,c>    a.bc = <a,b,c> - <a,c,b>
    ab.cd = <a,b,c> d - <a,b,d> c
"""

from algforge.fixtures import parametric_system, system_table
from algforge.systems import build_envelope, check_lts, lie_triple_check, lts_equations, search_fp

print(__doc__)
for name in ("sys2d-1", "sys2d-3"):
    table = system_table(name)
    ok, _ = check_lts(table)
    lie, _ = lie_triple_check(table)
    print(f"{name}: defining identities hold: {ok}; classical identities: {lie}")
    print(build_envelope(table).render_table())

print("The one-parameter family at parameter 2:")
ok, _ = check_lts(parametric_system(2))
print("  defining identities hold:", ok)

print("\nImposing the identities on a symbolic 2-dimensional table gives a")
qs = lts_equations(2)
print(f"quadratic system: {len(qs.unknowns)} unknowns, {len(qs.equations)} equations")
sols = search_fp(qs, 3, ["a122", "a222"])
print("solutions over F_3 with only a122, a222 free:")
for sol in sols:
    print("  ", sol)
