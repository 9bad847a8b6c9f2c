"""The named fixture corpus: identity sets, system tables, and goldens.

Fixture names are stable API.  Identity fixtures are loaded from the text
files under ``data/`` (so every fixture exercises the expression grammar);
the operator-form identities and the transcribed straightened expansions
are constructed here.  Lookup is case-insensitive and treats ``-`` and
``_`` alike.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .core import Identity, OpSymbol, Polynomial, Variable, apply_op
from .parsing import parse_file, parse_signed_products
from .rightcomm import RCPolynomial, rc_expand
from .systems import TernaryTable

TERNARY = OpSymbol("br", 3)
BINARY = OpSymbol("mul", 2)

_IDENTITY_FILES = (
    "varieties/associativity.txt",
    "varieties/lie.txt",
    "varieties/lie-triple.txt",
    "identities/dialgebra.txt",
    "identities/leibniz.txt",
    "identities/variant-lie.txt",
    "identities/variant-triple.txt",
    "identities/triple-systems.txt",
    "identities/jordan.txt",
)


def data_text(relpath: str) -> str:
    return (
        resources.files("algforge").joinpath("data").joinpath(relpath).read_text()
    )


def _load_identities() -> dict[str, Identity]:
    out: dict[str, Identity] = {}
    for rel in _IDENTITY_FILES:
        _, identities = parse_file(data_text(rel))
        for ident in identities:
            if ident.name is None:
                raise ValueError(f"unnamed identity in {rel}")
            key = _norm(ident.name)
            if key in out:
                raise ValueError(f"duplicate fixture name {ident.name}")
            out[key] = ident
    return out


def _norm(name: str) -> str:
    return name.lower().replace("_", "-")


def _br(x, y, z) -> Polynomial:
    return apply_op(TERNARY, [x, y, z])


def _right_op(x, a, b) -> Polynomial:
    """R_{a,b}(x) = <x,a,b> - <x,b,a>."""
    return _br(x, a, b) - _br(x, b, a)


def _left_op(x, a, b) -> Polynomial:
    """L_{a,b}(x) = <a,b,x>."""
    return _br(a, b, x)


def _operator_identities() -> dict[str, Identity]:
    from .core import Monomial

    a, b, c, d, e = (
        Polynomial({Monomial.leaf(Variable(n)): Fraction(1)}) for n in "abcde"
    )
    R, L = _right_op, _left_op
    op1 = (
        R(_br(c, d, e), a, b)
        - _br(R(c, a, b), d, e)
        - _br(c, R(d, a, b), e)
        - _br(c, d, R(e, a, b))
    )
    op2 = (
        L(_br(c, d, e), a, b)
        - _br(L(c, a, b), d, e)
        + _br(L(d, a, b), c, e)
        + _br(L(e, a, b), c, d)
        - _br(L(e, a, b), d, c)
    )
    op3 = (
        R(R(e, c, d), a, b)
        - R(R(e, a, b), c, d)
        - (_br(e, R(c, a, b), d) - _br(e, d, R(c, a, b)))
        + (_br(e, R(d, a, b), c) - _br(e, c, R(d, a, b)))
    )
    op4 = (
        R(L(e, a, b), c, d)
        - L(R(e, c, d), a, b)
        - _br(L(c, a, b), d, e)
        + _br(L(d, a, b), c, e)
    )
    return {
        "op1": Identity(op1, name="op1"),
        "op2": Identity(op2, name="op2"),
        "op3": Identity(op3, name="op3"),
        "op4": Identity(op4, name="op4"),
    }


FIXTURES: dict[str, Identity] = _load_identities()
FIXTURES.update(_operator_identities())


def fixture(name: str) -> Identity:
    key = _norm(name)
    if key not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return FIXTURES[key]


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


# The two elimination relations as rewrite rules: the second variant flips
# its first two arguments, the third is a difference of reversals.
def elimination_rules() -> list:
    from .core import Monomial, RewriteRule

    x, y, z = (Variable(n) for n in "xyz")
    br1 = TERNARY.with_variant(1)
    lx, ly, lz = (Monomial.leaf(v) for v in (x, y, z))
    rule2 = RewriteRule(
        TERNARY.with_variant(2),
        (x, y, z),
        Polynomial({Monomial.apply(br1, (ly, lx, lz)): Fraction(-1)}),
    )
    rule3 = RewriteRule(
        TERNARY.with_variant(3),
        (x, y, z),
        Polynomial(
            {
                Monomial.apply(br1, (lz, ly, lx)): Fraction(1),
                Monomial.apply(br1, (lz, lx, ly)): Fraction(-1),
            }
        ),
    )
    return [rule2, rule3]


def binary_elimination_rule():
    """For the binary transform: the second variant is the negated flip."""
    from .core import Monomial, RewriteRule

    x, y = Variable("x"), Variable("y")
    m1 = BINARY.with_variant(1)
    return RewriteRule(
        BINARY.with_variant(2),
        (x, y),
        Polynomial({Monomial.apply(m1, (Monomial.leaf(y), Monomial.leaf(x))): Fraction(-1)}),
    )


# Straightened expansions of the two nonvanishing permuted-associator
# images, transcribed term for term (16 canonical words each).
_EXPANSION_B_TEXT = """
- (((ac)b)e)d + (((ad)b)e)c - (((ae)b)c)d + (((ae)b)d)c
+ ((a(bc))e)d - ((a(bd))e)c + ((a(be))c)d - ((a(be))d)c
+ (a((ce)d))b - (a((de)c))b + ((ac)b)(de) - ((ad)b)(ce)
- (a(bc))(de) + (a(bd))(ce) - a(((ce)d)b) + a(((de)c)b)
"""

_EXPANSION_3_TEXT = """
- (((ca)b)e)d + (((cb)a)e)d + (((ce)d)a)b - (((ce)d)b)a
- ((c(de))a)b + ((c(de))b)a - (c((ae)b))d + (c((be)a))d
+ ((ca)b)(de) - ((cb)a)(de) - (ce)((ad)b) + (ce)((bd)a)
+ c(((ad)b)e) + c(((ae)b)d) - c(((bd)a)e) - c(((be)a)d)
"""


def expansion_golden(which: str) -> RCPolynomial:
    """The transcribed straightened expansion for 'lts-b' or 'lts3'."""
    text = {"lts-b": _EXPANSION_B_TEXT, "lts3": _EXPANSION_3_TEXT}[_norm(which)]
    return rc_expand(parse_signed_products(text, BINARY))


def reducing_combination(which: str) -> Polynomial:
    """The explicit lifted RJ/RO combination that straightens to the
    corresponding expansion golden."""
    from .core import Monomial, substitute

    rj = fixture("rj")
    ro = fixture("ro")
    a, b, c, d, e = (Variable(n) for n in "abcde")
    La, Lb, Lc, Ld, Le = (
        Polynomial({Monomial.leaf(v): Fraction(1)}) for v in (a, b, c, d, e)
    )

    def prod(u, v):
        return apply_op(BINARY, [u, v])

    def inst(ident, *args):
        return substitute(ident.lhs, dict(zip(ident.variables, args)), check=False)

    ce = prod(Lc, Le)
    de = prod(Ld, Le)
    if _norm(which) == "lts-b":
        return (
            inst(rj, ce, Lb, Ld, La)
            - inst(rj, de, Lb, Lc, La)
            + prod(inst(rj, Lb, Lc, Le, La), Ld)
            - prod(inst(rj, Lb, Ld, Le, La), Lc)
            - inst(ro, La, Lb, ce, Ld)
            + inst(ro, La, Lb, de, Lc)
            - prod(inst(ro, La, Lb, Lc, Le), Ld)
            + prod(inst(ro, La, Lb, Ld, Le), Lc)
        )
    if _norm(which) == "lts3":
        return (
            prod(Lc, inst(rj, La, Ld, Le, Lb))
            - prod(Lc, inst(rj, Lb, Ld, Le, La))
            + inst(ro, ce, La, Lb, Ld)
            - inst(ro, ce, Lb, La, Ld)
            - inst(ro, Lc, La, de, Lb)
            + inst(ro, Lc, Lb, de, La)
            + prod(inst(ro, Lc, La, Lb, Le), Ld)
            - prod(inst(ro, Lc, Lb, La, Le), Ld)
        )
    raise KeyError(f"no reducing combination for {which!r}")


_SYSTEM_FILES = {
    "sys2d-1": "systems/sys2d-1.json",
    "sys2d-2": "systems/sys2d-2.json",
    "sys2d-3": "systems/sys2d-3.json",
    "sys2d-4": "systems/sys2d-4.json",
    "sys2d-5-zeta0": "systems/sys2d-5-zeta0.json",
    "sys2d-5-zeta1": "systems/sys2d-5-zeta1.json",
    "sys2d-5-zeta2": "systems/sys2d-5-zeta2.json",
}


def system_table(name: str) -> TernaryTable:
    key = _norm(name)
    if key not in _SYSTEM_FILES:
        raise KeyError(f"unknown system {name!r}")
    return TernaryTable.from_json(data_text(_SYSTEM_FILES[key]))


def system_names() -> list[str]:
    return sorted(_SYSTEM_FILES)


def parametric_system(zeta) -> TernaryTable:
    """The one-parameter family <x,y,y> = zeta x, <y,y,y> = (1 - zeta) x."""
    zeta = Fraction(zeta)
    return TernaryTable(
        2,
        ["x", "y"],
        {
            (0, 1, 1): [zeta, Fraction(0)],
            (1, 1, 1): [1 - zeta, Fraction(0)],
        },
    )


def envelope_golden(name: str) -> str:
    """Transcribed envelope multiplication table for a named system."""
    return data_text(f"goldens/envelope-{_norm(name)}.txt")
