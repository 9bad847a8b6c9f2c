"""Expression grammar: parsing, formatting, files, compact products."""

import pytest

from algforge.core import ArityError, Identity
from algforge.fixtures import BINARY, FIXTURES, TERNARY, data_text, _IDENTITY_FILES
from algforge.parsing import (
    ParseError,
    Signature,
    format_file,
    format_polynomial,
    parse,
    parse_file,
    parse_product,
    parse_signed_products,
)


SIG = Signature([TERNARY])


def test_parse_two_term_polynomial():
    p = parse("br(br(a,b,c),d,e) - br(a,b,br(c,d,e))", SIG)
    assert len(p.terms) == 2
    assert sorted(p.terms.values()) == [-1, 1]


def test_parse_coefficients_and_rationals():
    sig = Signature([BINARY])
    p = parse("2*mul(a,b) - 1/2*mul(b,a) + mul(a,b)", sig)
    vals = sorted(p.terms.values())
    assert vals == [-0.5, 3] or [str(v) for v in vals] == ["-1/2", "3"]


def test_parse_leading_sign_and_whitespace():
    sig = Signature([BINARY])
    assert parse(" - mul( a , b )", sig) == -parse("mul(a,b)", sig)
    assert parse("-1*y") == -parse("y")


def test_arity_error():
    with pytest.raises(ArityError):
        parse("br(a,b)", SIG)


def test_unknown_operation_and_syntax_errors_carry_position():
    with pytest.raises(ParseError):
        parse("qux(a,b)", SIG)
    with pytest.raises(ParseError) as err:
        parse("br(a,,b)", SIG)
    assert "position" in str(err.value)
    with pytest.raises(ParseError):
        parse("br(a,b,c) +", SIG)
    with pytest.raises(ParseError):
        parse("br(a,b,c) br(a,b,c)", SIG)


def test_variants_parse_and_format():
    sig = Signature()
    sig.declare_family("br", 3, 3)
    p = parse("br_1(a,b,c) + br_2(b,a,c)", sig)
    assert format_polynomial(p) == "br_1(a, b, c) + br_2(b, a, c)"


def test_format_parse_roundtrip_on_fixture_corpus():
    # format -> parse must reproduce every fixture polynomial exactly
    for rel in _IDENTITY_FILES:
        sig, identities = parse_file(data_text(rel))
        for ident in identities:
            text = format_polynomial(ident.lhs)
            assert parse(text, sig) == ident.lhs, ident.name


def test_parse_format_canonicalizes():
    p1 = parse("br(a,b,c) - br(b,a,c) + br(a,b,c)", SIG)
    assert format_polynomial(p1) == "2*br(a, b, c) - br(b, a, c)"


def test_file_declarations_and_names():
    text = """# comment
op w/2 variants 2
op v/3
first: w_1(a,b) + w_2(b,a)
v(a,b,c) - v(b,a,c)
"""
    sig, idents = parse_file(text)
    assert [i.name for i in idents] == ["first", None]
    assert sig.lookup("w_1") is not None and sig.lookup("v") is not None
    from algforge.core import AlgebraError

    with pytest.raises(AlgebraError):
        parse_file("op bad/0\n")
    with pytest.raises(ParseError):
        parse_file("op bad\n")
    with pytest.raises(ParseError):
        parse_file("op w/2\nop w/3\n")  # conflicting redeclaration


def test_format_file_roundtrip():
    sig, idents = parse_file(data_text("identities/variant-triple.txt"))
    text = format_file(sig, idents)
    sig2, idents2 = parse_file(text)
    assert [i.lhs for i in idents] == [i.lhs for i in idents2]
    assert [i.name for i in idents] == [i.name for i in idents2]


def test_parse_product_juxtaposed_and_starred():
    m1 = parse_product("(((ab)c)d)e", BINARY)
    assert m1.leaf_names() == ("a", "b", "c", "d", "e")
    m2 = parse_product("(a*(b*c))*d", BINARY)
    assert m2.leaf_names() == ("a", "b", "c", "d")
    assert m2.children[1].is_leaf
    with pytest.raises(ParseError):
        parse_product("((ab)", BINARY)
    with pytest.raises(ParseError):
        parse_product("(a*(b*c))*d)", BINARY)


def test_parse_signed_products():
    p = parse_signed_products("-(((ac)b)e)d + 2*(a(bc))e", BINARY)
    assert sorted(p.terms.values()) == [-1, 2]


def test_every_fixture_parses_and_is_canonical():
    assert len(FIXTURES) >= 50
    for name, ident in FIXTURES.items():
        assert isinstance(ident, Identity)
        assert not ident.lhs.is_zero, name
