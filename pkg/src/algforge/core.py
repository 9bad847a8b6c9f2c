"""Exact arithmetic for multilinear nonassociative polynomials.

A monomial is a planar operation tree: either a leaf holding a variable, or
an operation symbol applied to a tuple of child monomials.  A polynomial is
a finite map from monomials to nonzero Fraction coefficients; the zero
polynomial is the empty map, and no arithmetic routine ever stores a zero
coefficient.  All values are immutable after construction and every
operation here is a pure function, so results can be shared freely.

Monomials are totally ordered: first by tree shape (leaf before operation
node, then by operation symbol, then by child shapes left to right), and
then by the left-to-right sequence of leaf variables.  Sorting by this key
groups terms by association type and orders each group lexicographically,
which is the convention used throughout the identity fixtures.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence, Union


class AlgebraError(Exception):
    """Base class for errors raised by the symbolic algebra layer."""


class ArityError(AlgebraError):
    """An operation was applied to the wrong number of arguments."""


class UnassignedVariable(AlgebraError):
    """A substitution left some variable of the target without a value."""


class VariableClash(AlgebraError):
    """Substitution values share variables, so the result is not multilinear."""


class CyclicRules(AlgebraError):
    """A rewrite system failed to reach a fixed point within its bound."""


class Variable:
    """A named indeterminate.  Identity and ordering are by name alone."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        if not name:
            raise AlgebraError("variable name must be nonempty")
        self.name = name

    def __eq__(self, other) -> bool:
        return isinstance(other, Variable) and self.name == other.name

    def __hash__(self) -> int:
        return hash(("var", self.name))

    def __lt__(self, other: "Variable") -> bool:
        return self.name < other.name

    def __repr__(self) -> str:
        return f"Variable({self.name!r})"


def variables(names: Union[str, Iterable[str]]) -> tuple[Variable, ...]:
    """Make a tuple of variables from "a b c", "a,b,c", "abc", or an iterable.

    A separator-free string is split into single-letter names; pass an
    iterable for multi-character names.
    """
    if isinstance(names, str):
        parts = names.replace(",", " ").split()
        if len(parts) == 1 and len(parts[0]) > 1:
            parts = list(parts[0])
        names = parts
    return tuple(Variable(n) for n in names)


class OpSymbol:
    """An operation symbol: name, arity, and optional variant subscript.

    Plain input operations carry ``variant=None``; the variant transform
    produces subscripted families ``name_1 .. name_n`` with ``variant=k``.
    ``(name, arity, variant)`` identifies the symbol uniquely.
    """

    __slots__ = ("name", "arity", "variant")

    def __init__(self, name: str, arity: int, variant: int | None = None):
        if arity < 1:
            raise ArityError(f"arity must be positive, got {arity}")
        if variant is not None and variant < 1:
            raise AlgebraError(f"variant must be positive, got {variant}")
        self.name = name
        self.arity = arity
        self.variant = variant

    def display(self) -> str:
        if self.variant is None:
            return self.name
        return f"{self.name}_{self.variant}"

    def key(self) -> tuple:
        return (self.name, self.arity, 0 if self.variant is None else self.variant)

    def with_variant(self, variant: int | None) -> "OpSymbol":
        return OpSymbol(self.name, self.arity, variant)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OpSymbol)
            and self.name == other.name
            and self.arity == other.arity
            and self.variant == other.variant
        )

    def __hash__(self) -> int:
        return hash(("op", self.name, self.arity, self.variant))

    def __lt__(self, other: "OpSymbol") -> bool:
        return self.key() < other.key()

    def __repr__(self) -> str:
        return f"OpSymbol({self.display()}/{self.arity})"


class Monomial:
    """A planar operation tree over variables.

    Use ``Monomial.leaf(v)`` and ``Monomial.apply(op, children)``; the raw
    constructor is internal.  Monomials hash and compare structurally and
    cache their leaf sequence and shape key.
    """

    __slots__ = ("var", "op", "children", "_hash", "_leaves", "_shape")

    def __init__(self, var, op, children):
        self.var = var
        self.op = op
        self.children = children
        self._hash = hash((var, op, children))
        self._leaves = None
        self._shape = None

    @staticmethod
    def leaf(var: Variable) -> "Monomial":
        if not isinstance(var, Variable):
            var = Variable(var)
        return Monomial(var, None, ())

    @staticmethod
    def apply(op: OpSymbol, children: Sequence["Monomial"]) -> "Monomial":
        children = tuple(children)
        if len(children) != op.arity:
            raise ArityError(
                f"{op.display()} expects {op.arity} arguments, got {len(children)}"
            )
        return Monomial(None, op, children)

    @property
    def is_leaf(self) -> bool:
        return self.op is None

    @property
    def degree(self) -> int:
        return len(self.leaf_names())

    def leaf_names(self) -> tuple[str, ...]:
        if self._leaves is None:
            if self.is_leaf:
                self._leaves = (self.var.name,)
            else:
                out = []
                for c in self.children:
                    out.extend(c.leaf_names())
                self._leaves = tuple(out)
        return self._leaves

    def shape_key(self) -> tuple:
        if self._shape is None:
            if self.is_leaf:
                self._shape = (0,)
            else:
                self._shape = (1, self.op.key()) + tuple(
                    c.shape_key() for c in self.children
                )
        return self._shape

    def sort_key(self) -> tuple:
        return (self.shape_key(), self.leaf_names())

    def ops(self) -> Iterator[OpSymbol]:
        """Yield every operation occurrence, root first."""
        if not self.is_leaf:
            yield self.op
            for c in self.children:
                yield from c.ops()

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, Monomial)
            and self._hash == other._hash
            and self.var == other.var
            and self.op == other.op
            and self.children == other.children
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        if self.is_leaf:
            return self.var.name
        args = ",".join(repr(c) for c in self.children)
        return f"{self.op.display()}({args})"


PolyLike = Union["Polynomial", Monomial, Variable]


def _as_polynomial(x: PolyLike) -> "Polynomial":
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Monomial):
        return Polynomial({x: Fraction(1)})
    if isinstance(x, Variable):
        return Polynomial({Monomial.leaf(x): Fraction(1)})
    raise AlgebraError(f"cannot interpret {x!r} as a polynomial")


class Polynomial:
    """A canonical Fraction-linear combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        canon: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    canon[m] = c
        self.terms = canon

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __add__(self, other: PolyLike) -> "Polynomial":
        other = _as_polynomial(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    def __sub__(self, other: PolyLike) -> "Polynomial":
        return self + (-_as_polynomial(other))

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial()
        p = Polynomial.__new__(Polynomial)
        p.terms = {m: v * c for m, v in self.terms.items()}
        return p

    def __rmul__(self, c) -> "Polynomial":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Monomial, Variable)):
            other = _as_polynomial(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def variables(self) -> tuple[Variable, ...]:
        names = sorted({n for m in self.terms for n in m.leaf_names()})
        return tuple(Variable(n) for n in names)

    def signature(self) -> frozenset[OpSymbol]:
        return frozenset(op for m in self.terms for op in m.ops())

    def degree(self) -> int:
        """Common degree of all terms; raises if mixed or zero."""
        degs = {m.degree for m in self.terms}
        if len(degs) != 1:
            raise AlgebraError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_multilinear(self) -> bool:
        """Every monomial uses one shared variable set, each variable once."""
        if self.is_zero:
            return True
        varset = None
        for m in self.terms:
            names = m.leaf_names()
            if len(set(names)) != len(names):
                return False
            s = frozenset(names)
            if varset is None:
                varset = s
            elif s != varset:
                return False
        return True

    def map_monomials(self, image) -> "Polynomial":
        """Linear extension of a map Monomial -> Polynomial."""
        out = Polynomial()
        for m, c in self.terms.items():
            out = out + image(m).scale(c)
        return out

    def __repr__(self) -> str:
        from .parsing import format_polynomial

        return format_polynomial(self)


def apply_op(op: OpSymbol, args: Sequence[PolyLike]) -> Polynomial:
    """Apply ``op`` multilinearly to polynomial arguments."""
    polys = [_as_polynomial(a) for a in args]
    if len(polys) != op.arity:
        raise ArityError(f"{op.display()} expects {op.arity} arguments")
    combos: list[tuple[list[Monomial], Fraction]] = [([], Fraction(1))]
    for p in polys:
        nxt = []
        for ms, c in combos:
            for m2, c2 in p.terms.items():
                nxt.append((ms + [m2], c * c2))
        combos = nxt
    terms: dict[Monomial, Fraction] = {}
    for ms, c in combos:
        m = Monomial.apply(op, ms)
        s = terms.get(m, 0) + c
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    out = Polynomial.__new__(Polynomial)
    out.terms = terms
    return out


class Identity:
    """A polynomial asserted identically zero, with its variables and signature."""

    __slots__ = ("lhs", "variables", "signature", "name")

    def __init__(
        self,
        lhs: PolyLike,
        variables: Sequence[Variable] | None = None,
        signature: Iterable[OpSymbol] | None = None,
        name: str | None = None,
    ):
        lhs = _as_polynomial(lhs)
        if variables is None:
            variables = lhs.variables()
        variables = tuple(variables)
        have = {v.name for v in variables}
        for v in lhs.variables():
            if v.name not in have:
                raise AlgebraError(f"variable {v.name} of lhs missing from list")
        self.lhs = lhs
        self.variables = variables
        self.signature = frozenset(signature) if signature is not None else lhs.signature()
        self.name = name

    @property
    def degree(self) -> int:
        return self.lhs.degree()

    def is_multilinear(self) -> bool:
        if not self.lhs.is_multilinear():
            return False
        if self.lhs.is_zero:
            return True
        used = {v.name for v in self.lhs.variables()}
        return used == {v.name for v in self.variables}

    def renamed(self, name: str) -> "Identity":
        return Identity(self.lhs, self.variables, self.signature, name)

    def __eq__(self, other) -> bool:
        return isinstance(other, Identity) and self.lhs == other.lhs

    def __hash__(self):
        return hash(self.lhs)

    def __repr__(self) -> str:
        label = self.name or "identity"
        return f"<{label}: {self.lhs!r} = 0>"


def relabel(p: Polynomial, mapping: Mapping[Variable, Variable]) -> Polynomial:
    """Rename variables structurally (no expansion)."""
    byname = {v.name: w for v, w in mapping.items()}

    def walk(m: Monomial) -> Monomial:
        if m.is_leaf:
            return Monomial.leaf(byname.get(m.var.name, m.var))
        return Monomial.apply(m.op, tuple(walk(c) for c in m.children))

    terms: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        m2 = walk(m)
        s = terms.get(m2, 0) + c
        if s:
            terms[m2] = s
        else:
            terms.pop(m2, None)
    out = Polynomial.__new__(Polynomial)
    out.terms = terms
    return out


def substitute(
    p: Polynomial,
    assignment: Mapping[Variable, PolyLike],
    *,
    check: bool = True,
) -> Polynomial:
    """Plug polynomials in for variables, expanding multilinearly.

    With ``check=True`` (the contract for multilinear work) every variable of
    ``p`` must be assigned, each value must be multilinear, and the values'
    variable sets must be pairwise disjoint.  ``check=False`` permits partial
    or variable-identifying substitutions; unassigned variables pass through.
    """
    values = {v.name: _as_polynomial(x) for v, x in assignment.items()}
    if check:
        for v in p.variables():
            if v.name not in values:
                raise UnassignedVariable(f"no value for variable {v.name}")
        seen: dict[str, str] = {}
        for name, val in values.items():
            if not val.is_multilinear():
                raise VariableClash(f"value for {name} is not multilinear")
            for w in val.variables():
                if w.name in seen:
                    raise VariableClash(
                        f"values for {seen[w.name]} and {name} share variable {w.name}"
                    )
                seen[w.name] = name

    def image(m: Monomial) -> Polynomial:
        if m.is_leaf:
            val = values.get(m.var.name)
            return val if val is not None else _as_polynomial(m)
        return apply_op(m.op, [image(c) for c in m.children])

    return p.map_monomials(image)


def rename_ops(p: Polynomial, mapping: Mapping[OpSymbol, OpSymbol]) -> Polynomial:
    """Replace operation symbols throughout (arities must agree)."""
    for old, new in mapping.items():
        if old.arity != new.arity:
            raise ArityError(f"cannot rename {old.display()} to {new.display()}")

    def walk(m: Monomial) -> Monomial:
        if m.is_leaf:
            return m
        return Monomial.apply(
            mapping.get(m.op, m.op), tuple(walk(c) for c in m.children)
        )

    out = Polynomial.__new__(Polynomial)
    out.terms = {walk(m): c for m, c in p.terms.items()}
    return out


def normalize_scalar(p: Polynomial) -> Polynomial:
    """Scale to integer, coprime coefficients with positive leading term."""
    if p.is_zero:
        return p
    denom_lcm = 1
    for c in p.terms.values():
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    nums = [c * denom_lcm for c in p.terms.values()]
    g = 0
    for n in nums:
        g = gcd(g, int(n))
    scale = Fraction(denom_lcm, g)
    lead = min(p.terms, key=lambda m: m.sort_key())
    if p.terms[lead] < 0:
        scale = -scale
    return p.scale(scale)


def _fresh_names(base: str, count: int, taken: set[str]) -> list[str]:
    out = []
    i = 1
    while len(out) < count:
        cand = f"{base}{i}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        i += 1
    return out


def polarize(identity: Identity) -> Identity:
    """Fully multilinearize an identity over a characteristic-zero field.

    Each variable of multiplicity k is replaced by k fresh variables
    (numeric suffixes on the original name) and the lower-multiplicity
    shadows are removed by inclusion-exclusion, leaving exactly the terms
    that use every fresh variable once.  The result is normalized to
    integer, coprime coefficients with positive leading sign, so identities
    equal up to a scalar polarize to the same output.
    """
    p = identity.lhs
    mult: dict[str, int] = {}
    for m in p.terms:
        counts: dict[str, int] = {}
        for name in m.leaf_names():
            counts[name] = counts.get(name, 0) + 1
        for name, k in counts.items():
            mult[name] = max(mult.get(name, 0), k)

    taken = set(mult)
    out_vars: list[Variable] = []
    work = p
    for v in identity.variables:
        k = mult.get(v.name, 1)
        if k == 1:
            out_vars.append(v)
            continue
        fresh = [Variable(n) for n in _fresh_names(v.name, k, taken)]
        out_vars.extend(fresh)
        acc = Polynomial.zero()
        for r in range(k + 1):
            sign = Fraction(-1) ** (k - r)
            for subset in itertools.combinations(fresh, r):
                val = Polynomial.zero()
                for w in subset:
                    val = val + w
                acc = acc + substitute(work, {v: val}, check=False).scale(sign)
        work = acc
    return Identity(normalize_scalar(work), out_vars, identity.signature, identity.name)


class RewriteRule:
    """Eliminate one operation symbol by a polynomial template in its slots."""

    __slots__ = ("op", "slots", "replacement")

    def __init__(self, op: OpSymbol, slots: Sequence[Variable], replacement: PolyLike):
        slots = tuple(slots)
        if len(slots) != op.arity:
            raise ArityError(f"rule for {op.display()} needs {op.arity} slots")
        replacement = _as_polynomial(replacement)
        slot_names = {v.name for v in slots}
        for m in replacement.terms:
            names = m.leaf_names()
            if sorted(names) != sorted(slot_names):
                raise AlgebraError(
                    "rule replacement must be multilinear in exactly the slots"
                )
        self.op = op
        self.slots = slots
        self.replacement = replacement

    def expand(self, args: Sequence[Polynomial]) -> Polynomial:
        return substitute(
            self.replacement, dict(zip(self.slots, args)), check=False
        )

    def __repr__(self) -> str:
        return f"<rule {self.op.display()} -> {self.replacement!r}>"


def rule_from_identity(identity: Identity, op: OpSymbol) -> RewriteRule:
    """Solve a two-sided relation for ``op``: the identity must contain exactly
    one bare application of ``op`` to distinct variables."""
    head = None
    for m in identity.lhs.terms:
        if not m.is_leaf and m.op == op and all(c.is_leaf for c in m.children):
            if head is not None:
                raise AlgebraError("identity has several bare target applications")
            head = m
    if head is None:
        raise AlgebraError(f"identity has no bare application of {op.display()}")
    coeff = identity.lhs.terms[head]
    rest = identity.lhs - Polynomial({head: coeff})
    slots = tuple(c.var for c in head.children)
    return RewriteRule(op, slots, rest.scale(Fraction(-1) / coeff))


def apply_rules(p: Polynomial, rules: Sequence[RewriteRule]) -> Polynomial:
    """Rewrite to the fixed point eliminating every rule's operation symbol.

    Raises CyclicRules if eliminated symbols persist after more passes than
    an acyclic rule chain could need.
    """
    if not rules:
        return p
    rulemap = {r.op: r for r in rules}
    eliminated = set(rulemap)

    def image(m: Monomial) -> Polynomial:
        if m.is_leaf:
            return _as_polynomial(m)
        args = [image(c) for c in m.children]
        rule = rulemap.get(m.op)
        if rule is not None:
            return rule.expand(args)
        return apply_op(m.op, args)

    for _ in range(len(rules) + 1):
        p = p.map_monomials(image)
        if not (p.signature() & eliminated):
            return p
    raise CyclicRules("rewrite rules do not terminate")
