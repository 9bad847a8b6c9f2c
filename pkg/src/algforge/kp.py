"""Variant-operation transform for multilinear identity systems.

Given a variety of n-ary algebras presented by multilinear identities, the
transform introduces n subscripted copies of each operation and produces:

* Part 1 - for each identity of degree d, d transformed identities, one per
  choice of central variable.  Every operation occurrence is re-subscripted
  by where the central variable sits relative to that occurrence: variant j
  if it lies inside argument j, variant 1 if it lies strictly to the left of
  the occurrence's leaves, variant n if strictly to the right.
* Part 2 - interchange identities stating that in argument i of variant j
  (i != j) the inner variants are mutually replaceable.  Only the spanning
  pairs (1, l) for l = 2..n are emitted; the remaining pairs are linear
  consequences, which the consequence engine can confirm.

Part 1 preserves each monomial's shape and leaf order, so outputs are stable
and reproducible term for term.
"""

from __future__ import annotations

import string

from .core import (
    AlgebraError,
    Identity,
    Monomial,
    OpSymbol,
    Polynomial,
    Variable,
)


class VarietyPresentation:
    """A signature of plain operations plus multilinear defining identities."""

    def __init__(self, signature, identities):
        self.signature = tuple(sorted(set(signature)))
        self.identities = list(identities)
        for op in self.signature:
            if op.variant is not None:
                raise AlgebraError("input signature must use unsubscripted operations")
        for ident in self.identities:
            if not ident.is_multilinear():
                raise AlgebraError(f"identity {ident.name or ident!r} is not multilinear")


class KPOutput:
    """Transform result: Part 1 identity groups, Part 2 identities, families."""

    def __init__(self, part1_groups, part2, families):
        self.part1_groups = [list(g) for g in part1_groups]
        self.part2 = list(part2)
        self.families = dict(families)

    @property
    def part1(self) -> list[Identity]:
        return [ident for group in self.part1_groups for ident in group]

    def all_identities(self) -> list[Identity]:
        return self.part1 + self.part2


def _retag_monomial(m: Monomial, central: str) -> Monomial:
    """Re-subscript every operation occurrence by the position rule."""
    leaves = m.leaf_names()
    if leaves.count(central) != 1:
        raise AlgebraError(f"central variable {central} must occur exactly once")
    pos = leaves.index(central)

    def walk(node: Monomial, lo: int) -> Monomial:
        if node.is_leaf:
            return node
        width = node.degree
        n = node.op.arity
        if pos < lo:
            variant = 1
        elif pos >= lo + width:
            variant = n
        else:
            variant = None
        children = []
        child_lo = lo
        for idx, child in enumerate(node.children, start=1):
            if variant is None and child_lo <= pos < child_lo + child.degree:
                chosen = idx
            children.append(walk(child, child_lo))
            child_lo += child.degree
        if variant is None:
            variant = chosen
        return Monomial.apply(node.op.with_variant(variant), children)

    return walk(m, 0)


def kp_part1(identity: Identity) -> list[Identity]:
    """One transformed identity per central variable, in variable order."""
    if not identity.is_multilinear():
        raise AlgebraError("part 1 requires a multilinear identity")
    out = []
    for v in identity.variables:
        terms = {}
        for m, c in identity.lhs.terms.items():
            terms[_retag_monomial(m, v.name)] = c
        name = f"{identity.name}.{v.name}" if identity.name else None
        out.append(Identity(Polynomial(terms), identity.variables, name=name))
    return out


def _part2_variables(arity: int) -> list[Variable]:
    letters = string.ascii_lowercase
    count = 2 * arity - 1
    if count <= len(letters):
        return [Variable(letters[i]) for i in range(count)]
    return [Variable(f"x{i+1}") for i in range(count)]


def kp_part2(op: OpSymbol) -> list[Identity]:
    """Interchange identities for one operation family, ordered by (j, i, l)."""
    n = op.arity
    if op.variant is not None:
        raise AlgebraError("part 2 takes the unsubscripted family operation")
    out = []
    varlist = _part2_variables(n)
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if i == j:
                continue
            for ell in range(2, n + 1):
                lhs = _interchange_monomial(op, j, i, inner_variant=1, varlist=varlist)
                rhs = _interchange_monomial(op, j, i, inner_variant=ell, varlist=varlist)
                ident = Identity(
                    Polynomial({lhs: 1}) - Polynomial({rhs: 1}),
                    varlist,
                    name=f"interchange-{op.name}-{j}.{i}.{ell}",
                )
                out.append(ident)
    return out


def _interchange_monomial(op, j, i, inner_variant, varlist) -> Monomial:
    n = op.arity
    names = iter(varlist)
    args = []
    for t in range(1, n + 1):
        if t == i:
            inner_args = [Monomial.leaf(next(names)) for _ in range(n)]
            args.append(Monomial.apply(op.with_variant(inner_variant), inner_args))
        else:
            args.append(Monomial.leaf(next(names)))
    return Monomial.apply(op.with_variant(j), args)


def kp_part2_full(op: OpSymbol) -> list[Identity]:
    """All interchange identities over unordered inner-variant pairs k < l."""
    n = op.arity
    out = []
    varlist = _part2_variables(n)
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if i == j:
                continue
            for k in range(1, n + 1):
                for ell in range(k + 1, n + 1):
                    lhs = _interchange_monomial(op, j, i, k, varlist)
                    rhs = _interchange_monomial(op, j, i, ell, varlist)
                    out.append(
                        Identity(
                            Polynomial({lhs: 1}) - Polynomial({rhs: 1}),
                            varlist,
                            name=f"interchange-{op.name}-{j}.{i}.{k}.{ell}",
                        )
                    )
    return out


def variant_family(op: OpSymbol) -> list[OpSymbol]:
    return [op.with_variant(v) for v in range(1, op.arity + 1)]


def kp_apply(variety: VarietyPresentation) -> KPOutput:
    """Run both parts over every identity and operation family."""
    groups = [kp_part1(ident) for ident in variety.identities]
    part2 = []
    families = {}
    for op in variety.signature:
        part2.extend(kp_part2(op))
        families[op.name] = variant_family(op)
    return KPOutput(groups, part2, families)
