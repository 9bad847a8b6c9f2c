"""Consequence checking by exact linear algebra at a fixed degree.

The multilinear component of a signature at degree d over d named variables
is a finite-dimensional rational vector space whose basis is every
association shape filled with every permutation of the variables.  A
polynomial "follows from" a set of identities at that degree exactly when it
lies in the span of their instances: variable relabelings at equal degree,
plus one-step liftings (substitute a product of two fresh variables for one
variable, or multiply through by a fresh variable) when the degree grows by
one.  Membership is decided by forward elimination over Fractions and every
positive answer carries a certificate that re-expands to the target.

Instance tags are printed the way the combinations are usually written,
e.g. ``rj(ce,b,d,a)`` for a product substituted into the first argument and
``rj(b,c,e,a)*d`` for a right multiplication, so certificates are readable.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .core import (
    AlgebraError,
    Identity,
    Monomial,
    OpSymbol,
    Polynomial,
    Variable,
    apply_op,
    relabel,
    substitute,
)
from .linalg import PivotTable, Vec


class DegreeNotExpressible(AlgebraError):
    """No monomial of the requested degree exists over the signature."""


class DimensionMismatch(AlgebraError):
    """A polynomial does not live in the basis's space."""


class UnsupportedLift(AlgebraError):
    """Only a one-degree gap between identity and target is implemented."""


def enumerate_shapes(signature: Iterable[OpSymbol], degree: int) -> list[Monomial]:
    """All association shapes of the given degree, as trees over placeholder
    leaves ``p0..p{d-1}`` numbered left to right, sorted by shape order."""
    ops = sorted(set(signature))
    if degree < 1:
        raise DegreeNotExpressible(f"degree must be >= 1, got {degree}")
    memo: dict[int, list[Monomial]] = {}

    def build(d: int) -> list[Monomial]:
        if d in memo:
            return memo[d]
        out: list[Monomial] = []
        if d == 1:
            out.append(Monomial.leaf(Variable("p0")))
        else:
            for op in ops:
                k = op.arity
                if k < 2 and d > 1:
                    continue
                for split in _compositions(d, k):
                    pools = [build(di) for di in split]
                    for combo in itertools.product(*pools):
                        out.append(Monomial.apply(op, combo))
        out = [_renumber(s) for s in out]
        uniq = {s.shape_key(): s for s in out}
        memo[d] = sorted(uniq.values(), key=lambda s: s.shape_key())
        return memo[d]

    shapes = build(degree)
    if not shapes:
        raise DegreeNotExpressible(
            f"no monomials of degree {degree} over {[o.display() for o in ops]}"
        )
    return shapes


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _renumber(shape: Monomial) -> Monomial:
    counter = itertools.count()

    def walk(m: Monomial) -> Monomial:
        if m.is_leaf:
            return Monomial.leaf(Variable(f"p{next(counter)}"))
        return Monomial.apply(m.op, tuple(walk(c) for c in m.children))

    return walk(shape)


def instantiate_shape(shape: Monomial, letters: Sequence[Variable]) -> Monomial:
    """Assign letters to a shape's leaves in left-to-right order."""
    it = iter(letters)

    def walk(m: Monomial) -> Monomial:
        if m.is_leaf:
            return Monomial.leaf(next(it))
        return Monomial.apply(m.op, tuple(walk(c) for c in m.children))

    return walk(shape)


class MonomialBasis:
    """The full multilinear monomial basis at one degree over fixed variables."""

    def __init__(self, signature, degree: int, variables: Sequence[Variable]):
        variables = tuple(variables)
        if len(variables) != degree:
            raise DimensionMismatch(
                f"need {degree} variables for degree {degree}, got {len(variables)}"
            )
        self.signature = tuple(sorted(set(signature)))
        self.degree = degree
        self.variables = variables
        self.shapes = enumerate_shapes(self.signature, degree)
        self.monomials: list[Monomial] = []
        for shape in self.shapes:
            for perm in itertools.permutations(sorted(variables)):
                self.monomials.append(instantiate_shape(shape, perm))
        self.index = {m: i for i, m in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)

    def vector(self, p: Polynomial) -> Vec:
        vec: Vec = {}
        for m, c in p.terms.items():
            i = self.index.get(m)
            if i is None:
                raise DimensionMismatch(f"monomial {m!r} is outside this basis")
            vec[i] = c
        return vec

    def polynomial(self, vec: Mapping[int, Fraction]) -> Polynomial:
        return Polynomial({self.monomials[i]: c for i, c in vec.items()})


def enumerate_basis(signature, degree, variables) -> MonomialBasis:
    return MonomialBasis(signature, degree, variables)


def _canonical_relabel(identity: Identity, variables: Sequence[Variable]) -> Polynomial:
    mapping = dict(zip(identity.variables, variables))
    if len(identity.variables) != len(variables):
        raise DimensionMismatch("variable count mismatch")
    return relabel(identity.lhs, mapping)


def iter_relabelings(identity: Identity, variables: Sequence[Variable]):
    """Yield (tag, polynomial) for every bijective variable relabeling."""
    variables = tuple(variables)
    if len(variables) != len(identity.variables):
        raise DimensionMismatch(
            f"identity has {len(identity.variables)} variables, got {len(variables)}"
        )
    label = identity.name or "id"
    for perm in itertools.permutations(variables):
        mapping = dict(zip(identity.variables, perm))
        tag = f"{label}({','.join(v.name for v in perm)})"
        yield tag, relabel(identity.lhs, mapping)


def same_degree_instances(identity: Identity, variables) -> list[Polynomial]:
    """All degree-preserving instances: one per bijective relabeling."""
    return [p for _, p in iter_relabelings(identity, variables)]


def iter_lifted(identity: Identity, target_degree: int, variables):
    """Yield (tag, polynomial) one-step liftings over a binary signature."""
    variables = tuple(variables)
    d = identity.degree
    if target_degree != d + 1:
        raise UnsupportedLift(
            f"only a one-degree lift is supported, asked {d} -> {target_degree}"
        )
    if len(variables) != target_degree:
        raise DimensionMismatch("need target_degree variables")
    ops = {op for op in identity.signature}
    if any(op.arity != 2 for op in ops) or len(ops) != 1:
        raise UnsupportedLift("lifting requires a single binary operation")
    (op,) = ops
    label = identity.name or "id"
    src = identity.variables

    # (i) substitute an ordered product of two fresh variables for one variable
    for v_idx, v in enumerate(src):
        others = [w for w in src if w is not v]
        for x, y in itertools.permutations(variables, 2):
            rest = [w for w in variables if w not in (x, y)]
            prod = Monomial.apply(op, (Monomial.leaf(x), Monomial.leaf(y)))
            for assign in itertools.permutations(rest):
                mapping: dict[Variable, Polynomial] = {v: Polynomial({prod: Fraction(1)})}
                args = [""] * len(src)
                args[v_idx] = x.name + y.name
                for w, val in zip(others, assign):
                    mapping[w] = Polynomial({Monomial.leaf(val): Fraction(1)})
                    args[src.index(w)] = val.name
                tag = f"{label}({','.join(args)})"
                yield tag, substitute(identity.lhs, mapping)

    # (ii) multiply a relabeled instance by the leftover variable
    for f in variables:
        rest = [w for w in variables if w is not f]
        for assign in itertools.permutations(rest):
            mapping = dict(zip(src, assign))
            inst = relabel(identity.lhs, mapping)
            args = ",".join(v.name for v in assign)
            fpoly = Polynomial({Monomial.leaf(f): Fraction(1)})
            yield f"{label}({args})*{f.name}", apply_op(op, [inst, fpoly])
            yield f"{f.name}*{label}({args})", apply_op(op, [fpoly, inst])


def lifted_instances(identity: Identity, target_degree: int, variables) -> list[Polynomial]:
    return [p for _, p in iter_lifted(identity, target_degree, variables)]


class SpanCertificate:
    """An explicit combination of tagged generators equal to the target."""

    def __init__(self, coefficients, generators, target):
        self.coefficients = dict(coefficients)
        self.generators = dict(generators)
        self.target = target

    @property
    def ok(self) -> bool:
        return True

    def support(self) -> list[Hashable]:
        return sorted(self.coefficients, key=str)

    def combination(self):
        """Re-expand the certificate; equals the target when sound."""
        total = None
        for tag, c in self.coefficients.items():
            part = self.generators[tag].scale(c)
            total = part if total is None else total + part
        if total is None:
            total = self.target - self.target
        return total

    def verify(self) -> bool:
        return self.combination() == self.target

    def lines(self) -> list[str]:
        out = []
        for tag in self.support():
            c = self.coefficients[tag]
            out.append(f"{c} * {tag}")
        return out

    def __repr__(self) -> str:
        return f"<certificate with {len(self.coefficients)} terms>"


class NotInSpan:
    """Failure witness: the first basis element whose coefficient cannot match."""

    def __init__(self, witness):
        self.witness = witness

    @property
    def ok(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"<not in span; witness {self.witness!r}>"


def _tagged(generators) -> list[tuple[Hashable, object]]:
    out = []
    for i, g in enumerate(generators):
        if isinstance(g, tuple) and len(g) == 2:
            out.append(g)
        else:
            out.append((i, g))
    return out


class SpanChecker:
    """A reusable elimination table for one generator set in one basis."""

    def __init__(self, generators, basis, *, vectorize=None):
        self.basis = basis
        self.vectorize = vectorize or basis.vector
        self.generators: dict[Hashable, object] = {}
        self.table = PivotTable(track_combos=True)
        for tag, g in _tagged(generators):
            vec = self.vectorize(g)
            if not vec:
                continue
            if tag in self.generators:
                if self.generators[tag] == g:
                    continue
                raise AlgebraError(f"duplicate generator tag {tag!r}")
            self.generators[tag] = g
            self.table.add(vec, tag)

    @property
    def rank(self) -> int:
        return self.table.rank

    def check(self, target) -> SpanCertificate | NotInSpan:
        ok, combo, witness = self.table.membership(self.vectorize(target))
        if not ok:
            return NotInSpan(self.basis.monomials[witness])
        return SpanCertificate(combo, self.generators, target)


def in_span(target: Polynomial, generators, basis: MonomialBasis):
    """Exact span membership with certificate or first-unmatched witness."""
    return SpanChecker(generators, basis).check(target)


class EquivalenceResult:
    """Mutual-span outcome for two identity sets at one degree."""

    def __init__(self, forward, backward):
        self.forward = dict(forward)
        self.backward = dict(backward)

    @property
    def equivalent(self) -> bool:
        results = list(self.forward.values()) + list(self.backward.values())
        return all(r.ok for r in results)

    def __bool__(self) -> bool:
        return self.equivalent


def _instance_checker(identities, degree, variables, basis) -> SpanChecker:
    tagged = []
    for idx, ident in enumerate(identities):
        named = ident if ident.name else ident.renamed(f"id{idx}")
        tagged.extend(iter_relabelings(named, variables))
    return SpanChecker(tagged, basis)


def sets_equivalent(
    a: Sequence[Identity],
    b: Sequence[Identity],
    degree: int,
    variables,
    signature=None,
) -> EquivalenceResult:
    """Mutual span inclusion of the identity sets' instances at one degree.

    The instance span of a set is closed under relabeling, so it is enough
    to test one canonical instance of each identity against the other side.
    """
    variables = tuple(variables)
    if signature is None:
        signature = set()
        for ident in list(a) + list(b):
            signature |= ident.signature
    basis = MonomialBasis(signature, degree, variables)
    checker_a = _instance_checker(a, degree, variables, basis)
    checker_b = _instance_checker(b, degree, variables, basis)
    forward = {}
    for idx, ident in enumerate(a):
        key = ident.name or f"a{idx}"
        forward[key] = checker_b.check(_canonical_relabel(ident, variables))
    backward = {}
    for idx, ident in enumerate(b):
        key = ident.name or f"b{idx}"
        backward[key] = checker_a.check(_canonical_relabel(ident, variables))
    return EquivalenceResult(forward, backward)


def _generic_sort_key(key):
    sk = getattr(key, "sort_key", None)
    return sk() if callable(sk) else key


def kernel_of_expansion(
    basis: MonomialBasis, expand: Callable[[Monomial], object]
) -> list[Polynomial]:
    """Basis of {p : expand(p) = 0}, expand acting linearly via basis monomials.

    ``expand`` maps a basis monomial to any object with a ``terms`` mapping
    (polynomial-like in another space).  The kernel basis is returned in
    reduced echelon form, one polynomial per free coordinate.
    """
    images = [expand(m) for m in basis.monomials]
    keys = sorted({k for img in images for k in img.terms}, key=_generic_sort_key)
    key_index = {k: i for i, k in enumerate(keys)}
    rows = [[Fraction(0)] * len(basis) for _ in keys]
    for j, img in enumerate(images):
        for k, c in img.terms.items():
            rows[key_index[k]][j] = Fraction(c)
    from .linalg import nullspace

    vectors = nullspace(rows, len(basis))
    out = []
    for v in vectors:
        out.append(Polynomial({basis.monomials[i]: c for i, c in enumerate(v) if c}))
    return out
