"""Presheaves and copresheaves: the currency of enriched concept lattices.

A presheaf on A with type q is a distributor from A into the one-object
category on q; concretely a vector of arrows ``values[i]: |x_i| -> q`` with
``values[i] . hom(x_j, x_i) <= values[j]`` for all i, j.  A copresheaf points
the other way: ``values[i]: q -> |x_i|``.

Order warning: the underlying order of the copresheaf category is the
*reverse* of the entrywise arrow order.  Functions here always state which
order they use; ``pointwise_leq`` is always the entrywise one.

Presheaf and copresheaf categories are never materialized implicitly;
``materialize_presheaves``/``materialize_copresheaves`` build them explicitly
behind the enumeration cap, for oracle tests and for functors that need the
whole space (transposes, generator maps, canonical representation data).
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass

from .errors import BaseMismatch, BudgetExceeded, ColimitMissing, QfcaError, budget
from .qcat import (
    QCategory,
    QFunctor,
    identity_functor,
    underlying_order,
    validate_functor,
)
from .qdist import (
    QDistributor,
    cograph,
    dist_left_imp,
    dist_right_imp,
    graph,
    identity_dist,
    is_adjoint_functor_pair,
)
from .quantaloid import Arrow


@dataclass(frozen=True)
class Presheaf:
    """A vector ``values[i]: |x_i| -> type`` over the base carrier."""

    base: QCategory
    type: str
    values: tuple[Arrow, ...]

    def at(self, x: str) -> Arrow:
        return self.values[self.base.index(x)]

    def key(self):
        return (self.type, self.values)


@dataclass(frozen=True)
class Copresheaf:
    """A vector ``values[i]: type -> |x_i|`` over the base carrier."""

    base: QCategory
    type: str
    values: tuple[Arrow, ...]

    def at(self, x: str) -> Arrow:
        return self.values[self.base.index(x)]

    def key(self):
        return (self.type, self.values)


def _check_same_base(a, b):
    if a.base != b.base:
        raise BaseMismatch("operands live on different base categories")


def presheaf_law_ok(p: Presheaf) -> bool:
    A, q = p.base, p.base.q
    n = len(A)
    return all(
        q.leq(q.compose(p.values[i], A.hom[j][i]), p.values[j])
        for i in range(n) for j in range(n)
    )


def copresheaf_law_ok(lam: Copresheaf) -> bool:
    A, q = lam.base, lam.base.q
    n = len(A)
    return all(
        q.leq(q.compose(A.hom[i][j], lam.values[i]), lam.values[j])
        for i in range(n) for j in range(n)
    )


def pointwise_leq(a, b) -> bool:
    """Entrywise arrow order (the distributor-calculus order)."""
    _check_same_base(a, b)
    q = a.base.q
    return all(q.leq(x, y) for x, y in zip(a.values, b.values))


# -- homs, joins, meets ---------------------------------------------------------


def presheaf_hom(mu: Presheaf, nu: Presheaf) -> Arrow:
    """The hom arrow from mu to nu: meet over a of left_imp(nu(a), mu(a))."""
    _check_same_base(mu, nu)
    A, q = mu.base, mu.base.q
    return q.hom_meet(mu.type, nu.type,
                      [q.left_imp(nu.values[i], mu.values[i]) for i in range(len(A))])


def copresheaf_hom(lam: Copresheaf, kap: Copresheaf) -> Arrow:
    """The hom arrow from lam to kap: meet over a of right_imp(kap(a), lam(a))."""
    _check_same_base(lam, kap)
    A, q = lam.base, lam.base.q
    return q.hom_meet(lam.type, kap.type,
                      [q.right_imp(kap.values[i], lam.values[i]) for i in range(len(A))])


def top_presheaf(A: QCategory, qobj: str) -> Presheaf:
    return Presheaf(A, qobj, tuple(A.q.top(t, qobj) for t in A.types))


def presheaf_meet(A: QCategory, qobj: str, parts) -> Presheaf:
    """Pointwise meet; the empty meet is the top presheaf."""
    parts = list(parts)
    if not parts:
        return top_presheaf(A, qobj)
    q = A.q
    values = tuple(
        q.hom_meet(A.types[i], qobj, [p.values[i] for p in parts])
        for i in range(len(A))
    )
    return Presheaf(A, qobj, values)


def presheaf_join(A: QCategory, qobj: str, parts) -> Presheaf:
    parts = list(parts)
    q = A.q
    values = tuple(
        q.hom_join(A.types[i], qobj, [p.values[i] for p in parts])
        for i in range(len(A))
    )
    return Presheaf(A, qobj, values)


def copresheaf_join(A: QCategory, qobj: str, parts) -> Copresheaf:
    """Pointwise join, which is the *meet* in the copresheaf underlying order."""
    parts = list(parts)
    q = A.q
    values = tuple(
        q.hom_join(qobj, A.types[i], [p.values[i] for p in parts])
        for i in range(len(A))
    )
    return Copresheaf(A, qobj, values)


# -- Yoneda ---------------------------------------------------------------------


def yoneda(A: QCategory, a: str) -> Presheaf:
    """a |-> hom(-, a), of type |a|."""
    i = A.index(a)
    return Presheaf(A, A.types[i], tuple(A.hom[j][i] for j in range(len(A))))


def coyoneda(A: QCategory, a: str) -> Copresheaf:
    """a |-> hom(a, -), of type |a|."""
    i = A.index(a)
    return Copresheaf(A, A.types[i], tuple(A.hom[i][j] for j in range(len(A))))


def presheaf_as_dist(mu: Presheaf) -> QDistributor:
    from .qcat import singleton_category
    return QDistributor(mu.base, singleton_category(mu.base.q, mu.type),
                        [[v] for v in mu.values])


def copresheaf_as_dist(lam: Copresheaf) -> QDistributor:
    from .qcat import singleton_category
    return QDistributor(singleton_category(lam.base.q, lam.type), lam.base,
                        [list(lam.values)])


# -- suprema, infima, weighted (co)limits ----------------------------------------


def _label_order(A: QCategory):
    """Scan order for witness searches: least label first (documented tie-break)."""
    return sorted(range(len(A)), key=lambda i: A.objects[i])


def sup(A: QCategory, mu: Presheaf):
    """The least-label object x with hom(x, -) = hom <l mu, or ``None``."""
    if mu.base != A:
        raise BaseMismatch("presheaf does not live on this category")
    q = A.q
    n = len(A)
    for i in _label_order(A):
        if A.types[i] != mu.type:
            continue
        if all(
            A.hom[i][j] == q.hom_meet(mu.type, A.types[j],
                                      [q.left_imp(A.hom[k][j], mu.values[k])
                                       for k in range(n)])
            for j in range(n)
        ):
            return A.objects[i]
    return None


def inf(A: QCategory, lam: Copresheaf):
    """The least-label object x with hom(-, x) = lam >r hom, or ``None``."""
    if lam.base != A:
        raise BaseMismatch("copresheaf does not live on this category")
    q = A.q
    n = len(A)
    for i in _label_order(A):
        if A.types[i] != lam.type:
            continue
        if all(
            A.hom[j][i] == q.hom_meet(A.types[j], lam.type,
                                      [q.right_imp(lam.values[k], A.hom[j][k])
                                       for k in range(n)])
            for j in range(n)
        ):
            return A.objects[i]
    return None


def weighted_colimit(mu: Presheaf, F: QFunctor):
    """Colimit of F weighted by mu: base(mu) must be dom(F); ``None`` if absent."""
    if mu.base != F.dom:
        raise BaseMismatch("weight must live on the functor's domain")
    A, X, q = F.cod, F.dom, F.cod.q
    for i in _label_order(A):
        if A.types[i] != mu.type:
            continue
        if all(
            A.hom[i][j] == q.hom_meet(mu.type, A.types[j],
                                      [q.left_imp(A.hom_of(F(x), A.objects[j]), mu.at(x))
                                       for x in X.objects])
            for j in range(len(A))
        ):
            return A.objects[i]
    return None


def weighted_limit(lam: Copresheaf, F: QFunctor):
    if lam.base != F.dom:
        raise BaseMismatch("weight must live on the functor's domain")
    A, X, q = F.cod, F.dom, F.cod.q
    for i in _label_order(A):
        if A.types[i] != lam.type:
            continue
        if all(
            A.hom[j][i] == q.hom_meet(A.types[j], lam.type,
                                      [q.right_imp(lam.at(x), A.hom_of(A.objects[j], F(x)))
                                       for x in X.objects])
            for j in range(len(A))
        ):
            return A.objects[i]
    return None


def pushforward(F: QFunctor, mu: Presheaf) -> Presheaf:
    """Transport a presheaf along F by composing with the cograph of F."""
    if mu.base != F.dom:
        raise BaseMismatch("presheaf must live on the functor's domain")
    A, X, q = F.cod, F.dom, F.cod.q
    values = tuple(
        q.hom_join(A.types[i], mu.type,
                   [q.compose(mu.at(x), A.hom_of(A.objects[i], F(x))) for x in X.objects])
        for i in range(len(A))
    )
    return Presheaf(A, mu.type, values)


def copushforward(F: QFunctor, lam: Copresheaf) -> Copresheaf:
    """Transport a copresheaf along F by composing with the graph of F."""
    if lam.base != F.dom:
        raise BaseMismatch("copresheaf must live on the functor's domain")
    A, X, q = F.cod, F.dom, F.cod.q
    values = tuple(
        q.hom_join(lam.type, A.types[i],
                   [q.compose(A.hom_of(F(x), A.objects[i]), lam.at(x)) for x in X.objects])
        for i in range(len(A))
    )
    return Copresheaf(A, lam.type, values)


# -- pointwise Kan extensions ----------------------------------------------------


def lan(K: QFunctor, F: QFunctor) -> QFunctor:
    """The pointwise left Kan extension of F along K (same domain).

    Raises :class:`ColimitMissing` naming the first point of cod(K) whose
    weighted colimit does not exist; on success the graph identity
    graph(result) = graph(F) <l graph(K) is asserted exactly.
    """
    if K.dom != F.dom:
        raise BaseMismatch("Kan extension needs functors with a common domain")
    B = K.cod
    mapping = {}
    for b in B.objects:
        weight = Presheaf(K.dom, B.type_of(b),
                          tuple(B.hom_of(K(x), b) for x in K.dom.objects))
        c = weighted_colimit(weight, F)
        if c is None:
            raise ColimitMissing(b, "colimit")
        mapping[b] = c
    G = QFunctor(B, F.cod, mapping, name=f"lan({K.name},{F.name})")
    if graph(G) != dist_left_imp(graph(F), graph(K)):
        raise QfcaError("pointwise left Kan extension violates its graph identity")
    validate_functor(G).require()
    return G


def ran(H: QFunctor, G: QFunctor) -> QFunctor:
    """The pointwise right Kan extension of G along H (same domain)."""
    if H.dom != G.dom:
        raise BaseMismatch("Kan extension needs functors with a common domain")
    B = H.cod
    mapping = {}
    for b in B.objects:
        weight = Copresheaf(H.dom, B.type_of(b),
                            tuple(B.hom_of(b, H(x)) for x in H.dom.objects))
        c = weighted_limit(weight, G)
        if c is None:
            raise ColimitMissing(b, "limit")
        mapping[b] = c
    R = QFunctor(B, G.cod, mapping, name=f"ran({H.name},{G.name})")
    if cograph(R) != dist_right_imp(cograph(H), cograph(G)):
        raise QfcaError("pointwise right Kan extension violates its cograph identity")
    validate_functor(R).require()
    return R


def find_right_adjoint(F: QFunctor):
    """Try lan(F, identity); adjointness is then tested, not assumed."""
    try:
        G = lan(F, identity_functor(F.dom))
    except ColimitMissing:
        return None
    return G if is_adjoint_functor_pair(F, G) else None


def find_left_adjoint(F: QFunctor):
    try:
        G = ran(F, identity_functor(F.dom))
    except ColimitMissing:
        return None
    return G if is_adjoint_functor_pair(G, F) else None


# -- density ---------------------------------------------------------------------


def is_dense(F: QFunctor) -> bool:
    """Exact test: graph(F) <l graph(F) equals the identity distributor."""
    g = graph(F)
    return dist_left_imp(g, g) == identity_dist(F.cod)


def is_codense(F: QFunctor) -> bool:
    c = cograph(F)
    return dist_right_imp(c, c) == identity_dist(F.cod)


# -- enumeration -----------------------------------------------------------------


def enumerate_presheaves(A: QCategory, qobj: str, cap: int | None = None) -> tuple[Presheaf, ...]:
    """All presheaves of one type, in lexicographic value order."""
    q = A.q
    count = 1
    for t in A.types:
        count *= len(q.hom(t, qobj))
    limit = budget("enumeration", cap)
    if count > limit:
        raise BudgetExceeded(f"presheaf space on {A.name} at {qobj} exceeds {limit}", count)
    out = []
    for combo in itertools.product(*(range(len(q.hom(t, qobj))) for t in A.types)):
        p = Presheaf(A, qobj, tuple(Arrow(t, qobj, i) for t, i in zip(A.types, combo)))
        if presheaf_law_ok(p):
            out.append(p)
    return tuple(out)


def enumerate_copresheaves(A: QCategory, qobj: str, cap: int | None = None) -> tuple[Copresheaf, ...]:
    q = A.q
    count = 1
    for t in A.types:
        count *= len(q.hom(qobj, t))
    limit = budget("enumeration", cap)
    if count > limit:
        raise BudgetExceeded(f"copresheaf space on {A.name} at {qobj} exceeds {limit}", count)
    out = []
    for combo in itertools.product(*(range(len(q.hom(qobj, t))) for t in A.types)):
        p = Copresheaf(A, qobj, tuple(Arrow(qobj, t, i) for t, i in zip(A.types, combo)))
        if copresheaf_law_ok(p):
            out.append(p)
    return tuple(out)


_complete_cache = weakref.WeakKeyDictionary()


def is_complete(A: QCategory, cap: int | None = None) -> bool:
    """Exhaustive: every presheaf of every type has a supremum; cached per value."""
    hit = _complete_cache.get(A)
    if hit is None:
        hit = all(
            sup(A, mu) is not None
            for qobj in A.q.objects
            for mu in enumerate_presheaves(A, qobj, cap)
        )
        _complete_cache[A] = hit
    return hit


# -- materialized (co)presheaf categories ------------------------------------------


def presheaf_label(p) -> str:
    """Deterministic readable label: ``type|x1:v1,x2:v2``."""
    q = p.base.q
    cells = ",".join(f"{x}:{q.label(v)}" for x, v in zip(p.base.objects, p.values))
    return f"{p.type}|{cells}"


class PresheafSpace:
    """The category of all (co)presheaves on a base, with value lookups.

    Members are enumerated per type in quantaloid object order, lexicographic
    within a type, so labels and hom matrices are reproducible.  The hom of
    the copresheaf flavour is the reversed residuation, which makes the
    underlying order of the materialized category the correct (reversed) one.
    """

    def __init__(self, base: QCategory, kind: str = "presheaf", cap: int | None = None):
        if kind not in ("presheaf", "copresheaf"):
            raise QfcaError(f"unknown flavour {kind!r}")
        self.base = base
        self.kind = kind
        members = []
        for qobj in base.q.objects:
            if kind == "presheaf":
                members.extend(enumerate_presheaves(base, qobj, cap))
            else:
                members.extend(enumerate_copresheaves(base, qobj, cap))
        self.members = tuple(members)
        labels = [presheaf_label(m) for m in members]
        hom_fn = presheaf_hom if kind == "presheaf" else copresheaf_hom
        hom = [[hom_fn(m, m2) for m2 in members] for m in members]
        self.category = QCategory(base.q, labels, [m.type for m in members], hom,
                                  name=f"{'P' if kind == 'presheaf' else 'P+'}({base.name})")
        self._by_key = {m.key(): lbl for m, lbl in zip(members, labels)}
        self._by_label = {lbl: m for m, lbl in zip(members, labels)}

    def label_of(self, m) -> str:
        try:
            return self._by_key[m.key()]
        except KeyError:
            raise QfcaError(f"{presheaf_label(m)} is not a member of {self.category.name}"
                            ) from None

    def member_of(self, label: str):
        return self._by_label[label]

    def functor_from(self, dom: QCategory, assignment, name: str = "") -> QFunctor:
        """Build a functor into this space from a member-valued map on labels."""
        mapping = {x: self.label_of(assignment(x)) for x in dom.objects}
        return QFunctor(dom, self.category, mapping, name=name or "into-presheaves")

    def endo_functor(self, f, name: str = "") -> QFunctor:
        mapping = {lbl: self.label_of(f(m)) for lbl, m in zip(self.category.objects, self.members)}
        return QFunctor(self.category, self.category, mapping, name=name or "endo")

    def functor_to(self, other: "PresheafSpace", f, name: str = "") -> QFunctor:
        mapping = {lbl: other.label_of(f(m)) for lbl, m in zip(self.category.objects, self.members)}
        return QFunctor(self.category, other.category, mapping, name=name or "between-spaces")

    def yoneda_functor(self) -> QFunctor:
        if self.kind == "presheaf":
            return self.functor_from(self.base, lambda a: yoneda(self.base, a), name="yoneda")
        return self.functor_from(self.base, lambda a: coyoneda(self.base, a), name="coyoneda")


def materialize_presheaves(base: QCategory, cap: int | None = None) -> PresheafSpace:
    return PresheafSpace(base, "presheaf", cap)


def materialize_copresheaves(base: QCategory, cap: int | None = None) -> PresheafSpace:
    return PresheafSpace(base, "copresheaf", cap)


# -- order-level density -----------------------------------------------------------


def image_join_dense(X: QCategory, image, assume_complete: bool = False) -> bool:
    """Is every object of X the underlying join of objects from ``image``?

    Uses the canonical witness: the set of all image objects below y.  If any
    subset of the image joins to y then that canonical set does too (joins
    are monotone in the subset), so this decides the subset search exactly.
    The target must be complete; pass ``assume_complete=True`` to skip the
    exhaustive check when completeness is known.  The witness join is taken
    as the supremum of the pointwise join of the representables.
    """
    if not assume_complete and not is_complete(X):
        raise QfcaError(f"{X.name} is not complete; join-density is undefined here")
    order = underlying_order(X)
    image = sorted(set(image), key=X.index)
    for y in X.objects:
        below = [s for s in image if X.type_of(s) == X.type_of(y) and order.leq(s, y)]
        mu = presheaf_join(X, X.type_of(y), [yoneda(X, s) for s in below])
        j = sup(X, mu)
        if j is None or not order.iso(j, y):
            return False
    return True


def image_meet_dense(X: QCategory, image, assume_complete: bool = False) -> bool:
    if not assume_complete and not is_complete(X):
        raise QfcaError(f"{X.name} is not complete; meet-density is undefined here")
    order = underlying_order(X)
    image = sorted(set(image), key=X.index)
    for y in X.objects:
        above = [s for s in image if X.type_of(s) == X.type_of(y) and order.leq(y, s)]
        lam = copresheaf_join(X, X.type_of(y), [coyoneda(X, s) for s in above])
        m = inf(X, lam)
        if m is None or not order.iso(m, y):
            return False
    return True


def is_join_dense(F: QFunctor, assume_complete: bool = False) -> bool:
    return image_join_dense(F.cod, {F(x) for x in F.dom.objects}, assume_complete)


def is_meet_dense(F: QFunctor, assume_complete: bool = False) -> bool:
    return image_meet_dense(F.cod, {F(x) for x in F.dom.objects}, assume_complete)
