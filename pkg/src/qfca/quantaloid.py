"""Finite quantaloids: hom-lattices, composition, residuation, presets.

A quantaloid here is a small category whose hom-sets are finite complete
lattices and whose composition preserves joins in each variable.  Everything
is exact and symbolic: an arrow is an index into an explicit element list, and
no floating point is used anywhere.  Residuations are never stored; they are
computed from the composition table by the join formula

    left_imp(w, u)  = join { v | v . u <= w }
    right_imp(v, w) = join { u | v . u <= w }

so the adjunction  v.u <= w  iff  v <= left_imp(w,u)  iff  u <= right_imp(v,w)
holds by construction on valid input; ``validate_quantaloid`` still
cross-checks it exhaustively.

All values are immutable after construction and every operation is a pure
function, so concurrent use needs no locking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidParams,
    NotGirard,
    QfcaError,
    SearchBudgetExceeded,
    TypeMismatch,
    ValidationReport,
    budget,
)


@dataclass(frozen=True, order=True)
class Arrow:
    """An arrow src -> dst, identified by its ordinal in that hom-lattice."""

    src: str
    dst: str
    index: int


class HomLattice:
    """A finite lattice of arrow labels with an explicit order relation.

    Joins and meets are found by scanning upper/lower bounds, which is fine at
    desk scale (|hom| <= ~64).  ``join_opt``/``meet_opt`` return ``None`` when
    the bound does not exist, so validators can report incompleteness instead
    of crashing.
    """

    def __init__(self, elements: tuple[str, ...], leq_pairs: frozenset[tuple[int, int]]):
        if len(set(elements)) != len(elements):
            raise InvalidParams(f"duplicate element labels in hom: {elements}")
        self.elements = tuple(elements)
        n = len(self.elements)
        self.leq_pairs = frozenset(leq_pairs)
        self._leq = [[False] * n for _ in range(n)]
        for i, j in leq_pairs:
            self._leq[i][j] = True
        self._join_cache: dict[frozenset[int], int | None] = {}
        self._meet_cache: dict[frozenset[int], int | None] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise InvalidParams(f"unknown arrow label {label!r}; have {self.elements}") from None

    def join_opt(self, indices) -> int | None:
        key = frozenset(indices)
        if key not in self._join_cache:
            ubs = [k for k in range(len(self.elements)) if all(self._leq[i][k] for i in key)]
            least = [u for u in ubs if all(self._leq[u][k] for k in ubs)]
            self._join_cache[key] = least[0] if len(least) == 1 else None
        return self._join_cache[key]

    def meet_opt(self, indices) -> int | None:
        key = frozenset(indices)
        if key not in self._meet_cache:
            lbs = [k for k in range(len(self.elements)) if all(self._leq[k][i] for i in key)]
            greatest = [l for l in lbs if all(self._leq[k][l] for k in lbs)]
            self._meet_cache[key] = greatest[0] if len(greatest) == 1 else None
        return self._meet_cache[key]

    def top_opt(self) -> int | None:
        return self.join_opt(range(len(self.elements)))

    def bottom_opt(self) -> int | None:
        return self.meet_opt(range(len(self.elements)))

    @staticmethod
    def from_labels(elements, leq_label_pairs, transitive: bool = True) -> "HomLattice":
        """Build from labels; the given pairs are closed reflexively/transitively."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        rel = {(i, i) for i in range(n)}
        for a, b in leq_label_pairs:
            rel.add((idx[a], idx[b]))
        if transitive:
            changed = True
            while changed:
                changed = False
                for (i, j), (k, l) in itertools.product(list(rel), list(rel)):
                    if j == k and (i, l) not in rel:
                        rel.add((i, l))
                        changed = True
        return HomLattice(elements, frozenset(rel))


class Quantaloid:
    """Objects, a hom-lattice per ordered object pair, composition and units.

    ``compose_table[(p, q, r)][j][i]`` is the index of ``v_j . u_i`` in
    ``Q(p, r)`` for ``u_i`` in ``Q(p, q)`` and ``v_j`` in ``Q(q, r)``.
    Equality of quantaloids is identity; fixtures share one instance.
    """

    def __init__(self, objects, homs, compose_table, units, name: str = "quantaloid"):
        self.name = name
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise InvalidParams(f"duplicate object ids: {self.objects}")
        self.homs: dict[tuple[str, str], HomLattice] = dict(homs)
        for p, q in itertools.product(self.objects, repeat=2):
            if (p, q) not in self.homs:
                raise InvalidParams(f"missing hom-lattice for ({p},{q})")
            if len(self.homs[(p, q)]) == 0:
                raise InvalidParams(f"empty hom ({p},{q}): a complete lattice is nonempty")
        self.compose_table: dict[tuple[str, str, str], tuple[tuple[int, ...], ...]] = {}
        for p, q, r in itertools.product(self.objects, repeat=3):
            table = compose_table[(p, q, r)]
            rows = tuple(tuple(row) for row in table)
            if len(rows) != len(self.homs[(q, r)]) or any(
                len(row) != len(self.homs[(p, q)]) for row in rows
            ):
                raise InvalidParams(f"compose table for ({p},{q},{r}) has wrong shape")
            self.compose_table[(p, q, r)] = rows
        self.units: dict[str, int] = dict(units)
        for q in self.objects:
            if q not in self.units:
                raise InvalidParams(f"missing unit for object {q}")
        self._limp_cache: dict[tuple[Arrow, Arrow], Arrow] = {}
        self._rimp_cache: dict[tuple[Arrow, Arrow], Arrow] = {}
        self._opposite: "Quantaloid | None" = None

    # -- basic access -------------------------------------------------------

    def hom(self, p: str, q: str) -> HomLattice:
        try:
            return self.homs[(p, q)]
        except KeyError:
            raise TypeMismatch(f"no hom ({p},{q}) in {self.name}") from None

    def arrows(self, p: str, q: str) -> tuple[Arrow, ...]:
        return tuple(Arrow(p, q, i) for i in range(len(self.hom(p, q))))

    def all_arrows(self):
        for p, q in itertools.product(self.objects, repeat=2):
            yield from self.arrows(p, q)

    def arrow(self, p: str, q: str, label: str) -> Arrow:
        return Arrow(p, q, self.hom(p, q).index(label))

    def label(self, a: Arrow) -> str:
        return self.hom(a.src, a.dst).elements[a.index]

    def unit(self, q: str) -> Arrow:
        return Arrow(q, q, self.units[q])

    def top(self, p: str, q: str) -> Arrow:
        t = self.hom(p, q).top_opt()
        if t is None:
            raise QfcaError(f"hom ({p},{q}) has no top")
        return Arrow(p, q, t)

    def bottom(self, p: str, q: str) -> Arrow:
        b = self.hom(p, q).bottom_opt()
        if b is None:
            raise QfcaError(f"hom ({p},{q}) has no bottom")
        return Arrow(p, q, b)

    def leq(self, a: Arrow, b: Arrow) -> bool:
        if (a.src, a.dst) != (b.src, b.dst):
            raise TypeMismatch(f"cannot compare {a} with {b}")
        return self.hom(a.src, a.dst).leq(a.index, b.index)

    @property
    def one_object(self) -> bool:
        return len(self.objects) == 1

    def __repr__(self) -> str:
        return f"Quantaloid({self.name!r}, {len(self.objects)} objects)"

    # -- composition and residuation ---------------------------------------

    def compose(self, v: Arrow, u: Arrow) -> Arrow:
        """v . u for u: p -> q and v: q -> r."""
        if u.dst != v.src:
            raise TypeMismatch(f"cannot compose {v} after {u}")
        k = self.compose_table[(u.src, u.dst, v.dst)][v.index][u.index]
        return Arrow(u.src, v.dst, k)

    def hom_join(self, p: str, q: str, arrows) -> Arrow:
        """Least upper bound; the empty join is the bottom arrow."""
        idx = []
        for a in arrows:
            if (a.src, a.dst) != (p, q):
                raise TypeMismatch(f"{a} is not in hom ({p},{q})")
            idx.append(a.index)
        if not idx:
            return self.bottom(p, q)
        j = self.hom(p, q).join_opt(idx)
        if j is None:
            raise QfcaError(f"join missing in hom ({p},{q}) for indices {sorted(set(idx))}")
        return Arrow(p, q, j)

    def hom_meet(self, p: str, q: str, arrows) -> Arrow:
        """Greatest lower bound; the empty meet is the top arrow."""
        idx = []
        for a in arrows:
            if (a.src, a.dst) != (p, q):
                raise TypeMismatch(f"{a} is not in hom ({p},{q})")
            idx.append(a.index)
        if not idx:
            return self.top(p, q)
        m = self.hom(p, q).meet_opt(idx)
        if m is None:
            raise QfcaError(f"meet missing in hom ({p},{q}) for indices {sorted(set(idx))}")
        return Arrow(p, q, m)

    def left_imp(self, w: Arrow, u: Arrow) -> Arrow:
        """left_imp(w, u) for u: p -> q, w: p -> r, giving q -> r."""
        if w.src != u.src:
            raise TypeMismatch(f"left_imp needs a common source, got {w} and {u}")
        key = (w, u)
        if key not in self._limp_cache:
            q, r = u.dst, w.dst
            vs = [v for v in self.arrows(q, r) if self.leq(self.compose(v, u), w)]
            self._limp_cache[key] = self.hom_join(q, r, vs)
        return self._limp_cache[key]

    def right_imp(self, v: Arrow, w: Arrow) -> Arrow:
        """right_imp(v, w) for v: q -> r, w: p -> r, giving p -> q."""
        if v.dst != w.dst:
            raise TypeMismatch(f"right_imp needs a common target, got {v} and {w}")
        key = (v, w)
        if key not in self._rimp_cache:
            p, q = w.src, v.src
            us = [u for u in self.arrows(p, q) if self.leq(self.compose(v, u), w)]
            self._rimp_cache[key] = self.hom_join(p, q, us)
        return self._rimp_cache[key]

    # -- duality ------------------------------------------------------------

    def opposite(self) -> "Quantaloid":
        """The opposite quantaloid: 1-cells reverse, hom-orders stay."""
        if self._opposite is None:
            homs = {(p, q): self.homs[(q, p)] for p, q in itertools.product(self.objects, repeat=2)}
            table = {}
            for p, q, r in itertools.product(self.objects, repeat=3):
                # v .op u = u . v computed in self, with u: q -> p, v: r -> q.
                base = self.compose_table[(r, q, p)]
                nv, nu = len(self.homs[(q, r)]), len(self.homs[(p, q)])
                table[(p, q, r)] = tuple(
                    tuple(base[u_i][v_j] for u_i in range(nu)) for v_j in range(nv)
                )
            op = Quantaloid(self.objects, homs, table, self.units, name=f"{self.name}^op")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def dual_arrow(self, a: Arrow) -> Arrow:
        """The same arrow seen in the opposite quantaloid."""
        return Arrow(a.dst, a.src, a.index)


# -- validation --------------------------------------------------------------


def validate_quantaloid(Q: Quantaloid) -> ValidationReport:
    """Check every quantaloid law, reporting all violations as data."""
    report = ValidationReport(f"quantaloid {Q.name}")
    lattices_ok = True
    for (p, q), hom in sorted(Q.homs.items()):
        n = len(hom)
        for i in range(n):
            if not hom.leq(i, i):
                report.add("poset.reflexive", (p, q, hom.elements[i]), "x <= x fails")
                lattices_ok = False
        for i, j in itertools.product(range(n), repeat=2):
            if i != j and hom.leq(i, j) and hom.leq(j, i):
                report.add("poset.antisymmetric", (p, q, hom.elements[i], hom.elements[j]),
                           "x <= y and y <= x for distinct elements")
                lattices_ok = False
        for i, j, k in itertools.product(range(n), repeat=3):
            if hom.leq(i, j) and hom.leq(j, k) and not hom.leq(i, k):
                report.add("poset.transitive",
                           (p, q, hom.elements[i], hom.elements[j], hom.elements[k]),
                           "x <= y <= z but not x <= z")
                lattices_ok = False
        if hom.top_opt() is None:
            report.add("lattice.top", (p, q), "no greatest element")
            lattices_ok = False
        if hom.bottom_opt() is None:
            report.add("lattice.bottom", (p, q), "no least element")
            lattices_ok = False
        for i, j in itertools.combinations(range(n), 2):
            if hom.join_opt([i, j]) is None:
                report.add("lattice.join", (p, q, hom.elements[i], hom.elements[j]),
                           "pairwise join missing")
                lattices_ok = False
            if hom.meet_opt([i, j]) is None:
                report.add("lattice.meet", (p, q, hom.elements[i], hom.elements[j]),
                           "pairwise meet missing")
                lattices_ok = False
    if not lattices_ok:
        return report

    lbl = Q.label
    for q in Q.objects:
        one = Q.unit(q)
        for p in Q.objects:
            for u in Q.arrows(p, q):
                if Q.compose(one, u) != u:
                    report.add("unit.left", (p, q, lbl(u)), "1.u != u")
        for r in Q.objects:
            for v in Q.arrows(q, r):
                if Q.compose(v, one) != v:
                    report.add("unit.right", (q, r, lbl(v)), "v.1 != v")

    for p, q, r, s in itertools.product(Q.objects, repeat=4):
        for u in Q.arrows(p, q):
            for v in Q.arrows(q, r):
                vu = Q.compose(v, u)
                for w in Q.arrows(r, s):
                    if Q.compose(Q.compose(w, v), u) != Q.compose(w, vu):
                        report.add("compose.associative", (lbl(w), lbl(v), lbl(u)),
                                   "(w.v).u != w.(v.u)")

    # Join preservation in each variable: bottom plus binary joins suffice
    # for all finite joins; the acceptance suite additionally checks every
    # subset on small homs.
    for p, q, r in itertools.product(Q.objects, repeat=3):
        bot_pq, bot_qr, bot_pr = Q.bottom(p, q), Q.bottom(q, r), Q.bottom(p, r)
        for u in Q.arrows(p, q):
            if Q.compose(bot_qr, u) != bot_pr:
                report.add("compose.joins.left", (p, q, r, lbl(u)), "bottom.u != bottom")
            for v1, v2 in itertools.combinations_with_replacement(Q.arrows(q, r), 2):
                lhs = Q.compose(Q.hom_join(q, r, [v1, v2]), u)
                rhs = Q.hom_join(p, r, [Q.compose(v1, u), Q.compose(v2, u)])
                if lhs != rhs:
                    report.add("compose.joins.left", (lbl(v1), lbl(v2), lbl(u)),
                               "(v1 v v2).u != v1.u v v2.u")
        for v in Q.arrows(q, r):
            if Q.compose(v, bot_pq) != bot_pr:
                report.add("compose.joins.right", (p, q, r, lbl(v)), "v.bottom != bottom")
            for u1, u2 in itertools.combinations_with_replacement(Q.arrows(p, q), 2):
                lhs = Q.compose(v, Q.hom_join(p, q, [u1, u2]))
                rhs = Q.hom_join(p, r, [Q.compose(v, u1), Q.compose(v, u2)])
                if lhs != rhs:
                    report.add("compose.joins.right", (lbl(v), lbl(u1), lbl(u2)),
                               "v.(u1 v u2) != v.u1 v v.u2")

    for p, q, r in itertools.product(Q.objects, repeat=3):
        for u in Q.arrows(p, q):
            for v in Q.arrows(q, r):
                for w in Q.arrows(p, r):
                    left = Q.leq(Q.compose(v, u), w)
                    mid = Q.leq(v, Q.left_imp(w, u))
                    right = Q.leq(u, Q.right_imp(v, w))
                    if not (left == mid == right):
                        report.add("residuation.adjunction", (lbl(u), lbl(v), lbl(w)),
                                   f"v.u<=w is {left}, v<=w<l u is {mid}, u<=v>r w is {right}")
    return report


# -- cyclic dualizing families ------------------------------------------------


@dataclass(frozen=True)
class CyclicDualizingFamily:
    """A choice of endo-arrow per object, with its cyclic/dualizing verdicts."""

    d: tuple[tuple[str, Arrow], ...]
    cyclic: bool
    dualizing: bool

    def arrow(self, q: str) -> Arrow:
        for obj, a in self.d:
            if obj == q:
                return a
        raise KeyError(q)

    def labels(self, Q: Quantaloid) -> dict[str, str]:
        return {obj: Q.label(a) for obj, a in self.d}


def is_cyclic_family(Q: Quantaloid, d: dict[str, Arrow]) -> bool:
    return all(
        Q.left_imp(d[u.src], u) == Q.right_imp(u, d[u.dst])
        for u in Q.all_arrows()
    )


def is_dualizing_family(Q: Quantaloid, d: dict[str, Arrow]) -> bool:
    for u in Q.all_arrows():
        dp, dq = d[u.src], d[u.dst]
        if Q.right_imp(Q.left_imp(dp, u), dp) != u:
            return False
        if Q.left_imp(dq, Q.right_imp(u, dq)) != u:
            return False
    return True


def find_cyclic_dualizing_family(Q: Quantaloid, search_budget: int | None = None):
    """Search all endo-arrow families in lexicographic order.

    Returns the first family that is both cyclic and dualizing; otherwise the
    first cyclic-only family (``dualizing=False``); otherwise ``None``.
    """
    cap = budget("search", search_budget)
    sizes = [len(Q.hom(q, q)) for q in Q.objects]
    total = 1
    for s in sizes:
        total *= s
    if total > cap:
        raise SearchBudgetExceeded(
            f"{total} candidate families exceed the budget of {cap}")
    best_cyclic = None
    for combo in itertools.product(*(range(s) for s in sizes)):
        d = {q: Arrow(q, q, i) for q, i in zip(Q.objects, combo)}
        if not is_cyclic_family(Q, d):
            continue
        fam = CyclicDualizingFamily(tuple(sorted(d.items())), True, is_dualizing_family(Q, d))
        if fam.dualizing:
            return fam
        if best_cyclic is None:
            best_cyclic = fam
    return best_cyclic


def complement_arrow(Q: Quantaloid, fam: CyclicDualizingFamily, u: Arrow) -> Arrow:
    """The complement of u under a cyclic dualizing family; involutive."""
    if not (fam.cyclic and fam.dualizing):
        raise NotGirard("complement needs a cyclic dualizing family")
    return Q.left_imp(fam.arrow(u.src), u)


# -- presets ------------------------------------------------------------------


class _Frame:
    """A finite frame (here: finite distributive lattice) used to build presets."""

    def __init__(self, elements: tuple[str, ...], leq: dict[tuple[str, str], bool]):
        self.elements = elements
        self.leq = leq

    def meet(self, a: str, b: str) -> str:
        lbs = [x for x in self.elements if self.leq[(x, a)] and self.leq[(x, b)]]
        greatest = [x for x in lbs if all(self.leq[(y, x)] for y in lbs)]
        return greatest[0]

    def join(self, a: str, b: str) -> str:
        ubs = [x for x in self.elements if self.leq[(a, x)] and self.leq[(b, x)]]
        least = [x for x in ubs if all(self.leq[(x, y)] for y in ubs)]
        return least[0]

    def implies(self, a: str, b: str) -> str:
        """Heyting implication: the largest x with x meet a <= b."""
        xs = [x for x in self.elements if self.leq[(self.meet(x, a), b)]]
        out = xs[0]
        for x in xs[1:]:
            out = self.join(out, x)
        return out

    @property
    def top(self) -> str:
        return [x for x in self.elements if all(self.leq[(y, x)] for y in self.elements)][0]

    @property
    def bottom(self) -> str:
        return [x for x in self.elements if all(self.leq[(x, y)] for y in self.elements)][0]

    @staticmethod
    def chain(n: int) -> "_Frame":
        if n < 1:
            raise InvalidParams("chain length must be >= 1")
        elements = tuple(str(i) for i in range(n))
        leq = {(a, b): int(a) <= int(b) for a in elements for b in elements}
        return _Frame(elements, leq)

    @staticmethod
    def boolean(k: int) -> "_Frame":
        """The Boolean algebra on k named atoms; 2 gives the 4-element one."""
        if k < 0 or k > 6:
            raise InvalidParams("boolean frame supports 0..6 atoms")
        atoms = "abcdef"[:k]
        subsets = []
        for size in range(k + 1):
            for combo in itertools.combinations(atoms, size):
                subsets.append("".join(combo) or "0")
        elements = tuple(subsets)

        def as_set(e: str) -> frozenset:
            return frozenset() if e == "0" else frozenset(e)

        leq = {(a, b): as_set(a) <= as_set(b) for a in elements for b in elements}
        return _Frame(elements, leq)


def _chain_quantaloid(name: str, n: int, tensor) -> Quantaloid:
    """One-object quantaloid on the chain 0 < 1/(n-1) < ... < 1."""
    if n < 2:
        raise InvalidParams("chain presets need n >= 2")
    values = [Fraction(i, n - 1) for i in range(n)]
    labels = tuple(str(v) for v in values)
    hom = HomLattice.from_labels(
        labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])
    table = {("*", "*", "*"): tuple(
        tuple(values.index(tensor(values[j], values[i])) for i in range(n))
        for j in range(n)
    )}
    return Quantaloid(("*",), {("*", "*"): hom}, table, {"*": n - 1}, name=name)


def _frame_diagonal(L: _Frame, name: str) -> Quantaloid:
    """The diagonal quantaloid of a frame L.

    Objects are the elements of L; the hom at (p, q) is the downset of
    p meet q; composition is the meet of L; the identity at q is q itself.
    """
    objects = tuple(L.elements)
    homs = {}
    for p, q in itertools.product(objects, repeat=2):
        m = L.meet(p, q)
        elems = tuple(x for x in L.elements if L.leq[(x, m)])
        homs[(p, q)] = HomLattice.from_labels(
            elems, [(a, b) for a in elems for b in elems if L.leq[(a, b)]],
            transitive=False)
    table = {}
    for p, q, r in itertools.product(objects, repeat=3):
        dom, mid, cod = homs[(p, q)], homs[(q, r)], homs[(p, r)]
        table[(p, q, r)] = tuple(
            tuple(cod.index(L.meet(mid.elements[j], dom.elements[i]))
                  for i in range(len(dom)))
            for j in range(len(mid))
        )
    units = {q: homs[(q, q)].index(q) for q in objects}
    return Quantaloid(objects, homs, table, units, name=name)


def _quantale_from_table(elements, leq_pairs, products, unit, name) -> Quantaloid:
    hom = HomLattice.from_labels(tuple(elements), leq_pairs)
    n = len(hom)
    prod = {(a, b): c for a, b, c in products}
    missing = [(v, u) for v in hom.elements for u in hom.elements if (v, u) not in prod]
    if missing:
        raise InvalidParams(f"product table misses pairs: {missing[:5]}")
    table = {("*", "*", "*"): tuple(
        tuple(hom.index(prod[(hom.elements[j], hom.elements[i])]) for i in range(n))
        for j in range(n)
    )}
    return Quantaloid(("*",), {("*", "*"): hom}, table, {"*": hom.index(unit)}, name=name)


def build_preset(name: str, **params) -> Quantaloid:
    """Construct and validate one of the named stock quantaloids."""
    if name == "two":
        Q = _chain_quantaloid("two", 2, min)
    elif name == "lukasiewicz-chain":
        n = int(params.get("n", 3))
        Q = _chain_quantaloid(f"lukasiewicz-{n}", n,
                              lambda a, b: max(Fraction(0), a + b - 1))
    elif name == "godel-chain":
        n = int(params.get("n", 3))
        Q = _chain_quantaloid(f"godel-{n}", n, min)
    elif name == "frame-diagonal":
        if "chain" in params:
            L = _Frame.chain(int(params["chain"]))
            Q = _frame_diagonal(L, f"diag-chain-{params['chain']}")
        elif "boolean" in params:
            L = _Frame.boolean(int(params["boolean"]))
            Q = _frame_diagonal(L, f"diag-boolean-{params['boolean']}")
        else:
            raise InvalidParams("frame-diagonal needs chain=<n> or boolean=<k>")
    elif name == "commutative-quantale-from-table":
        try:
            Q = _quantale_from_table(params["elements"], params["leq"],
                                     params["products"], params["unit"],
                                     params.get("name", "quantale"))
        except KeyError as e:
            raise InvalidParams(f"missing parameter {e.args[0]!r}") from None
    else:
        raise InvalidParams(f"unknown preset {name!r}")
    report = validate_quantaloid(Q)
    if not report.ok:
        raise InvalidParams(f"preset {name!r} failed validation: {report.issues[:3]}")
    return Q
