"""Burnside modules of finite groups.

The module of virtual (G,H)-bisets with free right H-action has a canonical
basis of transitive classes [K, phi] with K a subgroup of G up to conjugacy
and phi: K -> H a homomorphism up to pre-conjugation by the normalizer of K
and post-conjugation by H. Composition of elements over (G,H) and (H,K) is
computed concretely: realize both bisets, form the quotient of the cartesian
product identifying (x*h, y) with (x, h*y), and decompose the result into
transitive classes.

Coefficients are plain integers or PadicInt values; an element is homogeneous
in scalar kind and carries a single (p, k) when p-adic.
"""

from __future__ import annotations

import functools

from . import groups as _groups
from .errors import (BisetError, CapExceededError, ScalarMismatchError,
                     SubgroupError)
from .groups import (GroupHom, PermGroup, Subgroup, as_group,
                     class_rep_and_conjugator, homomorphisms, inclusion_hom,
                     normalizer, parse_group, subgroups_up_to_conjugacy,
                     trivial_group, trivial_hom)
from .intlattice import IntegerLattice
from .padic import PadicInt
from .perms import Perm, cycle_string, p_inv, p_mul


class BisetClass:
    """The canonical representative [K, phi] of a transitive (G,H)-biset
    class. Instances are produced by canonical_class and are interned, so
    equal classes are usually the same object."""

    __slots__ = ("source", "target", "K", "phi", "_hash")

    def __init__(self, source: PermGroup, target: PermGroup,
                 K: Subgroup, phi: GroupHom):
        self.source = source
        self.target = target
        self.K = K
        self.phi = phi
        self._hash = hash((source, target, K, phi.images))

    @property
    def size(self) -> int:
        return self.source.order * self.target.order // self.K.order

    @property
    def sort_key(self):
        return (-self.K.order, self.K.elements, self.phi.images)

    def label(self) -> str:
        gens = self.K.generators()
        kpart = ",".join(cycle_string(g) for g in gens) or "()"
        if not gens:
            ppart = "triv"
        else:
            ppart = ",".join(f"{cycle_string(g)}->{cycle_string(self.phi(g))}"
                             for g in gens)
        return f"[{kpart}; {ppart}]"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, BisetClass):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.K == other.K and self.phi.images == other.phi.images)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"BisetClass({self.label()})"


@functools.lru_cache(maxsize=None)
def _canonical_pair(source: PermGroup, target: PermGroup, K: Subgroup,
                    images: tuple[Perm, ...]) -> BisetClass:
    """Canonicalize a (subgroup, homomorphism) pair: move K to its conjugacy
    class representative, then minimize the image tuple over pre-conjugation
    by the normalizer and post-conjugation by the target."""
    K0, g0 = class_rep_and_conjugator(source, K)
    g0i = p_inv(g0)
    imap = dict(zip(K.elements, images))
    base = {x: imap[p_mul(p_mul(g0i, x), g0)] for x in K0.elements}
    best = None
    for n in normalizer(source, K0).elements:
        ni = p_inv(n)
        twisted = [base[p_mul(p_mul(ni, x), n)] for x in K0.elements]
        for h in target.elements:
            hi = p_inv(h)
            cand = tuple(p_mul(p_mul(h, t), hi) for t in twisted)
            if best is None or cand < best:
                best = cand
    phi = GroupHom(K0, target, dict(zip(K0.elements, best)))
    return BisetClass(source, target, K0, phi)


def canonical_class(source: PermGroup, target: PermGroup, K: Subgroup,
                    phi) -> BisetClass:
    images = phi.images if isinstance(phi, GroupHom) else tuple(
        phi[x] for x in K.elements)
    return _canonical_pair(source, target, K, images)


@functools.lru_cache(maxsize=None)
def basis(G: PermGroup, H: PermGroup) -> tuple[BisetClass, ...]:
    """The canonical basis of the Burnside module over (G, H), ordered by
    descending |K| then canonical keys."""
    if G.order > _groups.ENUM_CAP or H.order > _groups.ENUM_CAP:
        raise CapExceededError("group order exceeds the enumeration cap")
    seen = set()
    out = []
    for K in subgroups_up_to_conjugacy(G):
        for hom in homomorphisms(K, H):
            b = _canonical_pair(G, H, K, hom.images)
            if b not in seen:
                seen.add(b)
                out.append(b)
    out.sort(key=lambda b: b.sort_key)
    return tuple(out)


# ---------------------------------------------------------------------------
# elements

def _classify_scalars(terms: dict) -> tuple[str, tuple[int, int] | None]:
    kind = None
    pk = None
    for coeff in terms.values():
        if isinstance(coeff, PadicInt):
            if kind == "int":
                raise ScalarMismatchError("mixed integer and p-adic coefficients")
            kind = "padic"
            this = (coeff.prime, coeff.precision)
            if pk is None:
                pk = this
            elif pk != this:
                raise ScalarMismatchError(
                    f"coefficients at {pk} and {this} in one element")
        elif isinstance(coeff, int):
            if kind == "padic":
                raise ScalarMismatchError("mixed integer and p-adic coefficients")
            kind = "int"
        else:
            raise ScalarMismatchError(f"unsupported coefficient {coeff!r}")
    return kind or "int", pk


class BurnsideElement:
    """A finite integer or p-adic linear combination of BisetClass values
    over a fixed (source, target) pair. Zero coefficients are dropped."""

    __slots__ = ("source", "target", "_terms", "kind", "prime", "precision")

    def __init__(self, source: PermGroup, target: PermGroup, terms: dict):
        self.source = source
        self.target = target
        cleaned = {}
        for b, c in terms.items():
            if b.source != source or b.target != target:
                raise BisetError(
                    f"term {b!r} does not live over ({source.label}, {target.label})")
            if isinstance(c, PadicInt):
                if not c.is_zero:
                    cleaned[b] = c
            elif c != 0:
                cleaned[b] = c
        kind, pk = _classify_scalars(cleaned)
        self._terms = cleaned
        self.kind = kind
        self.prime, self.precision = pk if pk else (None, None)

    @property
    def is_padic(self) -> bool:
        return self.kind == "padic"

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def support(self):
        return sorted(self._terms, key=lambda b: b.sort_key)

    def coefficient(self, b: BisetClass):
        c = self._terms.get(b)
        if c is not None:
            return c
        if self.is_padic:
            return PadicInt(self.prime, self.precision, 0)
        return 0

    def lift(self, p: int, k: int) -> "BurnsideElement":
        """Coerce to p-adic coefficients at precision k."""
        if self.is_padic:
            if self.prime != p:
                raise ScalarMismatchError(
                    f"cannot lift prime {self.prime} element to prime {p}")
            if k > self.precision:
                raise ScalarMismatchError(
                    f"cannot raise precision {self.precision} to {k}")
            return self.reduce_to(k)
        return BurnsideElement(self.source, self.target, {
            b: PadicInt(p, k, c) for b, c in self._terms.items()})

    def reduce_to(self, k: int) -> "BurnsideElement":
        if self.is_zero:
            return self
        if not self.is_padic:
            raise ScalarMismatchError("only p-adic elements carry a precision")
        return BurnsideElement(self.source, self.target, {
            b: c.reduce_to(k) for b, c in self._terms.items()})

    def _binop(self, other, sign: int) -> "BurnsideElement":
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            raise BisetError("cannot add elements over different group pairs")
        out = dict(self._terms)
        for b, c in other._terms.items():
            cur = out.get(b)
            out[b] = (sign * c) if cur is None else cur + sign * c
        return BurnsideElement(self.source, self.target, out)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return BurnsideElement(self.source, self.target,
                               {b: -c for b, c in self._terms.items()})

    def scaled(self, scalar) -> "BurnsideElement":
        return BurnsideElement(self.source, self.target,
                               {b: scalar * c for b, c in self._terms.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, PadicInt)):
            return self.scaled(scalar)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        if self.is_zero and other.is_zero:
            return True
        if self.is_padic != other.is_padic:
            return False
        if not self.is_padic:
            return self._terms == other._terms
        if self.prime != other.prime:
            return False
        k = min(self.precision, other.precision)
        a = {b: c.reduce_to(k).residue for b, c in self._terms.items()}
        bb = {b: c.reduce_to(k).residue for b, c in other._terms.items()}
        return a == bb

    def __hash__(self):
        raise TypeError("BurnsideElement is not hashable")

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for b, c in self.terms():
            if isinstance(c, PadicInt):
                parts.append(f"({c}) {b.label()}")
            else:
                parts.append(f"{c} {b.label()}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BurnsideElement({self})"


def element(source: PermGroup, target: PermGroup, terms) -> BurnsideElement:
    return BurnsideElement(source, target, dict(terms))


def zero(source: PermGroup, target: PermGroup) -> BurnsideElement:
    return BurnsideElement(source, target, {})


def single(b: BisetClass, coeff=1) -> BurnsideElement:
    return BurnsideElement(b.source, b.target, {b: coeff})


@functools.lru_cache(maxsize=None)
def identity_class(G: PermGroup) -> BisetClass:
    full = G.full_subgroup()
    return canonical_class(G, G, full, inclusion_hom(full, G))


def identity_element(G: PermGroup) -> BurnsideElement:
    return single(identity_class(G))


def cardinality(x: BurnsideElement):
    """Total point count of the virtual biset."""
    total = 0
    for b, c in x._terms.items():
        total = total + c * b.size
    if isinstance(total, int) and x.is_padic:
        return PadicInt(x.prime, x.precision, 0)
    return total


# ---------------------------------------------------------------------------
# concrete bisets

class ConcreteBiset:
    """An explicit (G,H)-biset on points {0..size-1} with full action tables:
    left[i][x] is the action of source.elements[i] and right[j][x] the action
    of target.elements[j]."""

    __slots__ = ("source", "target", "size", "left", "right")

    def __init__(self, source: PermGroup, target: PermGroup, size: int,
                 left, right):
        self.source = source
        self.target = target
        self.size = size
        self.left = tuple(tuple(row) for row in left)
        self.right = tuple(tuple(row) for row in right)

    def validate(self) -> None:
        """Check the biset axioms; raises BisetError on failure.

        Homomorphy of the tables is checked on (generator, element) pairs,
        and commutation on generator pairs, which suffices. Freeness of the
        right action is checked on every point.
        """
        G, H, n = self.source, self.target, self.size
        if len(self.left) != G.order or len(self.right) != H.order:
            raise BisetError("action table shape does not match group orders")
        ident = tuple(range(n))
        if self.left[G.index(G.identity)] != ident:
            raise BisetError("left identity does not act trivially")
        if self.right[H.index(H.identity)] != ident:
            raise BisetError("right identity does not act trivially")
        for gi in G.generator_indices():
            g = G.elements[gi]
            grow = self.left[gi]
            for ai, a in enumerate(G.elements):
                prod = G.index(p_mul(g, a))
                arow = self.left[ai]
                if any(self.left[prod][x] != grow[arow[x]] for x in range(n)):
                    raise BisetError("left table is not an action")
        for hi in H.generator_indices():
            h = H.elements[hi]
            hrow = self.right[hi]
            for ai, a in enumerate(H.elements):
                prod = H.index(p_mul(a, h))
                arow = self.right[ai]
                if any(self.right[prod][x] != hrow[arow[x]] for x in range(n)):
                    raise BisetError("right table is not an action")
        for gi in G.generator_indices():
            grow = self.left[gi]
            for hi in H.generator_indices():
                hrow = self.right[hi]
                if any(grow[hrow[x]] != hrow[grow[x]] for x in range(n)):
                    raise BisetError("left and right actions do not commute")
        e_h = H.index(H.identity)
        for hi in range(H.order):
            if hi == e_h:
                continue
            row = self.right[hi]
            if any(row[x] == x for x in range(n)):
                raise BisetError("right action is not free")


def _full_tables(group: PermGroup, gen_rows: dict[int, list[int]], size: int,
                 side: str):
    """Expand generator action rows to all elements using BFS factorizations."""
    rows: list = [None] * group.order
    rows[group.index(group.identity)] = list(range(size))
    for gi, row in gen_rows.items():
        rows[gi] = row
    for elem_i, gen_i, prefix_i in group.bfs_words(side):
        if rows[elem_i] is not None:
            continue
        # left: (g*prefix).x = g.(prefix.x); right: x.(prefix*g) = (x.prefix).g
        grow = rows[gen_i]
        prow = rows[prefix_i]
        rows[elem_i] = [grow[prow[x]] for x in range(size)]
    return rows


@functools.lru_cache(maxsize=None)
def realize(b: BisetClass) -> ConcreteBiset:
    """The transitive biset (G x H) / (g k, h) ~ (g, phi(k) h) with left and
    right multiplication actions. Points are equivalence classes; the class
    of (g, h) is represented by its minimal member."""
    G, H, K, phi = b.source, b.target, b.K, b.phi
    twists = [(k, p_inv(phi(k))) for k in K.elements]

    def rep(g: Perm, h: Perm) -> tuple[Perm, Perm]:
        best = None
        for k, fki in twists:
            cand = (p_mul(g, k), p_mul(fki, h))
            if best is None or cand < best:
                best = cand
        return best

    index: dict[tuple[Perm, Perm], int] = {}
    points: list[tuple[Perm, Perm]] = []

    def point_id(g: Perm, h: Perm) -> int:
        r = rep(g, h)
        ix = index.get(r)
        if ix is None:
            ix = len(points)
            index[r] = ix
            points.append(r)
        return ix

    point_id(G.identity, H.identity)
    cursor = 0
    gen_g = [G.elements[i] for i in G.generator_indices()]
    gen_h = [H.elements[i] for i in H.generator_indices()]
    while cursor < len(points):
        g, h = points[cursor]
        cursor += 1
        for g0 in gen_g:
            point_id(p_mul(g0, g), h)
        for h0 in gen_h:
            point_id(g, p_mul(h, h0))
    size = len(points)
    if size != b.size:
        raise AssertionError("realized biset has the wrong cardinality")
    left_gen = {}
    for gi in G.generator_indices():
        g0 = G.elements[gi]
        left_gen[gi] = [index[rep(p_mul(g0, g), h)] for g, h in points]
    right_gen = {}
    for hi in H.generator_indices():
        h0 = H.elements[hi]
        right_gen[hi] = [index[rep(g, p_mul(h, h0))] for g, h in points]
    left = _full_tables(G, left_gen, size, "left")
    right = _full_tables(H, right_gen, size, "right")
    return ConcreteBiset(G, H, size, left, right)


def decompose(X: ConcreteBiset, *, check: bool = True) -> BurnsideElement:
    """Write a concrete biset as a sum of transitive classes.

    Each (G x H)-orbit is transitive with free right H-action, so picking a
    point x gives K = {g : g.x in x.H} and phi(g) = the unique h with
    g.x = x.h; the orbit is the class [K, phi].
    """
    if check:
        X.validate()
    G, H, n = X.source, X.target, X.size
    orbit_of = [-1] * n
    orbit_count = 0
    gen_rows = ([X.left[i] for i in G.generator_indices()]
                + [X.right[i] for i in H.generator_indices()])
    starts = []
    for x0 in range(n):
        if orbit_of[x0] >= 0:
            continue
        starts.append(x0)
        stack = [x0]
        orbit_of[x0] = orbit_count
        while stack:
            x = stack.pop()
            for row in gen_rows:
                y = row[x]
                if orbit_of[y] < 0:
                    orbit_of[y] = orbit_count
                    stack.append(y)
        orbit_count += 1
    terms: dict[BisetClass, int] = {}
    for x0 in starts:
        to_h = {}
        for hi, h in enumerate(H.elements):
            y = X.right[hi][x0]
            if y in to_h:
                raise BisetError("right action is not free on an orbit")
            to_h[y] = h
        members = []
        images = []
        for gi, g in enumerate(G.elements):
            y = X.left[gi][x0]
            h = to_h.get(y)
            if h is not None:
                members.append(g)
                images.append(h)
        K = Subgroup(G, members)
        b = _canonical_pair(G, H, K, tuple(images))
        terms[b] = terms.get(b, 0) + 1
    total = sum(b.size * c for b, c in terms.items())
    if total != n:
        raise AssertionError("orbit decomposition lost points")
    return BurnsideElement(G, H, terms)


def _coequalizer(X: ConcreteBiset, Y: ConcreteBiset) -> ConcreteBiset:
    """The (G,K)-biset (X x Y) / (x*h, y) ~ (x, h*y)."""
    H = X.target
    G, Kg = X.source, Y.target
    pair_orbit: dict[tuple[int, int], int] = {}
    n_orbits = 0
    hs = [(H.inverse_index(i), i) for i in range(H.order)]
    for i in range(X.size):
        xrow_cache = [X.right[hi_inv][i] for hi_inv, _ in hs]
        for j in range(Y.size):
            if (i, j) in pair_orbit:
                continue
            oid = n_orbits
            n_orbits += 1
            for pos, (_, hi) in enumerate(hs):
                pair = (xrow_cache[pos], Y.left[hi][j])
                pair_orbit[pair] = oid
    reps: list[tuple[int, int]] = [None] * n_orbits
    for pair, oid in pair_orbit.items():
        if reps[oid] is None or pair < reps[oid]:
            reps[oid] = pair
    left = []
    for gi in range(G.order):
        row = X.left[gi]
        left.append([pair_orbit[(row[i], j)] for i, j in reps])
    right = []
    for ki in range(Kg.order):
        row = Y.right[ki]
        right.append([pair_orbit[(i, row[j])] for i, j in reps])
    return ConcreteBiset(G, Kg, n_orbits, left, right)


@functools.lru_cache(maxsize=None)
def _compose_basis(b1: BisetClass, b2: BisetClass) -> tuple[tuple[BisetClass, int], ...]:
    Z = _coequalizer(realize(b1), realize(b2))
    return tuple(decompose(Z, check=False).terms())


def compose(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Composition over (G,H) x (H,K) -> (G,K), bilinear in both arguments.

    Integer elements compose with either kind (integers are lifted to the
    partner's precision); two p-adic elements must agree in (p, k).
    """
    if x.target != y.source:
        raise BisetError(
            f"cannot compose ({x.source.label},{x.target.label}) with "
            f"({y.source.label},{y.target.label})")
    if x.is_padic and y.is_padic:
        if x.prime != y.prime:
            raise ScalarMismatchError(
                f"prime mismatch: {x.prime} vs {y.prime}")
        if x.precision != y.precision:
            raise ScalarMismatchError(
                f"precision mismatch: {x.precision} vs {y.precision}")
    elif x.is_padic:
        y = y.lift(x.prime, x.precision)
    elif y.is_padic:
        x = x.lift(y.prime, y.precision)
    out: dict[BisetClass, object] = {}
    for b1, c1 in x._terms.items():
        for b2, c2 in y._terms.items():
            c = c1 * c2
            for b, mult in _compose_basis(b1, b2):
                cur = out.get(b)
                add = c * mult
                out[b] = add if cur is None else cur + add
    return BurnsideElement(x.source, y.target, out)


def power(x: BurnsideElement, n: int) -> BurnsideElement:
    """The n-th composition power of an element over (G, G), n >= 1."""
    if x.source != x.target:
        raise BisetError("powers need a (G,G) element")
    if n < 1:
        raise ValueError("exponent must be at least 1")
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


# ---------------------------------------------------------------------------
# restriction, opposite, augmentation

@functools.lru_cache(maxsize=None)
def _restrict_basis(b: BisetClass, left_hom: GroupHom | None,
                    right_hom: GroupHom | None) -> tuple[tuple[BisetClass, int], ...]:
    X = realize(b)
    G, H = b.source, b.target
    if left_hom is not None:
        src = as_group(left_hom.domain)
        left = [X.left[G.index(left_hom(s))] for s in src.elements]
    else:
        src = G
        left = X.left
    if right_hom is not None:
        if not right_hom.is_injective:
            raise BisetError("right restriction along a non-injective map "
                             "would break freeness")
        tgt = as_group(right_hom.domain)
        right = [X.right[H.index(right_hom(t))] for t in tgt.elements]
    else:
        tgt = H
        right = X.right
    Z = ConcreteBiset(src, tgt, X.size, left, right)
    return tuple(decompose(Z, check=False).terms())


def restrict_along(x: BurnsideElement, left_hom: GroupHom | None = None,
                   right_hom: GroupHom | None = None) -> BurnsideElement:
    """Pull back the left action along left_hom and the right action along
    right_hom (either may be omitted). The homomorphisms map into the
    element's source and target groups respectively."""
    if left_hom is not None and left_hom.codomain != x.source:
        raise SubgroupError("left map does not land in the source group")
    if right_hom is not None and right_hom.codomain != x.target:
        raise SubgroupError("right map does not land in the target group")
    src = as_group(left_hom.domain) if left_hom is not None else x.source
    tgt = as_group(right_hom.domain) if right_hom is not None else x.target
    out: dict[BisetClass, object] = {}
    for b, c in x._terms.items():
        for b2, mult in _restrict_basis(b, left_hom, right_hom):
            cur = out.get(b2)
            add = c * mult
            out[b2] = add if cur is None else cur + add
    return BurnsideElement(src, tgt, out)


def restrict(x: BurnsideElement, S: Subgroup, T: Subgroup) -> BurnsideElement:
    """Restrict the actions to subgroups S of the source and T of the target."""
    if S.parent != x.source:
        raise SubgroupError("S is not a subgroup of the source group")
    if T.parent != x.target:
        raise SubgroupError("T is not a subgroup of the target group")
    return restrict_along(x, inclusion_hom(S), inclusion_hom(T))


@functools.lru_cache(maxsize=None)
def _opposite_basis(b: BisetClass) -> tuple[tuple[BisetClass, int], ...]:
    if not b.phi.is_injective:
        raise BisetError(
            f"{b.label()} is not bifree; opposite needs an injective phi")
    X = realize(b)
    G, H = b.source, b.target
    left = [X.right[H.inverse_index(hi)] for hi in range(H.order)]
    right = [X.left[G.inverse_index(gi)] for gi in range(G.order)]
    Z = ConcreteBiset(H, G, X.size, left, right)
    return tuple(decompose(Z, check=False).terms())


def opposite(x: BurnsideElement) -> BurnsideElement:
    """Swap the two actions of a bifree element: an (H,G)-element results.
    Every class in the support must have injective phi."""
    out: dict[BisetClass, object] = {}
    for b, c in x._terms.items():
        for b2, mult in _opposite_basis(b):
            cur = out.get(b2)
            add = c * mult
            out[b2] = add if cur is None else cur + add
    return BurnsideElement(x.target, x.source, out)


TRIVIAL = trivial_group()


def augment(x: BurnsideElement) -> BurnsideElement:
    """Quotient by the free right action: [K, phi] maps to the left G-set
    G/K, an element over (G, trivial). The kernel of this map consists of
    the elements with augment(x) = 0."""
    G = x.source
    out: dict[BisetClass, object] = {}
    for b, c in x._terms.items():
        b2 = _canonical_pair(G, TRIVIAL, b.K,
                             tuple(TRIVIAL.identity for _ in b.K.elements))
        cur = out.get(b2)
        out[b2] = c if cur is None else cur + c
    return BurnsideElement(G, TRIVIAL, out)


def in_kernel(x: BurnsideElement) -> bool:
    return augment(x).is_zero


def semichar_embed(a: BurnsideElement) -> BurnsideElement:
    """Embed the Burnside ring into the (G,G) module: G/K maps to the
    biset G x_K G, the class [K, inclusion]."""
    if a.target != TRIVIAL:
        raise BisetError("semichar_embed expects an element over (G, trivial)")
    G = a.source
    out: dict[BisetClass, object] = {}
    for b, c in a._terms.items():
        b2 = _canonical_pair(G, G, b.K, b.K.elements)
        cur = out.get(b2)
        out[b2] = c if cur is None else cur + c
    return BurnsideElement(G, G, out)


def burnside_ring_class(G: PermGroup, K: Subgroup) -> BisetClass:
    """The class of the G-set G/K in the Burnside ring A(G)."""
    return _canonical_pair(G, TRIVIAL, K,
                           tuple(TRIVIAL.identity for _ in K.elements))


def burnside_ring_element(G: PermGroup, terms) -> BurnsideElement:
    return BurnsideElement(G, TRIVIAL, {
        burnside_ring_class(G, K): c for K, c in terms})


@functools.lru_cache(maxsize=None)
def _cosets(G: PermGroup, K: Subgroup) -> tuple[tuple[Perm, ...], dict]:
    """Left cosets gK: representatives (minimal member) and element -> coset
    index lookup."""
    lookup: dict[Perm, int] = {}
    reps = []
    for g in G.elements:
        if g in lookup:
            continue
        cid = len(reps)
        reps.append(g)
        for k in K.elements:
            lookup[p_mul(g, k)] = cid
    return tuple(reps), lookup


@functools.lru_cache(maxsize=None)
def _fixed_points(G: PermGroup, L: Subgroup, K: Subgroup) -> int:
    """Number of L-fixed cosets in G/K, i.e. cosets gK with g^-1 L g <= K."""
    reps, _ = _cosets(G, K)
    gens = L.generators()
    count = 0
    for g in reps:
        gi = p_inv(g)
        if all(p_mul(p_mul(gi, s), g) in K for s in gens):
            count += 1
    return count


def marks(a: BurnsideElement):
    """The vector of fixed-point counts of a virtual G-set, indexed by the
    subgroup classes of G in their canonical order. Multiplication in the
    Burnside ring is pointwise on these vectors, which makes them the
    independent oracle for ring products."""
    if a.target != TRIVIAL:
        raise BisetError("marks expects an element over (G, trivial)")
    G = a.source
    classes = subgroups_up_to_conjugacy(G)
    out = []
    for L in classes:
        total = 0
        for b, c in a._terms.items():
            total = total + c * _fixed_points(G, L, b.K)
        out.append(total)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _ring_product_classes(G: PermGroup, K: Subgroup, L: Subgroup) \
        -> tuple[tuple[BisetClass, int], ...]:
    """Orbit decomposition of the G-set G/K x G/L with diagonal action."""
    repsK, lookK = _cosets(G, K)
    repsL, lookL = _cosets(G, L)
    gens = [G.elements[i] for i in G.generator_indices()]
    orbit: dict[tuple[int, int], int] = {}
    terms: dict[BisetClass, int] = {}
    n_orbits = 0
    for i in range(len(repsK)):
        for j in range(len(repsL)):
            if (i, j) in orbit:
                continue
            stack = [(i, j)]
            orbit[(i, j)] = n_orbits
            members = [(i, j)]
            while stack:
                a, bq = stack.pop()
                ra, rb = repsK[a], repsL[bq]
                for g in gens:
                    nxt = (lookK[p_mul(g, ra)], lookL[p_mul(g, rb)])
                    if nxt not in orbit:
                        orbit[nxt] = n_orbits
                        members.append(nxt)
                        stack.append(nxt)
            n_orbits += 1
            ra, rb = repsK[i], repsL[j]
            stab = [g for g in G.elements
                    if lookK[p_mul(g, ra)] == i and lookL[p_mul(g, rb)] == j]
            assert len(members) * len(stab) == G.order
            b2 = burnside_ring_class(G, Subgroup(G, stab, _checked=True))
            terms[b2] = terms.get(b2, 0) + 1
    return tuple(sorted(terms.items(), key=lambda kv: kv[0].sort_key))


def ring_product(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Product in the Burnside ring A(G): the cartesian product of G-sets
    with the diagonal action, decomposed into orbits."""
    if a.target != TRIVIAL or b.target != TRIVIAL:
        raise BisetError("ring_product expects elements over (G, trivial)")
    if a.source != b.source:
        raise BisetError("ring_product needs a common group")
    G = a.source
    out: dict[BisetClass, object] = {}
    for b1, c1 in a._terms.items():
        for b2, c2 in b._terms.items():
            c = c1 * c2
            for bc, mult in _ring_product_classes(G, b1.K, b2.K):
                cur = out.get(bc)
                add = c * mult
                out[bc] = add if cur is None else cur + add
    return BurnsideElement(G, TRIVIAL, out)


# ---------------------------------------------------------------------------
# augmentation-ideal powers and lattice membership

def augmentation_ideal_generators(G: PermGroup) -> tuple[BurnsideElement, ...]:
    """The integral basis [G/K] - |G/K| [G/G] of the augmentation ideal,
    one generator per proper subgroup class."""
    full_class = burnside_ring_class(G, G.full_subgroup())
    out = []
    for K in subgroups_up_to_conjugacy(G):
        if K.order == G.order:
            continue
        cls = burnside_ring_class(G, K)
        out.append(BurnsideElement(G, TRIVIAL, {
            cls: 1, full_class: -(G.order // K.order)}))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _ideal_power_products(G: PermGroup, m: int) -> tuple[BurnsideElement, ...]:
    """All m-fold products of augmentation ideal generators, deduplicated."""
    gens = augmentation_ideal_generators(G)
    ring_classes = [burnside_ring_class(G, K)
                    for K in subgroups_up_to_conjugacy(G)]

    def key(x: BurnsideElement):
        return tuple(x.coefficient(c) for c in ring_classes)

    current = {key(g): g for g in gens}
    for _ in range(m - 1):
        nxt: dict[tuple, BurnsideElement] = {}
        for x in current.values():
            for g in gens:
                prod = ring_product(x, g)
                nxt.setdefault(key(prod), prod)
        current = nxt
    return tuple(current.values())


def _vector(x: BurnsideElement, basis_list) -> list[int]:
    return [x.coefficient(b) for b in basis_list]


def kernel_basis_elements(G: PermGroup, H: PermGroup) -> tuple[BurnsideElement, ...]:
    """An integral basis of the kernel of augmentation inside the (G,H)
    module: differences of classes sharing the same subgroup K."""
    by_k: dict[Subgroup, list[BisetClass]] = {}
    for b in basis(G, H):
        by_k.setdefault(b.K, []).append(b)
    out = []
    for group in by_k.values():
        base = group[0]
        for other in group[1:]:
            out.append(BurnsideElement(G, H, {other: 1, base: -1}))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _ideal_power_lattice(G: PermGroup, H: PermGroup, m: int,
                         kernel_only: bool, scale: int) -> IntegerLattice:
    basis_list = basis(G, H)
    lat = IntegerLattice(len(basis_list))
    if kernel_only:
        module_gens = kernel_basis_elements(G, H)
    else:
        module_gens = tuple(single(b) for b in basis_list)
    for q in _ideal_power_products(G, m):
        acting = semichar_embed(q)
        for y in module_gens:
            vec = _vector(compose(acting, y), basis_list)
            lat.add_vector([scale * v for v in vec])
    return lat


def ideal_power_membership(x: BurnsideElement, m: int, *,
                           restrict_to_kernel: bool = False,
                           scale: int = 1) -> bool:
    """Decide by exact lattice reduction whether x lies in
    scale * I_G^m * M, where I_G is the augmentation ideal acting through
    the semicharacteristic embedding and M is the full (G,H) module or its
    augmentation kernel."""
    if x.is_padic:
        raise ScalarMismatchError("membership requires integer coefficients")
    if m < 1:
        raise ValueError("the ideal power must be at least 1")
    G, H = x.source, x.target
    if restrict_to_kernel and not in_kernel(x):
        return False
    lat = _ideal_power_lattice(G, H, m, restrict_to_kernel, scale)
    return _vector(x, basis(G, H)) in lat


__all__ = [
    "BisetClass", "BurnsideElement", "ConcreteBiset",
    "basis", "canonical_class", "realize", "decompose", "compose", "power",
    "restrict", "restrict_along", "opposite", "augment", "in_kernel",
    "semichar_embed", "marks", "ring_product", "ideal_power_membership",
    "identity_element", "identity_class", "element", "zero", "single",
    "cardinality", "burnside_ring_class", "burnside_ring_element",
    "augmentation_ideal_generators", "kernel_basis_elements", "TRIVIAL",
]
