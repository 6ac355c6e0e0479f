"""Finite permutation groups: parsing, element enumeration, subgroup and
conjugacy machinery, Sylow subgroups, double cosets, and homomorphism
enumeration.

Everything is deterministic: elements are ordered lexicographically by image
tuple, subgroup class representatives minimize their sorted element tuple,
and all enumeration sweeps follow those orders.
"""

from __future__ import annotations

import functools
import itertools
import re

from .errors import (CapExceededError, GroupParseError, HomomorphismError,
                     SubgroupError)
from .perms import (Perm, cycle_string, identity_perm, is_permutation,
                    p_conj, p_inv, p_mul, p_order, p_pow, parse_cycles)

CLOSURE_CAP = 100_000
ENUM_CAP = 200


def mulclose(gens, degree: int, cap: int) -> set[Perm]:
    """Close a set of permutations under products."""
    e = identity_perm(degree)
    els = {e}
    els.update(gens)
    frontier = [g for g in els if g != e]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = p_mul(a, g)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if len(els) > cap:
                        raise CapExceededError(
                            f"group closure exceeded cap {cap}")
        frontier = new
    return els


class PermGroup:
    """A finite group of permutations with fully enumerated elements.

    Two PermGroups are equal when they have the same degree and the same
    element set; the label and generating set are presentation data only.
    """

    __slots__ = ("degree", "generators", "elements", "label",
                 "_index", "_inv_idx", "_gen_idx", "_hash",
                 "_left_words", "_right_words")

    def __init__(self, degree: int, generators, label: str = "?", *,
                 cap: int | None = None, _elements=None):
        self.degree = degree
        gens = tuple(tuple(g) for g in generators)
        for g in gens:
            if len(g) != degree or not is_permutation(g):
                raise GroupParseError(
                    f"{g} is not a permutation of degree {degree}")
        self.generators = gens
        if _elements is not None:
            self.elements = tuple(sorted(_elements))
        else:
            self.elements = tuple(sorted(
                mulclose(gens, degree, cap if cap is not None else CLOSURE_CAP)))
        self.label = label
        self._index = {p: i for i, p in enumerate(self.elements)}
        self._inv_idx = tuple(self._index[p_inv(p)] for p in self.elements)
        self._gen_idx = tuple(self._index[g] for g in dict.fromkeys(gens))
        self._hash = hash((degree, self.elements))
        self._left_words = None
        self._right_words = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def index(self, p: Perm) -> int:
        return self._index[p]

    def __contains__(self, p) -> bool:
        return p in self._index

    def inverse_index(self, i: int) -> int:
        return self._inv_idx[i]

    def generator_indices(self) -> tuple[int, ...]:
        return self._gen_idx

    def bfs_words(self, side: str) -> tuple[tuple[int, int, int], ...]:
        """Factorizations element = gen*prefix ("left") or prefix*gen
        ("right"), listed so that each prefix appears before its products.
        Entries are (element_index, generator_index, prefix_index)."""
        attr = "_left_words" if side == "left" else "_right_words"
        cached = getattr(self, attr)
        if cached is not None:
            return cached
        e_idx = self._index[self.identity]
        reached = {e_idx}
        frontier = [e_idx]
        out = []
        while frontier:
            new = []
            for pi in frontier:
                prefix = self.elements[pi]
                for gi in self._gen_idx:
                    g = self.elements[gi]
                    prod = p_mul(g, prefix) if side == "left" else p_mul(prefix, g)
                    qi = self._index[prod]
                    if qi not in reached:
                        reached.add(qi)
                        out.append((qi, gi, pi))
                        new.append(qi)
            frontier = new
        result = tuple(out)
        setattr(self, attr, result)
        return result

    def subgroup(self, elements, *, _checked: bool = False) -> "Subgroup":
        return Subgroup(self, elements, _checked=_checked)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, self.elements, _checked=True)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PermGroup({self.label!r}, order={self.order})"


class Subgroup:
    """A subgroup of a PermGroup, stored as its sorted element tuple.

    The sorted element tuple doubles as the canonical key used everywhere to
    pick deterministic conjugacy-class representatives.
    """

    __slots__ = ("parent", "elements", "_set", "_hash")

    def __init__(self, parent: PermGroup, elements, *, _checked: bool = False):
        self.parent = parent
        els = tuple(sorted(set(tuple(x) for x in elements)))
        self.elements = els
        self._set = frozenset(els)
        self._hash = hash((parent, els))
        if not _checked:
            if parent.identity not in self._set:
                raise SubgroupError("missing identity element")
            for x in els:
                if x not in parent:
                    raise SubgroupError(f"{x} is not in the parent group")
                if p_inv(x) not in self._set:
                    raise SubgroupError(f"inverse of {x} missing")
            for x in els:
                for y in els:
                    if p_mul(x, y) not in self._set:
                        raise SubgroupError("element set not closed under products")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def canonical_key(self) -> tuple[Perm, ...]:
        return self.elements

    def __contains__(self, p) -> bool:
        return p in self._set

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other._set <= self._set

    def generators(self) -> tuple[Perm, ...]:
        """A greedy irredundant generating set, deterministic."""
        gens: list[Perm] = []
        closure = {self.parent.identity}
        for x in self.elements:
            if x not in closure:
                gens.append(x)
                closure = mulclose(gens, self.parent.degree, len(self.elements))
                if len(closure) == len(self.elements):
                    break
        return tuple(gens)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.elements == other.elements

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.label})"


@functools.lru_cache(maxsize=None)
def as_group(sub: Subgroup) -> PermGroup:
    """View a subgroup as a PermGroup in the same permutation universe."""
    gens = sub.generators()
    if gens:
        body = ", ".join(cycle_string(g) for g in gens)
    else:
        body = "()"
    label = f"perm {sub.parent.degree}: {body}"
    return PermGroup(sub.parent.degree, gens, label, _elements=sub.elements)


class GroupHom:
    """A group homomorphism from a Subgroup into a PermGroup, stored as the
    image tuple aligned with the sorted domain elements. Multiplicativity is
    checked exhaustively at construction."""

    __slots__ = ("domain", "codomain", "images", "_map", "_hash")

    def __init__(self, domain: Subgroup, codomain: PermGroup, mapping):
        self.domain = domain
        self.codomain = codomain
        if isinstance(mapping, dict):
            try:
                images = tuple(mapping[x] for x in domain.elements)
            except KeyError as exc:
                raise HomomorphismError(f"map not total: missing {exc}") from exc
        else:
            images = tuple(mapping)
            if len(images) != domain.order:
                raise HomomorphismError("image tuple has wrong length")
        for y in images:
            if y not in codomain:
                raise HomomorphismError(f"image {y} is not in the codomain")
        self.images = images
        self._map = dict(zip(domain.elements, images))
        for a in domain.elements:
            fa = self._map[a]
            for b in domain.elements:
                if self._map[p_mul(a, b)] != p_mul(fa, self._map[b]):
                    raise HomomorphismError(
                        f"not multiplicative at {a}, {b}")
        self._hash = hash((domain, codomain, images))

    def __call__(self, x: Perm) -> Perm:
        return self._map[x]

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == self.domain.order

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.codomain, set(self.images), _checked=True)

    def generator_pairs(self) -> tuple[tuple[Perm, Perm], ...]:
        return tuple((g, self._map[g]) for g in self.domain.generators())

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.images == other.images)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        pairs = ", ".join(f"{cycle_string(a)}->{cycle_string(b)}"
                          for a, b in self.generator_pairs())
        return f"GroupHom({pairs or 'trivial'})"


def inclusion_hom(sub: Subgroup, codomain: PermGroup | None = None) -> GroupHom:
    codomain = codomain if codomain is not None else sub.parent
    return GroupHom(sub, codomain, dict(zip(sub.elements, sub.elements)))


def trivial_hom(sub: Subgroup, codomain: PermGroup) -> GroupHom:
    e = codomain.identity
    return GroupHom(sub, codomain, {x: e for x in sub.elements})


# ---------------------------------------------------------------------------
# parsing

_ATOM_RE = re.compile(r"^([CSDA])(\d+)$")
_PERM_RE = re.compile(r"^perm\s+(\d+)\s*:\s*(.*)$", re.S)


def _cyclic(n: int) -> list[Perm]:
    if n == 1:
        return []
    return [tuple((i + 1) % n for i in range(n))]


def _symmetric(n: int) -> list[Perm]:
    if n <= 1:
        return []
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return gens


def _alternating(n: int) -> list[Perm]:
    if n <= 2:
        return []
    gens = []
    for i in range(n - 2):
        images = list(range(n))
        images[i], images[i + 1], images[i + 2] = images[i + 1], images[i + 2], images[i]
        gens.append(tuple(images))
    return gens


def _dihedral(order: int) -> tuple[int, list[Perm]]:
    """Dihedral group of the given even order; returns (degree, gens)."""
    n = order // 2
    if n == 1:
        return 2, [(1, 0)]
    if n == 2:
        return 4, [(1, 0, 2, 3), (0, 1, 3, 2)]
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return n, [rot, ref]


def _quaternion() -> list[Perm]:
    # unit quaternions 1, i, -1, -i, j, k, -j, -k under left multiplication
    i = (1, 2, 3, 0, 5, 6, 7, 4)
    j = (4, 7, 6, 5, 2, 1, 0, 3)
    return [i, j]


def _parse_atom(token: str) -> tuple[int, list[Perm]]:
    if token == "Q8":
        return 8, _quaternion()
    m = _ATOM_RE.match(token)
    if not m:
        raise GroupParseError(f"unrecognized group token {token!r}")
    family, n = m.group(1), int(m.group(2))
    if n < 1:
        raise GroupParseError(f"bad index in {token!r}")
    if family == "C":
        return max(n, 1), _cyclic(n)
    if family == "S":
        return max(n, 1), _symmetric(n)
    if family == "A":
        return max(n, 1), _alternating(n)
    if family == "D":
        if n % 2 != 0 or n < 2:
            raise GroupParseError(
                f"dihedral token {token!r} must carry an even order >= 2")
        return _dihedral(n)
    raise GroupParseError(f"unrecognized group token {token!r}")


@functools.lru_cache(maxsize=None)
def parse_group(spec: str, *, cap: int | None = None) -> PermGroup:
    """Build a group from a spec string.

    Grammar: named families C<n>, D<2n>, S<n>, A<n>, Q8, products joined
    with 'x' (e.g. C2xC2), or the explicit form
    'perm <degree>: <cycles>, <cycles>, ...' with 1-based disjoint cycles.
    """
    text = spec.strip()
    if not text:
        raise GroupParseError("empty group spec")
    m = _PERM_RE.match(text)
    if m:
        degree = int(m.group(1))
        if degree < 1:
            raise GroupParseError("degree must be positive")
        body = m.group(2).strip()
        gens = []
        if body:
            for part in body.split(","):
                gens.append(parse_cycles(part, degree))
        label = f"perm {degree}: " + (", ".join(cycle_string(g) for g in gens)
                                      if gens else "()")
        return PermGroup(degree, gens, label, cap=cap)
    degree = 0
    gens: list[Perm] = []
    tokens = [t.strip() for t in text.split("x")]
    for token in tokens:
        d, part_gens = _parse_atom(token)
        gens = [g + tuple(range(len(g), len(g) + d)) for g in gens]
        pad = tuple(range(degree))
        gens.extend(pad + tuple(degree + i for i in g) for g in part_gens)
        degree += d
    label = "x".join(tokens)
    return PermGroup(degree, gens, label, cap=cap)


def trivial_group() -> PermGroup:
    return parse_group("C1")


# ---------------------------------------------------------------------------
# subgroup machinery

@functools.lru_cache(maxsize=None)
def all_subgroups(G: PermGroup) -> tuple[Subgroup, ...]:
    """Every subgroup of G, built bottom-up by one-element extensions."""
    if G.order > ENUM_CAP:
        raise CapExceededError(
            f"|G| = {G.order} exceeds the enumeration cap {ENUM_CAP}")
    e = G.identity
    trivial = frozenset([e])
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        new = []
        for hset in frontier:
            for g in G.elements:
                if g in hset:
                    continue
                closed = frozenset(
                    mulclose(list(hset) + [g], G.degree, G.order))
                if closed not in seen:
                    seen.add(closed)
                    new.append(closed)
        frontier = new
    subs = [Subgroup(G, s, _checked=True) for s in seen]
    subs.sort(key=lambda s: (s.order, s.elements))
    return tuple(subs)


def conjugate_subgroup(g: Perm, H: Subgroup) -> Subgroup:
    gi = p_inv(g)
    return Subgroup(H.parent, (p_mul(p_mul(g, x), gi) for x in H.elements),
                    _checked=True)


@functools.lru_cache(maxsize=None)
def class_rep_and_conjugator(G: PermGroup, H: Subgroup) -> tuple[Subgroup, Perm]:
    """The canonical representative of H's conjugacy class together with a
    group element g such that g H g^-1 is that representative."""
    best = None
    best_g = None
    for g in G.elements:
        gi = p_inv(g)
        conj = tuple(sorted(p_mul(p_mul(g, x), gi) for x in H.elements))
        if best is None or conj < best:
            best, best_g = conj, g
    return Subgroup(G, best, _checked=True), best_g


@functools.lru_cache(maxsize=None)
def subgroups_up_to_conjugacy(G: PermGroup) -> tuple[Subgroup, ...]:
    """One canonical representative per conjugacy class of subgroups,
    sorted by (order, canonical_key)."""
    reps = []
    claimed: set[Subgroup] = set()
    for H in all_subgroups(G):
        if H in claimed:
            continue
        reps.append(H)
        for g in G.elements:
            claimed.add(conjugate_subgroup(g, H))
    return tuple(reps)


@functools.lru_cache(maxsize=None)
def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    gens = H.generators()
    members = [g for g in G.elements
               if all(p_conj(g, x) in H for x in gens)]
    return Subgroup(G, members, _checked=True)


def _p_part(order: int, p: int) -> int:
    q = 1
    while order % (q * p) == 0:
        q *= p
    return q


@functools.lru_cache(maxsize=None)
def sylow(G: PermGroup, p: int) -> Subgroup:
    """The Sylow p-subgroup with minimal canonical key; trivial if p does
    not divide |G|."""
    from .padic import is_prime
    if not is_prime(p):
        raise GroupParseError(f"{p} is not prime")
    target = _p_part(G.order, p)
    P = G.subgroup([G.identity], _checked=True)
    while P.order < target:
        N = normalizer(G, P)
        for g in N.elements:
            if g not in P and p_pow(g, p) in P:
                P = Subgroup(G, mulclose(list(P.elements) + [g],
                                         G.degree, G.order), _checked=True)
                break
        else:
            raise AssertionError("Sylow growth step failed")
    rep, _ = class_rep_and_conjugator(G, P)
    return rep


def conjugating_element(G: PermGroup, A: Subgroup, B: Subgroup) -> Perm | None:
    """The first g in element order with g A g^-1 = B, or None."""
    if A.parent != G or B.parent != G:
        raise SubgroupError("arguments must be subgroups of G")
    if A.order != B.order:
        return None
    for g in G.elements:
        if conjugate_subgroup(g, A) == B:
            return g
    return None


@functools.lru_cache(maxsize=None)
def double_cosets(G: PermGroup, A: Subgroup, B: Subgroup) -> tuple[tuple[Perm, int], ...]:
    """The partition of G into A\\G/B double cosets as (representative, size)
    pairs; representatives are minimal in element order."""
    if A.parent != G or B.parent != G:
        raise SubgroupError("arguments must be subgroups of G")
    seen: set[Perm] = set()
    out = []
    for g in G.elements:
        if g in seen:
            continue
        coset = {p_mul(p_mul(a, g), b) for a in A.elements for b in B.elements}
        seen.update(coset)
        out.append((g, len(coset)))
    assert sum(size for _, size in out) == G.order
    return tuple(out)


def _order_buckets(H: PermGroup) -> dict[int, list[Perm]]:
    buckets: dict[int, list[Perm]] = {}
    for h in H.elements:
        buckets.setdefault(p_order(h), []).append(h)
    return buckets


def _propagate(domain: Subgroup, gens, images, codomain: PermGroup):
    """Extend generator images over the whole domain; None on inconsistency."""
    e_d = domain.parent.identity
    e_c = codomain.identity
    phi = {e_d: e_c}
    frontier = [e_d]
    while frontier:
        new = []
        for x in frontier:
            fx = phi[x]
            for g, h in zip(gens, images):
                y = p_mul(x, g)
                fy = p_mul(fx, h)
                known = phi.get(y)
                if known is None:
                    phi[y] = fy
                    new.append(y)
                elif known != fy:
                    return None
        frontier = new
    return phi


@functools.lru_cache(maxsize=None)
def homomorphisms(K: Subgroup, H: PermGroup) -> tuple[GroupHom, ...]:
    """All group homomorphisms K -> H, enumerated by generator images."""
    if K.order > ENUM_CAP or H.order > ENUM_CAP:
        raise CapExceededError("group order exceeds the enumeration cap")
    gens = K.generators()
    if not gens:
        return (trivial_hom(K, H),)
    buckets = _order_buckets(H)
    candidates = []
    for g in gens:
        n = p_order(g)
        pool = [h for d, hs in buckets.items() if n % d == 0 for h in hs]
        pool.sort()
        candidates.append(pool)
    out = []
    for images in itertools.product(*candidates):
        phi = _propagate(K, gens, images, H)
        if phi is not None:
            out.append(GroupHom(K, H, phi))
    return tuple(out)
