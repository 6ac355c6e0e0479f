"""Fusion systems induced by a finite group on a Sylow p-subgroup, and the
stable calculus built on them: stability tests, characteristic idempotents
as p-adic limits of powers of the restricted group biset, stable bases,
inversion of stable units by two independent formulas, and the functor that
sends a fusion-preserving map phi to [S, phi] composed with the target
idempotent."""

from __future__ import annotations

import functools

from .burnside import (BisetClass, BurnsideElement, basis, canonical_class,
                       cardinality, augment, compose, identity_element, power,
                       restrict, restrict_along, single)
from .errors import (ConvergenceError, FormulaMismatchError, FusionError,
                     NonUnitError, NotSemicharacteristicError,
                     ScalarMismatchError)
from .groups import (GroupHom, PermGroup, Subgroup, as_group, inclusion_hom,
                     subgroups_up_to_conjugacy, sylow)
from .padic import PadicInt, is_prime
from .perms import p_conj, p_inv, p_mul

ITERATION_GUARD = 64


class FusionSystem:
    """The fusion system on a chosen Sylow p-subgroup S of G: morphisms
    between subgroups of S are the homomorphisms induced by conjugation
    in G. Constructed through fusion_system(); morphism sets are computed
    on demand and cached."""

    __slots__ = ("ambient", "prime", "sylow", "sylow_group",
                 "_morphisms", "_to_sylow", "_hash")

    def __init__(self, ambient: PermGroup, prime: int):
        if not is_prime(prime):
            raise FusionError(f"{prime} is not prime")
        self.ambient = ambient
        self.prime = prime
        self.sylow = sylow(ambient, prime)
        self.sylow_group = as_group(self.sylow)
        self._morphisms: dict = {}
        self._to_sylow: dict = {}
        self._hash = hash((ambient, prime))

    @property
    def label(self) -> str:
        return f"F_{self.prime}({self.ambient.label})"

    def subgroup_classes(self) -> tuple[Subgroup, ...]:
        return subgroups_up_to_conjugacy(self.sylow_group)

    def _conjugation_images(self, P: Subgroup, allowed) -> list[tuple]:
        out = []
        seen = set()
        for g in self.ambient.elements:
            gi = p_inv(g)
            images = tuple(p_mul(p_mul(g, x), gi) for x in P.elements)
            if images in seen:
                continue
            if all(y in allowed for y in images):
                seen.add(images)
                out.append(images)
        return out

    def morphisms(self, P: Subgroup, Q: Subgroup) -> tuple[GroupHom, ...]:
        """All maps P -> Q of the form x -> g x g^-1 with g P g^-1 <= Q,
        deduplicated as maps."""
        key = (P, Q)
        cached = self._morphisms.get(key)
        if cached is not None:
            return cached
        if P.parent != self.sylow_group or Q.parent != self.sylow_group:
            raise FusionError("arguments must be subgroups of the Sylow group")
        Qg = as_group(Q)
        homs = tuple(GroupHom(P, Qg, dict(zip(P.elements, images)))
                     for images in sorted(self._conjugation_images(P, Q._set)))
        self._morphisms[key] = homs
        return homs

    def morphisms_to_sylow(self, P: Subgroup) -> tuple[GroupHom, ...]:
        """Morphisms P -> S with the Sylow group itself as codomain."""
        cached = self._to_sylow.get(P)
        if cached is not None:
            return cached
        allowed = frozenset(self.sylow_group.elements)
        homs = tuple(GroupHom(P, self.sylow_group, dict(zip(P.elements, images)))
                     for images in sorted(self._conjugation_images(P, allowed)))
        self._to_sylow[P] = homs
        return homs

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FusionSystem):
            return NotImplemented
        return self.ambient == other.ambient and self.prime == other.prime

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FusionSystem({self.label}, S of order {self.sylow.order})"


@functools.lru_cache(maxsize=None)
def fusion_system(G: PermGroup, p: int) -> FusionSystem:
    return FusionSystem(G, p)


def is_fusion_preserving(phi: GroupHom, F1: FusionSystem,
                         F2: FusionSystem) -> bool:
    """Whether every morphism psi: P -> S1 of F1 has a companion
    rho: phi(P) -> S2 in F2 with phi . psi = rho . phi on P."""
    S1, S2 = F1.sylow_group, F2.sylow_group
    if set(phi.domain.elements) != set(S1.elements):
        raise FusionError("the map must be defined on the whole Sylow group")
    if phi.codomain != S2:
        raise FusionError("the map must land in the target Sylow group")
    for P in subgroups_up_to_conjugacy(S1):
        imgP = Subgroup(S2, {phi(x) for x in P.elements}, _checked=True)
        candidates = F2.morphisms_to_sylow(imgP)
        for psi in F1.morphisms_to_sylow(P):
            required = {}
            consistent = True
            for x in P.elements:
                key = phi(x)
                val = phi(psi(x))
                if required.setdefault(key, val) != val:
                    consistent = False
                    break
            if not consistent:
                return False
            if not any(all(rho(y) == required[y] for y in imgP.elements)
                       for rho in candidates):
                return False
    return True


def _twisted_restrictions_equal(x: BurnsideElement, fus: FusionSystem,
                                side: str) -> bool:
    S = fus.sylow_group
    for P in subgroups_up_to_conjugacy(S):
        incl = inclusion_hom(P, S)
        morphs = fus.morphisms_to_sylow(P)
        if side == "left":
            base = restrict_along(x, left_hom=incl)
        else:
            base = restrict_along(x, right_hom=incl)
        for phi in morphs:
            if phi.images == incl.images:
                continue
            if side == "left":
                other = restrict_along(x, left_hom=phi)
            else:
                other = restrict_along(x, right_hom=phi)
            if other != base:
                return False
    return True


def is_stable(x: BurnsideElement, F1: FusionSystem, F2: FusionSystem) -> bool:
    """Elementary stability: restricting along any fusion morphism on either
    side gives the same element as restricting along the inclusion."""
    if x.source != F1.sylow_group or x.target != F2.sylow_group:
        raise FusionError("element does not live over the Sylow pair")
    if F1.prime != F2.prime:
        raise FusionError("fusion systems at different primes")
    if not x.is_zero and x.is_padic and x.prime != F1.prime:
        raise ScalarMismatchError(
            f"element prime {x.prime} differs from fusion prime {F1.prime}")
    return (_twisted_restrictions_equal(x, F1, "left")
            and _twisted_restrictions_equal(x, F2, "right"))


class StableElement:
    """An element of the stable (fusion-invariant) part of the p-complete
    Burnside module over a Sylow pair. Stability is verified at
    construction at the stored precision."""

    __slots__ = ("underlying", "left_fusion", "right_fusion")

    def __init__(self, underlying: BurnsideElement, left_fusion: FusionSystem,
                 right_fusion: FusionSystem):
        if not underlying.is_zero and not underlying.is_padic:
            raise ScalarMismatchError("stable elements carry p-adic scalars")
        if not is_stable(underlying, left_fusion, right_fusion):
            raise FusionError("element is not stable for the given fusion systems")
        self.underlying = underlying
        self.left_fusion = left_fusion
        self.right_fusion = right_fusion

    @property
    def prime(self) -> int:
        return self.left_fusion.prime

    @property
    def precision(self):
        return self.underlying.precision

    def __eq__(self, other):
        if not isinstance(other, StableElement):
            return NotImplemented
        return (self.left_fusion == other.left_fusion
                and self.right_fusion == other.right_fusion
                and self.underlying == other.underlying)

    def __str__(self):
        return str(self.underlying)

    def __repr__(self):
        return (f"StableElement({self.left_fusion.label} -> "
                f"{self.right_fusion.label}: {self.underlying})")


@functools.lru_cache(maxsize=None)
def characteristic_idempotent(F: FusionSystem, k: int) -> StableElement:
    """The unit of the stable endomorphism ring, computed as the p-adic
    stabilization of Y -> Y^p starting from the (p-1)-st power of the group
    biset restricted to the Sylow subgroup."""
    if k < 1:
        raise ScalarMismatchError("precision must be at least 1")
    p = F.prime
    X = restrict(identity_element(F.ambient), F.sylow, F.sylow).lift(p, k)
    Y = power(X, p - 1) if p > 2 else X
    for _ in range(ITERATION_GUARD):
        Z = power(Y, p)
        if Z == Y:
            omega = StableElement(Z, F, F)
            if compose(Z, Z) != Z:
                raise FormulaMismatchError(
                    "stabilized power is not idempotent")
            return omega
        Y = Z
    raise ConvergenceError(
        f"no stabilization within {ITERATION_GUARD} powerings for {F.label}")


def stabilize(x: BurnsideElement, F1: FusionSystem, F2: FusionSystem,
              k: int) -> StableElement:
    """Project onto the stable part: compose with the characteristic
    idempotents on both sides."""
    w1 = characteristic_idempotent(F1, k).underlying
    w2 = characteristic_idempotent(F2, k).underlying
    out = compose(compose(w1, x.lift(F1.prime, k)), w2)
    return StableElement(out, F1, F2)


@functools.lru_cache(maxsize=None)
def stable_pair_classes(F1: FusionSystem, F2: FusionSystem) \
        -> tuple[tuple[BisetClass, ...], ...]:
    """Partition of the ordinary basis classes over the Sylow pair into
    fusion-conjugacy classes, by a brute-force merge: (K, phi) is identified
    with (a(K), b . phi . a^-1) for fusion isomorphisms a of the source and
    b of the target."""
    S1, S2 = F1.sylow_group, F2.sylow_group
    ordinary = basis(S1, S2)
    index = {b: i for i, b in enumerate(ordinary)}
    parent = list(range(len(ordinary)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for b in ordinary:
        K, phi = b.K, b.phi
        i = index[b]
        imgK = Subgroup(S2, set(phi.images), _checked=True)
        betas = F2.morphisms_to_sylow(imgK)
        for alpha in F1.morphisms_to_sylow(K):
            newK = Subgroup(S1, set(alpha.images), _checked=True)
            inv_alpha = {alpha(x): x for x in K.elements}
            for beta in betas:
                mapped = {y: beta(phi(inv_alpha[y])) for y in newK.elements}
                b2 = canonical_class(S1, S2, newK, mapped)
                union(i, index[b2])
    groups: dict[int, list[BisetClass]] = {}
    for b, i in index.items():
        groups.setdefault(find(i), []).append(b)
    out = []
    for root in sorted(groups):
        members = sorted(groups[root], key=lambda b: b.sort_key)
        out.append(tuple(members))
    out.sort(key=lambda grp: grp[0].sort_key)
    return tuple(out)


def stable_basis(F1: FusionSystem, F2: FusionSystem, k: int) \
        -> tuple[StableElement, ...]:
    """One stable basis element per fusion-conjugacy class of pairs:
    the class representative composed with the idempotents on both sides."""
    w1 = characteristic_idempotent(F1, k).underlying
    w2 = characteristic_idempotent(F2, k).underlying
    out = []
    for group in stable_pair_classes(F1, F2):
        rep = group[0]
        val = compose(compose(w1, single(rep).lift(F1.prime, k)), w2)
        out.append(StableElement(val, F1, F2))
    return tuple(out)


def _solve_unit_pivot(columns: list[list[int]], target: list[int],
                      p: int, k: int) -> list[int] | None:
    """Solve sum_j c_j columns[j] = target over Z/p^k by elimination with
    unit pivots. Returns the coefficient list, or None if inconsistent.
    Requires the columns to be independent mod p, which holds for stable
    basis columns (the stable module is a direct summand)."""
    mod = p ** k
    ncols = len(columns)
    nrows = len(target)
    a = [[columns[j][i] % mod for j in range(ncols)] + [target[i] % mod]
         for i in range(nrows)]
    pivot_row_of_col: dict[int, int] = {}
    used_rows: set[int] = set()
    for j in range(ncols):
        pivot = next((i for i in range(nrows)
                      if i not in used_rows and a[i][j] % p != 0), None)
        if pivot is None:
            raise FormulaMismatchError(
                "stable basis columns are not independent mod p")
        inv = pow(a[pivot][j], -1, mod)
        a[pivot] = [(v * inv) % mod for v in a[pivot]]
        for i in range(nrows):
            if i != pivot and a[i][j]:
                f = a[i][j]
                a[i] = [(v - f * w) % mod for v, w in zip(a[i], a[pivot])]
        used_rows.add(pivot)
        pivot_row_of_col[j] = pivot
    for i in range(nrows):
        if i not in used_rows and a[i][ncols] % mod != 0:
            return None
    return [a[pivot_row_of_col[j]][ncols] for j in range(ncols)]


def stable_coordinates(x: StableElement, k: int | None = None) \
        -> list[tuple[tuple[BisetClass, ...], PadicInt]]:
    """Coordinates of a stable element in the stable basis, as pairs
    (fusion class of (K, phi), coefficient)."""
    F1, F2 = x.left_fusion, x.right_fusion
    p = F1.prime
    k = k if k is not None else x.underlying.precision
    if k is None:
        raise ScalarMismatchError("a precision is required for zero elements")
    sb = stable_basis(F1, F2, k)
    classes = stable_pair_classes(F1, F2)
    ordinary = basis(F1.sylow_group, F2.sylow_group)

    def residues(elt: BurnsideElement) -> list[int]:
        out = []
        for b in ordinary:
            c = elt.coefficient(b)
            out.append(c.reduce_to(k).residue if isinstance(c, PadicInt) else c)
        return out

    columns = [residues(s.underlying) for s in sb]
    target = residues(x.underlying.reduce_to(k) if x.underlying.is_padic
                      else x.underlying)
    sol = _solve_unit_pivot(columns, target, p, k)
    if sol is None:
        raise FusionError("stable element failed to solve in the stable basis")
    return [(cls, PadicInt(p, k, c)) for cls, c in zip(classes, sol)]


@functools.lru_cache(maxsize=None)
def _semichar_classes(F1: FusionSystem, F2: FusionSystem) -> frozenset:
    """The fusion pair classes that contain an inclusion-type pair [K, i_K];
    only defined for F1 == F2."""
    S = F1.sylow_group
    incl = set()
    for K in subgroups_up_to_conjugacy(S):
        incl.add(canonical_class(S, S, K, dict(zip(K.elements, K.elements))))
    return frozenset(grp for grp in stable_pair_classes(F1, F2)
                     if any(b in incl for b in grp))


def is_unit_semichar(x: StableElement) -> bool:
    """For a semicharacteristic stable element over one fusion system:
    whether the cardinality of its underlying virtual left S-set is a unit
    mod p. Raises if the element is supported outside the
    semicharacteristic stable classes."""
    F1, F2 = x.left_fusion, x.right_fusion
    if F1 != F2:
        raise FusionError("semicharacteristic elements need equal fusion systems")
    if x.underlying.is_zero:
        return False
    semichar = _semichar_classes(F1, F2)
    for cls, coeff in stable_coordinates(x):
        if cls not in semichar and not coeff.is_zero:
            raise NotSemicharacteristicError(
                f"support on non-inclusion class {cls[0].label()}")
    total = cardinality(augment(x.underlying))
    if isinstance(total, int):
        return total % x.prime != 0
    return total.is_unit


def invert_stable(x: StableElement, k: int) -> StableElement:
    """Invert a semicharacteristic stable unit by two routes that must agree:
    the geometric series x^(p-2) sum_i (1 - x^(p-1))^i and the limit of
    x^((p-1)p^n - 1). The inverse is two-sided against the characteristic
    idempotent."""
    if not is_unit_semichar(x):
        raise NonUnitError("cardinality is divisible by p; not invertible")
    F = x.left_fusion
    p = F.prime
    omega = characteristic_idempotent(F, k).underlying
    u = x.underlying.lift(p, k) if not x.underlying.is_padic \
        else x.underlying.reduce_to(k)
    if u.precision != k:
        raise ScalarMismatchError(
            f"element precision {u.precision} does not match requested {k}")
    xp1 = power(u, p - 1) if p > 1 else u
    head = power(u, p - 2) if p > 2 else omega
    # series route
    d = omega - xp1
    term = omega
    total = omega
    for _ in range(ITERATION_GUARD):
        term = compose(term, d)
        if term.is_zero:
            break
        total = total + term
    else:
        raise ConvergenceError("series tail did not vanish within the guard")
    series = compose(head, total)
    # limit route: z_0 = x^(p-2), z_{n+1} = z_n^p . x^(p-1)
    z = head
    for _ in range(ITERATION_GUARD):
        nxt = compose(power(z, p), xp1)
        if nxt == z:
            break
        z = nxt
    else:
        raise ConvergenceError("limit iteration did not stabilize")
    if series != z:
        raise FormulaMismatchError(
            "series and limit formulas disagree at the stated precision")
    if compose(u, series) != omega or compose(series, u) != omega:
        raise FormulaMismatchError("computed inverse fails the unit property")
    return StableElement(series, F, F)


def a_fus(phi: GroupHom, F1: FusionSystem, F2: FusionSystem,
          k: int) -> StableElement:
    """The stable class [S1, phi] of a fusion-preserving map, realized as
    [S1, phi] composed with the right idempotent; composing the left
    idempotent as well must not change the value."""
    if not is_fusion_preserving(phi, F1, F2):
        raise FusionError("the map is not fusion preserving")
    S1, S2 = F1.sylow_group, F2.sylow_group
    p = F1.prime
    cls = canonical_class(S1, S2, S1.full_subgroup(),
                          dict(zip(phi.domain.elements, phi.images)))
    base = single(cls).lift(p, k)
    w2 = characteristic_idempotent(F2, k).underlying
    out = compose(base, w2)
    w1 = characteristic_idempotent(F1, k).underlying
    if compose(w1, out) != out:
        raise FormulaMismatchError(
            "left idempotent failed to absorb a fusion-preserving class")
    return StableElement(out, F1, F2)


__all__ = [
    "FusionSystem", "StableElement", "fusion_system", "is_fusion_preserving",
    "is_stable", "characteristic_idempotent", "stabilize", "stable_basis",
    "stable_pair_classes", "stable_coordinates", "is_unit_semichar",
    "invert_stable", "a_fus", "ITERATION_GUARD",
]
