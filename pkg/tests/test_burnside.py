import itertools
import random

import pytest

from burnfuse.burnside import (BisetClass, BurnsideElement, ConcreteBiset,
                               TRIVIAL, augment, augmentation_ideal_generators,
                               basis, burnside_ring_class,
                               burnside_ring_element, canonical_class,
                               cardinality, compose, decompose,
                               ideal_power_membership, identity_class,
                               identity_element, in_kernel, marks, opposite,
                               power, realize, restrict, ring_product,
                               semichar_embed, single, zero)
from burnfuse.errors import BisetError, ScalarMismatchError
from burnfuse.groups import (Subgroup, double_cosets, homomorphisms, mulclose,
                             parse_group, sylow, subgroups_up_to_conjugacy,
                             trivial_hom)
from burnfuse.padic import PadicInt
from burnfuse.perms import p_inv, p_mul

S3 = parse_group("S3")
S4 = parse_group("S4")
C2 = parse_group("C2")
C3 = parse_group("C3")
C6 = parse_group("C6")
E = parse_group("C1")


def group_as_biset(G, A, B):
    """G with left A-multiplication and right B-multiplication; built from
    raw group multiplication, independently of realize."""
    left = [[G.index(p_mul(a, g)) for g in G.elements] for a in A.elements]
    right = [[G.index(p_mul(g, b)) for g in G.elements] for b in B.elements]
    from burnfuse.groups import as_group
    return ConcreteBiset(as_group(A), as_group(B), G.order, left, right)


def brute_force_basis_count(G, H):
    """Independent count of transitive classes: enumerate all (K, phi) pairs
    and merge under simultaneous conjugation, working on raw image maps."""
    pairs = set()
    reps = []
    for K in subgroups_up_to_conjugacy(G):
        for phi in homomorphisms(K, H):
            key = (K.elements, phi.images)
            if key in pairs:
                continue
            reps.append((K, phi))
            for g in G.elements:
                gi = p_inv(g)
                kelems = tuple(sorted(p_mul(p_mul(g, x), gi)
                                      for x in K.elements))
                base = {p_mul(p_mul(g, x), gi): phi(x) for x in K.elements}
                for h in H.elements:
                    hi = p_inv(h)
                    imgs = tuple(p_mul(p_mul(h, base[x]), hi)
                                 for x in sorted(base))
                    pairs.add((kelems, imgs))
    # the orbit sweep above only visits pairs whose K is already a class
    # representative, which is exactly what the basis enumerates
    merged = set()
    for K, phi in reps:
        canon = canonical_class(G, H, K, phi)
        merged.add(canon)
    return len(merged)


@pytest.mark.parametrize("G,H,count", [
    (E, E, 1), (C2, C2, 3), (C3, C3, 4), (S3, S3, 8), (C6, C6, 12),
])
def test_basis_counts(G, H, count):
    assert len(basis(G, H)) == count
    assert len(basis(G, H)) == brute_force_basis_count(G, H)


def test_basis_c2_shape():
    labels = {(b.K.order, b.phi.is_injective) for b in basis(C2, C2)}
    assert labels == {(2, False), (2, True), (1, True)}


def test_basis_is_sorted_by_descending_k():
    for G in (C2, S3, C6):
        b = basis(G, G)
        orders = [cls.K.order for cls in b]
        assert orders == sorted(orders, reverse=True)
        # the identity class sits in the leading |K| = |G| block
        head = [cls for cls in b if cls.K.order == G.order]
        assert identity_class(G) in head
        assert list(b) == sorted(b, key=lambda c: c.sort_key)


def test_realize_sizes():
    assert realize(identity_class(S3)).size == 6
    b = basis(E, C2)[0]
    X = realize(b)
    assert X.size == 2
    X.validate()
    incl = canonical_class(C2, S3, C2.full_subgroup(),
                           {C2.identity: S3.identity, (1, 0): (0, 2, 1)})
    assert realize(incl).size == 6


def test_round_trip_small():
    for G, H in [(C2, C2), (C3, C3), (S3, S3), (C2, S3)]:
        for b in basis(G, H):
            assert decompose(realize(b)) == single(b)


def test_decompose_group_bisets():
    # independent construction from multiplication tables
    S = sylow(S3, 2)
    d = decompose(group_as_biset(S3, S, S))
    from burnfuse.groups import as_group
    Sg = as_group(S)
    assert len(d.support()) == 2
    assert d.coefficient(identity_class(Sg)) == 1
    free = [b for b in d.support() if b.K.order == 1]
    assert len(free) == 1 and d.coefficient(free[0]) == 1

    T = sylow(S3, 3)
    d3 = decompose(group_as_biset(S3, T, T))
    Tg = as_group(T)
    assert d3.coefficient(identity_class(Tg)) == 1
    twisted = [b for b in d3.support() if b != identity_class(Tg)]
    assert len(twisted) == 1
    tw = twisted[0]
    assert tw.K.order == 3 and tw.phi.is_injective
    assert tw.phi.images != tw.K.elements


def test_decompose_rejects_bad_bisets():
    # non-free right action: two points with trivial right C2-action
    left = [[0, 1], [0, 1]]
    right = [[0, 1], [0, 1]]
    X = ConcreteBiset(C2, C2, 2, left, right)
    with pytest.raises(BisetError):
        decompose(X)
    # non-commuting actions on 4 points
    swap, ident = [1, 0, 3, 2], [0, 1, 2, 3]
    other = [2, 3, 0, 1]
    bad = ConcreteBiset(C2, C2, 4,
                        [ident, [1, 2, 3, 0]],
                        [ident, other])
    with pytest.raises(BisetError):
        decompose(bad)


def test_compose_examples():
    x1 = single(basis(E, C2)[0])
    x2 = single([b for b in basis(C2, E) if b.K.order == 1][0])
    out = compose(x1, x2)
    assert out == 2 * single(basis(E, E)[0])

    aut = [b for b in basis(C3, C3)
           if b.K.order == 3 and b.phi.is_injective]
    idc = identity_class(C3)
    inv = [b for b in aut if b != idc][0]
    assert compose(single(inv), single(inv)) == single(idc)


def compose_double_coset_oracle(b1, b2):
    """Mackey-style formula for the product of two transitive classes,
    summed over double cosets of the middle group. Fully independent of
    the coequalizer routine."""
    G, H, M = b1.source, b1.target, b2.target
    K, phi = b1.K, b1.phi
    L, psi = b2.K, b2.phi
    phiK = H.subgroup(set(phi.images), _checked=True)
    out = {}
    for x, _ in double_cosets(H, phiK, L):
        xi = p_inv(x)
        members, images = [], []
        for k in K.elements:
            t = p_mul(p_mul(xi, phi(k)), x)
            if t in L:
                members.append(k)
                images.append(psi(t))
        Kx = Subgroup(G, members)
        b = canonical_class(G, M, Kx, dict(zip(Kx.elements, images)))
        out[b] = out.get(b, 0) + 1
    return BurnsideElement(G, M, out)


def test_compose_matches_double_coset_oracle():
    rng = random.Random(101)
    for G, H, M in [(S3, S3, S3), (S3, S4, S3), (C6, S3, C6), (C2, C2, C2)]:
        for _ in range(8):
            b1 = rng.choice(basis(G, H))
            b2 = rng.choice(basis(H, M))
            assert compose(single(b1), single(b2)) == \
                compose_double_coset_oracle(b1, b2)


def random_element(G, H, rng, terms=3, bound=3):
    pool = basis(G, H)
    picks = rng.sample(pool, min(terms, len(pool)))
    return BurnsideElement(G, H, {b: rng.randint(-bound, bound) for b in picks})


def test_compose_bilinear():
    rng = random.Random(102)
    for _ in range(10):
        x1 = random_element(S3, S3, rng)
        x2 = random_element(S3, S3, rng)
        y = random_element(S3, C6, rng)
        assert compose(x1 + x2, y) == compose(x1, y) + compose(x2, y)
        assert compose(y.scaled(0) + y, x := random_element(C6, C6, rng)) == \
            compose(y, x)


def test_compose_associative():
    rng = random.Random(103)
    for _ in range(15):
        x = random_element(S3, C6, rng, terms=2)
        y = random_element(C6, S3, rng, terms=2)
        z = random_element(S3, S3, rng, terms=2)
        assert compose(compose(x, y), z) == compose(x, compose(y, z))


def test_compose_group_mismatch():
    with pytest.raises(BisetError):
        compose(identity_element(S3), identity_element(C2))


def test_compose_scalar_rules():
    x = identity_element(S3)
    xp = x.lift(2, 4)
    assert compose(xp, x) == xp
    assert compose(x, xp) == xp
    with pytest.raises(ScalarMismatchError):
        compose(xp, x.lift(3, 4))
    with pytest.raises(ScalarMismatchError):
        compose(xp, x.lift(2, 5))
    assert compose(xp, x.lift(2, 4)) == xp


def test_restrict_examples():
    S, T = sylow(S3, 2), sylow(S3, 3)
    r = restrict(identity_element(S3), S, S)
    assert r == decompose(group_as_biset(S3, S, S))
    # 6 points with free right C3-action: two orbits
    x = single(basis(E, S3)[0])
    rr = restrict(x, E.full_subgroup(), T)
    from burnfuse.groups import as_group
    Tg = as_group(T)
    assert rr == 2 * single(basis(as_group(E.full_subgroup()), Tg)[0])


def test_opposite_examples():
    assert opposite(identity_element(S3)) == identity_element(S3)
    for H in (C2, S3):
        x = single(basis(E, H)[0])
        op = opposite(x)
        assert op.source == H and op.target == E
        b = op.support()[0]
        assert b.K.order == 1 and op.coefficient(b) == 1
    # transfer class of an embedded C2 in S3
    incl = canonical_class(C2, S3, C2.full_subgroup(),
                           {C2.identity: S3.identity, (1, 0): (0, 2, 1)})
    op = opposite(single(incl))
    assert cardinality(op) == 6
    b = op.support()[0]
    assert b.K.order == 2 and b.phi.is_injective


def test_opposite_involution_and_antihom():
    rng = random.Random(104)
    bifree = [b for b in basis(S3, S4) if b.phi.is_injective]
    bifree2 = [b for b in basis(S4, S3) if b.phi.is_injective]
    for _ in range(8):
        x = BurnsideElement(S3, S4, {rng.choice(bifree): rng.randint(-2, 2),
                                     rng.choice(bifree): rng.randint(-2, 2)})
        y = BurnsideElement(S4, S3, {rng.choice(bifree2): rng.randint(-2, 2)})
        assert opposite(opposite(x)) == x
        assert opposite(compose(x, y)) == compose(opposite(y), opposite(x))


def test_opposite_rejects_non_bifree():
    full = S3.full_subgroup()
    zero_cls = canonical_class(S3, S3, full, trivial_hom(full, S3))
    with pytest.raises(BisetError):
        opposite(single(zero_cls))


def test_augment_examples():
    S = sylow(S3, 2)
    x = restrict(identity_element(S3), S, S)
    a = augment(x)
    from burnfuse.groups import as_group
    Sg = as_group(S)
    # the quotient S3/C2 is a 3-point left C2-set: one fixed point and one
    # free orbit
    assert a.coefficient(burnside_ring_class(Sg, Sg.full_subgroup())) == 1
    trivial_sub = Sg.subgroup([Sg.identity])
    assert a.coefficient(burnside_ring_class(Sg, trivial_sub)) == 1
    assert cardinality(a) == 3

    # any phi maps to the same left quotient
    for b in basis(S3, S4):
        assert augment(single(b)) == burnside_ring_element(S3, [(b.K, 1)])

    full = S3.full_subgroup()
    zero_cls = canonical_class(S3, S3, full, trivial_hom(full, S3))
    om = identity_element(S3) - single(zero_cls)
    assert augment(om).is_zero
    assert in_kernel(om)


def test_augment_compose_compatible():
    rng = random.Random(105)
    for _ in range(8):
        x = random_element(S3, C6, rng, terms=2)
        y = random_element(C6, S3, rng, terms=2)
        assert augment(compose(x, y)) == compose(x, augment(y))


def test_semichar_embed():
    assert semichar_embed(burnside_ring_element(
        S3, [(S3.full_subgroup(), 1)])) == identity_element(S3)
    e_sub = C2.subgroup([C2.identity])
    emb = semichar_embed(burnside_ring_element(
        C2, [(e_sub, 1), (C2.full_subgroup(), -2)]))
    assert emb == BurnsideElement(C2, C2, {
        canonical_class(C2, C2, e_sub, {C2.identity: C2.identity}): 1,
        identity_class(C2): -2})
    # section of augmentation on the whole ring
    for G in (C2, S3, C6):
        for K in subgroups_up_to_conjugacy(G):
            a = burnside_ring_element(G, [(K, 1)])
            assert augment(semichar_embed(a)) == a


def test_marks_examples():
    assert marks(burnside_ring_element(
        S3, [(S3.full_subgroup(), 1)])) == (1, 1, 1, 1)
    e_sub = C2.subgroup([C2.identity])
    assert marks(burnside_ring_element(C2, [(e_sub, 1)])) == (2, 0)
    assert marks(burnside_ring_element(S3, [(sylow(S3, 2), 1)])) == (3, 1, 0, 0)


def test_marks_multiplicative_oracle():
    rng = random.Random(106)
    for G in (S3, C6, parse_group("D8")):
        classes = subgroups_up_to_conjugacy(G)
        for _ in range(6):
            a = burnside_ring_element(
                G, [(rng.choice(classes), rng.randint(-2, 3)) for _ in range(2)])
            b = burnside_ring_element(
                G, [(rng.choice(classes), rng.randint(-2, 3)) for _ in range(2)])
            pointwise = tuple(u * v for u, v in zip(marks(a), marks(b)))
            assert marks(ring_product(a, b)) == pointwise
            assert marks(augment(compose(semichar_embed(a),
                                         semichar_embed(b)))) == pointwise


def test_ideal_membership_examples():
    assert ideal_power_membership(zero(S3, S3), 1)
    assert ideal_power_membership(zero(S3, S3), 3)

    e_sub = C2.subgroup([C2.identity])
    y = burnside_ring_element(C2, [(e_sub, 1), (C2.full_subgroup(), -2)])
    y2 = ring_product(y, y)
    # ([C2/e] - 2)^2 = -2([C2/e] - 2) since [C2/e]^2 = 2 [C2/e]
    assert y2 == burnside_ring_element(
        C2, [(e_sub, -2), (C2.full_subgroup(), 4)])
    sq = semichar_embed(y2)
    assert ideal_power_membership(sq, 2)
    assert ideal_power_membership(sq, 1, scale=2)

    # recorded lattice result: the identity-minus-trivial idempotent is not
    # in the ideal times the module at power one
    full = S3.full_subgroup()
    zero_cls = canonical_class(S3, S3, full, trivial_hom(full, S3))
    om = identity_element(S3) - single(zero_cls)
    assert ideal_power_membership(om, 1) is False
    assert ideal_power_membership(om, 1, restrict_to_kernel=True) is False


def test_ideal_membership_kernel_flag():
    # elements outside the augmentation kernel can never lie in I * K
    assert not ideal_power_membership(identity_element(S3), 1,
                                      restrict_to_kernel=True)
    with pytest.raises(ScalarMismatchError):
        ideal_power_membership(identity_element(S3).lift(2, 3), 1)


def test_ideal_topology_lemma_substrate():
    # products of n+1 ideal generators land in p * I for |S| = p^n
    for spec, p in [("C2", 2), ("C4", 2), ("C2xC2", 2), ("C3", 3)]:
        S = parse_group(spec)
        n = 0
        o = S.order
        while o > 1:
            o //= p
            n += 1
        gens = augmentation_ideal_generators(S)
        for combo in itertools.product(gens, repeat=n + 1):
            prod = combo[0]
            for g in combo[1:]:
                prod = ring_product(prod, g)
            assert ideal_power_membership(prod, 1, scale=p)


def test_identity_two_sided():
    for G in (C2, S3, C6):
        e = identity_element(G)
        for b in basis(G, G):
            assert compose(e, single(b)) == single(b)
            assert compose(single(b), e) == single(b)


def test_power():
    S = sylow(S3, 2)
    x = restrict(identity_element(S3), S, S)
    assert power(x, 1) == x
    assert power(x, 3) == compose(x, compose(x, x))


def test_element_equality_min_precision():
    x = identity_element(S3).lift(2, 6)
    y = identity_element(S3).lift(2, 3)
    assert x == y
    z = x - x
    assert z == zero(S3, S3)
    assert z.is_zero


def test_cardinality():
    assert cardinality(identity_element(S3)) == 6
    x = single(basis(E, S3)[0])
    assert cardinality(x) == 6
    assert cardinality(2 * x) == 12
