"""Permutation groups: orders against brute-force closure, Sylow 2-subgroups,
and the self-normalizing check."""

import random

import pytest

from mcglift.perm import (
    EnumerationBoundExceeded,
    MembershipError,
    PermError,
    PermGroup,
    Permutation,
    StructuralFormError,
    build_bsgs,
    compose,
    conjugate_subgroup,
    is_member,
    mulclose,
    normalizer_is_self,
    s3_block_count,
    subgroup_witness,
    sylow2,
    two_part,
)


def perm(text, degree):
    return Permutation.parse(text, degree)


def s3_product_group(k):
    """The full product of k copies of S3 in block form on 3k points."""
    gens = []
    for j in range(k):
        lo = 3 * j
        gens.append(Permutation.from_cycles(3 * k, [(lo, lo + 1)]))
        gens.append(Permutation.from_cycles(3 * k, [(lo, lo + 1, lo + 2)]))
    return PermGroup(gens, degree=3 * k)


def test_composition_convention():
    p = perm("(0 1)", 3)
    q = perm("(0 1 2)", 3)
    assert (p * q).images == (0, 2, 1)
    assert compose(p, q).images == (0, 2, 1)
    assert (q * p).images == (2, 1, 0)
    x = 0
    assert (p * q)(x) == p(q(x))


def test_permutation_validation():
    with pytest.raises(PermError):
        Permutation([0, 0, 1])
    with pytest.raises(PermError):
        Permutation([0, 3])
    with pytest.raises(PermError):
        perm("(0 1", 3)


def test_cycle_roundtrip_and_order():
    p = perm("(0 1 2)(3 4)", 6)
    assert Permutation.parse(p.cycle_string(), 6) == p
    assert p.order() == 6
    assert p.inverse() * p == Permutation.identity(6)
    assert perm("()", 4) == Permutation.identity(4)


NAMED_GROUPS = [
    ("S3", ["(0 1)", "(0 1 2)"], 3, 6),
    ("C7", ["(0 1 2 3 4 5 6)"], 7, 7),
    ("D4", ["(0 1 2 3)", "(0 2)"], 4, 8),
    ("A4", ["(0 1 2)", "(1 2 3)"], 4, 12),
    ("S4", ["(0 1)", "(0 1 2 3)"], 4, 24),
    ("A5", ["(0 1 2 3 4)", "(0 1 2)"], 5, 60),
    ("S3xS3", ["(0 1)", "(0 1 2)", "(3 4)", "(3 4 5)"], 6, 36),
]


@pytest.mark.parametrize("name,gens,degree,order", NAMED_GROUPS)
def test_bsgs_order_matches_mulclose(name, gens, degree, order):
    perms = [perm(g, degree) for g in gens]
    group = PermGroup(perms, degree=degree)
    closure = mulclose(perms, degree=degree)
    assert group.order == len(closure) == order
    for e in closure:
        assert e in group
    assert set(group.elements()) == closure


def test_bsgs_against_mulclose_random_sweep():
    rng = random.Random(23)
    for _ in range(120):
        degree = rng.randint(2, 7)
        gens = []
        for _ in range(rng.randint(1, 3)):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(images))
        group = PermGroup(gens, degree=degree)
        closure = mulclose(gens, degree=degree)
        assert group.order == len(closure)
        sample = rng.sample(sorted(closure), min(5, len(closure)))
        for e in sample:
            assert is_member(group, e)
        images = list(range(degree))
        rng.shuffle(images)
        candidate = Permutation(images)
        assert (candidate in group) == (candidate in closure)


def test_membership_negative():
    a5 = build_bsgs([perm("(0 1 2 3 4)", 5), perm("(0 1 2)", 5)])
    assert perm("(0 1 2)", 5) in a5
    assert perm("(0 1)", 5) not in a5
    assert perm("(0 1)", 4) not in a5  # degree mismatch is just "no"


def test_trivial_group_needs_degree():
    with pytest.raises(PermError):
        PermGroup([])
    triv = PermGroup([], degree=4)
    assert triv.order == 1
    assert Permutation.identity(4) in triv


def test_known_order_early_exit_and_mismatch():
    gens = [perm("(0 1 2 3 4)", 5), perm("(0 1 2)", 5)]
    assert PermGroup(gens, known_order=60).order == 60
    with pytest.raises(PermError):
        PermGroup(gens, known_order=30)
    with pytest.raises(PermError):
        PermGroup(gens, known_order=120)


def test_elements_bound():
    group = s3_product_group(2)
    with pytest.raises(EnumerationBoundExceeded):
        group.elements(bound=10)


def test_subgroup_witness():
    s4 = PermGroup([perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
    a4 = PermGroup([perm("(0 1 2)", 4), perm("(1 2 3)", 4)])
    w = subgroup_witness(s4, a4)
    assert w.index == 2
    c5 = PermGroup([perm("(0 1 2 3 4)", 5)])
    with pytest.raises(PermError):
        subgroup_witness(s4, c5)  # 5 does not divide 24


def test_subgroup_witness_rejects_foreign_generator():
    s3 = PermGroup([perm("(0 1)", 3), perm("(0 1 2)", 3)])
    odd = PermGroup([perm("(0 1)", 3)])
    assert subgroup_witness(s3, odd).index == 3
    a3 = PermGroup([perm("(0 1 2)", 4)], degree=4)
    with pytest.raises(PermError):
        subgroup_witness(s3, a3)  # degree mismatch surfaces as PermError


def test_conjugate_subgroup():
    s3 = PermGroup([perm("(0 1)", 3), perm("(0 1 2)", 3)])
    h = PermGroup([perm("(0 1)", 3)])
    moved = conjugate_subgroup(s3, h, perm("(1 2)", 3))
    assert perm("(0 2)", 3) in moved
    assert moved.order == 2
    with pytest.raises(MembershipError):
        conjugate_subgroup(PermGroup([perm("(0 1 2)", 3)]), h,
                           perm("(0 1)", 3))


def test_two_part():
    assert two_part(1) == 1
    assert two_part(48) == 16
    assert two_part(36) == 4
    assert two_part(3**30) == 1


def test_s3_block_count():
    assert s3_block_count(s3_product_group(2)) == 2
    a5 = PermGroup([perm("(0 1 2 3 4)", 5), perm("(0 1 2)", 5)])
    assert s3_block_count(a5) is None
    crossing = PermGroup([perm("(0 3)", 6)], degree=6)
    assert s3_block_count(crossing) is None


def test_sylow2_s3_growth():
    s3 = PermGroup([perm("(0 1)", 3), perm("(0 1 2)", 3)])
    w = sylow2(s3, method="growth")
    assert w.sub.order == 2
    assert w.index == 3


def test_sylow2_s4():
    s4 = PermGroup([perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
    w = sylow2(s4)
    assert w.sub.order == 8
    assert w.index == 3


@pytest.mark.parametrize("k,order,index", [(1, 2, 3), (2, 4, 9), (3, 8, 27)])
def test_sylow2_structural_s3_products(k, order, index):
    group = s3_product_group(k)
    w = sylow2(group)  # auto picks the structural path on block form
    assert w.sub.order == order == two_part(group.order)
    assert w.index == index
    for g in w.sub.generators:
        assert g in group


def test_sylow2_structural_matches_growth():
    group = s3_product_group(2)
    ws = sylow2(group, method="structural")
    wg = sylow2(group, method="growth")
    assert ws.sub.order == wg.sub.order == 4


def test_sylow2_seeds_agree_on_order():
    group = s3_product_group(2)
    orders = {sylow2(group, seed=s).sub.order for s in (0, 1, 2)}
    assert orders == {4}


def test_sylow2_structural_dependent_sign_vectors():
    # Generators whose block-sign vectors are linearly dependent (the third
    # is the sum of the first two) in an order that defeats a sloppy
    # elimination: the 2-rank must still come out as 2 for every shuffle.
    def x_product(blocks):
        return Permutation.from_cycles(
            12, [(3 * j, 3 * j + 1) for j in blocks])

    gens = [
        x_product((3, 1)),
        x_product((1, 0)),
        x_product((3, 0)),
        Permutation.from_cycles(12, [(0, 1, 2)]),
    ]
    group = PermGroup(gens, degree=12)
    assert group.order == 12
    for seed in range(24):
        w = sylow2(group, seed=seed, method="structural")
        assert w.sub.order == 4 == two_part(group.order)
        assert normalizer_is_self(w, method="enumeration") is True


def test_sylow2_structural_requires_block_form():
    a5 = PermGroup([perm("(0 1 2 3 4)", 5), perm("(0 1 2)", 5)])
    with pytest.raises(StructuralFormError):
        sylow2(a5, method="structural")
    with pytest.raises(PermError):
        sylow2(a5, method="bogus")


def test_sylow2_diagonal_s3():
    diag = PermGroup([perm("(0 1)(3 4)", 6), perm("(0 1 2)(3 4 5)", 6)])
    assert diag.order == 6
    w = sylow2(diag)
    assert w.sub.order == 2


def test_normalizer_in_s3():
    s3 = PermGroup([perm("(0 1)", 3), perm("(0 1 2)", 3)])
    h2 = PermGroup([perm("(0 1)", 3)])
    h3 = PermGroup([perm("(0 1 2)", 3)])
    assert normalizer_is_self(subgroup_witness(s3, h2)) is True
    assert normalizer_is_self(subgroup_witness(s3, h3)) is False


def test_normalizer_structural_agrees_with_enumeration():
    group = s3_product_group(2)
    w = sylow2(group, method="structural")
    assert normalizer_is_self(w, method="enumeration") is True
    assert normalizer_is_self(w, method="structural") is True


def test_normalizer_diagonal_subdirect():
    diag = PermGroup([perm("(0 1)(3 4)", 6), perm("(0 1 2)(3 4 5)", 6)])
    w = sylow2(diag, method="structural")
    assert w.sub.order == 2
    assert normalizer_is_self(w, method="structural") is True
    assert normalizer_is_self(w, method="enumeration") is True


def test_normalizer_structural_rejects_wrong_order():
    group = s3_product_group(2)
    small = PermGroup([perm("(0 1)", 6)], degree=6)
    w = subgroup_witness(group, small)
    with pytest.raises(StructuralFormError):
        normalizer_is_self(w, method="structural")


def test_normalizer_enumeration_negative():
    group = s3_product_group(2)
    rotations = PermGroup([perm("(0 1 2)(3 4 5)", 6)], degree=6)
    w = subgroup_witness(group, rotations)
    assert normalizer_is_self(w, method="enumeration") is False


def test_mulclose_bound():
    gens = [perm("(0 1)", 6), perm("(0 1 2 3 4 5)", 6)]
    with pytest.raises(EnumerationBoundExceeded):
        mulclose(gens, degree=6, bound=100)
