"""Classifying rings, Euler classes, torsion root sets, induced maps."""

import pytest

from tateshift.classifying import (
    AbelianPGroup,
    InvalidSubgroup,
    NotAHomomorphism,
    SubgroupSpec,
    V_count,
    V_count_image,
    build_classifying_ring,
    induced_map,
    quotient_image_elements,
    required_cap,
)
from tateshift.fgl import build_honda, build_multiplicative
from tateshift.ring_linalg import verify_localized_tuple
from tateshift.series import eval_at, poly_eval


def honda_ring(p, n, exponents):
    group = AbelianPGroup(p, exponents)
    cap = required_cap(p, n, 1, exponents)
    law = build_honda(p, n, cap)
    return build_classifying_ring(law, group)


def mult_ring(p, K, exponents):
    group = AbelianPGroup(p, exponents)
    cap = required_cap(p, 1, K, exponents)
    law = build_multiplicative(p, K, cap)
    return build_classifying_ring(law, group)


# -- construction -------------------------------------------------------------


def test_build_honda_z2():
    cr = honda_ring(2, 1, [1])
    assert cr.algebra.rank == 2
    assert cr.relations == [[0, 0, 1]]  # x^2


def test_build_multiplicative_z2_mod4():
    cr = mult_ring(2, 2, [1])
    assert cr.algebra.rank == 2
    assert cr.relations == [[0, 2, 1]]  # x^2 + 2x


def test_build_honda_z4():
    cr = honda_ring(2, 1, [2])
    assert cr.algebra.rank == 4
    assert cr.relations == [[0, 0, 0, 0, 1]]  # x^4


def test_rank_formula_heights():
    assert honda_ring(2, 2, [1]).algebra.rank == 4  # p^(i*n) = 2^2
    assert honda_ring(2, 1, [1, 2]).algebra.rank == 8  # 2^1 * 2^2
    assert mult_ring(2, 2, [1, 1]).algebra.rank == 4


# -- Euler classes ---------------------------------------------------------------


def test_euler_class_zero_and_generator():
    cr = honda_ring(2, 1, [1, 1])
    assert cr.euler_class((0, 0)).value.is_zero()
    assert cr.euler_class((1, 0)).value == cr.algebra.gen(0)
    assert cr.euler_class((0, 1)).value == cr.algebra.gen(1)


def test_euler_class_multiplicative_formal_sum():
    cr = mult_ring(2, 2, [1, 1])
    alg = cr.algebra
    x1, x2 = alg.gen(0), alg.gen(1)
    expected = x1 + x2 + x1 * x2
    assert cr.euler_class((1, 1)).value == expected


def test_euler_additivity_up_to_formal_sum():
    # euler(u) -_F euler(w) = euler(u - w), exactly in the ring
    cr = mult_ring(2, 2, [1, 1])
    law = cr.law
    inv_series = law.formal_inverse()
    for u in cr.group.elements():
        for w in cr.group.elements():
            eu = cr.euler_class(u).value
            ew = cr.euler_class(w).value
            minus_ew = eval_at(inv_series, [ew])
            diff = eval_at(law.F, [eu, minus_ew])
            target = tuple((a - b) % o for a, b, o in zip(u, w, cr.group.orders))
            assert diff == cr.euler_class(target).value


# -- torsion root sets --------------------------------------------------------------


def test_pj_root_set_j0():
    cr = honda_ring(2, 1, [2])
    roots = cr.pj_root_set(0)
    assert len(roots) == 1 and roots[0].value.is_zero()


def test_pj_root_set_honda_z4_j1():
    # [2](x) = x^2: the 2-torsion of Z/4 gives Euler classes {0, x^2}
    cr = honda_ring(2, 1, [2])
    roots = cr.pj_root_set(1)
    values = {r.value for r in roots}
    x = cr.algebra.gen(0)
    assert values == {cr.algebra.zero(), x * x}


def test_pj_root_set_rank2_j1_has_four_classes():
    for cr in (honda_ring(2, 1, [1, 1]), mult_ring(2, 2, [1, 1])):
        assert len(cr.pj_root_set(1)) == 4


def test_pj_root_counts_match_v_count():
    cr = honda_ring(2, 1, [1, 2])
    for j in range(4):
        assert len(cr.pj_root_set(j)) == V_count(cr.group, j)


def test_root_differences_certified_in_full_localization():
    # differences of distinct 2-torsion Euler classes become units once the
    # classes of A - {0} are inverted (the full C = A localization)
    cr = honda_ring(2, 1, [1, 1])
    nonzero = [w for w in cr.group.elements() if any(w)]
    s_gens = [cr.euler_class(w).value for w in nonzero]
    roots = [r.value for r in cr.pj_root_set(1)]
    tup = verify_localized_tuple(s_gens, roots, max_len=4)
    assert len(tup.witnesses["pairs"]) == 6


# -- counting -----------------------------------------------------------------------


def test_v_count_examples():
    assert V_count(AbelianPGroup(2, [2, 1]), 0) == 1
    assert V_count(AbelianPGroup(2, [2, 1]), 1) == 4  # p^(min(1,2)+min(1,1))
    assert V_count(AbelianPGroup(3, [2, 1]), 1) == 9
    a = AbelianPGroup(2, [2, 2, 2])
    c = SubgroupSpec([1, 1, 1])
    assert V_count(a, 2) == 2**6
    assert V_count_image(a, c, 2) == 2**3


def test_v_count_monotone_and_stabilizes():
    for p, exps in ((2, [1, 3]), (3, [2, 2])):
        a = AbelianPGroup(p, exps)
        prev = 1
        for j in range(0, max(exps) + 3):
            v = V_count(a, j)
            assert v >= prev
            prev = v
        assert prev == a.order


def test_quotient_image_elements():
    a = AbelianPGroup(2, [2])
    c = SubgroupSpec([1])
    img = set(quotient_image_elements(a, c))
    assert img == {(0,), (2,)}  # multiples of p^j_1 = 2 inside Z/4


def test_torsion_enumeration_against_brute_force():
    a = AbelianPGroup(2, [1, 2])
    for j in range(4):
        brute = {
            w for w in a.elements()
            if all((2**j * x) % o == 0 for x, o in zip(w, a.orders))
        }
        assert set(a.torsion_elements(j)) == brute
        assert len(brute) == V_count(a, j)


def test_subgroup_validation():
    a = AbelianPGroup(2, [2, 1])
    with pytest.raises(InvalidSubgroup):
        SubgroupSpec([3, 0]).validate_in(a)
    with pytest.raises(InvalidSubgroup):
        SubgroupSpec([1]).validate_in(a)
    assert SubgroupSpec([2, 0]).rank_p == 1


# -- induced maps ---------------------------------------------------------------------


def test_induced_identity_map():
    cr = honda_ring(2, 1, [2])
    hom = induced_map(cr, cr, [[1]])
    assert hom.images[0] == cr.algebra.gen(0)
    x = cr.algebra.gen(0)
    assert hom.apply(x * x + x) == x * x + x


def test_induced_quotient_z4_to_z2():
    # h: Z/4 -> Z/2 quotient; the algebra map goes the other way and sends
    # the Z/2-ring generator to the Euler class of 2 = [2](x) = x^2
    target = honda_ring(2, 1, [2])  # ring of Z/4
    source = honda_ring(2, 1, [1])  # ring of Z/2
    hom = induced_map(target, source, [[1]])
    x = target.algebra.gen(0)
    assert hom.images[0] == x * x
    # the source relation x^2 maps to x^4 = 0 in F2[x]/(x^4)
    assert poly_eval(source.relations[0], hom.images[0]).is_zero()


def test_induced_multiplication_by_p_self_map():
    cr = honda_ring(2, 1, [2])
    hom = induced_map(cr, cr, [[2]])
    x = cr.algebra.gen(0)
    expected = eval_at(cr.law.p_series(), [x])
    assert hom.images[0] == expected


def test_induced_map_congruence_guard():
    # Z/2 -> Z/4 needs H with 4 | H * 2: H = 1 fails, H = 2 works
    target = honda_ring(2, 1, [1])
    source = honda_ring(2, 1, [2])
    with pytest.raises(NotAHomomorphism):
        induced_map(target, source, [[1]])
    hom = induced_map(target, source, [[2]])
    assert hom.images[0] == target.algebra.gen(0)


def test_pairwise_certificates_order_sixteen_groups():
    # pairwise tuple certificates for |A| = 16 in both presentations
    for exponents in ([4], [1, 1, 1, 1]):
        cr = honda_ring(2, 1, exponents)
        assert cr.group.order == 16
        import itertools as it

        from tateshift.classifying import certify_root_difference

        for u, w in it.combinations(cr.group.elements(), 2):
            witness = certify_root_difference(cr, u, w)
            assert not witness["unit"].is_zero()


def test_classifying_generators_are_nilpotent():
    for cr in (honda_ring(2, 2, [1]), mult_ring(2, 2, [1, 1])):
        for k in range(len(cr.group.exponents)):
            idx = cr.algebra.nilpotency_index(cr.algebra.gen(k))
            assert idx is not None
