"""Tate vanishing outcomes and blue-shift bound arithmetic."""

import itertools

import pytest

from tateshift.classifying import (
    AbelianPGroup,
    InvalidSubgroup,
    SubgroupSpec,
    V_count,
    V_count_image,
)
from tateshift.ring_core import ZERO_RING
from tateshift.tate_blueshift import (
    BlueShiftReport,
    TateRingResult,
    blueshift_bounds,
    build_law,
    inverted_element_set,
    multiplicative_euler_class_exact,
    multiplicative_exact_ring,
    nonabelian_lower_bound,
    periodicity_report,
    tate_ring,
    tate_ring_exact,
)


# -- blue-shift bounds ------------------------------------------------------------


def test_bounds_cube_example():
    # A = (Z/p^2)^3, C = (Z/p)^3: t = 2 attained at j = 2, rank = 3
    for p in (2, 3):
        rep = blueshift_bounds(p, [2, 2, 2], [1, 1, 1])
        assert rep.lower_t == 2
        assert rep.argmax_j == 2
        assert rep.upper_rank == 3
        assert rep.exact is None
        assert rep.to_dict()["interval"] == [2, 3]


def test_bounds_cyclic_case():
    for j, k in ((1, 1), (3, 1), (3, 2), (5, 5)):
        rep = blueshift_bounds(2, [j], [k])
        assert rep.exact == 1
        assert rep.lower_t == 1


def test_bounds_direct_summand_example():
    rep = blueshift_bounds(2, [2, 1], [2, 0])
    assert rep.exact == 1
    assert rep.exact_reason in ("direct-summand", "cyclic")
    assert rep.lower_t == 1
    assert rep.upper_rank == 1


def test_bounds_trivial_subgroup():
    rep = blueshift_bounds(2, [3, 1], [0, 0])
    assert rep.lower_t == 0 and rep.upper_rank == 0
    assert rep.exact == 0 and rep.exact_reason == "direct-summand"


def test_bounds_invalid_subgroup():
    with pytest.raises(InvalidSubgroup):
        blueshift_bounds(2, [1, 1], [2, 0])
    with pytest.raises(InvalidSubgroup):
        blueshift_bounds(2, [1, 1], [1])


def compositions(total):
    """All ordered exponent tuples with the given sum."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def test_bounds_ordered_and_summand_exact_exhaustive():
    # for every (A, C) with sum i_k <= 8: t <= rank; direct summands exact
    for total in range(1, 9):
        for a_exps in compositions(total):
            for c_exps in itertools.product(*[range(i + 1) for i in a_exps]):
                rep = blueshift_bounds(2, a_exps, c_exps)
                assert rep.lower_t <= rep.upper_rank
                if all(j in (0, i) for j, i in zip(c_exps, a_exps)):
                    assert rep.exact == rep.upper_rank


def test_v_count_quotient_formula_matches_brute_force():
    # |V(p^j | A)| / |V(p^j | im phi)| equals the count over a best coset
    # choice; check the two factor counts against direct enumeration
    a = AbelianPGroup(2, [2, 2])
    c = SubgroupSpec([1, 2])
    from tateshift.classifying import quotient_image_elements

    image = set(quotient_image_elements(a, c))
    for j in range(4):
        brute_va = sum(
            1 for w in a.elements()
            if all((2**j * x) % o == 0 for x, o in zip(w, a.orders))
        )
        brute_vi = sum(
            1 for w in image
            if all((2**j * x) % o == 0 for x, o in zip(w, a.orders))
        )
        assert brute_va == V_count(a, j)
        assert brute_vi == V_count_image(a, c, j)


# -- nonabelian lower bound ----------------------------------------------------------


def test_nonabelian_reduces_to_abelian():
    rep = blueshift_bounds(2, [2, 2, 2], [1, 1, 1])
    out = nonabelian_lower_bound(2, [2, 2, 2], [1, 1, 1])
    assert out["lower_t"] == rep.lower_t
    assert out["conditional"] is True


def test_nonabelian_trivial_image():
    # N inside the commutator subgroup: the image is trivial and t = 0
    out = nonabelian_lower_bound(2, [2, 1], [0, 0])
    assert out["lower_t"] == 0


def test_nonabelian_quaternion_like():
    out = nonabelian_lower_bound(2, [1, 1], [1, 0])
    assert out["lower_t"] == 1


# -- finite-base Tate rings ------------------------------------------------------------


def test_tate_trivial_subgroup_unchanged():
    law = build_law("honda", 2, n=1, exponents=[1])
    group = AbelianPGroup(2, [1])
    result = tate_ring(law, group, SubgroupSpec([0]))
    assert result.status == TateRingResult.NONZERO
    assert result.inverted == []
    assert result.quotient.rank == 2


def test_tate_morava_mode_zero_with_certificate():
    # A = C = Z/p over the height-n law: F_p[x]/(x^(p^n)) with x inverted
    for p, n in ((2, 1), (2, 2), (3, 1)):
        law = build_law("honda", p, n=n, exponents=[1])
        result = tate_ring(law, AbelianPGroup(p, [1]), SubgroupSpec([1]))
        assert result.status == TateRingResult.ZERO
        cert = result.witness["certificate"]
        assert len(cert["word"]) == p**n
        assert result.witness["saturation_chain"]


def test_tate_multiplicative_z4_zero():
    law = build_law("multiplicative", 2, modulus_power=2, exponents=[1])
    result = tate_ring(law, AbelianPGroup(2, [1]), SubgroupSpec([1]))
    assert result.status == TateRingResult.ZERO


def test_tate_intermediate_subgroup():
    # A = Z/4, C = Z/2: inverted classes are the odd weights
    law = build_law("honda", 2, n=1, exponents=[2])
    result = tate_ring(law, AbelianPGroup(2, [2]), SubgroupSpec([1]))
    assert sorted(result.inverted) == [(1,), (3,)]
    assert result.status == TateRingResult.ZERO  # x is nilpotent at this level


def test_inverted_set_sizes():
    group = AbelianPGroup(2, [2, 1])
    assert len(inverted_element_set(group, SubgroupSpec([0, 0]))) == 0
    assert len(inverted_element_set(group, SubgroupSpec([2, 1]))) == 7
    # |A| - |A|/|C| in general
    assert len(inverted_element_set(group, SubgroupSpec([1, 0]))) == 8 - 4


# -- exact-integer Tate rings ------------------------------------------------------------


def test_exact_ku_p2_certificate_of_three():
    result = tate_ring_exact(2, [1, 1], [1, 1], max_cert_len=5)
    assert result.status == TateRingResult.ZERO
    cert = result.witness["certificate"]
    assert len(cert["word"]) == 3
    assert sorted(cert["elements"]) == [(0, 1), (1, 0), (1, 1)]


def test_exact_ku_p3_certificate_within_eight():
    result = tate_ring_exact(3, [1, 1], [1, 1], max_cert_len=8)
    assert result.status == TateRingResult.ZERO
    assert len(result.witness["certificate"]["word"]) <= 8


def test_exact_replay_is_zero():
    result = tate_ring_exact(2, [1, 1], [1, 1], max_cert_len=5)
    ring = multiplicative_exact_ring(2, [1, 1])
    prod = ring.one()
    for w in result.witness["certificate"]["elements"]:
        prod = prod * multiplicative_euler_class_exact(ring, w)
    assert prod.is_zero()


def test_exact_inconclusive_when_budget_too_small():
    result = tate_ring_exact(2, [1, 1], [1, 1], max_cert_len=2)
    assert result.status == TateRingResult.INCONCLUSIVE
    assert result.witness["not_found_max_len"] == 2


def test_exact_euler_class_closed_form():
    ring = multiplicative_exact_ring(2, [1, 1])
    x1, x2 = ring.gen(0), ring.gen(1)
    assert multiplicative_euler_class_exact(ring, (1, 0)) == x1
    assert multiplicative_euler_class_exact(ring, (1, 1)) == x1 + x2 + x1 * x2


# -- periodicity reports ---------------------------------------------------------------


def test_periodicity_report_honda_zero():
    law = build_law("honda", 2, n=2, exponents=[1])
    report = periodicity_report(law, AbelianPGroup(2, [1]), SubgroupSpec([1]))
    assert report["tate"]["status"] == "ZERO"
    assert "vanishing below the blue-shift lower bound" in report["consistency"]
    assert report["caveats"] == []


def test_periodicity_report_trivial_subgroup_nonzero():
    law = build_law("honda", 2, n=1, exponents=[1])
    report = periodicity_report(law, AbelianPGroup(2, [1]), SubgroupSpec([0]))
    assert report["tate"]["status"] == "NONZERO"
    assert report["bounds"]["lower_t"] == 0
    assert report["bounds"]["upper_rank"] == 0
    assert "INCONCLUSIVE" in report["consistency"]


def test_periodicity_report_multiplicative_truncation_caveat():
    law = build_law("multiplicative", 2, modulus_power=2, exponents=[1])
    report = periodicity_report(law, AbelianPGroup(2, [1]), SubgroupSpec([1]))
    assert report["tate"]["status"] == "ZERO"
    assert any("truncates" in c for c in report["caveats"])


def test_morava_certificate_replays_in_fresh_ring():
    # rebuild the classifying ring from scratch and replay the certificate
    from tateshift.classifying import build_classifying_ring

    law = build_law("honda", 3, n=1, exponents=[1])
    group = AbelianPGroup(3, [1])
    result = tate_ring(law, group, SubgroupSpec([1]))
    cert = result.witness["certificate"]["elements"]
    fresh_law = build_law("honda", 3, n=1, exponents=[1])
    fresh = build_classifying_ring(fresh_law, group)
    prod = fresh.algebra.one()
    for w in cert:
        prod = prod * fresh.euler_class(tuple(w)).value
    assert prod.is_zero()
