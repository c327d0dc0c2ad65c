import json

import pytest

from lawson_lab.core import ClassTag, class_of, leq, meet, norm, parse_element, universe_elements
from lawson_lab.topology import BasicOpen, OpenSetDescriptor, descriptor_contains, v_contains
from lawson_lab.witnesses import (
    PreconditionError,
    check_certificate_document,
    hausdorff_guards_hold,
    hausdorff_witness,
    interior_rank,
    joint_continuity_failure_search,
    joint_escape_pair,
    nonclosed_certificate,
    separation_guards_hold,
    separation_rank,
    special_one,
    special_zero,
    translation_image_check,
)

P = parse_element
ZERO0, ONE0 = special_zero(0), special_one(0)


def members(v, n):
    return [y for y in universe_elements(n) if v_contains(v, y)]


class TestSpecialElements:
    def test_definitions(self):
        assert special_zero(0) == P("{0:0}") and class_of(ZERO0) is ClassTag.X0
        assert special_one(0) == P("{0:1}") and class_of(ONE0) is ClassTag.X1

    def test_shifted(self):
        for b in range(1, 6):
            assert class_of(special_one(b)) is ClassTag.X2
            assert norm(special_one(b)) == b + 1


class TestInteriorRank:
    def test_base_point(self):
        x = P("{0:1,2:0}")
        assert interior_rank(BasicOpen(x, 4), x) == 4

    def test_example(self):
        assert interior_rank(BasicOpen(ONE0, 1), special_zero(5)) == 6

    def test_x2_point_is_isolated(self):
        v = BasicOpen(ZERO0, 1)
        y = P("{2:0,3:1}")
        beta = interior_rank(v, y)
        assert members(BasicOpen(y, beta), 6) == [y]
        assert v_contains(v, y)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            interior_rank(BasicOpen(ZERO0, 1), ONE0)

    def test_bounded_inclusion_sweep(self):
        # scalar enumeration, no cached masks
        for x in universe_elements(3):
            for alpha in range(norm(x), 4):
                v = BasicOpen(x, alpha)
                for y in members(v, 3):
                    beta = interior_rank(v, y)
                    assert all(v_contains(v, z) for z in members(BasicOpen(y, beta), 5))


class TestSeparationRank:
    def test_case1(self):
        v = BasicOpen(ZERO0, 1)
        y = P("{1:0}")  # X2 ending in 0, so outside
        beta, case = separation_rank(v, y)
        assert case == 1 and beta == 2
        assert members(BasicOpen(y, beta), 5) == [y]

    def test_case5(self):
        v = BasicOpen(ZERO0, 1)
        beta, case = separation_rank(v, ONE0)
        assert (beta, case) == (1, 5)
        w = BasicOpen(ONE0, beta)
        assert not any(v_contains(w, z) and v_contains(v, z) for z in universe_elements(5))

    def test_case3(self):
        v = BasicOpen(ZERO0, 2)
        y = P("{0:0,1:0}")
        beta, case = separation_rank(v, y)
        assert (beta, case) == (2, 3)
        assert separation_guards_hold(v, y, beta, case)
        w = BasicOpen(y, beta)
        assert not any(v_contains(w, z) and v_contains(v, z) for z in universe_elements(5))

    def test_case4_range_violation(self):
        v = BasicOpen(ONE0, 1)
        y = P("{0:1,2:1}")
        beta, case = separation_rank(v, y)
        assert (beta, case) == (3, 4)
        assert separation_guards_hold(v, y, beta, case)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            separation_rank(BasicOpen(ZERO0, 1), ZERO0)
        with pytest.raises(PreconditionError):
            separation_rank(BasicOpen(P("{}"), 0), ZERO0)

    def test_every_case_reached_and_guarded(self):
        seen = set()
        for x in universe_elements(3):
            for alpha in range(max(1, norm(x)), 5):
                v = BasicOpen(x, alpha)
                for y in universe_elements(3):
                    if v_contains(v, y):
                        continue
                    beta, case = separation_rank(v, y)
                    seen.add(case)
                    assert separation_guards_hold(v, y, beta, case)
                    assert sum(separation_guards_hold(v, y, beta, c) for c in range(1, 7)) == 1
                    w = BasicOpen(y, beta)
                    assert not any(v_contains(w, z) and v_contains(v, z) for z in universe_elements(5))
        assert seen == {1, 2, 3, 4, 5, 6}


class TestHausdorff:
    def test_case1(self):
        w = hausdorff_witness(P("{}"), ZERO0)
        assert w.case_id == 1
        assert w.left == OpenSetDescriptor.of(BasicOpen(P("{}"), 1))
        assert w.right.kind == "complement"

    def test_case3(self):
        y = P("{0:0,1:1}")
        w = hausdorff_witness(ZERO0, y)
        assert w.case_id == 3
        assert (w.left.basic, w.right.basic) == (BasicOpen(ZERO0, 2), BasicOpen(y, 2))

    def test_case4(self):
        w = hausdorff_witness(ZERO0, ONE0)
        assert w.case_id == 4
        assert w.left == OpenSetDescriptor.of(BasicOpen(ZERO0, 1))
        assert w.right == OpenSetDescriptor.complement_of(BasicOpen(ZERO0, 1))

    def test_equal_points(self):
        with pytest.raises(PreconditionError):
            hausdorff_witness(ONE0, ONE0)

    def test_sweep_x3(self):
        xs = list(universe_elements(3))
        for x in xs:
            for y in xs:
                if x == y:
                    continue
                w = hausdorff_witness(x, y)
                assert hausdorff_guards_hold(w)
                assert descriptor_contains(w.left, x) and descriptor_contains(w.right, y)
                for z in universe_elements(5):
                    assert not (descriptor_contains(w.left, z) and descriptor_contains(w.right, z))

    def test_json(self):
        doc = hausdorff_witness(ZERO0, ONE0).to_json()
        assert doc["case_id"] == 4 and doc["right"]["kind"] == "complement"


class TestTranslation:
    def test_identity(self):
        for x in universe_elements(2):
            assert translation_image_check(P("{}"), x, max(1, norm(x)), 4)

    def test_a_in_x0(self):
        for x in universe_elements(3):
            for alpha in range(max(1, norm(x)), 6):
                assert translation_image_check(ZERO0, x, alpha, 5)

    def test_a_in_x2_x_in_x1(self):
        assert translation_image_check(P("{2:0}"), ONE0, 3, 5)

    def test_a_in_x1_x_in_x0_fails(self):
        # first failure in code order within X_3
        z = translation_image_check(ONE0, ZERO0, 1, 3, first_failure=True)
        assert z == P("{1:0,2:1}")
        assert not translation_image_check(ONE0, ZERO0, 1, 3)
        # {1:1} lies in V[1]({0:0}); its translate {0:1,1:1} is in X1, outside V[1]({0:0})
        for z in (P("{1:0,2:1}"), P("{1:1}")):
            assert v_contains(BasicOpen(ZERO0, 1), z)
            assert not v_contains(BasicOpen(meet(ONE0, ZERO0), 1), meet(ONE0, z))
        # and at every rank: the shift by one_0 is not continuous at zero_0
        for beta in range(1, 7):
            y = special_one(beta)
            assert v_contains(BasicOpen(ZERO0, beta), y)
            assert class_of(meet(ONE0, y)) is ClassTag.X1
            assert not v_contains(BasicOpen(ZERO0, 1), meet(ONE0, y))

    def test_agrees_with_scalar_image(self):
        for a in universe_elements(2):
            for x in universe_elements(2):
                for alpha in range(max(norm(a), norm(x)), 4):
                    scalar = all(
                        v_contains(BasicOpen(meet(a, x), alpha), meet(a, z))
                        for z in members(BasicOpen(x, alpha), 4)
                    )
                    assert translation_image_check(a, x, alpha, 4) == scalar

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            translation_image_check(P("{3:0}"), ZERO0, 1, 5)


class TestCertificate:
    def test_alpha1(self):
        c = nonclosed_certificate(1, 1)
        assert c.net == ((P("{1:0}"), P("{1:1}")),)
        assert c.holds and len(c.assertions()) == 4

    def test_alpha3(self):
        c = nonclosed_certificate(3, 4)
        assert [u for u, _ in c.net] == [special_zero(b) for b in (3, 4, 5, 6)]
        assert c.holds

    def test_limit_pair_outside_order(self):
        assert not leq(ONE0, ZERO0)

    def test_sweep(self):
        for alpha in range(1, 9):
            for k in range(1, 9):
                assert nonclosed_certificate(alpha, k).holds

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            nonclosed_certificate(0, 1)
        with pytest.raises(PreconditionError):
            nonclosed_certificate(1, 0)

    def test_document_round_trip(self):
        doc = json.loads(json.dumps(nonclosed_certificate(2, 3).to_json()))
        assert list(doc) == ["claim", "params", "assertions", "notes"]
        assert check_certificate_document(doc)
        doc["assertions"][1]["holds"] = False
        assert not check_certificate_document(doc)


class TestJointProbe:
    def test_small_bound(self):
        report = joint_continuity_failure_search(1, 1)
        assert report is None or report.reverify()

    def test_claim10_candidate(self):
        target = BasicOpen(meet(ONE0, ZERO0), 1)
        for rho in range(1, 5):
            for sigma in range(1, 5):
                b = max(rho, sigma)
                a2, x2 = special_zero(b), special_one(b)
                assert v_contains(BasicOpen(ONE0, rho), a2)
                assert v_contains(BasicOpen(ZERO0, sigma), x2)
                assert not v_contains(target, meet(a2, x2))
                assert joint_escape_pair(ONE0, ZERO0, 1, rho, sigma, 6) is not None

    def test_search_self_certifies(self):
        report = joint_continuity_failure_search(5, 4, candidates=3)
        assert report is not None and report.reverify()
        doc = report.to_json()
        assert len(doc["escapes"]) == len(report.escapes)
