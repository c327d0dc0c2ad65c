import itertools
import math

import pytest
from hypothesis import given

from conftest import all_dense, dense, elements, from_dense
from lawson_lab.core import (
    ClassTag,
    Element,
    ElementError,
    canonical_order,
    class_of,
    code,
    element_from_json,
    element_to_json,
    format_element,
    from_code,
    leq,
    meet,
    norm,
    parse_element,
    support,
    universe_elements,
    upper_set,
    upper_set_size,
    value_at,
)
from lawson_lab.witnesses import special_one, special_zero

TOP = Element.top()


class TestValueAt:
    def test_empty_is_constant_two(self):
        assert value_at(TOP, 5) == 2

    def test_special_zero(self):
        assert value_at(special_zero(3), 3) == 0

    def test_lookup(self):
        assert value_at(parse_element("{0:1,3:0}"), 0) == 1
        assert parse_element("{0:1,3:0}")[3] == 0
        assert parse_element("{0:1,3:0}")[2] == 2


class TestMeet:
    def test_idempotent(self):
        x = parse_element("{0:1,4:0}")
        assert meet(x, x) == x

    def test_special_pair(self):
        assert meet(special_zero(0), special_one(0)) == special_zero(0)

    def test_against_coordinatewise_min(self):
        # oracle: dense min over coordinates 0..2
        x, y = parse_element("{0:1}"), parse_element("{1:0}")
        expected = tuple(min(a, b) for a, b in zip(dense(x, 3), dense(y, 3)))
        assert expected == (1, 0, 2)
        assert meet(x, y) == from_dense(expected) == parse_element("{0:1,1:0}")

    def test_exhaustive_against_dense_min_x3(self):
        for a in all_dense(3):
            for b in all_dense(3):
                got = meet(from_dense(a), from_dense(b))
                assert dense(got, 3) == tuple(map(min, a, b))

    @given(elements(), elements())
    def test_support_of_meet(self, x, y):
        assert support(meet(x, y)) <= support(x) | support(y)
        assert norm(meet(x, y)) == max(norm(x), norm(y))

    @given(elements(), elements(), elements())
    def test_semilattice_laws(self, x, y, z):
        assert meet(x, y) == meet(y, x)
        assert meet(meet(x, y), z) == meet(x, meet(y, z))
        assert meet(x, x) == x


class TestLeq:
    def test_special_pairs(self):
        for b in range(6):
            assert leq(special_zero(b), special_one(b))
        assert not leq(special_one(0), special_zero(0))

    @given(elements())
    def test_top_is_maximum(self, x):
        assert leq(x, TOP)

    @given(elements(), elements())
    def test_matches_meet_definition(self, x, y):
        assert leq(x, y) == (meet(x, y) == x)

    def test_partial_order_exhaustive_x3(self):
        xs = list(universe_elements(3))
        for x in xs:
            assert leq(x, x)
        for x, y in itertools.product(xs, repeat=2):
            if leq(x, y) and leq(y, x):
                assert x == y
        # transitivity on X_3 (27^3 triples)
        up = {x: {y for y in xs if leq(x, y)} for x in xs}
        for x in xs:
            for y in up[x]:
                assert up[y] <= up[x]


def test_semilattice_laws_exhaustive_x3():
    xs = list(universe_elements(3))
    for x, y in itertools.product(xs, repeat=2):
        assert meet(x, y) == meet(y, x)
    for x, y, z in itertools.product(xs, repeat=3):
        assert meet(meet(x, y), z) == meet(x, meet(y, z))


class TestSupportNormClass:
    def test_support(self):
        assert support(TOP) == frozenset()
        assert support(special_one(4)) == {4}
        assert support(parse_element("{0:1,3:0,7:1}")) == {0, 3, 7}

    def test_norm(self):
        assert norm(TOP) == 0
        for a in range(5):
            assert norm(special_zero(a)) == a + 1
        assert norm(parse_element("{0:1,3:0}")) == 4

    def test_class(self):
        assert class_of(TOP) is ClassTag.X2
        assert class_of(special_one(0)) is ClassTag.X1
        assert class_of(special_zero(0)) is ClassTag.X0
        assert class_of(special_one(3)) is ClassTag.X2


class TestUpperSet:
    def test_top(self):
        assert upper_set(TOP) == {TOP}

    def test_special_zero(self):
        # brute force over the 3 elements with support inside {0}
        brute = {from_dense(t) for t in all_dense(1) if leq(special_zero(0), from_dense(t))}
        assert upper_set(special_zero(0)) == brute == {special_zero(0), special_one(0), TOP}

    def test_bound_example(self):
        x = parse_element("{0:0,2:1}")
        assert len(upper_set(x)) == upper_set_size(x) == 6 <= 3 ** 2

    def test_against_brute_force_x5(self):
        xs = [from_dense(t) for t in all_dense(5)]
        for x in xs:
            brute = {y for y in xs if all(a <= b for a, b in zip(dense(x, 5), dense(y, 5)))}
            up = upper_set(x)
            assert up == brute
            assert len(up) == math.prod(3 - v for v in dense(x, 5) if v != 2)
            assert len(up) <= 3 ** len(support(x))
            assert all(norm(y) <= norm(x) for y in up)


class TestCodes:
    def test_bijection(self):
        for n in range(5):
            xs = list(universe_elements(n))
            assert len(xs) == len(set(xs)) == 3**n
            for k, x in enumerate(xs):
                assert code(x, n) == k
                assert from_code(k, n) == x

    def test_digits(self):
        assert code(parse_element("{0:1}"), 2) == 1 + 2 * 3
        assert code(TOP, 1) == 2
        with pytest.raises(ElementError):
            code(special_zero(3), 2)

    def test_order_independent_of_truncation(self):
        xs = list(universe_elements(3))
        ordered3 = sorted(xs, key=lambda x: code(x, 3))
        ordered5 = sorted(xs, key=lambda x: code(x, 5))
        assert ordered3 == ordered5 == canonical_order(reversed(xs))


class TestLiterals:
    @pytest.mark.parametrize("text", ["{}", "{0:1}", "{0:1,3:0,7:1}", "{2:0}"])
    def test_round_trip(self, text):
        x = parse_element(text)
        assert format_element(x) == text
        assert element_from_json(element_to_json(x)) == x

    def test_whitespace(self):
        assert parse_element(" { 0 : 1 , 3:0 } ") == parse_element("{0:1,3:0}")

    @pytest.mark.parametrize("text", ["", "{", "{0:2}", "{3:0,1:1}", "{1:1,1:0}", "{a:1}", "{-1:0}", "0:1"])
    def test_rejects(self, text):
        with pytest.raises(ElementError):
            parse_element(text)

    def test_json_shape(self):
        assert element_to_json(parse_element("{0:1,10:0}")) == {"entries": {"0": 1, "10": 0}}

    def test_constructor_rejects_value_two(self):
        with pytest.raises(ElementError):
            Element(((0, 2),))
        assert Element.from_mapping({0: 2, 1: 1}) == parse_element("{1:1}")

    @given(elements())
    def test_round_trip_property(self, x):
        assert parse_element(format_element(x)) == x
