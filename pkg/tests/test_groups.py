"""Tests for Cayley-table groups and free-product words."""

import itertools
import random

import pytest

from freesep.errors import ValidationError
from freesep.groups import (
    FiniteGroup,
    Word,
    count_reduced_words,
    cyclic_group,
    direct_product,
    element_order,
    enumerate_reduced_words,
    group_from_json_dict,
    group_from_permutations,
    group_from_table,
    word_from_json_list,
    word_inv,
    word_mul,
    word_normalize,
    word_pow,
)


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


@pytest.fixture
def s3():
    return group_from_permutations([[2, 1, 3], [2, 3, 1]], name="S3")


class TestGroupValidation:
    def test_z2_table(self):
        g = group_from_table(["e", "g"], [[0, 1], [1, 0]])
        assert g.order == 2
        assert g.identity == 0

    def test_not_latin_square(self):
        with pytest.raises(ValidationError, match="Latin square"):
            group_from_table(["e", "g"], [[0, 1], [1, 1]])

    def test_no_identity(self):
        # each row/column is a permutation but no two-sided identity exists
        with pytest.raises(ValidationError, match="identity"):
            group_from_table(["a", "b", "c"], [[0, 1, 2], [2, 0, 1], [1, 2, 0]])

    def test_not_associative(self):
        # order-5 Latin square with identity that is not a group table
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValidationError, match="associative"):
            group_from_table(list("eabcd"), table)

    def test_duplicate_labels(self):
        with pytest.raises(ValidationError, match="unique"):
            group_from_table(["x", "x"], [[0, 1], [1, 0]])

    def test_s3_from_table_is_valid_nonabelian(self, s3):
        relabeled = group_from_table(s3.labels, s3.table, name="S3-copy")
        assert relabeled.order == 6
        assert any(
            relabeled.mul(i, j) != relabeled.mul(j, i)
            for i in range(6)
            for j in range(6)
        )


class TestPermutationGroups:
    def test_single_transposition(self):
        g = group_from_permutations([[2, 1]])
        assert g.order == 2

    def test_s3_closure(self, s3):
        assert s3.order == 6

    def test_empty_generating_set(self):
        g = group_from_permutations([])
        assert g.order == 1

    def test_not_a_permutation(self):
        with pytest.raises(ValidationError, match="not a permutation"):
            group_from_permutations([[1, 1]])

    def test_cap_enforced(self):
        with pytest.raises(ValidationError, match="cap"):
            group_from_permutations([[2, 3, 1, 4], [1, 3, 4, 2]], cap=5)

    def test_composition_convention(self):
        # table[i][j] must be the permutation "apply j, then i"
        g = group_from_permutations([[2, 1, 3], [2, 3, 1]], name="S3")
        swap = g.element("(1 2)")
        cycle = g.element("(1 2 3)")
        prod = swap * cycle  # apply (1 2 3) first, then (1 2): 1->2->1, 2->3->3, 3->1->2
        assert prod.label == "(2 3)"


class TestElementOrder:
    def test_identity(self, z2):
        assert element_order(z2.identity_element()) == 1

    def test_z2(self, z2):
        assert element_order(z2.element("g")) == 2

    def test_three_cycle(self, s3):
        assert element_order(s3.element("(1 2 3)")) == 3

    def test_lagrange_shadow(self):
        groups = [
            cyclic_group(n) for n in range(1, 9)
        ] + [
            group_from_permutations([[2, 1, 3], [2, 3, 1]]),
            direct_product(cyclic_group(2), cyclic_group(2)),
            direct_product(cyclic_group(2), cyclic_group(3)),
            direct_product(cyclic_group(3), cyclic_group(4)),
        ]
        for g in groups:
            assert g.order <= 12
            for x in g.elements():
                assert g.order % element_order(x) == 0


class TestDirectProduct:
    def test_klein_four(self, z2):
        v4 = direct_product(z2, z2)
        assert v4.order == 4
        assert all(element_order(x) == 2 for x in v4.nonidentity_elements())

    def test_product_with_trivial(self, z3):
        p = direct_product(z3, cyclic_group(1))
        assert p.order == 3
        assert [element_order(x) for x in p.elements()] == [1, 3, 3]

    def test_z2_x_z3_is_cyclic_of_order_6(self, z2, z3):
        p = direct_product(z2, z3)
        assert p.order == 6
        assert max(element_order(x) for x in p.elements()) == 6


class TestWords:
    def test_involution_squares_to_identity(self, z2, z3):
        g = z2.element("g")
        assert word_normalize([("G", g), ("G", g)]).is_identity

    def test_cascade_reduction(self, z2, z3):
        g, h = z2.element("g"), z3.element("g")
        w = word_normalize([("G", g), ("H", h), ("H", h.inverse()), ("G", g)])
        assert w.is_identity

    def test_already_reduced(self, z2, z3):
        g, h = z2.element("g"), z3.element("g")
        w = word_normalize([("G", g), ("H", h)])
        assert w.length == 2

    def test_identity_syllables_dropped(self, z2, z3):
        w = word_normalize([("G", z2.identity_element()), ("H", z3.element("g"))])
        assert w.length == 1

    def test_mul_inverse_law(self, z2, z3):
        g, h = z2.element("g"), z3.element("g")
        w = word_normalize([("G", g), ("H", h), ("G", g)])
        assert word_mul(w, word_inv(w)).is_identity

    def test_pow_alternates_without_cancellation(self, z2):
        other = cyclic_group(2)
        gh = word_normalize([("G", z2.element("g")), ("H", other.element("g"))])
        for k in range(1, 51):
            w = word_pow(gh, k)
            assert w.length == 2 * k
            sides = [s for s, _ in w.syllables]
            assert all(a != b for a, b in zip(sides, sides[1:]))

    def test_pow_zero(self, z2, z3):
        gh = word_normalize([("G", z2.element("g")), ("H", z3.element("g"))])
        assert word_pow(gh, 0).is_identity

    def test_mixed_groups_on_one_side_rejected(self, z2, z3):
        with pytest.raises(ValidationError, match="different groups"):
            word_normalize([("G", z2.element("g")), ("G", z3.element("g"))])

    def test_normalize_idempotent_and_mul_associative(self, z2, z3):
        rng = random.Random(20260810)
        pool = [("G", el) for el in z2.elements()] + [("H", el) for el in z3.elements()]
        for _ in range(200):
            raw = [rng.choice(pool) for _ in range(rng.randint(0, 6))]
            w = word_normalize(raw)
            assert word_normalize(w.syllables) == w
        words = [word_normalize([rng.choice(pool) for _ in range(rng.randint(0, 6))])
                 for _ in range(30)]
        for a, b, c in itertools.islice(itertools.product(words, repeat=3), 500):
            assert word_mul(word_mul(a, b), c) == word_mul(a, word_mul(b, c))


class TestEnumeration:
    def test_z2_z2_up_to_len_2(self, z2):
        other = cyclic_group(2)
        words = list(enumerate_reduced_words(z2, other, 2))
        assert len(words) == 5
        assert len(set(words)) == 5

    def test_len_zero(self, z2, z3):
        assert [w.is_identity for w in enumerate_reduced_words(z2, z3, 0)] == [True]

    def test_z3_z2_len_1(self, z3, z2):
        words = list(enumerate_reduced_words(z3, z2, 1))
        assert len(words) == 4

    def test_counts_match_closed_form_and_brute_force(self, z3, s3):
        pairs = [(cyclic_group(2), cyclic_group(2)), (cyclic_group(2), z3), (z3, s3)]
        for G, H in pairs:
            for max_len in range(0, 4):
                words = list(enumerate_reduced_words(G, H, max_len))
                assert len(words) == len(set(words))
                assert len(words) == count_reduced_words(G, H, max_len)
                # brute force: normalize every raw sequence and dedupe
                pool = [("G", el) for el in G.elements()] + [("H", el) for el in H.elements()]
                brute = set()
                for length in range(max_len + 1):
                    for combo in itertools.product(pool, repeat=length):
                        w = word_normalize(combo)
                        if w.length <= max_len:
                            brute.add(w)
                assert set(words) == brute

    def test_every_enumerated_word_is_reduced(self, z2, z3):
        for w in enumerate_reduced_words(z2, z3, 4):
            assert word_normalize(w.syllables) == w


class TestJsonInterfaces:
    def test_group_roundtrip(self, s3):
        doc = s3.to_json_dict()
        back = group_from_json_dict(doc)
        assert back.labels == s3.labels
        assert back.table == s3.table

    def test_group_from_permutation_doc(self):
        g = group_from_json_dict({"permutations": [[2, 1]]})
        assert g.order == 2

    def test_group_doc_requires_known_shape(self):
        with pytest.raises(ValidationError):
            group_from_json_dict({"labels": ["e"]})

    def test_word_roundtrip(self, z2, z3):
        doc = [{"side": "G", "element": "g"}, {"side": "H", "element": "g2"}]
        w = word_from_json_list(doc, z2, z3)
        assert w.length == 2
        assert w.to_json_list() == doc

    def test_word_bad_side(self, z2, z3):
        with pytest.raises(ValidationError):
            word_from_json_list([{"side": "X", "element": "g"}], z2, z3)

    def test_word_unknown_label(self, z2, z3):
        with pytest.raises(ValidationError):
            word_from_json_list([{"side": "G", "element": "zz"}], z2, z3)
