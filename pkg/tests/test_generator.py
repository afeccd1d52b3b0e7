import pytest

from twolayer.errors import InvalidArgument
from twolayer.generator import (Variant, count_classes, enumerate_canonical_words, generate_classes, iter_classes,
                                orbit_size, reflect_sentence, word_automorphisms)
from twolayer.network import two_layer
from twolayer.oracle import enumerate_second_layers
from twolayer.saturation import is_saturated_semantic, word_saturation_check
from twolayer.words import CYCLE, HEAD, STICK, is_canonical, sentence_of


def test_word_enumeration():
    assert set(enumerate_canonical_words(4, [STICK])) == {"12", "1212", "1221", "2112"}
    assert set(enumerate_canonical_words(4, [CYCLE])) == {"1", "121", "122"}
    assert enumerate_canonical_words(1, [HEAD]) == ["0"]
    for w in enumerate_canonical_words(11):
        assert is_canonical(w)


def test_cycle_words_are_exactly_the_canonical_ones():
    from itertools import product
    for k in range(2, 7):
        canon = set()
        for bits in product(("12", "21"), repeat=k):
            full = "".join(bits)
            if full.startswith("12") and is_canonical(full[:-1]):
                canon.add(full[:-1])
        assert canon == {w for w in enumerate_canonical_words(2 * k, [CYCLE]) if len(w) == 2 * k - 1}


def test_variants():
    assert Variant.parse("rs") is Variant.SATURATED
    assert Variant.parse("Full") is Variant.FULL
    with pytest.raises(InvalidArgument):
        Variant.parse("X")
    with pytest.raises(InvalidArgument):
        generate_classes(65)
    with pytest.raises(InvalidArgument):
        count_classes(1)


def test_known_class_counts():
    assert len(generate_classes(13, "RS")) == 212
    assert len(generate_classes(13, "R")) == 117
    assert len(generate_classes(5, "RG")) == 16
    assert count_classes(20, "RG") == 15906
    assert count_classes(17, "R") == 609


@pytest.mark.parametrize("n", range(2, 9))
def test_full_classes_match_labeled_enumeration(n):
    expected = sorted({sentence_of(two_layer(n, layer)) for layer in enumerate_second_layers(n)})
    assert generate_classes(n, "RG") == expected


@pytest.mark.parametrize("n", range(3, 9))
def test_saturated_classes_match_semantic_check(n):
    expected = sorted({sentence_of(net) for net in (two_layer(n, layer) for layer in enumerate_second_layers(n))
                       if is_saturated_semantic(net)})
    assert generate_classes(n, "RS") == expected


@pytest.mark.parametrize("n", range(3, 15))
def test_stream_relations(n):
    full, sat, refl = (generate_classes(n, v) for v in ("RG", "RS", "R"))
    assert full == sorted(set(full)) and sat == sorted(set(sat))
    assert set(sat) <= set(full)
    assert all(word_saturation_check(s) for s in sat)
    assert all(word_saturation_check(s) == (s in set(sat)) for s in full)
    assert set(refl) == {min(s, reflect_sentence(s)) for s in sat}
    assert list(iter_classes(n, "R")) == refl


@pytest.mark.parametrize("n", range(2, 23))
def test_counting_routes_agree(n):
    for variant in ("RG", "RS", "R"):
        formula = count_classes(n, variant)
        assert formula == count_classes(n, variant, method="enumerate")
        if n <= 16:
            assert formula == len(generate_classes(n, variant))


def test_reflect_sentence():
    assert reflect_sentence(("12", "122", "122")) == ("12", "122", "122")
    assert reflect_sentence(("2112",)) == ("1221",)
    for n in range(2, 11):
        for s in generate_classes(n, "RG"):
            assert reflect_sentence(reflect_sentence(s)) == s


def test_orbit_sizes():
    assert orbit_size(("122",), 4) == 1
    assert orbit_size(("1212",), 4) == 2
    assert orbit_size(("12", "12"), 4) == 1
    assert sum(orbit_size(s, 4) for s in generate_classes(4, "RG")) == 10
    assert sum(orbit_size(s, 5) for s in generate_classes(5, "RS")) == 10
    assert word_automorphisms("0") == 1 and word_automorphisms("1221") == 2 and word_automorphisms("121") == 2
    with pytest.raises(InvalidArgument):
        orbit_size(("122",), 5)


@pytest.mark.parametrize("n", range(2, 10))
def test_orbit_sizes_match_labeled_counts(n):
    counts = {}
    for layer in enumerate_second_layers(n):
        s = sentence_of(two_layer(n, layer))
        counts[s] = counts.get(s, 0) + 1
    assert all(orbit_size(s, n) == c for s, c in counts.items())


def test_parallel_generation_is_deterministic():
    for variant in ("RG", "RS", "R"):
        assert generate_classes(18, variant, jobs=1) == generate_classes(18, variant, jobs=4)
    assert count_classes(22, "RG", method="enumerate", jobs=4) == count_classes(22, "RG")
