"""Property-based checks over random networks and sentences."""

from hypothesis import given, settings
from hypothesis import strategies as st

from twolayer.generator import generate_classes, reflect_sentence
from twolayer.network import (Network, apply, first_layer_parberry, is_sorting_network, outputs, permute, reflect,
                              two_layer, untangle)
from twolayer.saturation import is_saturated_semantic, word_saturation_check
from twolayer.words import net_of_sentence, reflect_word, sentence_of


@st.composite
def matchings(draw, n):
    channels = draw(st.permutations(range(1, n + 1)))
    k = draw(st.integers(0, n // 2))
    return frozenset((min(a, b), max(a, b)) for a, b in zip(channels[:2 * k:2], channels[1:2 * k:2]))


@st.composite
def two_layer_nets(draw, low=2, high=9):
    n = draw(st.integers(low, high))
    return two_layer(n, draw(matchings(n)))


@st.composite
def nets_with_input(draw):
    net = draw(two_layer_nets())
    bits = draw(st.lists(st.sampled_from("01"), min_size=net.n, max_size=net.n))
    return net, "".join(bits)


@st.composite
def permutations_of(draw, n):
    image = draw(st.permutations(range(1, n + 1)))
    return dict(zip(range(1, n + 1), image))


@st.composite
def net_and_permutation(draw):
    net = draw(two_layer_nets(high=8))
    return net, draw(permutations_of(net.n))


@st.composite
def sentences(draw):
    n = draw(st.integers(2, 14))
    variant = draw(st.sampled_from(["RG", "RS"]))
    classes = generate_classes(n, variant)
    if not classes:
        return n, None
    return n, draw(st.sampled_from(classes))


@settings(max_examples=200, deadline=None)
@given(nets_with_input())
def test_apply_conserves_bits(case):
    net, x = case
    y = apply(net, x)
    assert sorted(y) == sorted(x)
    assert y in outputs(net)


@settings(max_examples=150, deadline=None)
@given(net_and_permutation())
def test_equivalent_nets_share_sentence_and_shape(case):
    net, pi = case
    image = untangle(permute(net, pi))
    assert image.kind == "standard"
    assert (image.n, image.depth, image.size) == (net.n, net.depth, net.size)
    assert is_sorting_network(image) == is_sorting_network(net)
    if image.layers[0] == net.layers[0]:
        assert sentence_of(image) == sentence_of(net)
        assert is_saturated_semantic(image) == is_saturated_semantic(net)


@settings(max_examples=150, deadline=None)
@given(net_and_permutation())
def test_untangled_outputs_are_a_relabeling(case):
    net, pi = case
    assert len(outputs(untangle(permute(net, pi)))) == len(outputs(net))


@settings(max_examples=200, deadline=None)
@given(two_layer_nets())
def test_reflection_is_an_involution(net):
    assert reflect(reflect(net)) == net
    assert sentence_of(reflect(net)) == tuple(sorted(reflect_word(w) for w in sentence_of(net)))


@settings(max_examples=200, deadline=None)
@given(two_layer_nets())
def test_network_sentence_round_trip(net):
    s = sentence_of(net)
    assert sentence_of(net_of_sentence(s, net.n)) == s
    assert word_saturation_check(s) == is_saturated_semantic(net)


@settings(max_examples=200, deadline=None)
@given(sentences())
def test_sentence_round_trip(case):
    n, s = case
    if s is None:
        return
    net = net_of_sentence(s, n)
    assert net.layers[0] == first_layer_parberry(n)
    assert sentence_of(net) == s
    assert reflect_sentence(reflect_sentence(s)) == s


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10), st.data())
def test_extension_never_strictly_grows_outputs(n, data):
    layer = data.draw(matchings(n))
    net = two_layer(n, layer)
    used = {c for p in layer for c in p}
    free = [c for c in range(1, n + 1) if c not in used]
    if len(free) < 2:
        return
    u, v = data.draw(st.permutations(free))[:2]
    bigger = Network(n, (net.layers[0], layer | {(u, v)}))
    assert not outputs(net) < outputs(bigger)
