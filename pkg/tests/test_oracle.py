import pytest

from twolayer.errors import ResourceLimit
from twolayer.network import perm_from_cycles, permute, two_layer
from twolayer.oracle import (BruteRow, brute_force_table, check_conjecture, enumerate_second_layers,
                             equivalent_brute, find_graph_isomorphism, graphs_isomorphic, labeled_counts, subsumes,
                             to_graph)
from twolayer.network import Network
from twolayer.saturation import is_saturated_semantic
from twolayer.words import sentence_of

from conftest import NETS4, SHUFFLED, UNSHUFFLED


def test_second_layer_counts():
    assert [sum(1 for _ in enumerate_second_layers(n)) for n in range(1, 9)] == [1, 2, 4, 10, 26, 76, 232, 764]
    assert len(set(enumerate_second_layers(7))) == 232
    with pytest.raises(ResourceLimit):
        next(enumerate_second_layers(15))


def test_equivalence_examples():
    pi = equivalent_brute(NETS4["c"], NETS4["b"])
    assert pi is not None
    assert equivalent_brute(NETS4["f"], NETS4["e"]) is not None
    assert equivalent_brute(NETS4["i"], NETS4["j"]) is None
    assert equivalent_brute(NETS4["i"], NETS4["j"], full_search=True) is None
    assert equivalent_brute(UNSHUFFLED, SHUFFLED) is not None


def test_full_search_limit():
    net = two_layer(9, [])
    with pytest.raises(ResourceLimit):
        equivalent_brute(net, net, full_search=True)


@pytest.mark.parametrize("n", range(2, 6))
def test_restricted_search_agrees_with_full_search(n):
    nets = [two_layer(n, layer) for layer in enumerate_second_layers(n)]
    for a in nets:
        for b in nets:
            assert (equivalent_brute(a, b) is None) == (equivalent_brute(a, b, full_search=True) is None)


def test_graph_of_small_networks():
    g = to_graph(Network(2, (frozenset({(1, 2)}),)))
    assert len(g.vertices) == 1 and not g.edges
    g = to_graph(Network(4, (frozenset({(1, 2), (3, 4)}),)))
    assert len(g.vertices) == 2 and not g.edges
    g = to_graph(SHUFFLED)
    assert len(g.vertices) == 6
    assert all(label in ("min", "max") for _, label, _ in g.edges)


def _is_isomorphism(mapping, g1, g2):
    return {(mapping[u], label, mapping[v]) for u, label, v in g1.edges} == set(g2.edges)


def test_graph_isomorphism_witness():
    ga, gb = to_graph(SHUFFLED), to_graph(UNSHUFFLED)
    # vertices are numbered layer by layer, comparators sorted inside a layer
    a = dict(zip("abcdef", range(6)))
    b = dict(zip("uvwxyz", range(6)))
    assert (a["a"], "min", a["c"]) in ga.edges and (a["a"], "max", a["e"]) in ga.edges
    named = {"a": "v", "b": "u", "c": "w", "d": "x", "e": "y", "f": "z"}
    assert _is_isomorphism({a[k]: b[v] for k, v in named.items()}, ga, gb)
    found = find_graph_isomorphism(ga, gb)
    assert found is not None and _is_isomorphism(found, ga, gb)
    assert not graphs_isomorphic(to_graph(NETS4["i"]), to_graph(NETS4["j"]))
    assert graphs_isomorphic(ga, ga)


def test_subsumption():
    g, i, j = NETS4["g"].layers[1], NETS4["i"].layers[1], NETS4["j"].layers[1]
    pi = subsumes(g, i, 4)
    assert pi is not None
    from twolayer.network import outputs
    assert outputs(NETS4["i"]) <= outputs(NETS4["g"]).permuted(pi)
    assert subsumes(i, i, 4) is not None
    assert subsumes(i, j, 4) is None and subsumes(j, i, 4) is None


@pytest.mark.parametrize("n", range(3, 7))
def test_subsumption_against_exhaustive_permutations(n):
    from itertools import permutations
    from twolayer.network import outputs
    layers = list(enumerate_second_layers(n))[::3]
    outs = {layer: outputs(two_layer(n, layer)) for layer in layers}
    perms = [dict(zip(range(1, n + 1), p)) for p in permutations(range(1, n + 1))]
    for la in layers[:8]:
        images = [outs[la].permuted(p) for p in perms]
        for lb in layers:
            exists = any(outs[lb] <= img for img in images)
            assert (subsumes(la, lb, n) is not None) == exists


@pytest.mark.parametrize("n", range(3, 9))
def test_no_subsumption_among_saturated_classes(n):
    ok, found = check_conjecture(n)
    assert ok and not found


def test_labeled_counts_small():
    assert labeled_counts(4) == (10, 2)
    assert labeled_counts(5) == (26, 10)


def test_brute_force_rows():
    assert brute_force_table(4) == BruteRow(4, 10, 2, 8, 2, 2)
    assert brute_force_table(5) == BruteRow(5, 26, 10, 16, 6, 4)
    assert brute_force_table(3) == BruteRow(3, 4, 2, 4, 2, 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_three_equivalence_notions_agree(n):
    nets = [two_layer(n, layer) for layer in enumerate_second_layers(n)]
    sentences = [sentence_of(x) for x in nets]
    graphs = [to_graph(x) for x in nets]
    for a in range(len(nets)):
        for b in range(a, len(nets)):
            same = sentences[a] == sentences[b]
            assert same == (equivalent_brute(nets[a], nets[b]) is not None)
            assert same == graphs_isomorphic(graphs[a], graphs[b])


def test_nonsaturated_net_is_subsumed_by_an_extension():
    for n in range(3, 8):
        for layer in enumerate_second_layers(n):
            net = two_layer(n, layer)
            if layer & net.layers[0] or is_saturated_semantic(net):
                continue
            extended = [layer | {(u, v)} for u in range(1, n + 1) for v in range(u + 1, n + 1)
                        if not {u, v} & {c for p in layer for c in p} and (u, v) not in net.layers[0]]
            assert any(subsumes(layer, ext, n) is not None for ext in extended), layer


def test_permute_round_trip_helper():
    pi = perm_from_cycles(4, [(1, 3), (2, 4)])
    assert permute(permute(NETS4["i"], pi), pi) == NETS4["i"]
