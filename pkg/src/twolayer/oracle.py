"""Brute-force ground truth for the fast generator.

Everything here works on labeled networks: explicit matchings, explicit
permutations, explicit output sets.  Nothing imports the word machinery,
so agreement with :mod:`twolayer.generator` is an independent check.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator

import numpy as np

from .errors import ResourceLimit
from .network import (Network, OutputSet, apply_layer_array, first_layer_parberry, output_array, outputs,
                      permute, reflect, two_layer, untangle)

MAX_MATCHING_N = 14
MAX_FULL_SEARCH_N = 8
MAX_PAIR_SEARCH_N = 12
MAX_SUBSUMPTION_N = 12


# ---------------------------------------------------------------------------
# second layers

def _matchings(channels: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not channels:
        yield []
        return
    first, rest = channels[0], channels[1:]
    # the lowest channel is either unused or joined to a later one
    for m in _matchings(rest):
        yield m
    for k, partner in enumerate(rest):
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + m


def enumerate_second_layers(n: int) -> Iterator[frozenset]:
    if n > MAX_MATCHING_N:
        raise ResourceLimit(f"enumerating all second layers is capped at n={MAX_MATCHING_N}")
    for m in _matchings(list(range(1, n + 1))):
        yield frozenset(m)


# ---------------------------------------------------------------------------
# permutation equivalence

def _structure_maps(target: Network, source: Network) -> Iterator[dict[int, int]]:
    """Permutations taking the first-layer pairs of ``source`` onto those of ``target``."""
    n = target.n
    pa, pb = sorted(target.layers[0]), sorted(source.layers[0])
    if len(pa) != len(pb):
        return
    used_a = {c for p in pa for c in p}
    used_b = {c for p in pb for c in p}
    free_a = [c for c in range(1, n + 1) if c not in used_a]
    free_b = [c for c in range(1, n + 1) if c not in used_b]
    for order in permutations(range(len(pa))):
        for flips in product((False, True), repeat=len(pa)):
            base = {}
            for (x, y), t, flip in zip(pb, order, flips):
                u, v = pa[t]
                base[x], base[y] = (v, u) if flip else (u, v)
            for image in permutations(free_a):
                pi = dict(base)
                pi.update(zip(free_b, image))
                yield pi


def equivalent_brute(c1: Network, c2: Network, full_search: bool = False):
    """A permutation pi with ``untangle(pi(c2)) == c1``, or None.

    By default only permutations that carry the first-layer pairs of ``c2``
    onto those of ``c1`` are tried; untangling keeps the unordered pairs of
    layer 1, so no other permutation can succeed.  ``full_search`` tries all
    of S_n instead.
    """
    if c1.n != c2.n or c1.depth != c2.depth:
        return None
    n = c1.n
    if full_search:
        if n > MAX_FULL_SEARCH_N:
            raise ResourceLimit(f"full permutation search is capped at n={MAX_FULL_SEARCH_N}")
        candidates = (dict(zip(range(1, n + 1), p)) for p in permutations(range(1, n + 1)))
    else:
        if n > MAX_PAIR_SEARCH_N:
            raise ResourceLimit(f"pair-preserving permutation search is capped at n={MAX_PAIR_SEARCH_N}")
        candidates = _structure_maps(c1, c2)
    for pi in candidates:
        if untangle(permute(c2, pi)) == c1:
            return pi
    return None


# ---------------------------------------------------------------------------
# graph representation

@dataclass(frozen=True)
class NetworkGraph:
    """One vertex per comparator; ``(u, label, v)`` when u's min/max output feeds v."""

    vertices: tuple
    edges: frozenset

    def out_edges(self, u):
        return sorted((label, v) for a, label, v in self.edges if a == u)


def to_graph(net: Network) -> NetworkGraph:
    vertices = []
    edges = set()
    last = {}  # channel -> (vertex, label) of the comparator that last wrote it
    for depth, layer in enumerate(net.layers):
        for comparator in sorted(layer):
            v = len(vertices)
            vertices.append((depth + 1, comparator))
            lo, hi = comparator
            for channel in comparator:
                if channel in last:
                    u, label = last[channel]
                    edges.add((u, label, v))
            last[lo] = (v, "min")
            last[hi] = (v, "max")
    return NetworkGraph(tuple(vertices), frozenset(edges))


def _labels_between(g: NetworkGraph):
    table = defaultdict(list)
    for u, label, v in g.edges:
        table[u, v].append(label)
    return {k: tuple(sorted(v)) for k, v in table.items()}


def _signature(g: NetworkGraph):
    sig = {u: ([], []) for u in range(len(g.vertices))}
    for u, label, v in g.edges:
        sig[u][1].append(label)
        sig[v][0].append(label)
    return {u: (tuple(sorted(a)), tuple(sorted(b))) for u, (a, b) in sig.items()}


def find_graph_isomorphism(g1: NetworkGraph, g2: NetworkGraph):
    """A label- and direction-preserving vertex bijection, or None."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    s1, s2 = _signature(g1), _signature(g2)
    if Counter(s1.values()) != Counter(s2.values()):
        return None
    lab1, lab2 = _labels_between(g1), _labels_between(g2)
    neighbours = defaultdict(set)
    for u, _, v in g1.edges:
        neighbours[u].add(v)
        neighbours[v].add(u)

    # visit vertices so that each one (after the first of its component) touches a mapped one
    order, seen = [], set()
    for root in sorted(range(len(g1.vertices)), key=lambda u: -len(neighbours[u])):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(neighbours[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    mapping, taken = {}, set()

    def consistent(u, x):
        for w, y in mapping.items():
            if lab1.get((u, w), ()) != lab2.get((x, y), ()) or lab1.get((w, u), ()) != lab2.get((y, x), ()):
                return False
        return True

    def extend(k):
        if k == len(order):
            return True
        u = order[k]
        for x in range(len(g2.vertices)):
            if x in taken or s2[x] != s1[u] or not consistent(u, x):
                continue
            mapping[u] = x
            taken.add(x)
            if extend(k + 1):
                return True
            del mapping[u]
            taken.discard(x)
        return False

    return dict(mapping) if extend(0) else None


def graphs_isomorphic(g1: NetworkGraph, g2: NetworkGraph) -> bool:
    return find_graph_isomorphism(g1, g2) is not None


# ---------------------------------------------------------------------------
# output subsumption

def _weights(values: np.ndarray) -> Counter:
    return Counter(int(v).bit_count() for v in values)


def subsumes(la, lb, n: int):
    """A permutation pi with ``outputs(F_n;lb) <= pi(outputs(F_n;la))``, or None.

    ``pi`` moves the value on channel c to channel ``pi[c]``.  The search
    assigns, for each channel of the ``lb`` outputs, its source channel in
    the ``la`` outputs, pruning by column counts and by projections onto
    the channels assigned so far.
    """
    if n > MAX_SUBSUMPTION_N:
        raise ResourceLimit(f"subsumption search is capped at n={MAX_SUBSUMPTION_N}")
    oa = output_array(two_layer(n, la))
    ob = output_array(two_layer(n, lb))
    return _subsumption_witness(oa, ob, n)


def _subsumption_witness(oa: np.ndarray, ob: np.ndarray, n: int):
    if len(ob) > len(oa):
        return None
    wa, wb = _weights(oa), _weights(ob)
    if any(wb[w] > wa[w] for w in wb):
        return None
    cols_a = [(oa >> c) & 1 for c in range(n)]
    cols_b = [(ob >> c) & 1 for c in range(n)]
    ones_a = [int(c.sum()) for c in cols_a]
    ones_b = [int(c.sum()) for c in cols_b]
    zeros_a = [len(oa) - x for x in ones_a]
    zeros_b = [len(ob) - x for x in ones_b]
    options = {j: [s for s in range(n) if ones_b[j] <= ones_a[s] and zeros_b[j] <= zeros_a[s]] for j in range(n)}
    if any(not opts for opts in options.values()):
        return None
    targets = sorted(range(n), key=lambda j: (len(options[j]), j))
    source_of = {}

    def search(k, key_a, key_b):
        if k == n:
            return True
        j = targets[k]
        kb = (key_b << 1) | cols_b[j]
        for s in options[j]:
            if s in source_of.values():
                continue
            ka = (key_a << 1) | cols_a[s]
            if not np.isin(kb, ka).all():
                continue
            source_of[j] = s
            if search(k + 1, ka, kb):
                return True
            del source_of[j]
        return False

    zero_a = np.zeros(len(oa), dtype=np.int64)
    zero_b = np.zeros(len(ob), dtype=np.int64)
    if not search(0, zero_a, zero_b):
        return None
    return {s + 1: j + 1 for j, s in source_of.items()}


def check_conjecture(n: int, sentences=None):
    """No saturated class has its outputs inside a permuted image of another's.

    Returns ``(ok, counterexamples)`` with counterexamples as
    ``(sentence_a, sentence_b, pi)`` triples.
    """
    # imported lazily: the generator only supplies the class list here
    from .generator import generate_classes
    from .words import net_of_sentence

    if sentences is None:
        sentences = generate_classes(n, "RS")
    outs = {s: output_array(net_of_sentence(s, n)) for s in sentences}
    found = []
    for sa, sb in permutations(sentences, 2):
        pi = _subsumption_witness(outs[sa], outs[sb], n)
        if pi is not None:
            found.append((sa, sb, pi))
    return not found, found


# ---------------------------------------------------------------------------
# labeled saturation scan

class _TwoLayerScanner:
    """Output sets of ``F_n;L`` computed as images of the first layer's outputs."""

    def __init__(self, n: int):
        self.n = n
        self.first = first_layer_parberry(n)
        everything = np.arange(1 << n, dtype=np.int64)
        self.after_first = np.unique(apply_layer_array(everything, self.first))
        self.without = {p: np.unique(apply_layer_array(everything, self.first - {p})) for p in self.first}

    def image(self, layer, start=None):
        values = self.after_first if start is None else start
        return np.unique(apply_layer_array(values, layer))

    def witness(self, layer, outs):
        """An addable comparator whose extension stays inside ``outs``."""
        member = np.zeros(1 << self.n, dtype=bool)
        member[outs] = True
        used = {c for p in layer for c in p}
        unused = [c for c in range(1, self.n + 1) if c not in used]
        for a, b in combinations(unused, 2):
            for u, v in ((a, b), (b, a)):
                if (u, v) in self.first:
                    continue
                moved = outs[(((outs >> (u - 1)) & 1) == 1) & (((outs >> (v - 1)) & 1) == 0)]
                if member[moved ^ ((1 << (u - 1)) | (1 << (v - 1)))].all():
                    return (u, v)
        return None

    def redundant(self, layer, outs):
        for c in layer:
            if np.array_equal(self.image(layer - {c}), outs):
                return True
        for p, start in self.without.items():
            if np.array_equal(self.image(layer, start), outs):
                return True
        return False

    def saturated(self, layer) -> bool:
        outs = self.image(layer)
        return self.witness(layer, outs) is None and not self.redundant(layer, outs)


def labeled_counts(n: int) -> tuple[int, int]:
    """(|G_n|, |S_n|) by enumerating every second layer and testing saturation semantically."""
    scanner = _TwoLayerScanner(n)
    g = s = 0
    for layer in enumerate_second_layers(n):
        g += 1
        s += scanner.saturated(layer)
    return g, s


def saturated_layers(n: int) -> list[frozenset]:
    scanner = _TwoLayerScanner(n)
    return [layer for layer in enumerate_second_layers(n) if scanner.saturated(layer)]


# ---------------------------------------------------------------------------
# class counts by pairwise equivalence

MAX_CLASSING_N = 8


def equivalence_classes(nets: list[Network]) -> list[list[Network]]:
    """Partition networks into permutation-equivalence classes, pair by pair."""
    buckets = defaultdict(list)  # cheap invariants; members still compared explicitly
    for net in nets:
        key = (len(net.layers[-1]), len(outputs(net)))
        for cls in buckets[key]:
            if equivalent_brute(cls[0], net) is not None:
                cls.append(net)
                break
        else:
            buckets[key].append([net])
    return [cls for key in sorted(buckets) for cls in buckets[key]]


def reflection_classes(classes: list[list[Network]]) -> int:
    """Number of classes left after also identifying each class with its mirror image."""
    parent = list(range(len(classes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, cls in enumerate(classes):
        mirror = reflect(cls[0])
        for b, other in enumerate(classes):
            if equivalent_brute(other[0], mirror) is not None:
                parent[find(a)] = find(b)
                break
    return len({find(a) for a in range(len(classes))})


@dataclass
class BruteRow:
    n: int
    G: int
    S: int
    RG: int | None = None
    RS: int | None = None
    R: int | None = None


def brute_force_table(n: int, classes: bool | None = None) -> BruteRow:
    if n > MAX_MATCHING_N:
        raise ResourceLimit(f"brute-force counts are capped at n={MAX_MATCHING_N}")
    if classes is None:
        classes = n <= MAX_CLASSING_N
    if not classes:
        return BruteRow(n, *labeled_counts(n))
    scanner = _TwoLayerScanner(n)
    layers = list(enumerate_second_layers(n))
    sat = [layer for layer in layers if scanner.saturated(layer)]
    all_classes = equivalence_classes([two_layer(n, layer) for layer in layers])
    sat_classes = equivalence_classes([two_layer(n, layer) for layer in sat])
    return BruteRow(n, len(layers), len(sat), len(all_classes), len(sat_classes), reflection_classes(sat_classes))
