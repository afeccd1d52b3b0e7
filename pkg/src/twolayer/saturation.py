"""Saturation of two-layer networks: by definition, by pattern, by word."""

from __future__ import annotations

from itertools import combinations

from .errors import InvalidArgument, UnsupportedInput
from .network import FREE, MAX, MIN, Network, channel_roles, is_maximal, is_redundant, outputs
from .words import CYCLE, HEAD, STICK, is_canonical, kind_of

P1, P2A, P2B, P2C, P3A, P3B = "P1", "P2a", "P2b", "P2c", "P3a", "P3b"
PATTERNS = (P1, P2A, P2B, P2C, P3A, P3B)


def _check_two_layer(net: Network):
    if net.depth != 2:
        raise UnsupportedInput(f"saturation is defined here for two-layer networks, got depth {net.depth}")
    if not is_maximal(net.layers[0], net.n):
        raise UnsupportedInput("saturation checks need a maximal first layer")


def unused_channels(net: Network) -> list[int]:
    used = {c for pair in net.layers[-1] for c in pair}
    return [c for c in range(1, net.n + 1) if c not in used]


def addable_comparators(net: Network) -> list[tuple[int, int]]:
    """Comparators that fit into the last layer, in both orientations, minus first-layer duplicates.

    A descending comparator is allowed: saturation is meant up to channel
    permutation, and some relabeling turns it into a standard one.
    """
    first = net.layers[0]
    found = []
    for u, v in combinations(unused_channels(net), 2):
        if (u, v) not in first:
            found.append((u, v))
        found.append((v, u))
    return found


def _extend(net: Network, comparator) -> Network:
    return Network(net.n, net.layers[:-1] + (net.layers[-1] | {comparator},))


def saturation_witness(net: Network, limit: int | None = None):
    """An addable comparator whose extension does not escape the output set, or None."""
    _check_two_layer(net)
    reference = outputs(net, limit)
    for comparator in addable_comparators(net):
        if outputs(_extend(net, comparator), limit) <= reference:
            return comparator
    return None


def is_saturated_semantic(net: Network, limit: int | None = None) -> bool:
    _check_two_layer(net)
    if is_redundant(net, limit):
        return False
    return saturation_witness(net, limit) is None


def forbidden_patterns(net: Network) -> set[str]:
    _check_two_layer(net)
    first, second = net.layers
    roles = channel_roles(net)
    partner = {}
    for i, j in first:
        partner[i], partner[j] = j, i
    joined = set()
    for i, j in second:
        joined.add((i, j))
        joined.add((j, i))
    unused = unused_channels(net)
    found = set()
    for u, v in combinations(unused, 2):
        ru, rv = roles[u], roles[v]
        if {ru, rv} == {MIN, MAX} and partner[u] != v:
            found.add(P1)
        if FREE in (ru, rv):
            other = rv if ru == FREE else ru
            found.add({FREE: P2A, MIN: P2B, MAX: P2C}[other])
        if ru == rv and ru in (MIN, MAX) and (partner[u], partner[v]) in joined:
            found.add(P3A if ru == MIN else P3B)
    return found


def is_redundant_two_layer(net: Network) -> bool:
    """Repeating a first-layer comparator at layer 2 (the two-layer redundancy test)."""
    return bool(net.layers[0] & net.layers[1])


def is_saturated_syntactic(net: Network) -> bool:
    _check_two_layer(net)
    return not is_redundant_two_layer(net) and not forbidden_patterns(net)


def _unused_ends(word: str, kind: str) -> str:
    if kind == HEAD:
        return word[-1] if len(word) > 1 else ""
    if kind == STICK and word != "12":
        return word[0] + word[-1]
    return ""


def word_saturation_check(sentence) -> bool:
    for w in sentence:
        if not is_canonical(w):
            raise InvalidArgument(f"word {w!r} is not canonical")
    kinds = [kind_of(w) for w in sentence]
    if "1" in sentence:
        return False
    if "0" in sentence or "12" in sentence:
        specials = sum(1 for w in sentence if w in ("0", "12"))
        if specials + kinds.count(CYCLE) != len(sentence) or specials > 1:
            return False
    ends = set()
    for w, kind in zip(sentence, kinds):
        if kind == STICK and w != "12":
            if len(w) == 4 or w[0] != w[-1]:
                return False
        ends.update(_unused_ends(w, kind))
    return len(ends) <= 1
