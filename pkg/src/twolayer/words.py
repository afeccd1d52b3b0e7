"""Words and sentences naming two-layer networks with a maximal first layer.

Every channel has degree at most two in the union of both layers (one
first-layer edge, at most one second-layer edge), so each connected
component is a path or a cycle.  Reading its channels along a path and
writing ``0``/``1``/``2`` for free/min/max channels gives a word:

* Head   -- the component holding the free channel: ``0(12+21)*``
* Stick  -- a path between two channels unused at layer 2: ``(12+21)+``
* Cycle  -- all channels used at layer 2: ``12(12+21)*(1+2)``, or ``1``
  for a comparator repeated in both layers.

A sentence is the sorted tuple of the component words.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InvalidArgument, ParseError, UnsupportedInput
from .network import FREE, MAX, MIN, Network, channel_roles, first_layer_parberry, is_maximal

HEAD, STICK, CYCLE = "head", "stick", "cycle"

SYMBOL = {FREE: "0", MIN: "1", MAX: "2"}
_SWAP = str.maketrans("12", "21")


def _is_pairs(s: str) -> bool:
    return len(s) % 2 == 0 and all(s[k:k + 2] in ("12", "21") for k in range(0, len(s), 2))


def kind_of(word: str) -> str:
    """Classify a word by the grammar; raises ParseError if it matches no rule."""
    if word.startswith("0"):
        if _is_pairs(word[1:]):
            return HEAD
    elif len(word) % 2 == 0:
        if word and _is_pairs(word):
            return STICK
    elif word == "1" or (word.startswith("12") and _is_pairs(word[:-1]) and word[-1] in "12"):
        return CYCLE
    raise ParseError(f"not a word of the grammar: {word!r}")


def channel_count(word: str) -> int:
    kind_of(word)
    if word[0] == "0" or len(word) % 2 == 0:
        return len(word)
    return len(word) + 1


def _full_cycle(word: str) -> str:
    # the dropped last letter is determined by the letter before it
    return word + ("2" if word[-1] == "1" else "1")


def _min_traversal(full: str) -> str:
    rev = full[::-1]
    return min(min(full[k:] + full[:k], rev[k:] + rev[:k]) for k in range(0, len(full), 2))


def canonical_form(word: str, kind: str) -> str:
    """Canonical word of the component read as ``word`` (any traversal).

    For cycles ``word`` is the full traversal including its last letter.
    """
    if kind == HEAD:
        return word
    if kind == STICK:
        return min(word, word[::-1])
    return _min_traversal(word)[:-1]


def is_canonical(word: str) -> bool:
    kind = kind_of(word)
    if kind == CYCLE:
        return canonical_form(_full_cycle(word), CYCLE) == word
    return canonical_form(word, kind) == word


@lru_cache(maxsize=None)
def reflect_word(word: str) -> str:
    """Canonical word of the mirrored component (min and max roles exchanged)."""
    kind = kind_of(word)
    if kind == CYCLE:
        return canonical_form(_full_cycle(word).translate(_SWAP), CYCLE)
    return canonical_form(word.translate(_SWAP), kind)


# ---------------------------------------------------------------------------
# network -> words

def _adjacency(net: Network):
    if net.depth != 2:
        raise UnsupportedInput(f"word representation needs exactly two layers, got {net.depth}")
    first, second = net.layers
    if not is_maximal(first, net.n):
        raise UnsupportedInput("word representation needs a maximal first layer")
    p1, p2 = {}, {}
    for i, j in first:
        p1[i], p1[j] = j, i
    for i, j in second:
        p2[i], p2[j] = j, i
    return p1, p2


def components(net: Network) -> list[frozenset]:
    p1, p2 = _adjacency(net)
    seen, result = set(), []
    for start in range(1, net.n + 1):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            c = stack.pop()
            if c in comp:
                continue
            comp.add(c)
            stack.extend(x for x in (p1.get(c), p2.get(c)) if x is not None)
        seen |= comp
        result.append(frozenset(comp))
    return result


def _walk(start: int, p1, p2, first_step_layer1: bool) -> list[int]:
    path, seen = [start], {start}
    use_first = first_step_layer1
    c = start
    while True:
        nxt = (p1 if use_first else p2).get(c)
        if nxt is None or nxt in seen:
            return path
        path.append(nxt)
        seen.add(nxt)
        c = nxt
        use_first = not use_first


def word_of_component(net: Network, component) -> str:
    p1, p2 = _adjacency(net)
    roles = channel_roles(net)
    symbol = {c: SYMBOL[roles[c]] for c in component}

    def spell(path):
        return "".join(symbol[c] for c in path)

    free = [c for c in component if c not in p1]
    if free:
        if len(free) != 1:
            raise AssertionError(f"component {sorted(component)} holds {len(free)} free channels")
        path = _walk(free[0], p1, p2, first_step_layer1=False)
        kind, candidates = HEAD, [spell(path)]
    else:
        ends = [c for c in component if c not in p2]
        if len(ends) == 2:
            kind = STICK
            candidates = [spell(_walk(e, p1, p2, first_step_layer1=True)) for e in ends]
        elif not ends:
            kind = CYCLE
            candidates = [spell(_walk(c, p1, p2, first_step_layer1=True)) for c in component]
        else:
            raise AssertionError(f"component {sorted(component)} has {len(ends)} unused ends")
    for path_word in candidates:
        if len(path_word) != len(component):
            raise AssertionError(f"path {path_word!r} misses channels of {sorted(component)}")
    best = min(candidates)
    return best[:-1] if kind == CYCLE else best


def sentence_of(net: Network) -> tuple[str, ...]:
    return tuple(sorted(word_of_component(net, comp) for comp in components(net)))


def format_sentence(sentence) -> str:
    return ";".join(sentence)


def parse_sentence(text: str) -> tuple[str, ...]:
    text = text.strip()
    if not text:
        raise ParseError("empty sentence")
    words = text.split(";")
    column = 1
    for w in words:
        try:
            kind_of(w)
        except ParseError:
            raise ParseError(f"not a word of the grammar: {w!r}", 1, column) from None
        column += len(w) + 1
    return tuple(sorted(words))


# ---------------------------------------------------------------------------
# words -> network

def component_layer(word: str, pairs, free: int | None = None) -> list[tuple[int, int]]:
    """Second-layer comparators realizing ``word`` on the given first-layer pairs.

    ``pairs`` lists ``(min, max)`` channels of consecutive first-layer
    comparators; a Head also needs the ``free`` channel.  Character ``1``
    selects the min channel of a pair and ``2`` its max channel.
    """
    kind = kind_of(word)
    body = word[1:] if kind == HEAD else word
    if kind == CYCLE:
        body = _full_cycle(word)
    k = len(body) // 2
    if len(pairs) != k:
        raise InvalidArgument(f"word {word!r} needs {k} first-layer pairs, got {len(pairs)}")

    def channel(index, ch):
        lo, hi = pairs[index]
        return lo if ch == "1" else hi

    comparators = []
    if kind == HEAD:
        if free is None:
            raise InvalidArgument(f"head word {word!r} needs a free channel")
        if k:
            comparators.append((free, channel(0, body[0])))
    for idx in range(k - 1):
        comparators.append((channel(idx, body[2 * idx + 1]), channel(idx + 1, body[2 * idx + 2])))
    if kind == CYCLE:
        comparators.append((channel(k - 1, body[-1]), channel(0, body[0])))
    return [(min(a, b), max(a, b)) for a, b in comparators]


def net_of_word(word: str) -> Network:
    n = channel_count(word)
    return net_of_sentence((word,), n)


def _layout(first, n: int):
    first = sorted(first)
    used = {c for pair in first for c in pair}
    free = [c for c in range(1, n + 1) if c not in used]
    return first, (free[0] if free else None)


def net_of_sentence(sentence, n: int, first_layer=None) -> Network:
    """Build a network whose sentence is ``sentence`` over a maximal first layer.

    Components occupy consecutive first-layer comparators (ordered by their
    min channel) in sentence order; a Head uses the free channel.
    """
    if isinstance(sentence, str):
        sentence = parse_sentence(sentence)
    sentence = tuple(sorted(sentence))
    heads = [w for w in sentence if kind_of(w) == HEAD]
    if len(heads) > 1:
        raise InvalidArgument(f"sentence {format_sentence(sentence)!r} has {len(heads)} heads")
    total = sum(channel_count(w) for w in sentence)
    if total != n:
        raise InvalidArgument(f"sentence {format_sentence(sentence)!r} uses {total} channels, not {n}")
    if first_layer is None:
        first_layer = first_layer_parberry(n) if n >= 2 else ()
    first = frozenset(first_layer)
    if not is_maximal(first, n):
        raise UnsupportedInput("net_of_sentence needs a maximal first layer")
    pairs, free = _layout(first, n)
    second, at = [], 0
    for w in sentence:
        k = (channel_count(w) - (1 if kind_of(w) == HEAD else 0)) // 2
        second.extend(component_layer(w, pairs[at:at + k], free))
        at += k
    return Network(n, (first, frozenset(second)))
