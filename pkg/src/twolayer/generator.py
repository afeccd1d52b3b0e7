"""Isomorph-free generation of two-layer prefixes as canonical sentences.

Sentences are built as multisets of canonical words in nondecreasing
lexicographic order, so every equivalence class appears exactly once
without any post-hoc deduplication.  Streams are ordered by the tuple of
words, which also makes them partitionable by the first word.
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

from .errors import InvalidArgument
from .words import CYCLE, HEAD, STICK, channel_count, kind_of, reflect_word

MAX_N = 64


class Variant(enum.Enum):
    FULL = "RG"
    SATURATED = "RS"
    REFLECTION = "R"  # saturated, modulo permutation and reflection

    @classmethod
    def parse(cls, name) -> "Variant":
        if isinstance(name, cls):
            return name
        aliases = {"RG": cls.FULL, "FULL": cls.FULL, "RS": cls.SATURATED, "SATURATED": cls.SATURATED,
                   "R": cls.REFLECTION, "REFLECTION": cls.REFLECTION,
                   "SATURATEDMODULOREFLECTION": cls.REFLECTION}
        try:
            return aliases[str(name).upper()]
        except KeyError:
            raise InvalidArgument(f"unknown variant {name!r}") from None


# ---------------------------------------------------------------------------
# canonical words

def _pair_word(bits: int, k: int) -> str:
    # bit t (from the left) selects "21" over "12" for the t-th pair
    return "".join("21" if bits >> (k - 1 - t) & 1 else "12" for t in range(k))


def _revcomp(bits: int, k: int) -> int:
    out = 0
    for t in range(k):
        out = (out << 1) | (1 - (bits >> t & 1))
    return out


def _necklaces(k: int) -> Iterator[list[int]]:
    """Binary necklaces of length k (least rotation), in lexicographic order."""
    a = [0] * (k + 1)

    def gen(t, p):
        if t > k:
            if k % p == 0:
                yield a[1:]
            return
        a[t] = a[t - p]
        yield from gen(t + 1, p)
        if a[t - p] == 0:
            a[t] = 1
            yield from gen(t + 1, t)

    yield from gen(1, 1)


def _least_rotation(seq: list[int]) -> list[int]:
    return min(seq[r:] + seq[:r] for r in range(len(seq)))


def _cycle_words(k: int) -> list[str]:
    if k == 1:
        return ["1"]
    words = []
    for neck in _necklaces(k):
        mirrored = [1 - b for b in reversed(neck)]
        if neck <= _least_rotation(mirrored):
            words.append("".join("21" if b else "12" for b in neck)[:-1])
    return words


def _stick_words(k: int) -> list[str]:
    return [_pair_word(b, k) for b in range(1 << k) if b <= _revcomp(b, k)]


def _head_words(k: int) -> list[str]:
    return ["0" + _pair_word(b, k) for b in range(1 << k)]


@lru_cache(maxsize=None)
def _words_of_size(size: int, kind: str) -> tuple[str, ...]:
    if kind == HEAD:
        return tuple(_head_words((size - 1) // 2)) if size % 2 == 1 else ()
    if size % 2 or size < 2:
        return ()
    k = size // 2
    return tuple(_stick_words(k) if kind == STICK else _cycle_words(k))


def enumerate_canonical_words(budget: int, kinds=(HEAD, STICK, CYCLE)) -> list[str]:
    """All canonical words of the given kinds using at most ``budget`` channels, sorted."""
    if budget < 1:
        raise InvalidArgument(f"channel budget must be >= 1, got {budget}")
    if isinstance(kinds, str):
        kinds = (kinds,)
    words = []
    for size in range(1, budget + 1):
        for kind in kinds:
            words.extend(_words_of_size(size, kind))
    return sorted(words)


# ---------------------------------------------------------------------------
# saturated word classes

_CYCLE_TAG, _SINGLE_TAG = "cycle", "single"


def saturated_tag(word: str):
    """How a word may take part in a saturated sentence, or None if it never can.

    Heads and sticks leave channels unused at layer 2; those must all share
    one role, which the tag records as ``"1"`` or ``"2"``.
    """
    kind = kind_of(word)
    if word == "1":
        return None
    if kind == CYCLE:
        return _CYCLE_TAG
    if word in ("0", "12"):
        return _SINGLE_TAG
    if kind == HEAD:
        return word[-1]
    if len(word) == 4 or word[0] != word[-1]:
        return None
    return word[0]


def _accept(state, tag):
    single, polarity, noncycle = state
    if tag == _CYCLE_TAG:
        return state
    if single:
        return None
    if tag == _SINGLE_TAG:
        return None if noncycle else (True, polarity, noncycle + 1)
    if polarity is not None and polarity != tag:
        return None
    return (False, tag, noncycle + 1)


_START = (False, None, 0)


# ---------------------------------------------------------------------------
# multiset enumeration

class _Catalog:
    """Non-head words up to n channels grouped by size, each group sorted."""

    def __init__(self, n: int, saturated: bool):
        self.saturated = saturated
        self.by_size = {}
        self.tags = {}
        for size in range(2, n + 1, 2):
            words = sorted(_words_of_size(size, STICK) + _words_of_size(size, CYCLE))
            if saturated:
                tagged = [(w, saturated_tag(w)) for w in words]
                words = [w for w, t in tagged if t is not None]
                self.tags.update((w, t) for w, t in tagged if t is not None)
            if words:
                self.by_size[size] = words
        self.sizes = sorted(self.by_size)
        # largest word using at most r channels; completions must not go below it
        self.max_upto = {0: ""}
        best = ""
        for r in range(1, n + 1):
            if r in self.by_size:
                best = max(best, self.by_size[r][-1])
            self.max_upto[r] = best
        heads = []
        for size in range(1, n + 1, 2):
            for w in _words_of_size(size, HEAD):
                if not saturated or saturated_tag(w) is not None:
                    heads.append(w)
        self.heads = sorted(heads)

    def tag(self, word):
        return self.tags[word] if word in self.tags else saturated_tag(word)


@lru_cache(maxsize=8)
def _catalog(n: int, saturated: bool) -> _Catalog:
    return _Catalog(n, saturated)


def _complete(cat: _Catalog, prefix: list, last: str, remaining: int, state, out: list, counting: bool) -> int:
    """Append (or count) every completion of ``prefix`` using ``remaining`` channels."""
    if remaining == 0:
        if not counting:
            out.append(tuple(prefix))
        return 1
    total = 0
    for size in cat.sizes:
        if size > remaining:
            break
        words = cat.by_size[size]
        lo = bisect_left(words, last)
        rest = remaining - size
        hi = bisect_right(words, cat.max_upto[rest]) if rest else len(words)
        if lo >= hi:
            continue
        if rest == 0 and counting and not cat.saturated:
            total += hi - lo
            continue
        for w in words[lo:hi]:
            if cat.saturated:
                nstate = _accept(state, cat.tags[w])
                if nstate is None:
                    continue
            else:
                nstate = state
            prefix.append(w)
            total += _complete(cat, prefix, w, rest, nstate, out, counting)
            prefix.pop()
    return total


def _first_words(cat: _Catalog, n: int) -> list[str]:
    if n % 2:
        return [h for h in cat.heads if channel_count(h) <= n]
    return sorted(w for size in cat.sizes if size <= n for w in cat.by_size[size])


def _partition(n: int, saturated: bool, first: str, counting: bool):
    cat = _catalog(n, saturated)
    state = _START
    if saturated:
        state = _accept(state, cat.tag(first))
        if state is None:
            return 0 if counting else []
    out = []
    # a head sorts before every other word, so completions start from ""
    last = "" if first.startswith("0") else first
    total = _complete(cat, [first], last, n - channel_count(first), state, out, counting)
    if counting:
        return total
    out.sort()
    return out


def _check_n(n: int):
    if not 2 <= n <= MAX_N:
        raise InvalidArgument(f"n must lie in 2..{MAX_N}, got {n}")


def _run_partitions(n: int, saturated: bool, counting: bool, jobs: int):
    firsts = _first_words(_catalog(n, saturated), n)
    args = [(n, saturated, f, counting) for f in firsts]
    if jobs <= 1 or len(args) < 2:
        return [_partition(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order, so the merge is deterministic
        return list(pool.map(_partition, *zip(*args), chunksize=max(1, len(args) // (4 * jobs))))


def reflect_sentence(sentence) -> tuple[str, ...]:
    return tuple(sorted(reflect_word(w) for w in sentence))


def generate_classes(n: int, variant="RG", jobs: int = 1) -> list[tuple[str, ...]]:
    """Canonical sentences of every class on n channels, in ascending tuple order."""
    _check_n(n)
    variant = Variant.parse(variant)
    parts = _run_partitions(n, variant is not Variant.FULL, counting=False, jobs=jobs)
    sentences = [s for part in parts for s in part]
    if variant is Variant.REFLECTION:
        sentences = [s for s in sentences if s <= reflect_sentence(s)]
    return sentences


def iter_classes(n: int, variant="RG") -> Iterator[tuple[str, ...]]:
    """Lazy version of :func:`generate_classes` (one partition in memory at a time)."""
    _check_n(n)
    variant = Variant.parse(variant)
    saturated = variant is not Variant.FULL
    for first in _first_words(_catalog(n, saturated), n):
        for s in _partition(n, saturated, first, False):
            if variant is not Variant.REFLECTION or s <= reflect_sentence(s):
                yield s


# ---------------------------------------------------------------------------
# counting

def _multiset_series(counts: dict[int, int], n: int, step: int = 1) -> list[int]:
    """Coefficients up to x^n of prod_s (1 - x^(step*s))^(-counts[s])."""
    series = [1] + [0] * n
    for size, c in counts.items():
        weight = size * step
        if c == 0 or weight > n:
            continue
        factor = [0] * (n + 1)
        for j in range(n // weight + 1):
            factor[j * weight] = comb(c + j - 1, j)
        series = _multiply(series, factor, n)
    return series


def _multiply(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _count_formula(n: int, variant: Variant) -> int:
    if variant is Variant.FULL:
        others = {s: len(_words_of_size(s, STICK)) + len(_words_of_size(s, CYCLE)) for s in range(2, n + 1, 2)}
        multisets = _multiset_series(others, n)
        if n % 2 == 0:
            return multisets[n]
        return sum(len(_words_of_size(h, HEAD)) * multisets[n - h] for h in range(1, n + 1, 2))

    cycles = {s: len([w for w in _words_of_size(s, CYCLE) if w != "1"]) for s in range(2, n + 1, 2)}
    # sticks whose two unused ends are both min channels; max-ended ones mirror them
    sticks = {s: len([w for w in _words_of_size(s, STICK) if saturated_tag(w) == "1"]) for s in range(2, n + 1, 2)}
    cyc = _multiset_series(cycles, n)
    stk = _multiset_series(sticks, n)
    with_sticks = _multiply(cyc, stk, n)
    if n % 2 == 0:
        # cycles only, "12" with cycles, or one polarity of long sticks with cycles
        saturated = cyc[n] + cyc[n - 2] + 2 * (with_sticks[n] - cyc[n])
    else:
        # head "0" with cycles, or a long head of either polarity with matching sticks
        saturated = cyc[n - 1] + 2 * sum((1 << ((h - 3) // 2)) * with_sticks[n - h] for h in range(3, n + 1, 2))
    if variant is Variant.SATURATED:
        return saturated

    # Burnside over {id, reflection}: only sentences made of cycles plus "0"
    # or "12" can be mirror-invariant, since reflection flips end polarities
    fixed_cycles, swapped_pairs = {}, {}
    for s in range(4, n + 1, 2):
        words = [w for w in _words_of_size(s, CYCLE)]
        fixed = sum(1 for w in words if reflect_word(w) == w)
        fixed_cycles[s] = fixed
        swapped_pairs[s] = (len(words) - fixed) // 2
    symmetric = _multiply(_multiset_series(fixed_cycles, n), _multiset_series(swapped_pairs, n, step=2), n)
    if n % 2 == 0:
        invariant = symmetric[n] + symmetric[n - 2]
    else:
        invariant = symmetric[n - 1]
    return (saturated + invariant) // 2


def count_classes(n: int, variant="RG", method: str = "formula", jobs: int = 1) -> int:
    """Number of classes, by generating series (``formula``) or by ``enumerate``."""
    _check_n(n)
    variant = Variant.parse(variant)
    if method == "formula":
        return _count_formula(n, variant)
    if method != "enumerate":
        raise InvalidArgument(f"unknown counting method {method!r}")
    if variant is Variant.REFLECTION:
        return len(generate_classes(n, variant, jobs))
    return sum(_run_partitions(n, variant is Variant.SATURATED, counting=True, jobs=jobs))


# ---------------------------------------------------------------------------
# labeled class sizes

def word_automorphisms(word: str) -> int:
    """Role-preserving symmetries of the component spelled by ``word``."""
    kind = kind_of(word)
    if kind == HEAD:
        return 1
    if kind == STICK:
        return 2 if word == word[::-1] else 1
    full = word + ("2" if word[-1] == "1" else "1")
    rev = full[::-1]
    return sum((full[k:] + full[:k] == full) + (rev[k:] + rev[:k] == full) for k in range(0, len(full), 2))


def orbit_size(sentence, n: int) -> int:
    """Number of labeled second layers (over F_n) whose sentence is ``sentence``."""
    sentence = tuple(sentence)
    total = sum(channel_count(w) for w in sentence)
    if total != n:
        raise InvalidArgument(f"sentence uses {total} channels, not {n}")
    stabilizer = 1
    for w in set(sentence):
        mult = sentence.count(w)
        stabilizer *= factorial(mult) * word_automorphisms(w) ** mult
    return factorial(n // 2) // stabilizer
