"""Comparator networks on n channels and their exact 0/1 semantics.

Channels are numbered from 1.  A comparator ``(i, j)`` places the smaller
value on channel ``i`` and the larger on channel ``j``; it is *standard*
when ``i < j`` and *generalized* otherwise.  A binary vector ``x1..xn`` is
encoded as an integer whose bit ``i - 1`` holds ``xi``, and printed
left to right as ``x1 x2 ... xn``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidArgument, ParseError, ResourceLimit

Comparator = tuple[int, int]
Layer = frozenset  # frozenset[Comparator]

DEFAULT_MAX_CHANNELS = 24
MAX_CHANNELS_ENV = "TWOLAYER_MAX_CHANNELS"

MIN, MAX, FREE = "min", "max", "free"


def max_channels() -> int:
    value = os.environ.get(MAX_CHANNELS_ENV)
    return int(value) if value else DEFAULT_MAX_CHANNELS


def _as_layer(comparators: Iterable[Sequence[int]]) -> frozenset:
    return frozenset((int(a), int(b)) for a, b in comparators)


@dataclass(frozen=True)
class Network:
    n: int
    layers: tuple

    def __post_init__(self):
        layers = tuple(_as_layer(layer) for layer in self.layers)
        object.__setattr__(self, "layers", layers)
        if self.n < 1:
            raise InvalidArgument(f"channel count must be positive, got {self.n}")
        for depth, layer in enumerate(layers, 1):
            seen = set()
            for i, j in layer:
                if i == j:
                    raise InvalidArgument(f"layer {depth}: comparator ({i},{j}) joins a channel to itself")
                for c in (i, j):
                    if not 1 <= c <= self.n:
                        raise InvalidArgument(f"layer {depth}: channel {c} outside 1..{self.n}")
                    if c in seen:
                        raise InvalidArgument(f"layer {depth}: channel {c} used twice")
                    seen.add(c)

    @property
    def kind(self) -> str:
        if any(i > j for layer in self.layers for i, j in layer):
            return "generalized"
        return "standard"

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def size(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def __str__(self):
        return format_network(self)


def two_layer(n: int, second: Iterable[Sequence[int]], first=None) -> Network:
    """``F_n;second`` unless another first layer is given."""
    if first is None:
        first = first_layer_parberry(n)
    return Network(n, (first, second))


def first_layer_parberry(n: int) -> frozenset:
    if n < 2:
        raise InvalidArgument(f"a first layer needs n >= 2, got {n}")
    return frozenset((2 * k - 1, 2 * k) for k in range(1, n // 2 + 1))


def first_layer_reflective(n: int) -> frozenset:
    if n < 2:
        raise InvalidArgument(f"a first layer needs n >= 2, got {n}")
    return frozenset((i, n - i + 1) for i in range(1, n // 2 + 1))


def is_maximal(layer, n: int) -> bool:
    return len(layer) == n // 2


# ---------------------------------------------------------------------------
# evaluation

def _bits_of(vector, n: int) -> int:
    if isinstance(vector, str):
        if len(vector) != n or set(vector) - {"0", "1"}:
            raise InvalidArgument(f"expected a {n}-bit 0/1 string, got {vector!r}")
        return sum(1 << k for k, ch in enumerate(vector) if ch == "1")
    vector = tuple(vector)
    if len(vector) != n or any(b not in (0, 1) for b in vector):
        raise InvalidArgument(f"expected {n} bits, got {vector!r}")
    return sum(1 << k for k, b in enumerate(vector) if b)


def vector_str(value: int, n: int) -> str:
    return "".join("1" if value >> k & 1 else "0" for k in range(n))


def _apply_int(layers, value: int) -> int:
    for layer in layers:
        for i, j in layer:
            if value >> (i - 1) & 1 and not value >> (j - 1) & 1:
                value ^= (1 << (i - 1)) | (1 << (j - 1))
    return value


def apply(net: Network, vector) -> str:
    """Propagate one 0/1 input through the network; returns the output string."""
    return vector_str(_apply_int(net.layers, _bits_of(vector, net.n)), net.n)


def apply_layer_array(values: np.ndarray, layer) -> np.ndarray:
    """Apply one layer to an array of encoded vectors (returns a new array)."""
    values = values.copy()
    for i, j in layer:
        hi_i = (values >> (i - 1)) & 1
        lo_j = 1 - ((values >> (j - 1)) & 1)
        values ^= (hi_i & lo_j) * ((1 << (i - 1)) | (1 << (j - 1)))
    return values


def output_array(net: Network, limit: int | None = None) -> np.ndarray:
    """Sorted distinct outputs of ``net`` over all 2^n binary inputs."""
    limit = max_channels() if limit is None else limit
    if net.n > limit:
        raise ResourceLimit(f"outputs of a {net.n}-channel network exceed the cap of {limit} channels")
    values = np.arange(1 << net.n, dtype=np.int64)
    for layer in net.layers:
        # the image of a layer only depends on the set reaching it
        values = np.unique(apply_layer_array(values, layer))
    return values


@dataclass(frozen=True)
class OutputSet:
    """Set of binary vectors, stored as a bitset over the 2^n encodings."""

    n: int
    bits: int

    @classmethod
    def from_values(cls, n: int, values) -> "OutputSet":
        mask = np.zeros(1 << n, dtype=bool)
        mask[np.asarray(values, dtype=np.int64)] = True
        packed = np.packbits(mask, bitorder="little")
        return cls(n, int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "OutputSet":
        strings = list(strings)
        n = len(strings[0])
        return cls(n, sum(1 << _bits_of(s, n) for s in set(strings)))

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, vector):
        value = vector if isinstance(vector, int) else _bits_of(vector, self.n)
        return bool(self.bits >> value & 1)

    def __iter__(self):
        bits, value = self.bits, 0
        while bits:
            if bits & 1:
                yield value
            bits >>= 1
            value += 1

    def __le__(self, other: "OutputSet"):
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "OutputSet"):
        return self <= other and self.bits != other.bits

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def vectors(self) -> list[str]:
        return sorted(vector_str(v, self.n) for v in self)

    def permuted(self, pi: Mapping[int, int]) -> "OutputSet":
        """Image under moving the value of channel ``c`` to channel ``pi[c]``."""
        out = 0
        for v in self:
            w = 0
            for c in range(1, self.n + 1):
                if v >> (c - 1) & 1:
                    w |= 1 << (pi[c] - 1)
            out |= 1 << w
        return OutputSet(self.n, out)


def outputs(net: Network, limit: int | None = None) -> OutputSet:
    return OutputSet.from_values(net.n, output_array(net, limit))


def _is_sorted(value: int, n: int) -> bool:
    # ascending 0/1 vector: ones form a suffix of positions 1..n
    ones = value.bit_count()
    return value == ((1 << n) - 1) ^ ((1 << (n - ones)) - 1)


def is_sorting_network(net: Network, limit: int | None = None) -> bool:
    return all(_is_sorted(int(v), net.n) for v in output_array(net, limit))


# ---------------------------------------------------------------------------
# symmetries

def as_permutation(pi, n: int) -> dict[int, int]:
    """Normalize a permutation given as a mapping or as the image sequence."""
    if isinstance(pi, Mapping):
        mapping = {int(k): int(v) for k, v in pi.items()}
        for c in range(1, n + 1):
            mapping.setdefault(c, c)
    else:
        mapping = {c: int(v) for c, v in enumerate(pi, 1)}
    if sorted(mapping) != list(range(1, n + 1)) or sorted(mapping.values()) != list(range(1, n + 1)):
        raise InvalidArgument(f"not a permutation of 1..{n}: {pi!r}")
    return mapping


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> dict[int, int]:
    """``perm_from_cycles(4, [(1, 3), (2, 4)])`` is the permutation (1 3)(2 4)."""
    mapping = {c: c for c in range(1, n + 1)}
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            mapping[a] = b
    return as_permutation(mapping, n)


def permute(net: Network, pi) -> Network:
    pi = as_permutation(pi, net.n)
    return Network(net.n, tuple(frozenset((pi[i], pi[j]) for i, j in layer) for layer in net.layers))


def untangle(net: Network) -> Network:
    """Rewrite a generalized network into a standard one by relabeling wires.

    Layers are scanned left to right.  A descending comparator is flipped
    and its two channels exchange labels in every later layer.
    """
    label = list(range(net.n + 1))
    layers = []
    for layer in net.layers:
        fixed, swaps = [], []
        for i, j in layer:
            a, b = label[i], label[j]
            if a > b:
                a, b = b, a
                swaps.append((a, b))
            fixed.append((a, b))
        layers.append(frozenset(fixed))
        if swaps:
            exchange = {}
            for a, b in swaps:
                exchange[a], exchange[b] = b, a
            label = [exchange.get(x, x) for x in label]
    return Network(net.n, tuple(layers))


def reflect(net: Network) -> Network:
    n = net.n
    flipped = Network(n, tuple(frozenset((n - j + 1, n - i + 1) for i, j in layer) for layer in net.layers))
    return untangle(flipped)


def is_redundant(net: Network, limit: int | None = None) -> bool:
    """True iff deleting some single comparator leaves the output set unchanged."""
    reference = outputs(net, limit)
    for depth, layer in enumerate(net.layers):
        for comparator in layer:
            layers = list(net.layers)
            layers[depth] = layer - {comparator}
            if outputs(Network(net.n, tuple(layers)), limit) == reference:
                return True
    return False


def channel_roles(net: Network) -> dict[int, str]:
    if not net.layers:
        raise InvalidArgument("channel roles need at least one layer")
    roles = {c: FREE for c in range(1, net.n + 1)}
    for i, j in net.layers[0]:
        roles[i], roles[j] = MIN, MAX
    return roles


# ---------------------------------------------------------------------------
# text format

_COMPARATOR = re.compile(r"\((\d+),(\d+)\)")


def format_network(net: Network) -> str:
    """``n=<n>`` then one line per layer; an empty layer is written ``-``."""
    lines = [f"n={net.n}"]
    for layer in net.layers:
        if layer:
            lines.append(" ".join(f"({i},{j})" for i, j in sorted(layer)))
        else:
            lines.append("-")
    return "\n".join(lines) + "\n"


def parse_networks(text: str) -> list[Network]:
    networks = []
    lines = text.splitlines()
    k = 0
    while k < len(lines):
        if not lines[k].strip() or lines[k].lstrip().startswith("#"):
            k += 1
            continue
        header = lines[k].strip()
        match = re.fullmatch(r"n=(\d+)", header)
        if not match:
            raise ParseError(f"expected 'n=<int>', got {header!r}", k + 1, 1)
        n = int(match.group(1))
        k += 1
        layers = []
        while k < len(lines) and lines[k].strip():
            layers.append(_parse_layer(lines[k], k + 1))
            k += 1
        try:
            networks.append(Network(n, tuple(layers)))
        except InvalidArgument as exc:
            raise ParseError(str(exc), k) from None
    return networks


def _parse_layer(line: str, lineno: int) -> frozenset:
    if line.strip() == "-":
        return frozenset()
    comparators = []
    pos = 0
    for token in line.split(" "):
        if token:
            match = _COMPARATOR.fullmatch(token)
            if not match:
                raise ParseError(f"malformed comparator {token!r}", lineno, pos + 1)
            comparators.append((int(match.group(1)), int(match.group(2))))
        pos += len(token) + 1
    return frozenset(comparators)


def parse_network(text: str) -> Network:
    networks = parse_networks(text)
    if len(networks) != 1:
        raise ParseError(f"expected exactly one network, found {len(networks)}")
    return networks[0]
