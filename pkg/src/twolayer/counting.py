"""Count tables: closed forms, class counts, labeled counts and their identities."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .errors import InvalidArgument
from .generator import MAX_N, count_classes, generate_classes, orbit_size

COLUMNS = ("G", "S", "RG", "RS", "R")

# how each cell was obtained
RECURRENCE = "recurrence"
FORMULA = "formula"
ENUMERATION = "enumeration"
ORBIT_SUM = "orbit-sum"
BRUTE_FORCE = "brute-force"


def g_count(n: int) -> int:
    """Number of second layers on n channels: |G_n| = |G_{n-1}| + (n-1)|G_{n-2}|."""
    if n < 1:
        raise InvalidArgument(f"n must be at least 1, got {n}")
    a, b = 1, 2  # |G_1|, |G_2|
    if n == 1:
        return a
    for k in range(3, n + 1):
        a, b = b, b + (k - 1) * a
    return b


@dataclass(frozen=True)
class Cell:
    value: int
    method: str


@dataclass
class CountTable:
    rows: dict = field(default_factory=dict)  # n -> {column: Cell}

    def set(self, n: int, column: str, value: int, method: str):
        if column not in COLUMNS:
            raise InvalidArgument(f"unknown column {column!r}")
        self.rows.setdefault(n, {})[column] = Cell(int(value), method)

    def get(self, n: int, column: str):
        cell = self.rows.get(n, {}).get(column)
        return None if cell is None else cell.value

    def method(self, n: int, column: str):
        cell = self.rows.get(n, {}).get(column)
        return None if cell is None else cell.method

    def ns(self) -> list[int]:
        return sorted(self.rows)

    def row(self, n: int) -> tuple:
        return tuple(self.get(n, c) for c in COLUMNS)


@dataclass(frozen=True)
class Budgets:
    """Largest n for which each kind of cell is computed."""

    classes: int = MAX_N
    labeled: int = 30
    class_method: str = "formula"
    jobs: int = 1


def labeled_saturated_count(n: int, jobs: int = 1) -> int:
    """|S_n| as a sum of orbit sizes over the saturated classes."""
    return sum(orbit_size(s, n) for s in generate_classes(n, "RS", jobs=jobs))


def assemble_table(max_n: int, budgets: Budgets | None = None, min_n: int = 3) -> CountTable:
    budgets = budgets or Budgets()
    if max_n < min_n:
        raise InvalidArgument(f"max_n must be at least {min_n}, got {max_n}")
    table = CountTable()
    class_method = FORMULA if budgets.class_method == "formula" else ENUMERATION
    for n in range(min_n, max_n + 1):
        table.set(n, "G", g_count(n), RECURRENCE)
        if n <= min(budgets.labeled, MAX_N):
            table.set(n, "S", labeled_saturated_count(n, budgets.jobs), ORBIT_SUM)
        if n <= min(budgets.classes, MAX_N):
            for column in ("RG", "RS", "R"):
                value = count_classes(n, column, method=budgets.class_method, jobs=budgets.jobs)
                table.set(n, column, value, class_method)
    return table


# ---------------------------------------------------------------------------
# identities

@dataclass(frozen=True)
class Check:
    name: str
    n: int
    passed: bool | None  # None: skipped for lack of data
    detail: str


def redundant_class_count(n: int) -> int:
    """Classes of second layers on n channels that repeat a first-layer comparator."""
    return sum(1 for s in generate_classes(n, "RG") if "1" in s)


def verify_identities(table: CountTable, redundant_max: int = 16) -> list[Check]:
    checks = []
    for n in table.ns():
        g, g1, g2 = table.get(n, "G"), table.get(n - 1, "G"), table.get(n - 2, "G")
        if g is not None:
            if g1 is None:
                g1 = g_count(n - 1) if n >= 2 else None
            if g2 is None:
                g2 = g_count(n - 2) if n >= 3 else None
            if g1 is not None and g2 is not None:
                expected = g1 + (n - 1) * g2
                checks.append(Check("G recurrence", n, g == expected, f"{g} vs {g1} + {n - 1}*{g2}"))

        rg = table.get(n, "RG")
        if n % 2 == 1 and rg is not None:
            a, b = table.get(n - 1, "RG"), table.get(n - 2, "RG")
            if a is None and n - 1 >= 2:
                a = count_classes(n - 1, "RG")
            if b is None and n - 2 >= 2:
                b = count_classes(n - 2, "RG")
            if a is None or b is None:
                checks.append(Check("odd RG identity", n, None, "neighbouring values unavailable"))
            else:
                checks.append(Check("odd RG identity", n, rg == a + 2 * b, f"{rg} vs {a} + 2*{b}"))

        if 4 <= n <= redundant_max:
            r = redundant_class_count(n)
            base = table.get(n - 2, "RG")
            if base is None:
                base = count_classes(n - 2, "RG")
            checks.append(Check("redundant classes", n, r == base, f"{r} vs RG({n - 2})={base}"))

        row = dict(zip(COLUMNS, table.row(n)))
        pairs = [("S", "G"), ("RS", "RG"), ("R", "RS"), ("RS", "S")]
        known = [(a, b) for a, b in pairs if row[a] is not None and row[b] is not None]
        if known:
            ok = all(row[a] <= row[b] for a, b in known)
            checks.append(Check("monotone", n, ok, ", ".join(f"{a}={row[a]}<={b}={row[b]}" for a, b in known)))
    return checks


# ---------------------------------------------------------------------------
# output

def to_csv(table: CountTable) -> str:
    buf = io.StringIO()
    methods = sorted({(c, cell.method) for n in table.ns() for c, cell in table.rows[n].items()},
                     key=lambda x: COLUMNS.index(x[0]))
    merged = {}
    for column, method in methods:
        merged.setdefault(column, set()).add(method)
    for column in COLUMNS:
        if column in merged:
            buf.write(f"# {column}: {'/'.join(sorted(merged[column]))}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("n",) + COLUMNS)
    for n in table.ns():
        writer.writerow([n] + ["" if v is None else v for v in table.row(n)])
    return buf.getvalue()


def to_text(table: CountTable) -> str:
    header = ["n"] + [f"|{c}|" for c in COLUMNS]
    body = [[str(n)] + ["-" if v is None else f"{v:,}" for v in table.row(n)] for n in table.ns()]
    widths = [max(len(r[k]) for r in [header] + body) for k in range(len(header))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in [header] + body]
    return "\n".join(lines) + "\n"
