"""Command-line interface: ``twolayer <verb> ...``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import counting, oracle
from .errors import InvalidArgument, ParseError, ResourceLimit, TwoLayerError, UnsupportedInput
from .generator import count_classes, generate_classes, reflect_sentence
from .network import first_layer_parberry, first_layer_reflective, format_network, parse_network, reflect, two_layer
from .saturation import is_saturated_semantic, is_saturated_syntactic, word_saturation_check
from .words import format_sentence, net_of_sentence, parse_sentence, sentence_of

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

CLASS_SETS = ("RG", "RS", "R")
LABELED_SETS = ("G", "S")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _first_layer(name: str, n: int):
    return first_layer_reflective(n) if name == "reflective" else first_layer_parberry(n)


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _labeled_layers(n: int, which: str):
    if which == "S":
        return oracle.saturated_layers(n)
    return list(oracle.enumerate_second_layers(n))


def _layer_line(layer) -> str:
    return " ".join(f"({i},{j})" for i, j in sorted(layer)) or "-"


def cmd_list(args) -> int:
    if args.set in LABELED_SETS:
        lines = sorted(_layer_line(layer) for layer in _labeled_layers(args.n, args.set))
    else:
        # plain text order, so the file agrees with sort(1)
        lines = sorted(format_sentence(s) for s in generate_classes(args.n, args.set, jobs=args.jobs))
    out, close = _open_out(args.output)
    try:
        out.write(f"# n={args.n} set={args.set}\n")
        for line in lines:
            out.write(line + "\n")
        out.write(f"# count={len(lines)}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_count(args) -> int:
    if args.set == "G":
        value = counting.g_count(args.n)
    elif args.set == "S":
        value = counting.labeled_saturated_count(args.n, jobs=args.jobs)
    else:
        value = count_classes(args.n, args.set, method=args.method, jobs=args.jobs)
    print(value)
    return EXIT_OK


def cmd_table(args) -> int:
    budgets = counting.Budgets(classes=args.classes_max, labeled=args.s_max, class_method=args.method,
                               jobs=args.jobs)
    table = counting.assemble_table(args.max, budgets)
    text = counting.to_text(table) if args.format == "text" else counting.to_csv(table)
    sys.stdout.write(text)
    failed = [c for c in counting.verify_identities(table, redundant_max=min(args.max, 16)) if c.passed is False]
    for c in failed:
        print(f"identity failed: {c.name} at n={c.n}: {c.detail}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def _verify_rows(max_n: int, report):
    for n in range(3, max_n + 1):
        try:
            row = oracle.brute_force_table(n)
        except ResourceLimit as exc:
            report(f"counts n={n}", None, str(exc))
            continue
        fast = {"G": counting.g_count(n), "S": counting.labeled_saturated_count(n)}
        for column in CLASS_SETS:
            fast[column] = count_classes(n, column)
        brute = {"G": row.G, "S": row.S, "RG": row.RG, "RS": row.RS, "R": row.R}
        for column, value in brute.items():
            if value is None:
                continue
            report(f"{column}({n})", value == fast[column], f"brute {value}, fast {fast[column]}")


def _verify_equivalence(n: int, report):
    layers = list(oracle.enumerate_second_layers(n))
    nets = [two_layer(n, layer) for layer in layers]
    sentences = [sentence_of(net) for net in nets]
    graphs = [oracle.to_graph(net) for net in nets]
    bad = 0
    for a in range(len(nets)):
        for b in range(a, len(nets)):
            same = sentences[a] == sentences[b]
            perm = oracle.equivalent_brute(nets[a], nets[b]) is not None
            iso = oracle.graphs_isomorphic(graphs[a], graphs[b])
            bad += not (same == perm == iso)
    report(f"equivalence n={n}", bad == 0, f"{bad} disagreeing pairs")


def _verify_saturation(n: int, report):
    bad = 0
    for layer in oracle.enumerate_second_layers(n):
        net = two_layer(n, layer)
        a = is_saturated_semantic(net)
        b = is_saturated_syntactic(net)
        c = word_saturation_check(sentence_of(net))
        bad += not (a == b == c)
    report(f"saturation n={n}", bad == 0, f"{bad} disagreeing layers")


def cmd_verify(args) -> int:
    results = []

    def report(name, passed, detail):
        results.append((name, passed, detail))
        status = "SKIP" if passed is None else ("PASS" if passed else "FAIL")
        print(f"{status:4}  {name:24} {detail}", flush=True)

    if args.max_n:
        _verify_rows(args.max_n, report)
        for n in range(3, min(args.max_n, args.equivalence_max) + 1):
            _verify_equivalence(n, report)
        for n in range(3, min(args.max_n, args.saturation_max) + 1):
            _verify_saturation(n, report)
    if args.conjecture:
        for n in range(3, args.conjecture + 1):
            start = time.perf_counter()
            try:
                ok, found = oracle.check_conjecture(n)
            except ResourceLimit as exc:
                report(f"subsumption n={n}", None, str(exc))
                continue
            detail = f"{len(found)} subsumed pairs ({time.perf_counter() - start:.1f}s)"
            report(f"subsumption n={n}", ok, detail)
    if not results:
        raise _UsageError("nothing to verify: give --max-n and/or --conjecture")
    return EXIT_VERIFY if any(p is False for _, p, _ in results) else EXIT_OK


def _read_network(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_network(text)


def cmd_word(args) -> int:
    print(format_sentence(sentence_of(_read_network(args.file))))
    return EXIT_OK


def cmd_net(args) -> int:
    sentence = parse_sentence(args.sentence)
    sys.stdout.write(format_network(net_of_sentence(sentence, args.n, _first_layer(args.first_layer, args.n))))
    return EXIT_OK


def cmd_reflect(args) -> int:
    if args.net:
        net = _read_network(args.net)
        if args.as_network:
            sys.stdout.write(format_network(reflect(net)))
        else:
            print(format_sentence(sentence_of(reflect(net))))
    elif args.sentence:
        print(format_sentence(reflect_sentence(parse_sentence(args.sentence))))
    else:
        raise _UsageError("reflect needs a SENTENCE or --net FILE")
    return EXIT_OK


def cmd_export(args) -> int:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    first = _first_layer(args.first_layer, args.n)
    sentences = generate_classes(args.n, args.set, jobs=args.jobs)
    width = len(str(len(sentences)))
    for index, s in enumerate(sentences, 1):
        name = f"{args.n}_{index:0{width}d}_{format_sentence(s)}.net"
        (out / name).write_text(format_network(net_of_sentence(s, args.n, first)), encoding="utf-8")
    print(f"wrote {len(sentences)} files to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twolayer", description="Two-layer comparator network prefixes modulo symmetry.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add_jobs(p):
        p.add_argument("--jobs", type=_positive, default=1, help="worker processes (output is identical)")

    p = sub.add_parser("list", help="list classes (one sentence per line) or labeled second layers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=LABELED_SETS + CLASS_SETS, default="R")
    p.add_argument("-o", "--output")
    add_jobs(p)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("count", help="count a set without listing it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=LABELED_SETS + CLASS_SETS, default="R")
    p.add_argument("--method", choices=("formula", "enumerate"), default="formula")
    add_jobs(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="count table from n=3 to --max (CSV by default)")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--s-max", type=int, default=30, help="largest n for the |S| column")
    p.add_argument("--classes-max", type=int, default=64, help="largest n for the class columns")
    p.add_argument("--method", choices=("formula", "enumerate"), default="formula")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    add_jobs(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="cross-check the fast generator against brute force")
    p.add_argument("--max-n", type=int, default=0)
    p.add_argument("--conjecture", type=int, default=0, help="check pairwise subsumption up to this n")
    p.add_argument("--equivalence-max", type=int, default=6)
    p.add_argument("--saturation-max", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("word", help="canonical sentence of a network file")
    p.add_argument("file")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("net", help="network of a sentence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--first-layer", choices=("parberry", "reflective"), default="parberry")
    p.add_argument("sentence")
    p.set_defaults(func=cmd_net)

    p = sub.add_parser("reflect", help="reflect a sentence or a network file")
    p.add_argument("sentence", nargs="?")
    p.add_argument("--net")
    p.add_argument("--as-network", action="store_true", help="with --net, print the reflected network itself")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("export", help="write one network file per class representative")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=CLASS_SETS, default="R")
    p.add_argument("--first-layer", choices=("parberry", "reflective"), default="parberry")
    p.add_argument("-o", "--output", required=True)
    add_jobs(p)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"twolayer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"twolayer: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, InvalidArgument, UnsupportedInput, OSError) as exc:
        print(f"twolayer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TwoLayerError as exc:
        print(f"twolayer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
