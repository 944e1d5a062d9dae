"""Command-line entry point: ``hamquery <subcommand> ...``.

Exit codes: 0 success / UI, 1 witness found or decoding failure,
2 usage error, malformed input or a refused (too large) search.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import bounds as bnd
from .bitmat import BinaryMatrix, format_bits
from .codes import bundled_design, greedy_code, incidence, load_blocks, validate_cw
from .construct import build_q1, extend, load_construction, save_construction
from .decode import decode, decode_hamming
from .dss import construction1, is_dss, matrix_to_set
from .errors import HamqueryError, InconsistentResponsesError, SearchLimitError, ValidationError
from .oracle import OracleSession, load_vector, random_hidden
from .simulate import exhaustive_roundtrip, roundtrip
from .verify import DEFAULT_EXACT_LIMIT, is_ui_exact, is_ui_random, is_ui_subsets

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("hamquery")


def _code_for_level(spec: str | None, j: int, rows: int, one_based: bool, v_max: int):
    w = 2**j
    if spec is None:
        code = greedy_code(rows, w, v_max=v_max)
        return code, f"greedy packing on v={code.length}"
    if spec.startswith("bundled:"):
        design = bundled_design(spec.split(":", 1)[1])
    else:
        design = load_blocks(spec, one_based=one_based)
    code = incidence(design)
    if code.rows < rows:
        raise ValidationError(f"{spec} has {code.rows} blocks, level {j} needs {rows}")
    report = validate_cw(code, w, 2 * (w - 1))
    if not report:
        raise ValidationError(f"{spec}: {report.message}")
    return code.first_rows(rows), f"first {rows} of {code.rows} blocks of {spec} (v={code.length})"


def cmd_build(args) -> int:
    c = build_q1(args.r)
    sources = [f"C1: all weight-2 {args.r}-tuples"]
    designs = list(args.design or [])
    if len(designs) > args.s - 1:
        raise ValueError(f"{len(designs)} design files given for {args.s - 1} upper levels")
    for j in range(2, args.s + 1):
        spec = designs[j - 2] if j - 2 < len(designs) else None
        code, source = _code_for_level(spec, j, c.m, args.one_based, args.v_max)
        c = extend(c, code)
        sources.append(f"C{j}: {source}")

    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    save_construction(c, f"{prefix}.desc")
    c.flatten().save(f"{prefix}.matrix.txt")
    lines = [c.summary()]
    lines += [f"level {j}: m={m} n={n}" for j, (m, n) in enumerate(c.level_sizes)]
    lines += sources
    Path(f"{prefix}.summary.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    M = BinaryMatrix.load(args.matrix)
    if args.mode == "exact":
        res = is_ui_exact(M, limit=args.limit_cols, threads=args.threads)
    elif args.mode == "subsets":
        res = is_ui_subsets(M)
    else:
        print(f"seed={args.seed} trials={args.trials}")
        res = is_ui_random(M, args.trials, args.seed)
    if res:
        print("UI" if res.exhaustive else "no witness found (randomized; not a proof)")
        return EXIT_OK
    print(f"witness: I={set(res.witness.plus) or '{}'} J={set(res.witness.minus) or '{}'}")
    print(f"z={' '.join(str(v) for v in res.witness.z)}")
    return EXIT_FAIL


def _read_ints(path) -> list[int]:
    vals = []
    for k, line in enumerate(Path(path).read_text().splitlines(), 1):
        if line.strip():
            try:
                vals.append(int(line))
            except ValueError:
                raise HamqueryError(f"{path}:{k}: not an integer: {line!r}") from None
    return vals


def cmd_query(args) -> int:
    c = load_construction(args.descriptor)
    if args.hidden:
        hidden = load_vector(args.hidden)
    else:
        hidden = random_hidden(c.n, np.random.default_rng(args.seed))
        print(f"seed={args.seed}")
    session = OracleSession(hidden)
    if args.mode == "overlap":
        out = session.run_query_matrix(c.flatten(), "overlap").tolist()
    else:
        d_all = session.query_hamming(np.ones(c.n, dtype=np.int64))
        out = [d_all, *session.hamming_responses(c.flatten()).tolist()]
    Path(args.output).write_text("".join(f"{v}\n" for v in out))
    if args.hidden_out:
        Path(args.hidden_out).write_text(format_bits(hidden) + "\n")
    print(f"queries={session.total_queries}")
    return EXIT_OK


def cmd_decode(args) -> int:
    c = load_construction(args.descriptor)
    vals = _read_ints(args.responses)
    try:
        if args.hamming:
            if not vals:
                raise HamqueryError("empty response file")
            x = decode_hamming(c, vals[1:], vals[0], verify=not args.no_verify)
        else:
            x = decode(c, vals, verify=not args.no_verify)
    except InconsistentResponsesError as exc:
        print(f"inconsistent responses: {exc}", file=sys.stderr)
        return EXIT_FAIL
    bits = format_bits(x)
    if args.output:
        Path(args.output).write_text(bits + "\n")
    print(bits)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    c = load_construction(args.descriptor)
    if args.exhaustive:
        failures = exhaustive_roundtrip(c)
        print(f"exhaustive trials={2**c.n} failures={failures}")
        return EXIT_OK if failures == 0 else EXIT_FAIL
    rep = roundtrip(c, args.trials, args.seed, args.mode, args.threads)
    print(f"construction: {c.summary()}")
    print("\n".join(rep.lines()[:-1]))
    print(rep.lines()[-1], file=sys.stderr)
    return EXIT_OK if rep.failures == 0 else EXIT_FAIL


def cmd_dss(args) -> int:
    if args.dss_cmd == "check":
        res = is_dss(args.elements)
        if res:
            print("DSS: all subset sums distinct")
            return EXIT_OK
        print(f"not DSS: {res.witness.describe()}")
        return EXIT_FAIL
    if args.dss_cmd == "build":
        Q = construction1(args.elements)
        if args.output:
            Q.save(args.output)
        sys.stdout.write(Q.to_text())
        return EXIT_OK
    image = matrix_to_set(BinaryMatrix.load(args.matrix))
    print(" ".join(str(v) for v in image.elements))
    if image.duplicates:
        print(f"duplicates: {' '.join(str(v) for v in image.duplicates)}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    records = bnd.bounds_table(args.n_max, args.s_max)
    text = bnd.to_csv(records, args.s_max)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plotting import plot_bounds

        plot_bounds(args.plot, args.n_max, args.s_max)
    print("note: the LY column omits the unspecified correction term phi(n)", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamquery", description="UI query matrices for Hamming/overlap oracles")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build Q_s(r) and write descriptor, matrix and summary")
    b.add_argument("--r", type=int, required=True, help="level-1 parameter (>= 3)")
    b.add_argument("--s", type=int, default=1, help="number of levels (default 1)")
    b.add_argument(
        "--design",
        action="append",
        metavar="PATH",
        help="block-design file for levels 2, 3, ... in order; 'bundled:s2_4_25' and "
        "'bundled:s2_8_64' name the shipped designs. Levels without one use greedy packing",
    )
    b.add_argument("--one-based", action="store_true", help="design files use 1-based point indices")
    b.add_argument("--v-max", type=int, default=1024, help="largest v tried by greedy packing")
    b.add_argument("-o", "--out", required=True, help="output prefix (writes .desc, .matrix.txt, .summary.txt)")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check whether a matrix file is uniquely identifying")
    v.add_argument("matrix")
    v.add_argument("--mode", choices=("exact", "subsets", "random"), default="exact")
    v.add_argument("--trials", type=int, default=100_000, help="random mode sample count")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--limit-cols", type=int, default=DEFAULT_EXACT_LIMIT, help="exact-search column limit")
    v.add_argument("--threads", type=int, default=1, help="worker processes for the exact search")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("query", help="pose a construction's queries to a simulated oracle")
    q.add_argument("descriptor")
    src = q.add_mutually_exclusive_group()
    src.add_argument("--hidden", help="file holding the hidden vector as a '0'/'1' line")
    src.add_argument("--seed", type=int, default=0, help="draw the hidden vector from this seed")
    q.add_argument("--mode", choices=("overlap", "hamming"), default="overlap")
    q.add_argument("-o", "--output", required=True, help="response file, one integer per line")
    q.add_argument("--hidden-out", help="also write the hidden vector here")
    q.set_defaults(func=cmd_query)

    d = sub.add_parser("decode", help="recover the hidden vector from a response file")
    d.add_argument("descriptor")
    d.add_argument("responses", help="one integer per line")
    d.add_argument(
        "--hamming",
        action="store_true",
        help="responses are Hamming distances: first line is the all-ones distance, then one per row",
    )
    d.add_argument("--no-verify", action="store_true", help="skip re-encoding the answer")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decode)

    rt = sub.add_parser("roundtrip", help="random hidden vectors through oracle and decoder")
    rt.add_argument("descriptor")
    rt.add_argument("--trials", type=int, default=10_000)
    rt.add_argument("--seed", type=int, default=0)
    rt.add_argument("--mode", choices=("overlap", "hamming"), default="overlap")
    rt.add_argument("--threads", type=int, default=1)
    rt.add_argument("--exhaustive", action="store_true", help="decode all 2^n vectors instead")
    rt.set_defaults(func=cmd_roundtrip)

    ds = sub.add_parser("dss", help="distinct-subset-sum tools")
    dsub = ds.add_subparsers(dest="dss_cmd", required=True)
    c1 = dsub.add_parser("check", help="test the DSS property")
    c1.add_argument("elements", type=int, nargs="+")
    c2 = dsub.add_parser("build", help="binary-expansion matrix of a set")
    c2.add_argument("elements", type=int, nargs="+")
    c2.add_argument("-o", "--output")
    c3 = dsub.add_parser("reverse", help="read a matrix's columns as integers")
    c3.add_argument("matrix")
    ds.set_defaults(func=cmd_dss)

    bd = sub.add_parser("bounds", help="write query-ratio curves as CSV (and optionally a figure)")
    bd.add_argument("--n-max", type=int, default=300)
    bd.add_argument("--s-max", type=int, default=3)
    bd.add_argument("-o", "--output", help="CSV path (default stdout)")
    bd.add_argument("--plot", help="also render the curves to this image file")
    bd.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except SearchLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (HamqueryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
