"""Command-line interface: ``nlw {gen,check,certify,sdp,oplm,tiles,report}``.

Exit codes: 0 claim verified, 1 undetermined or negative, 2 usage/input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import bipart, model, oplm, report, sdp, tiles, witness
from .bipart import Bipartition, BipartitionError
from .qcore import DimensionCapError, ShapeError

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

FAMILIES = ("bell", "ghosh", "eq2", "eq3", "example1", "example2", "theorem1", "theorem2")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("-o", "--output", help="write output here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for per-split work")
    p.add_argument("--exact", action="store_true", help="require exact arithmetic")
    return p


def _input() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("file", nargs="?", help="state-set JSON ('-' for stdin)")
    p.add_argument("-i", "--input", help="state-set JSON (alternative to the positional file)")
    return p


def _fmt() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "text"), default="json")
    return p


def _splits() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--split", help='bipartition such as "1,2|3" or a mask literal "0b011"')
    g.add_argument("--all-bipartitions", action="store_true")
    return p


def _tols() -> argparse.ArgumentParser:
    d = sdp.SdpOptions()
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol-feas", type=float, default=d.eps_feas)
    p.add_argument("--tol-psd", type=float, default=d.eps_psd)
    p.add_argument("--tol-perfect", type=float, default=d.eps_perfect)
    p.add_argument("--tol-gap", type=float, default=d.gap_tol)
    p.add_argument("--max-iter", type=int, default=d.max_iter)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common, inp, fmt, splits, tols = _common(), _input(), _fmt(), _splits(), _tols()

    g = sub.add_parser("gen", parents=[common], help="generate a state-set file")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=int, help="number of parties")
    g.add_argument("--left", type=int, help="eq2: party carrying the left Bell qubit")
    g.add_argument("--right", type=int, help="eq2: party carrying the right Bell qubit")
    g.add_argument("--split", help="eq2/eq3: the bipartition S|S'")
    g.add_argument("--coeffs", help="theorem2: comma-separated support strings (uniform weights)")
    g.add_argument("--coeffs-json", help="theorem2: JSON object {bits: [re, im]} of amplitudes")

    sub.add_parser("check", parents=[common, inp, fmt], help="validate a state-set file")
    sub.add_parser("certify", parents=[common, inp, fmt, splits], help="corner-subspace certificate sweep")
    s = sub.add_parser("sdp", parents=[common, inp, fmt, splits, tols], help="PPT discrimination SDP")
    s.add_argument("--states", help="1-based indices of a subset of states, e.g. 1,2")
    s.add_argument("--expect-indistinguishable", action="store_true")
    o = sub.add_parser("oplm", parents=[common, inp, fmt, splits], help="orthogonality-preserving local measurements")
    o.add_argument("--party", type=int, help="single party against all others")
    t = sub.add_parser("tiles", parents=[common, inp], help="tile diagram of a split")
    t.add_argument("--split", help="bipartition (default: the first one)")
    t.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    r = sub.add_parser("report", parents=[common, inp, fmt, tols], help="combined JSON report")
    r.add_argument("--full", action="store_true", help="solve SDPs at every split, whatever the dimension")
    return parser


def _load(args) -> model.StateSet:
    path = args.input or args.file
    if not path:
        raise UsageError("no input file (positional or -i/--input)")
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        s = model.state_set_from_dict(json.loads(text))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if getattr(args, "exact", False) and not s.is_exact:
        raise UsageError("--exact given but the set has float amplitudes")
    return s


def _emit(args, text: str) -> None:
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _dump(args, doc, text_lines=None) -> None:
    if getattr(args, "format", "json") == "text" and text_lines is not None:
        _emit(args, "\n".join(text_lines) + "\n")
    else:
        _emit(args, json.dumps(doc, indent=2) + "\n")


def _selected_splits(args, s: model.StateSet) -> list[Bipartition]:
    if getattr(args, "split", None):
        return [Bipartition.parse(args.split, s.num_parties)]
    return bipart.enumerate_bipartitions(s.num_parties)


def _opts(args) -> sdp.SdpOptions:
    return sdp.SdpOptions(
        eps_feas=args.tol_feas,
        eps_psd=args.tol_psd,
        eps_perfect=args.tol_perfect,
        gap_tol=args.tol_gap,
        max_iter=args.max_iter,
    )


def cmd_gen(args) -> int:
    fam, n = args.family, args.n
    needs_n = fam not in ("bell", "ghosh")
    if needs_n and n is None:
        raise UsageError(f"family {fam} needs --n")
    if fam == "bell":
        s = model.gen_bell_triple()
    elif fam == "ghosh":
        s = model.gen_ghosh_set()
    elif fam == "eq2":
        if args.left is None or args.right is None or not args.split:
            raise UsageError("eq2 needs --left, --right and --split")
        s = model.gen_eq2(n, args.left, args.right, Bipartition.parse(args.split, n))
    elif fam == "eq3":
        if not args.split:
            raise UsageError("eq3 needs --split")
        s = model.gen_eq3(n, Bipartition.parse(args.split, n))
    elif fam == "example1":
        s = model.gen_example1(n)
    elif fam == "example2":
        s = model.gen_example2(n)
    elif fam == "theorem1":
        s = model.gen_theorem1(n)
    else:
        if args.coeffs_json:
            raw = json.loads(Path(args.coeffs_json).read_text())
            coeffs = model.Theorem2Coefficients({k: complex(*v) for k, v in raw.items()})
        elif args.coeffs:
            coeffs = model.Theorem2Coefficients.uniform(t.strip() for t in args.coeffs.split(",") if t.strip())
        else:
            raise UsageError("theorem2 needs --coeffs or --coeffs-json")
        s = model.gen_theorem2(n, coeffs)
    _emit(args, json.dumps(model.state_set_to_dict(s), indent=2) + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    s = _load(args)
    doc = report.check_document(s)
    lines = [f"{doc['set']}: {len(s)} states, N={s.num_parties}, backend {doc['backend']}",
             f"orthogonal: {doc['orthogonal']}",
             "genuinely entangled: " + ", ".join(f"{n}={g}" for n, g in zip(s.names, doc["genuinely_entangled"]))]
    _dump(args, doc, lines)
    return EXIT_OK if doc["orthogonal"] else EXIT_NEGATIVE


def cmd_certify(args) -> int:
    s = _load(args)
    if len(s) != 3:
        raise UsageError(f"certificates need exactly 3 states, got {len(s)}")
    splits = _selected_splits(args, s)
    rep = witness.certify_all(s, splits=splits, jobs=args.jobs)
    lines = [f"{c.bipartition}: {c.verdict} (overlap {c.to_dict()['overlap_sq']})" for c in rep.certificates]
    lines.append(f"overall: {rep.overall}; strong nonlocality: {rep.strong_nonlocality}")
    _dump(args, rep.to_dict(), lines)
    if args.split:
        return EXIT_OK if all(c.certified for c in rep.certificates) else EXIT_NEGATIVE
    return EXIT_OK if rep.certified else EXIT_NEGATIVE


def cmd_sdp(args) -> int:
    s = _load(args)
    if args.states:
        idx = [int(t) - 1 for t in args.states.split(",")]
        if any(not 0 <= i < len(s) for i in idx):
            raise UsageError(f"--states indices out of range 1..{len(s)}")
        s = s.subset(idx)
    opts = _opts(args)
    splits = _selected_splits(args, s) if (args.split or args.all_bipartitions) else bipart.enumerate_bipartitions(s.num_parties)[:1]

    def solve(b):
        d = sdp.ppt_value_for_split(s, b, opts).to_dict()
        return {"split": str(b), **d}

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        rows = list(ex.map(solve, splits))
    doc = rows[0] if len(rows) == 1 else rows
    lines = [f"{r['split']}: primal {r['primal']} dual {r['dual_bound']} ({r['status']}, {r['iters']} iters)" for r in rows]
    _dump(args, doc, lines)
    if args.expect_indistinguishable and any(r["perfect"] for r in rows):
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_oplm(args) -> int:
    s = _load(args)
    if args.party is not None:
        sp = oplm.oplm_party_space(s, args.party, exact=args.exact)
        doc = {"party": args.party, "split": str(sp.bipartition), "side": sp.side,
               "dimension": sp.dimension, "trivial": sp.trivial}
        _dump(args, doc, [f"party {args.party}: OPLM space dimension {sp.dimension} (trivial: {sp.trivial})"])
        return EXIT_OK
    splits = _selected_splits(args, s)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        rows = list(ex.map(lambda b: oplm.toplm_verdict(s, b, exact=args.exact).to_dict(), splits))
    lines = [f"{r['split']}: left dim {r['left_dim']} right dim {r['right_dim']}" for r in rows]
    _dump(args, rows, lines)
    return EXIT_OK


def cmd_tiles(args) -> int:
    s = _load(args)
    b = _selected_splits(args, s)[0]
    diagram = tiles.tile_diagram(s, b)
    _emit(args, tiles.render_ascii(diagram) if args.format == "ascii" else tiles.render_svg(diagram))
    return EXIT_OK


def cmd_report(args) -> int:
    s = _load(args)
    doc = report.full_report(s, _opts(args), full=args.full, jobs=args.jobs, exact_oplm=args.exact)
    lines = [
        f"{doc['set']}: orthogonal {doc['orthogonal']}, genuinely entangled {doc['genuinely_entangled']}",
        f"overall: {doc['overall']}; strong nonlocality: {doc['strong_nonlocality']}",
    ]
    lines += [f"sdp {e['split']}: " + (e.get("skipped") or f"primal {e['primal']} dual {e['dual_bound']}") for e in doc["sdp"]]
    _dump(args, doc, lines)
    return EXIT_OK if doc["strong_nonlocality"] else EXIT_NEGATIVE


COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "certify": cmd_certify,
    "sdp": cmd_sdp,
    "oplm": cmd_oplm,
    "tiles": cmd_tiles,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except model.CertificatePreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, model.ModelError, BipartitionError, ShapeError, DimensionCapError, sdp.SdpInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
