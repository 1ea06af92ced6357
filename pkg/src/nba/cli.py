"""Command-line front end: ``nba prove``, ``nba table`` and ``nba verify``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib.resources import files
from pathlib import Path
from typing import List, Optional, Sequence

from .breefs import DEFAULT_SEED, ProofTrace, VerificationError, prove
from .constructions import Configuration, DegenerateSample, parse_config, sample_instance
from .core import ONE, Evaluator, ParseError, parse_poly, render_poly

EXIT_OK, EXIT_FAIL, EXIT_VERIFY, EXIT_PARSE = 0, 1, 2, 3
TRACE_VERSION = 1

# (conclusion terms, max proof terms) for the bundled examples
GOLDEN_COUNTS = {
    "three-circles": (1, 1),
    "secants": (1, 1),
    "triangle-circles": (1, 1),
    "miquel4": (1, 1),
    "miquel5": (1, 3),
}
BUNDLED = tuple(GOLDEN_COUNTS)

TABLE_NOTE = (
    "note: the published comparison table is not reproduced; its rows refer to proofs\n"
    "from an earlier example set that is not specified here. This table lists the\n"
    "conclusion and proof term counts of the bundled examples instead."
)


class InputError(Exception):
    pass


def bundled_path(name: str):
    return files("nba").joinpath("examples", name if name.endswith(".nba") else name + ".nba")


def read_config(ref: str) -> Configuration:
    """Parse a configuration from a path, or by bundled example name."""
    path = Path(ref)
    if path.is_file():
        text, name = path.read_text(), path.stem
    else:
        res = bundled_path(path.name)
        if not res.is_file():
            raise InputError(f"{ref}: no such file or bundled example")
        text, name = res.read_text(), path.name.removesuffix(".nba")
    return parse_config(text, name)


def _seed(value: str):
    if value == "random":
        return random.SystemRandom().randrange(2 ** 32)
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer or 'random'") from None


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def render_factor(p) -> str:
    text = render_poly(p)
    return f"({text})" if p.term_count() > 1 else text


def format_step(step) -> str:
    head = f"{step.index:>3} {step.rule:<18}"
    if step.rule == "factor-extract":
        return f"{head} = {{{{ledger: {render_factor(step.delta)}}}}} {step.render_after()}"
    return f"{head} = {step.render_after()}    [{step.locus}]"


def format_trace(trace: ProofTrace) -> List[str]:
    lines = [f"conclusion: {render_poly(trace.conclusion)}"]
    stage = None
    for step in trace.steps:
        if step.stage != stage:
            stage = step.stage
            lines.append(f"-- {stage}")
        lines.append(format_step(step))
    return lines


def report(trace: ProofTrace) -> List[str]:
    lines = [
        f"config: {trace.config}",
        f"outcome: {trace.outcome.name}",
    ]
    if trace.target_matched is not None:
        lines.append(f"target matched: {'yes' if trace.target_matched else 'no'}")
    lines += [
        f"residual: {render_poly(trace.residual)}",
        f"ledger: {' * '.join(render_factor(e.factor) for e in trace.ledger.entries) or '1'}",
        f"max terms: {trace.max_terms}",
        f"steps: {len(trace.steps)}",
        f"samples: {trace.samples} (seed {trace.seed})",
        f"elapsed: {trace.elapsed:.2f}s",
    ]
    return lines


def cmd_prove(args) -> int:
    try:
        cfg = read_config(args.file)
    except (ParseError, InputError) as exc:
        return _parse_failure(args.file, exc)
    try:
        trace = prove(cfg, samples=args.samples, seed=args.seed)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except DegenerateSample as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if not args.quiet:
        print("\n".join(format_trace(trace)))
        print()
    print("\n".join(report(trace)))
    if args.trace:
        data = {"version": TRACE_VERSION, **trace.to_dict()}
        Path(args.trace).write_text(json.dumps(data, indent=2) + "\n")
    return EXIT_OK if trace.success else EXIT_FAIL


def _parse_failure(ref: str, exc: Exception) -> int:
    if isinstance(exc, ParseError):
        print(f"{ref}:{exc.line}:{exc.pos}: {exc.msg}", file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_PARSE


def table_rows(refs: Sequence[str], samples: int = 3, seed=DEFAULT_SEED):
    """Rows of (name, conclusion terms, max terms, outcome, golden status)."""
    rows = []
    for ref in refs:
        try:
            cfg = read_config(ref)
            trace = prove(cfg, samples=samples, seed=seed)
        except (ParseError, InputError) as exc:
            rows.append((ref, None, None, f"error: {exc}", "fail"))
            continue
        except (VerificationError, DegenerateSample) as exc:
            rows.append((ref, None, None, f"error: {exc}", "fail"))
            continue
        counts = (trace.conclusion_terms, trace.max_terms)
        golden = GOLDEN_COUNTS.get(cfg.name)
        if not trace.success:
            status = "fail"
        elif golden is None:
            status = "-"
        else:
            status = "ok" if golden == counts else f"expected {golden[0]},{golden[1]}"
        rows.append((cfg.name, counts[0], counts[1], trace.outcome.name, status))
    return rows


def render_table(rows) -> List[str]:
    header = ("config", "conclusion", "proof", "outcome", "golden")
    body = [tuple("-" if v is None else str(v) for v in row) for row in rows]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return [fmt.format(*header)] + [fmt.format(*r) for r in body]


def cmd_table(args) -> int:
    rows = table_rows(args.files, samples=args.samples)
    print("\n".join(render_table(rows)))
    print()
    print(TABLE_NOTE)
    bad = [r for r in rows if r[4] not in ("ok", "-")]
    return EXIT_FAIL if bad else EXIT_OK


def verify_trace(data: dict, cfg: Configuration, samples: int, seed) -> List[tuple]:
    """Re-check every step of a serialized trace at fresh samples.

    Returns (index, rule, passed) per step.
    """
    rng = random.Random(seed)
    evs = [Evaluator(sample_instance(cfg, rng)) for _ in range(samples)]
    syms = cfg.symbols
    out = []
    for step in data["steps"]:
        before = parse_poly(step["before"], syms)
        after = parse_poly(step["after"], syms)
        delta = parse_poly(step["ledger_delta"], syms) if step.get("ledger_delta") else ONE
        ok = all(ev.poly(before) == ev.poly(delta) * ev.poly(after) for ev in evs)
        out.append((step["index"], step["rule"], ok))
    return out


def cmd_verify(args) -> int:
    try:
        cfg = read_config(args.file)
    except (ParseError, InputError) as exc:
        return _parse_failure(args.file, exc)
    try:
        data = json.loads(Path(args.trace).read_text())
        results = verify_trace(data, cfg, args.samples, args.seed)
    except (OSError, ValueError, KeyError) as exc:
        if isinstance(exc, ParseError):
            return _parse_failure(args.trace, exc)
        print(f"error: cannot read trace {args.trace}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    failed = [r for r in results if not r[2]]
    for idx, rule, ok in results:
        print(f"step {idx:>3} {rule:<18} {'pass' if ok else 'FAIL'}")
    print(f"{len(results) - len(failed)}/{len(results)} steps pass at {args.samples} samples")
    if failed:
        print(f"first failing step: {failed[0][0]}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nba", description="Null bracket algebra prover for plane conformal geometry.")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("prove", help="prove one configuration")
    pr.add_argument("file", help="configuration file or bundled example name")
    pr.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="integer or 'random'")
    pr.add_argument("--samples", type=_positive, default=3)
    pr.add_argument("--trace", metavar="OUT.json")
    pr.add_argument("--quiet", action="store_true", help="print only the report")
    pr.set_defaults(func=cmd_prove)

    tb = sub.add_parser("table", help="term-count table for several configurations")
    tb.add_argument("files", nargs="*")
    tb.add_argument("--samples", type=_positive, default=3)
    tb.set_defaults(func=cmd_table)

    vf = sub.add_parser("verify", help="re-check a saved trace at fresh samples")
    vf.add_argument("trace")
    vf.add_argument("file")
    vf.add_argument("--samples", type=_positive, default=3)
    vf.add_argument("--seed", type=_seed, default="random")
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
