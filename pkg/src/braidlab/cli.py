"""Command line front end.

Exit codes: 0 pass, 1 property failure, 2 parse error, 3 index error,
4 budget exceeded, 5 failed assertion.  ``BRAIDLAB_BUDGET_MS`` caps the wall
time of a subcommand.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import signal
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator

from . import __version__
from .braid import (
    NotPure,
    braid_is_trivial,
    delete_strand,
    double_strand,
    is_brunnian,
    is_qbrunnian,
    linking_matrix,
    theta,
)
from .freelie import Alphabet
from .homology import e1_report
from .kohno import (
    BudgetExceeded,
    delta_example_check,
    gr_theta,
    gr_theta_matrix,
    kohno_rank,
    relations_check,
)
from .parsing import ParseError, parse_braid, parse_lie, parse_word
from .simplicial import (
    instance_ap,
    instance_fs1,
    is_moore_cycle,
    random_moore_cycles,
    theta_simplicial_check,
    verify_simplicial_identities,
)
from .words import FreeWord

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INDEX, EXIT_BUDGET, EXIT_ASSERT = range(6)


class AssertionFailed(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    max_level: int = 6
    max_degree: int = 6
    max_word_length: int = 8
    samples: int = 100
    seed: int = 0
    output: str | None = None
    json: bool = False
    arguments: dict[str, Any] = field(default_factory=dict)

    def budgets(self) -> dict[str, int]:
        return {
            "max_level": self.max_level,
            "max_degree": self.max_degree,
            "max_word_length": self.max_word_length,
            "samples": self.samples,
        }


class Output:
    """Collects human text lines and the JSON payload of one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.lines: list[str] = []
        self.result: dict[str, Any] = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def render(self, passed: bool | None = None) -> str:
        if not self.cfg.json:
            return "\n".join(self.lines)
        doc = {
            "version": __version__,
            "command": self.cfg.command,
            "arguments": self.cfg.arguments,
            "budgets": self.cfg.budgets(),
            "seed": self.cfg.seed,
            "result": self.result,
        }
        if passed is not None:
            doc["passed"] = passed
        return json.dumps(doc, sort_keys=True, indent=2)


def _bool(x: bool) -> str:
    return "true" if x else "false"


# -- commands ---------------------------------------------------------------


def cmd_braid(args: argparse.Namespace, out: Output) -> int:
    b = parse_braid(args.word, args.n)
    actions = [a for a in ("trivial", "delete", "double", "linking", "brunnian", "qbrunnian") if getattr(args, a) not in (None, False)]
    res: dict[str, Any] = {"word": str(b)}
    text: list[tuple[str, str]] = []
    for a in actions:
        if a == "trivial":
            v = braid_is_trivial(b)
            res[a], shown = v, _bool(v)
        elif a in ("delete", "double"):
            op = delete_strand if a == "delete" else double_strand
            r = op(b, getattr(args, a))
            res[a] = str(r)
            shown = str(r)
        elif a == "linking":
            L = linking_matrix(b).tolist()
            res[a] = L
            shown = "\n".join(" ".join(str(x) for x in row) for row in L)
        else:
            v = is_brunnian(b) if a == "brunnian" else is_qbrunnian(b)
            res[a], shown = v, _bool(v)
        text.append((a, shown))
    out.result = res
    if not actions:
        out.line(str(b))
    elif len(actions) == 1:
        out.line(text[0][1])
    else:
        for a, shown in text:
            out.line(f"{a}: {shown}")
    return EXIT_OK


def _linking_line(L: list[list[int]]) -> str:
    pairs = [f"lk({i + 1},{j + 1})={L[i][j]}" for i in range(len(L)) for j in range(i + 1, len(L)) if L[i][j]]
    return ", ".join(pairs) or "lk=0"


def cmd_theta(args: argparse.Namespace, out: Output) -> int:
    if args.n > out.cfg.max_level:
        raise BudgetExceeded(f"rank {args.n} above level budget {out.cfg.max_level}")
    w = parse_word(args.word, args.n)
    b = theta(args.n, w)
    out.result = {"word": str(w), "braid": str(b), "strands": b.n}
    out.line(str(b))
    if args.linking:
        L = linking_matrix(b).tolist()
        out.result["linking"] = L
        out.line(_linking_line(L))
    if args.brunnian:
        v = is_brunnian(b)
        out.result["brunnian"] = v
        out.line(_bool(v))
    return EXIT_OK


def cmd_gr(args: argparse.Namespace, out: Output) -> int:
    cfg = out.cfg
    action = args.gr_command
    if getattr(args, "m", None) is not None and args.m > cfg.max_degree:
        raise BudgetExceeded(f"degree {args.m} above budget {cfg.max_degree}")
    if getattr(args, "n", None) is not None and args.n > cfg.max_level:
        raise BudgetExceeded(f"n={args.n} above level budget {cfg.max_level}")
    if action == "theta":
        x = gr_theta(args.n, parse_lie(args.expr, args.n))
        out.result = {"expr": args.expr, "image": str(x)}
        out.line(str(x))
        return EXIT_OK
    if action == "rank":
        r = kohno_rank(args.n, args.m)
        out.result = {"n": args.n, "m": args.m, "rank": r}
        out.line(str(r))
        return EXIT_OK
    if action == "check-relations":
        ws = relations_check(args.n)
        bad = [w for w in ws if not w.ok]
        out.result = {
            "n": args.n,
            "instances": len(ws),
            "failures": [{"family": w.family, "indices": list(w.indices), "residue": str(w.residue)} for w in bad],
        }
        out.line(f"{len(ws)} relation instances, {len(bad)} nonzero residues")
        return EXIT_OK if not bad else EXIT_FAIL
    if action == "delta-example":
        rep = delta_example_check()
        out.result = rep.to_dict()
        out.line(rep.summary())
        return EXIT_OK if rep.passed else EXIT_FAIL
    if action == "theta-matrix":
        cert = gr_theta_matrix(args.n, args.m, budget=(cfg.max_level, cfg.max_degree))
        out.result = cert.to_dict()
        out.line(f"rank {cert.rank} (witt rank {cert.witt_rank})")
        out.line("elementary divisors: " + (" ".join(map(str, cert.elementary_divisors)) or "none"))
        return EXIT_OK if cert.injective else EXIT_FAIL
    raise ParseError(f"unknown gr action {action!r}")


def _known_homology(m: int, t: int) -> int | None:
    # certified free ranks; everything else in these degrees is zero
    if m == 1:
        return 1 if t == 1 else 0
    if m == 2 and t <= 3:
        return 1 if t == 2 else 0
    return None


def cmd_homology(args: argparse.Namespace, out: Output) -> int:
    cfg = out.cfg
    if args.m < 1 or args.N < 1:
        raise BudgetExceeded("Lie degree and level must be positive")
    if args.m > cfg.max_degree or args.N > cfg.max_level:
        raise BudgetExceeded(f"m={args.m}, N={args.N} outside budget ({cfg.max_degree}, {cfg.max_level})")
    report = e1_report(args.m, args.N)
    out.result = report
    for cell in report["homology"]:
        group = _group_str(cell["free_rank"], cell["invariant_factors"])
        out.line(
            f"m={cell['lie_degree']} t={cell['simplicial_degree']}: {group}"
            f"  (basis {cell['basis_size']}, boundary rank {cell['boundary_rank']})"
        )
    for cert in report["theta_certificates"]:
        out.line(f"gr theta n={cert['n']} m={cert['m']}: rank {cert['rank']} / witt {cert['witt_rank']}")
    if args.assert_known:
        for cell in report["homology"]:
            want = _known_homology(cell["lie_degree"], cell["simplicial_degree"])
            if want is not None and (cell["free_rank"] != want or cell["invariant_factors"]):
                raise AssertionFailed(f"homology at {cell['lie_degree'], cell['simplicial_degree']} differs from certified value")
    return EXIT_OK


def _group_str(free: int, torsion: list[int]) -> str:
    parts = (["Z" if free == 1 else f"Z^{free}"] if free else []) + [f"Z/{d}" for d in torsion]
    return " + ".join(parts) or "0"


def _random_word(n: int, rng: random.Random, max_length: int) -> FreeWord:
    A = Alphabet("y", n)
    while True:
        letters = [(rng.randint(1, n), rng.choice((1, -1))) for _ in range(rng.randint(1, max_length))]
        w = FreeWord.from_letters(A, letters)
        if not w.is_identity():
            return w


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    cfg = out.cfg
    N = args.N
    if N < 1 or N > cfg.max_level:
        raise BudgetExceeded(f"level {N} outside 1..{cfg.max_level}")
    rng = random.Random(cfg.seed)
    suites: dict[str, Any] = {}
    instances = {"fs1": instance_fs1, "ap": instance_ap}
    chosen = list(instances) if args.instance == "all" else [args.instance]
    for name in chosen:
        rep = verify_simplicial_identities(instances[name](), N, cfg.samples, rng.randrange(2**32), cfg.max_word_length)
        suites[f"identities_{name}"] = rep.to_dict()
    if args.instance == "all":
        suites["theta_naturality"] = theta_simplicial_check(min(N, 4)).to_dict()
        failures = [
            {"family": w.family, "indices": list(w.indices)}
            for n in range(2, min(N + 1, 5) + 1)
            for w in relations_check(n)
            if not w.ok
        ]
        suites["kohno_relations"] = {"passed": not failures, "failures": failures}
        bad = []
        for n in range(2, min(N, 4) + 1):
            for _ in range(cfg.samples):
                w = _random_word(n, rng, cfg.max_word_length)
                if braid_is_trivial(theta(n, w)):
                    bad.append({"n": n, "word": str(w)})
        suites["theta_faithful"] = {"passed": not bad, "failures": bad}
        bad = []
        fs1 = instance_fs1()
        for t in range(2, min(N, 3) + 1):
            for z in random_moore_cycles(t, max(1, cfg.samples // 4), rng):
                if not (is_moore_cycle(fs1, t, z) and is_brunnian(theta(t, z))):
                    bad.append({"level": t, "word": str(z)})
        suites["cycles_to_brunnian"] = {"passed": not bad, "failures": bad}
    passed = all(s["passed"] for s in suites.values())
    out.result = suites
    for name, s in sorted(suites.items()):
        out.line(f"{name}: {'PASS' if s['passed'] else 'FAIL'}")
        for f in s.get("failures", [])[:5]:
            out.line(f"  witness: {json.dumps(f, sort_keys=True)}")
    return EXIT_OK if passed else EXIT_FAIL


# -- argument parsing -------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    p.add_argument("--seed", type=int, default=d(0), help="random seed (recorded in reports)")
    p.add_argument("--budget-degree", type=int, default=d(6), help="largest Lie degree allowed")
    p.add_argument("--budget-level", type=int, default=d(6), help="largest simplicial level / rank allowed")
    p.add_argument("--samples", type=int, default=d(100), help="random samples per level")
    p.add_argument("--max-length", type=int, default=d(8), help="longest random word")
    p.add_argument("--out", metavar="FILE", default=d(None), help="write output to FILE")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="braidlab", parents=[_global_flags(suppress=False)], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("braid", parents=[common], help="braid word operations")
    p.add_argument("--n", type=int, help="strand count (or use an n=K: prefix)")
    p.add_argument("--word", required=True)
    p.add_argument("--trivial", action="store_true")
    p.add_argument("--delete", type=int, metavar="K")
    p.add_argument("--double", type=int, metavar="K")
    p.add_argument("--linking", action="store_true")
    p.add_argument("--brunnian", action="store_true")
    p.add_argument("--qbrunnian", action="store_true")

    p = sub.add_parser("theta", parents=[common], help="cabling map on a free word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--linking", action="store_true")
    p.add_argument("--brunnian", action="store_true")

    p = sub.add_parser("gr", parents=[common], help="graded Lie algebra of the pure braid group")
    gsub = p.add_subparsers(dest="gr_command", required=True)
    q = gsub.add_parser("theta", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--expr", required=True)
    q = gsub.add_parser("rank", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q = gsub.add_parser("check-relations", parents=[common])
    q.add_argument("--n", type=int, required=True)
    gsub.add_parser("delta-example", parents=[common])
    q = gsub.add_parser("theta-matrix", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)

    p = sub.add_parser("homology", parents=[common], help="homology of the Lie-degree complexes")
    p.add_argument("--m", type=int, required=True, help="largest Lie degree")
    p.add_argument("--N", type=int, required=True, help="largest simplicial degree")
    p.add_argument("--assert-known", action="store_true", help="enforce the certified Lie degree 1 and 2 values")

    p = sub.add_parser("verify", parents=[common], help="run the identity and property suites")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--instance", choices=("fs1", "ap", "all"), default="all")
    return parser


COMMANDS = {
    "braid": cmd_braid,
    "theta": cmd_theta,
    "gr": cmd_gr,
    "homology": cmd_homology,
    "verify": cmd_verify,
}


@contextmanager
def wall_clock_budget(ms: int | None) -> Iterator[None]:
    """Raise :class:`BudgetExceeded` once ``ms`` milliseconds have passed."""
    if not ms or not hasattr(signal, "setitimer"):
        yield
        return

    def expire(signum, frame):
        raise BudgetExceeded(f"wall-clock budget of {ms} ms exhausted")

    previous = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, ms / 1000)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def _arguments(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"json", "seed", "budget_degree", "budget_level", "samples", "max_length", "out", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    cfg = RunConfig(
        command=args.command,
        max_level=args.budget_level,
        max_degree=args.budget_degree,
        max_word_length=args.max_length,
        samples=args.samples,
        seed=args.seed,
        output=args.out,
        json=args.json,
        arguments=_arguments(args),
    )
    out = Output(cfg)
    passed = None
    budget_ms = os.environ.get("BRAIDLAB_BUDGET_MS")
    try:
        if min(cfg.max_level, cfg.max_degree, cfg.max_word_length) < 1 or cfg.samples < 0:
            raise BudgetExceeded("budgets must be positive")
        with wall_clock_budget(int(budget_ms) if budget_ms else None):
            code = COMMANDS[args.command](args, out)
        passed = code == EXIT_OK
    except ParseError as exc:
        return _error(f"parse error: {exc}", EXIT_PARSE)
    except IndexError as exc:
        return _error(f"index error: {exc}", EXIT_INDEX)
    except BudgetExceeded as exc:
        return _error(f"budget exceeded: {exc}", EXIT_BUDGET)
    except AssertionFailed as exc:
        out.result["assertion"] = str(exc)
        _emit(out.render(False), cfg.output)
        return _error(f"assertion failed: {exc}", EXIT_ASSERT)
    except (NotPure, ValueError) as exc:
        return _error(f"invalid input: {exc}", EXIT_PARSE)
    _emit(out.render(passed), cfg.output)
    return code


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    elif text:
        print(text)


def _error(msg: str, code: int) -> int:
    print(f"braidlab: {msg}", file=sys.stderr)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
