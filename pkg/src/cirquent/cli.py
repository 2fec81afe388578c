"""The `cirq` command.

Exit codes: 0 ok / valid / provable / check passed; 1 not valid / not provable /
check failed (reason on stdout); 2 usage, parse or budget error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib.metadata import PackageNotFoundError, version

from .core import AND, OR, Cirquent, CirquentError, Port, is_single_gate
from .formula import FormulaError, parse, to_cirquent, underline
from .gbridge import GError, GProofInvalid, check_g_proof, parse_g_proof, translate_g_to_cl8
from .io import format_cirquent, format_derivation, parse_cirquent, parse_derivation
from .php import DEFAULT_MAX_N, php_proof, size_report
from .prover import ProverTrace, prove
from .rules import PROFILES, Derivation, RuleError, StepFailure, check_derivation, check_step
from .semantics import DEFAULT_PORT_BUDGET, BudgetExceeded, NotValid, decide_validity, format_arrangement

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def _assignment(f) -> str:
    return " ".join(f"{p}={int(v)}" for p, v in sorted(f.items()))


# verbs ----------------------------------------------------------------------

def cmd_parse(a) -> int:
    h = parse(a.text)
    if a.classical:
        h = underline(h)
    _emit(format_cirquent(to_cirquent(h), a.name), a.output)
    return OK


def cmd_valid(a) -> int:
    c = parse_cirquent(_read(a.input))
    verdict = decide_validity(c, a.budget)
    if isinstance(verdict, NotValid):
        print("not-valid")
        if a.countermodels:
            for f in verdict.countermodels:
                print("countermodel", _assignment(f))
        return NEGATIVE
    print("valid", format_arrangement(verdict))
    return OK


def cmd_prove(a) -> int:
    c = parse_cirquent(_read(a.input))
    trace = ProverTrace() if a.trace else None
    d = prove(c, a.budget, trace)
    if isinstance(d, NotValid):
        print("not-provable")
        return NEGATIVE
    if trace is not None:
        out = [f"# s {trace.s}\n", "# ranks " + " ".join(map(str, trace.ranks)) + "\n"]
        out += [format_cirquent(st, name) for name, st in trace.stages.items()]
        sys.stdout.write("".join(out))
    _emit(format_derivation(d), a.output)
    if a.output is not None:
        print(f"provable steps={len(d.steps)} size={d.size()}")
    return OK


def _check_chunk(args) -> StepFailure | None:
    cirqs, steps, offset = args
    for i, st in enumerate(steps):
        try:
            check_step(cirqs[i], cirqs[i + 1], st)
        except RuleError as e:
            return StepFailure(offset + i, e)
    return None


def _check(d: Derivation, profile: str, proof: bool, refutation: bool, jobs: int) -> StepFailure | None:
    prof = PROFILES[profile]
    if jobs <= 1 or prof.local or len(d.steps) < 2 * jobs:
        return check_derivation(d, profile, proof=proof, refutation=refutation)
    # endpoints and rule membership are cheap; only the step checks are farmed out
    if proof and (f := check_derivation(Derivation(d.cirquents[:1], []), profile, proof=True)):
        return f
    for i, st in enumerate(d.steps):
        if st.rule.name not in prof.rules:
            return check_derivation(Derivation(d.cirquents[i:i + 2], [st]), profile)
    size = -(-len(d.steps) // jobs)
    chunks = [(d.cirquents[s:s + size + 1], d.steps[s:s + size], s)
              for s in range(0, len(d.steps), size)]
    with ProcessPoolExecutor(jobs) as ex:
        found = [f for f in ex.map(_check_chunk, chunks) if f is not None]
    if found:
        return min(found, key=lambda f: f.index)
    if refutation and (f := check_derivation(Derivation(d.cirquents[-1:], []), profile,
                                             refutation=True)):
        return StepFailure(len(d.steps), f.error)
    return None


def cmd_check(a) -> int:
    d = parse_derivation(_read(a.input))
    fail = _check(d, a.profile, a.proof, a.refutation, a.jobs)
    if fail is not None:
        code = getattr(fail.error, "code", "error")
        print(f"check-failed step={fail.index} reason={code} {fail.error}")
        return NEGATIVE
    kind = ("proof" if is_single_gate(d.first, AND) else
            "refutation" if is_single_gate(d.last, OR) else "derivation")
    print(f"ok {kind} profile={a.profile} steps={len(d.steps)}")
    return OK


def cmd_from_g(a) -> int:
    p = parse_g_proof(_read(a.input))
    bad = check_g_proof(p)
    if bad is not None:
        path, err = bad
        print(f"check-failed node={'.'.join(map(str, path)) or 'root'} reason={err}")
        return NEGATIVE
    try:
        d = translate_g_to_cl8(p)
    except GProofInvalid as e:
        print(f"check-failed reason={e}")
        return NEGATIVE
    _emit(format_derivation(d), a.output)
    if a.output is not None:
        print(f"translated g-size={p.size()} cl8-size={d.size()}")
    return OK


def cmd_php(a) -> int:
    if a.n < 1:
        raise UsageError("-n must be positive")
    d = php_proof(a.n, a.max_n)
    if a.output is not None or not a.stats:
        _emit(format_derivation(d), a.output)
    if a.stats:
        for row in size_report(a.n, a.max_n):
            slope = "-" if row["slope"] is None else f"{row['slope']:.3f}"
            print(f"n={row['n']} size={row['size']} cirquents={row['cirquents']} "
                  f"max_cirquent={row['max_cirquent']} slope={slope}")
    return OK


def to_dot(c: Cirquent, name: str = "cirquent") -> str:
    """DOT text: ports as boxes, conjunctive gates as open circles, disjunctive as filled."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for n in sorted(c.nodes):
        lab = c.label(n)
        if isinstance(lab, Port):
            lines.append(f'  "{n}" [shape=box, label="{lab}"];')
        elif lab.kind is AND:
            lines.append(f'  "{n}" [shape=circle, label="", xlabel="{n}"];')
        else:
            lines.append(f'  "{n}" [shape=circle, style=filled, fillcolor=black, label="", xlabel="{n}"];')
    for n in sorted(c.nodes):
        for x in sorted(c.children(n)):
            lines.append(f'  "{x}" -> "{n}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_render(a) -> int:
    c = parse_cirquent(_read(a.input))
    _emit(to_dot(c), a.output)
    return OK


def cmd_stats(a) -> int:
    d = parse_derivation(_read(a.input))
    print(f"cirquents={len(d.cirquents)}")
    print(f"steps={len(d.steps)}")
    print(f"size={d.size()}")
    print(f"max_cirquent={max(c.size() for c in d.cirquents)}")
    for rule, count in sorted(d.rule_counts().items()):
        print(f"rule {rule}={count}")
    return OK


# argument parsing -----------------------------------------------------------

def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cirq", description="Cirquent calculus toolkit.")
    ap.add_argument("--version", action="version", version=f"cirq {_version()}")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for check (default 1)")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("parse", help="formula or hyperformula to .cirq")
    p.add_argument("text")
    p.add_argument("--classical", action="store_true", help="share identical literals")
    p.add_argument("--name", default="c")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_parse)

    budget = dict(type=int, default=DEFAULT_PORT_BUDGET,
                  help=f"port limit for exhaustive search (default {DEFAULT_PORT_BUDGET})")
    p = sub.add_parser("valid", help="decide validity")
    p.add_argument("input")
    p.add_argument("--budget", **budget)
    p.add_argument("--countermodels", action="store_true")
    p.set_defaults(func=cmd_valid)

    p = sub.add_parser("prove", help="CL8 proof of a valid cirquent")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--budget", **budget)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check", help="check a derivation file")
    p.add_argument("input")
    p.add_argument("--profile", choices=sorted(PROFILES), default="cl8")
    p.add_argument("--proof", action="store_true", help="require the first cirquent to be the axiom")
    p.add_argument("--refutation", action="store_true",
                   help="require the last cirquent to be the counter-axiom")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("from-g", help="translate a G-proof (.gpf) into CL8")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_from_g)

    p = sub.add_parser("php", help="CL8 proof of the pigeonhole formula")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                   help=f"largest n attempted (default {DEFAULT_MAX_N})")
    p.set_defaults(func=cmd_php)

    p = sub.add_parser("render", help="render a cirquent")
    p.add_argument("input")
    p.add_argument("--format", choices=["dot"], default="dot")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("stats", help="size statistics of a derivation file")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = make_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else ERROR
    if getattr(a, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return ERROR
    try:
        return a.func(a)
    except BudgetExceeded as e:
        print(f"error: budget exceeded: {e}", file=sys.stderr)
    except (UsageError, FormulaError, GError, CirquentError) as e:
        print(f"error: {e}", file=sys.stderr)
    return ERROR


if __name__ == "__main__":
    sys.exit(main())
