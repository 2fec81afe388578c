"""Shared bookkeeping for the acceptance run."""

from cirquent.rules import is_i_analytic_step

RESULTS: dict[int, tuple[bool, str]] = {}

# every CL8 derivation produced by the acceptance run, reduced to step counts
I_ANALYTIC = {"derivations": 0, "steps": 0, "violations": 0}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def note_cl8(d) -> None:
    """Tally i-analyticity over every step of a CL8-profile derivation."""
    I_ANALYTIC["derivations"] += 1
    for i, st in enumerate(d.steps):
        I_ANALYTIC["steps"] += 1
        if not is_i_analytic_step(d.cirquents[i], d.cirquents[i + 1], st):
            I_ANALYTIC["violations"] += 1
