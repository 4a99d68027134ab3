"""Command-line entry point.

Every command prints one table (text or CSV) or one JSON document. Numbers are
written with 12 significant digits, so a fixed ``--seed`` gives byte-identical
output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import correlation as corr
from . import entanglement as ent
from . import states as st
from .su_basis import generator_set
from .verify import run_suite

COMMANDS = ("states", "table1", "expectations", "fidelity", "synthesize", "verify", "random-check")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        s = f"{float(x):.12g}"
        return "0" if s == "-0" else s
    return str(x)


def _round(obj):
    """Recursively round floats to 12 significant digits for JSON."""
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(f"{float(obj):.12g}")
        return 0.0 if v == 0 else v
    return obj


@dataclass
class Output:
    header: list[str]
    rows: list[list]
    document: dict
    notes: list[str] = field(default_factory=list)
    status: int = 0

    def render(self, fmt_name: str) -> str:
        if fmt_name == "json":
            return json.dumps(_round(self.document), indent=2) + "\n"
        if fmt_name == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            for row in self.rows:
                w.writerow([fmt(x) for x in row])
            return buf.getvalue()
        cells = [self.header] + [[fmt(x) for x in row] for row in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.header))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
        lines += self.notes
        return "\n".join(lines) + "\n"


def cmd_states(args) -> Output:
    basis = st.entangled_basis(args.n)
    d = args.n * args.n
    header = ["label", "dim_a", "dim_b", "parity"] + [f"a{k}_{part}" for k in range(d) for part in ("re", "im")]
    rows, docs = [], []
    for s in basis:
        parity = st.exchange_parity(s)
        amps = [x for z in s.amplitudes for x in (float(z.real), float(z.imag))]
        rows.append([s.label, s.dim_a, s.dim_b, parity] + amps)
        docs.append({**s.to_dict(), "parity": parity})
    return Output(header, rows, {"n": args.n, "states": docs})


def cmd_table1(args) -> Output:
    reports = ent.basis_report(st.entangled_basis(args.n))
    header = ["label", "entropy", "negativity"] + [f"schmidt_{k}" for k in range(args.n)] + [
        "parity", "fidelity", "concurrence"]
    rows = [[r.label, r.entropy, r.negativity, *r.schmidt, r.parity, r.fidelity_su, r.concurrence] for r in reports]
    return Output(header, rows, {"n": args.n, "reports": [r.to_dict() for r in reports]})


def cmd_expectations(args) -> Output:
    basis = st.entangled_basis(args.n)
    rep = corr.check_inequalities(basis, corr.canonical_tensor(args.n), args.tol or corr.ITERATIVE_TOL)
    header = ["label", "value", "reference", "magnitude", "bound_class", "bound", "saturated", "violated"]
    rows = [[row[k] for k in header] for row in rep["rows"]]
    notes = [f"# sign differs from reference: {', '.join(rep['sign_mismatch'])}"] if rep["sign_mismatch"] else []
    if rep["violations"]:
        notes.append(f"# VIOLATED: {', '.join(rep['violations'])}")
    return Output(header, rows, rep, notes, status=1 if rep["violations"] else 0)


def cmd_fidelity(args) -> Output:
    n = args.n
    basis = st.entangled_basis(n)
    header = ["label", "pipeline", "computational", "bell_like", "magic"]
    rows = []
    for s in basis:
        c = s.amplitudes
        b = st.change_basis(c, "computational", "bell_like", n)
        mu = st.change_basis(c, "computational", "magic", n)
        if n == 2:
            vals = [ent.su2_fidelity(s), ent.su2_fidelity_computational(c), ent.su2_fidelity_bell(b),
                    ent.su2_fidelity_magic(mu)]
        else:
            vals = [ent.su3_fidelity(s), ent.su3_fidelity_computational(c), ent.su3_fidelity_bell(b),
                    ent.su3_fidelity_magic(mu)]
        rows.append([s.label, *vals])
    doc: dict = {"n": n, "rows": [dict(zip(header, r)) for r in rows]}
    notes: list[str] = []
    if n == 3:
        q_fit = ent.fitted_su3_computational_form()
        q_ref = ent.square_sum_matrix(ent.REFERENCE_SU3_COMPUTATIONAL_FORM)
        diffs = ent.monomial_differences(q_fit, q_ref)
        doc["computational_form"] = {
            "fitted": ent.monomial_differences(q_fit, np.zeros_like(q_fit)),
            "differences_from_reference": diffs,
        }
        notes = [f"# {d['monomial']}: fitted {fmt(d['fitted'])}, reference {fmt(d['reference'])}" for d in diffs]
    worst = max(abs(r[1] - x) for r in rows for x in r[2:])
    status = 0 if worst <= (args.tol or corr.ITERATIVE_TOL) else 1
    return Output(header, rows, doc, notes, status)


def cmd_synthesize(args) -> Output:
    n = args.n
    target = corr.canonical_tensor(n)
    tensor = corr.synthesize_tensor(st.entangled_basis(n), target.spectrum, generator_set(n))
    deviation = float(np.max(np.abs(tensor.matrix - target.matrix)))
    doc = {**tensor.to_dict(), "max_deviation_from_canonical": deviation}
    rows = [[i, j, v] for i, j, v in doc["coefficients"]]
    status = 0 if deviation <= (args.tol or corr.ITERATIVE_TOL) else 1
    return Output(["i", "j", "value"], rows, doc, [f"# max deviation from canonical operator: {fmt(deviation)}"],
                  status)


def _suite_output(suite) -> Output:
    header = ["check", "passed", "error", "tol"]
    rows = [[c.name, c.passed, c.error, c.tol] for c in suite.checks]
    npass = sum(c.passed for c in suite.checks)
    summary = f"passed {npass}/{len(suite.checks)}"
    doc = {"summary": summary, "passed": suite.passed,
           "checks": [dict(zip(header, r)) for r in rows]}
    return Output(header, rows, doc, [f"# {summary}"], status=0 if suite.passed else 1)


def cmd_verify(args) -> Output:
    return _suite_output(run_suite(args.n, args.seed, args.samples, tol=args.tol))


def cmd_random_check(args) -> Output:
    return _suite_output(run_suite(args.n, args.seed, args.samples, structural=False, tol=args.tol))


HANDLERS = {
    "states": cmd_states,
    "table1": cmd_table1,
    "expectations": cmd_expectations,
    "fidelity": cmd_fidelity,
    "synthesize": cmd_synthesize,
    "verify": cmd_verify,
    "random-check": cmd_random_check,
}


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, choices=(2, 3), default=3, help="local dimension (default 3)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--samples", type=_positive_int, default=1000)
    common.add_argument("--tol", type=_positive_float, default=None, help="override the default tolerances")
    common.add_argument("--out", default=None, help="output file (default: standard output)")

    parser = argparse.ArgumentParser(prog="qutrit-bell", description="Qubit/qutrit entangled bases and correlation operators.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "states": "print the entangled basis",
        "table1": "entropy, negativity, Schmidt coefficients, parity, fidelity, concurrence per basis state",
        "expectations": "correlation-operator expectation values and inequality classes",
        "fidelity": "SU(n) fidelity: pipeline versus closed forms",
        "synthesize": "rebuild the correlation operator from the basis and its spectrum",
        "verify": "run the full invariant suite",
        "random-check": "run only the random-state agreement checks",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    result = HANDLERS[args.command](args)
    text = result.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
