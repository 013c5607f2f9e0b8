"""Command-line interface: ``admg <command> GRAPH [...]``.

Exit status is 0 on success, 1 when the inputs fail a domain check (an
invalid parameter vector, a table outside the model, a failed self test) and
2 on usage or parse errors.
"""

import argparse
import contextlib
import io
import sys
from typing import NamedTuple

import numpy as np

from . import io as fmt
from .errors import AdmgError
from .graph import submasks
from .heads import head_tails, heads, partition_admg
from .oracles import (
    FLOAT_TOL,
    brute_force_m_separated,
    equivalence_report,
    random_admg,
)
from .parametrization import (
    as_vector,
    assignment_string,
    dimension,
    p_from_q,
    q_from_p,
    sample_model_table,
    sample_valid_q,
    table_order,
    validity,
    VALID_EPS,
)
from .separation import implied_independencies, is_m_separated

DIGITS = 12


class CliResult(NamedTuple):
    code: int
    out: str
    err: str


class UsageError(Exception):
    pass


def _num(x) -> str:
    return fmt._fmt(x, DIGITS)


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _set_arg(G, text):
    text = (text or "").strip()
    return G.mask([t for t in text.split(",") if t]) if text else 0


def _load(args):
    """Read every input file named by ``args``; errors here are exit 2."""
    G = fmt.parse_graph(_read(args.graph))
    extra = {}
    if getattr(args, "qfile", None):
        extra["q"] = fmt.parse_q(_read(args.qfile), G)
    if getattr(args, "tablefile", None):
        extra["p"] = fmt.parse_table(_read(args.tablefile), G).p
    for key in ("set", "a", "b", "given"):
        if hasattr(args, key):
            extra[key] = _set_arg(G, getattr(args, key))
    return G, extra


def cmd_heads(G, x, args, out):
    for H in heads(G):
        print(G.fmt(H), file=out)
    return 0


def cmd_tails(G, x, args, out):
    for ht in head_tails(G):
        print(ht.format(G), file=out)
    return 0


def cmd_partition(G, x, args, out):
    for ht in partition_admg(G, x["set"]):
        print(ht.format(G), file=out)
    return 0


def cmd_msep(G, x, args, out):
    sep = is_m_separated(G, x["a"], x["b"], x["given"])
    print(f"m-separated: {str(sep).lower()}", file=out)
    return 0


def cmd_independencies(G, x, args, out):
    for s in implied_independencies(G):
        print(s.format(G), file=out)
    return 0


def cmd_dim(G, x, args, out):
    print(dimension(G), file=out)
    return 0


def cmd_p_from_q(G, x, args, out):
    out.write(fmt.serialize_table(G, p_from_q(G, x["q"]), DIGITS))
    return 0


def cmd_q_from_p(G, x, args, out):
    out.write(fmt.serialize_q(G, q_from_p(G, x["p"]), DIGITS))
    return 0


def cmd_validate_q(G, x, args, out):
    status, p = validity(G, x["q"])
    if status == "valid":
        print("valid", file=out)
        return 0
    for cell in table_order(G.n):
        if p[cell] <= VALID_EPS:
            print(f"{status}: cell {assignment_string(G.n, cell)} = {_num(p[cell])}", file=out)
    return 1


def _violation(v):
    # sub-resolution noise prints as 0 so output is platform independent
    return _num(round(v, DIGITS))


def cmd_verify(G, x, args, out):
    rep = equivalence_report(G, x["p"], args.tol)
    yes = lambda b: str(b).lower()
    print(f"gmp: {yes(rep.gmp_holds)}", file=out)
    print(f"factorization: {yes(rep.factorization_holds)}", file=out)
    for order, ok in rep.ordered_local_holds.items():
        print(f"ordered-local {','.join(G.vertices[v] for v in order)}: {yes(ok)}", file=out)
    print(f"roundtrip: {yes(rep.parametrization_roundtrip_holds)}", file=out)
    print(f"worst-violation: {_violation(rep.worst_violation)}", file=out)
    for kind, what, v in rep.witnesses:
        print(f"witness {kind} {what} {_violation(v)}", file=out)
    return 0 if rep.holds else 1


def cmd_sample(G, x, args, out):
    if args.table:
        out.write(fmt.serialize_table(G, sample_model_table(G, args.seed), DIGITS))
    else:
        out.write(fmt.serialize_q(G, sample_valid_q(G, args.seed), DIGITS))
    return 0


def selftest(G, seed, trials, out):
    """Randomized cross-checks of the fast paths against the oracles."""
    rng = np.random.default_rng(seed)
    graphs = [G] if G is not None else [
        random_admg(int(rng.integers(2, 6)), rng) for _ in range(trials)]
    failures = 0

    def report(name, ok, detail):
        nonlocal failures
        failures += not ok
        print(f"{name}: {'pass' if ok else 'FAIL'} ({detail})", file=out)

    triples = bad = 0
    for H in graphs:
        for a in range(H.n):
            for b in range(a + 1, H.n):
                for C in submasks(H.full & ~(1 << a | 1 << b)):
                    triples += 1
                    bad += is_m_separated(H, 1 << a, 1 << b, C) != brute_force_m_separated(H, a, b, C)
    report("msep-oracle", bad == 0, f"{triples} triples")

    worst = 0.0
    for H in graphs:
        qs = rng.normal(size=(trials, dimension(H)))
        worst = max(worst, float(np.abs(p_from_q(H, qs).sum(axis=-1) - 1).max()))
    report("normalization", worst <= 1e-9, f"{len(graphs) * trials} vectors")

    rt_worst = 0.0
    consistent = True
    for H in graphs:
        for t in range(trials if G is not None else 1):
            s = int(rng.integers(2**31))
            q = as_vector(H, sample_valid_q(H, s))
            rt_worst = max(rt_worst, float(np.abs(as_vector(H, q_from_p(H, p_from_q(H, q))) - q).max()))
            rep = equivalence_report(H, sample_model_table(H, s))
            consistent &= rep.consistent and rep.holds
    report("roundtrip", rt_worst <= 1e-9, "q_from_p(p_from_q(q)) = q")
    report("equivalence", consistent, "sampled model tables")
    return 1 if failures else 0


def cmd_selftest(G, x, args, out):
    return selftest(G, args.seed, args.trials, out)


def _parser():
    p = argparse.ArgumentParser(prog="admg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, qfile=False, tablefile=False, graph=True):
        sp = sub.add_parser(name, help=help)
        if graph:
            sp.add_argument("graph")
        if qfile:
            sp.add_argument("qfile")
        if tablefile:
            sp.add_argument("tablefile")
        sp.set_defaults(func=func)
        return sp

    add("heads", cmd_heads, "list all heads")
    add("tails", cmd_tails, "list heads with their tails")
    add("partition", cmd_partition, "head partition of a vertex set").add_argument(
        "--set", required=True, help="comma-separated vertex names")
    sp = add("msep", cmd_msep, "test m-separation")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--given", default="")
    add("independencies", cmd_independencies, "all elementary m-separations")
    add("dim", cmd_dim, "model dimension")
    add("p-from-q", cmd_p_from_q, "joint table from parameters", qfile=True)
    add("q-from-p", cmd_q_from_p, "parameters from a positive table", tablefile=True)
    add("validate-q", cmd_validate_q, "check a parameter vector is valid", qfile=True)
    add("verify", cmd_verify, "run every model-membership check on a table",
        tablefile=True).add_argument("--tol", type=float, default=FLOAT_TOL)
    sp = add("sample", cmd_sample, "draw valid parameters")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--table", action="store_true", help="emit the joint table instead")
    sp = add("selftest", cmd_selftest, "randomized oracle cross-checks", graph=False)
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    return p


def run_cli(argv) -> CliResult:
    out, err = io.StringIO(), io.StringIO()
    parser = _parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return CliResult(int(exc.code or 0), out.getvalue(), err.getvalue())
    try:
        if args.graph is None:
            G, extra = None, {}
        else:
            G, extra = _load(args)
    except (AdmgError, UsageError) as exc:
        return CliResult(2, "", f"admg: error: {exc}\n")
    try:
        code = args.func(G, extra, args, out)
    except AdmgError as exc:
        return CliResult(1, out.getvalue(), f"admg: {type(exc).__name__}: {exc}\n")
    return CliResult(code, out.getvalue(), err.getvalue())


def main(argv=None):
    res = run_cli(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.out)
    sys.stderr.write(res.err)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
