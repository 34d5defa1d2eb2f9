"""Command-line front end: compute, generate, verify, trace, explore.

Machine contract: JSON results on stdout, human-readable progress on stderr,
and exit codes 0 (success), 1 (verification failure), 2 (input error),
3 (budget exhausted / stretch checks skipped).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from random import Random
from typing import Optional

from . import families, forcing, graph as graphmod, solver
from .errors import BudgetExceededError, DomainError, Graph6Error, VertexRangeError
from .families import FamilyGraph
from .graph import Graph

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

_FAMILY_CHOICES = ("g", "ghat", "cyclegadget", "path", "cycle", "complete")
_SUITES = ("paper-small", "lemma1", "pn-sets", "bounds", "all")


def _default_budget(args_budget: Optional[float]) -> Optional[float]:
    if args_budget is not None:
        return args_budget
    env = os.environ.get("ZF_BUDGET_SECS")
    return float(env) if env else None


def _emit(payload: dict | list, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2)
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def _progress_printer(label: str):
    last = [0.0]

    def cb(done: int, total: int) -> None:
        now = time.monotonic()
        if now - last[0] >= 2.0:
            last[0] = now
            print(f"{label}: {done}/{total} subsets", file=sys.stderr)

    return cb


def _build_family(name: str, level: int) -> tuple[Graph, Optional[FamilyGraph]]:
    if name == "g":
        fam = families.tree_gadget_family(level)
        return fam.graph, fam
    if name == "ghat":
        fam = families.tree_gadget_family(level, pendant=True)
        return fam.graph, fam
    if name == "cyclegadget":
        fam = families.cycle_gadget_family(level)
        return fam.graph, fam
    if name == "path":
        return graphmod.path_graph(level), None
    if name == "cycle":
        return graphmod.cycle_graph(level), None
    if name == "complete":
        return graphmod.complete_graph(level), None
    raise DomainError(f"unknown family {name!r}")


def _load_graph(args) -> tuple[Graph, Optional[FamilyGraph]]:
    if getattr(args, "family", None):
        if args.level is None:
            raise DomainError("--family needs --level")
        return _build_family(args.family, args.level)
    if not getattr(args, "input", None):
        raise DomainError("provide an input path or --family/--level")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as f:
            text = f.read()
    fmt = args.format
    if fmt is None:
        stripped = text.lstrip()
        if args.input.endswith(".json") or stripped.startswith("{"):
            fmt = "json"
        else:
            fmt = "graph6"
    if fmt == "json":
        g = graphmod.parse_json(text)
    else:
        line = text.strip().splitlines()[0] if text.strip() else ""
        g = graphmod.parse_graph6(line)
    return g, None


def _parse_vertex_set(tokens: str, g: Graph, fam: Optional[FamilyGraph]) -> frozenset[int]:
    names: dict[str, int] = {}
    if fam is not None:
        names.update(fam.landmarks)
    elif g.labels:
        names.update({name: v for v, name in g.labels.items()})
    out = set()
    for tok in tokens.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.lstrip("-").isdigit():
            out.add(int(tok))
        elif tok in names:
            out.add(names[tok])
        else:
            raise DomainError(f"unknown vertex {tok!r} (not an index or landmark name)")
    for v in out:
        if not 0 <= v < g.n:
            raise VertexRangeError(f"vertex {v} outside [0, {g.n})")
    return frozenset(out)


def _pick_solver(name: str, n: int) -> str:
    if name != "auto":
        return name
    return "exhaustive" if n <= 12 else "bnb"


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def cmd_compute(args) -> int:
    g, _fam = _load_graph(args)
    budget = _default_budget(args.budget_secs)
    which = _pick_solver(args.solver, g.n)
    if which == "exhaustive":
        result = solver.z_exhaustive(
            g, budget_secs=budget, threads=args.threads,
            progress=_progress_printer("compute"),
        )
    else:
        result = solver.z_branch_and_bound(g, budget_secs=budget)
    payload = {"n": g.n, "m": g.m, "solver": which, **result.to_json_dict()}
    _emit(payload, args.out)
    return EXIT_OK if result.exact else EXIT_BUDGET


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    g, fam = _build_family(args.family, args.param)
    if args.format == "json":
        text = json.dumps(graphmod.to_json_dict(g), indent=2)
    else:
        text = graphmod.write_graph6(g)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)
    mn, mx, profile = graphmod.degree_profile(g)
    summary = {
        "family": args.family,
        "param": args.param,
        "n": g.n,
        "m": g.m,
        "min_degree": mn,
        "max_degree": mx,
        "degree_profile": {str(k): v for k, v in sorted(profile.items())},
        "landmarks": dict(sorted(fam.landmarks.items())) if fam else {},
    }
    print(json.dumps(summary, indent=2), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# trace
# ---------------------------------------------------------------------------


def cmd_trace(args) -> int:
    g, fam = _load_graph(args)
    initial = _parse_vertex_set(args.set, g, fam)
    state, chron = forcing.closure(g, initial)
    complete = len(state.black) == g.n
    rounds = chron.events[-1].round if chron.events else 0
    payload = chron.to_json_dict()
    payload.update(
        {
            "final": sorted(state.black),
            "complete": complete,
            "rounds": rounds if complete else None,
            "stalled": not complete,
        }
    )
    _emit(payload, args.out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(graphmod.to_dot(g, state.black))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


class _Check:
    def __init__(self) -> None:
        self.rows: list[tuple[str, str, str]] = []

    def record(self, name: str, ok: bool, detail: str) -> None:
        self.rows.append((name, "PASS" if ok else "FAIL", detail))

    def skip(self, name: str, detail: str) -> None:
        self.rows.append((name, "SKIP", detail))

    def run(self, name: str, fn, detail_fmt: str = "{}") -> None:
        """fn returns (ok, detail); budget errors record a SKIP."""
        try:
            ok, detail = fn()
        except BudgetExceededError as exc:
            self.skip(name, f"budget exhausted: {exc}")
            return
        self.record(name, ok, detail)

    def exit_code(self) -> int:
        if any(st == "FAIL" for _, st, _ in self.rows):
            return EXIT_FAIL
        if any(st == "SKIP" for _, st, _ in self.rows):
            return EXIT_BUDGET
        return EXIT_OK

    def print(self) -> None:
        for name, status, detail in self.rows:
            print(f"{status} {name}: {detail}")


def _suite_paper_small(chk: _Check, budget: Optional[float], threads: int) -> None:
    for name, pendant in (("g", False), ("ghat", True)):
        fam = families.tree_gadget_family(1, pendant=pendant)
        res = solver.z_exhaustive(fam.graph, budget_secs=budget, threads=threads)
        chk.record(
            f"exact-value-{name}1",
            res.z == 3,
            f"zero forcing number of {name} level 1 = {res.z} (expected 3)",
        )

    expected2 = families.core_seed_bound(2) + 1
    for name, pendant in (("g", False), ("ghat", True)):
        fam = families.tree_gadget_family(2, pendant=pendant)
        res = solver.z_branch_and_bound(fam.graph, budget_secs=budget)
        if not res.exact:
            chk.skip(f"exact-value-{name}2", f"search interval [{res.lower}, {res.upper}]")
        else:
            chk.record(
                f"exact-value-{name}2",
                res.z == expected2,
                f"zero forcing number of {name} level 2 = {res.z} (expected {expected2})",
            )

    def no_ten() -> tuple[bool, str]:
        fam = families.tree_gadget_family(2, pendant=True)
        ok = solver.verify_no_smaller(
            fam.graph, 10, budget_secs=budget, threads=threads,
            progress=_progress_printer("no-10-set scan"),
        )
        return ok, "no 10-vertex subset forces the 24-vertex level-2 graph"

    chk.run("ghat2-minimality", no_ten)

    cap = solver.bound_conjecture_third(24).value
    chk.record(
        "conjectured-cap-violated",
        Fraction(11) > cap,
        f"computed value 11 exceeds the conjectured cap n/3 + 2 = {cap} at n = 24",
    )


def _suite_lemma1(chk: _Check, level: int, budget: Optional[float], threads: int) -> None:
    try:
        report = families.core_intersection_check(level, budget_secs=budget, threads=threads)
    except BudgetExceededError as exc:
        chk.skip(f"core-intersection-{level}", str(exc))
        return
    bound = families.core_seed_bound(level)
    chk.record(
        f"core-intersection-{level}-part-i",
        report.part_i_ok,
        f"every forcing set has >= {bound} vertices in the level-{level} core "
        f"({report.method}, {report.zero_forcing_sets_seen} forcing sets seen)",
    )
    if report.part_ii_ok is not None:
        chk.record(
            f"core-intersection-{level}-part-ii",
            report.part_ii_ok,
            "tight sets avoid the root and never force it within the core",
        )


def _suite_pn_sets(chk: _Check, max_level: int) -> None:
    for n in range(1, max_level + 1):
        p = families.canonical_forcing_set(n)
        size_ok = len(p) == families.core_seed_bound(n) + 1
        core = families.tree_gadget_family(n)
        hat = families.tree_gadget_family(n, pendant=True)
        root = core.landmarks[f"r{n}"]
        _, chron = forcing.closure(core.graph, p)
        forces_core = len(forcing.closure_set(core.graph, p)) == core.graph.n
        forces_hat = forcing.is_zero_forcing_set(hat.graph, p)
        root_idle = not any(e.forcer == root for e in chron.events)
        chk.record(
            f"canonical-set-{n}",
            size_ok and forces_core and forces_hat and root_idle,
            f"|P| = {len(p)}, forces level-{n} core and pendant graph, root idle in core",
        )


def _suite_bounds(chk: _Check, budget: Optional[float], threads: int, seed: int) -> None:
    ok = True
    for n in range(1, 9):
        ok &= solver.z_exhaustive(graphmod.path_graph(n)).z == solver.z_formula("path", n)
    for n in range(3, 9):
        ok &= solver.z_exhaustive(graphmod.cycle_graph(n)).z == solver.z_formula("cycle", n)
    for n in range(2, 7):
        ok &= solver.z_exhaustive(graphmod.complete_graph(n)).z == solver.z_formula("complete", n)
    for a in range(1, 8):
        for b in range(a, 8 - a + 1):
            ok &= solver.z_exhaustive(graphmod.complete_bipartite_graph(a, b)).z == solver.z_formula(
                "complete_bipartite", a, b
            )
    chk.record("formula-agreement", ok, "search matches closed forms for paths, cycles, K_n, K_{a,b}")

    rng = Random(seed)
    sound = True
    worst = ""
    for _ in range(50):
        g = _random_connected_graph(rng)
        mn, mx, _ = graphmod.degree_profile(g)
        z = solver.z_exhaustive(g).z
        cap = solver.bound_amos(g.n, mx).value
        if Fraction(z) > cap:
            sound = False
            worst = f" (violated at n={g.n}, max degree {mx}: {z} > {cap})"
            break
    chk.record("amos-soundness", sound, f"z <= ((d-2)n + 2)/(d-1) on 50 random connected graphs{worst}")

    tight = True
    for g, delta in (
        (graphmod.complete_graph(4), 3),
        (graphmod.complete_bipartite_graph(3, 3), 3),
        (graphmod.cycle_graph(5), 2),
        (graphmod.cycle_graph(8), 2),
    ):
        tight &= Fraction(solver.z_exhaustive(g).z) == solver.bound_amos(g.n, delta).value
    chk.record("amos-tightness", tight, "bound attained exactly on K_4, K_{3,3} and cycles")

    ident = True
    for n in range(1, 11):
        order = 6 * 4 ** (n - 1)
        ratio = Fraction(families.core_seed_bound(n) + 1, order)
        ident &= ratio == Fraction(4, 9) + Fraction(1, 18 * 4 ** (n - 1)) and ratio >= Fraction(4, 9)
    chk.record("ratio-identity", ident, "(s(n)+1)/(6*4^(n-1)) == 4/9 + 1/(18*4^(n-1)) >= 4/9 for n <= 10")

    g5 = all(solver.bound_girth5(n).value < n / 2 + 2 for n in (2, 10, 100, 1024, 10**6))
    chk.record("girth5-sanity", g5, "n/2 - n/(24 log2 n + 6) + 2 stays below n/2 + 2")


def _suite_stretch(chk: _Check, budget: Optional[float]) -> None:
    fam = families.cycle_gadget_family(6)
    mn, mx, _ = graphmod.degree_profile(fam.graph)
    structural = (
        fam.graph.n == 36
        and fam.graph.m == 54
        and mn == mx == 3
        and graphmod.is_connected(fam.graph)
    )
    chk.record(
        "cyclegadget6-structure", structural, "36 vertices, 54 edges, 3-regular, connected"
    )
    res = solver.z_branch_and_bound(fam.graph, budget_secs=budget)
    if res.exact:
        chk.record(
            "cyclegadget6-ratio",
            res.z >= 15,
            f"zero forcing number {res.z} >= 15, ratio {Fraction(res.z, 36)} >= 5/12",
        )
    elif res.lower >= 15:
        chk.record(
            "cyclegadget6-ratio",
            True,
            f"proven interval [{res.lower}, {res.upper}] already gives ratio >= 5/12",
        )
    else:
        chk.skip("cyclegadget6-ratio", f"search open: interval [{res.lower}, {res.upper}]")


def _random_connected_graph(rng: Random) -> Graph:
    n = rng.randint(3, 10)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    extra = rng.randint(0, n)
    for _ in range(extra):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return graphmod.from_edge_list(n, sorted(edges))


def cmd_verify(args) -> int:
    budget = _default_budget(args.budget_secs)
    chk = _Check()
    suite = args.suite
    if suite in ("paper-small", "all"):
        _suite_paper_small(chk, budget, args.threads)
    if suite == "lemma1":
        _suite_lemma1(chk, args.level or 1, budget, args.threads)
    if suite == "all":
        _suite_lemma1(chk, 1, budget, args.threads)
    if suite in ("pn-sets", "all"):
        _suite_pn_sets(chk, args.max_level or (6 if suite == "all" else 5))
    if suite in ("bounds", "all"):
        _suite_bounds(chk, budget, args.threads, args.seed)
    if suite == "all":
        _suite_stretch(chk, budget)
    chk.print()
    return chk.exit_code()


# ---------------------------------------------------------------------------
# explore
# ---------------------------------------------------------------------------


def cmd_explore(args) -> int:
    budget = _default_budget(args.budget_secs)
    gadget = families.subdivided_k4()
    instances: list[tuple[str, FamilyGraph]] = []
    rng = Random(args.seed)
    if args.generator == "binary-tree":
        for level in range(1, (args.max_level or 2) + 1):
            instances.append((f"binary-tree-{level}", families.tree_gadget_family(level, pendant=True)))
    elif args.generator == "hairy-cycle":
        for size in args.size or [6]:
            instances.append((f"hairy-cycle-{size}", families.cycle_gadget_family(size)))
    elif args.generator == "random-tree":
        for i in range(args.count):
            size = (args.size or [16])[0]
            base = families.random_tree_max3(size, rng)
            fam = families.inject_gadget(base, base.regions["leaves"], gadget)
            instances.append((f"random-tree-{size}-{i}", fam))
    elif args.generator == "random-cubic":
        for i in range(args.count):
            size = (args.size or [12])[0]
            g = families.random_cubic(size, rng)
            instances.append((f"random-cubic-{size}-{i}", FamilyGraph(g, {}, {})))
    if not instances:
        print("no instances generated", file=sys.stderr)
        return EXIT_INPUT

    rows = []
    any_exact = False
    for name, fam in instances:
        print(f"explore: solving {name} (n={fam.graph.n})", file=sys.stderr)
        res = solver.z_branch_and_bound(fam.graph, budget_secs=budget)
        any_exact |= res.exact
        report = families.ratio_report(fam, res)
        rows.append(
            {
                "instance": name,
                **report.to_json_dict(),
                "certificate": res.certificate.value,
            }
        )
    rows.sort(key=lambda r: (-Fraction(r["ratio_lower"]), r["instance"]))
    _emit(rows, args.out)
    return EXIT_OK if any_exact else EXIT_BUDGET


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_input_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="graph file (graph6 or JSON edge list), or - for stdin")
    p.add_argument("--format", choices=("graph6", "json"), default=None)
    p.add_argument("--family", choices=_FAMILY_CHOICES, default=None)
    p.add_argument("--level", type=int, default=None, help="family level / size parameter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zf", description="Zero forcing sets: simulation, exact solving, family generation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute the zero forcing number of a graph")
    _add_input_opts(p)
    p.add_argument("--solver", choices=("exhaustive", "bnb", "auto"), default="auto")
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("generate", help="write a family graph")
    p.add_argument("family", choices=_FAMILY_CHOICES)
    p.add_argument("param", type=int, help="level (g/ghat), cycle length, or order")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=_SUITES)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=20240901)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("trace", help="run the forcing process and emit the event chronicle")
    _add_input_opts(p)
    p.add_argument("--set", required=True, help="comma-separated vertex indices or landmark names")
    p.add_argument("--dot", default=None, help="also write a DOT rendering with the closure filled")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("explore", help="gadget-inject base families and rank forcing ratios")
    p.add_argument(
        "generator", choices=("binary-tree", "hairy-cycle", "random-tree", "random-cubic")
    )
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--size", type=int, action="append", default=None)
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_explore)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, Graph6Error, VertexRangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
