"""Command-line driver: ``adic run script.adic`` and ``adic property``.

Each command of a script produces one JSON object on its own line.  Reports are
deterministic for a given script and flag set except for the ``timing`` field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from typing import Dict, List, Optional, Sequence

from . import dsl
from .algebra import QQ, GF, AlgebraError, PolynomialRing
from .flatness import adic_flat_check, check_flat_tower_limit, check_tensored_resolution_tower, default_torsion_tests
from .groebner import s_pairs_reduce_to_zero
from .koszul import KoszulTower
from .modules import FPModule, Ideal, Matrix, QuotientRing, adic_quotient, poly_to_vec
from .resolutions import check_base_change_compatibility, free_resolution, lift_resolution, system_resolution, tor_dimension
from .towers import AdicTower, check_completion_comparison, induced_tower, torsion_submodule, validate_tower
from .verdict import FAIL, PASS, UNDETERMINED, Verdict, Witness, vec_strings
from .wpr import wpr_report

SCHEMA_ID = "adic-report/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Session:
    """Name environment built from the declarations seen so far."""

    def __init__(self):
        self.ring: Optional[QuotientRing] = None
        self.objects: Dict[str, object] = {}
        self.texts: Dict[str, str] = {}
        self.last_ideal: Optional[str] = None

    def declare(self, s) -> None:
        self.texts[s.name] = dsl.format_statement(s)
        if isinstance(s, dsl.RingDecl):
            field = QQ if s.field[0] == "QQ" else GF(s.field[1])
            base = PolynomialRing(field, list(s.variables), s.order or "grevlex")
            self.ring = QuotientRing(base, [dsl.eval_expr(e, base) for e in s.modulus])
            self.objects[s.name] = self.ring
        elif isinstance(s, dsl.IdealDecl):
            self.objects[s.name] = Ideal(self.ring, [dsl.eval_expr(e, self.ring.base) for e in s.gens])
            self.last_ideal = s.name
        elif isinstance(s, dsl.ModuleDecl):
            base = self.ring.base
            cols = []
            for col in s.columns:
                v = {}
                for q, e in enumerate(col):
                    v.update(poly_to_vec(dsl.eval_expr(e, base), q))
                cols.append(v)
            ring = self.ring if s.over is None else adic_quotient(self.objects[s.over[0]], s.over[1])
            self.objects[s.name] = FPModule(ring, s.rows, Matrix(base, s.rows, cols))
        elif isinstance(s, dsl.TowerDecl):
            ideal = self.objects[s.ideal or self.last_ideal]
            if s.kind == "induced":
                self.objects[s.name] = induced_tower(self.objects[s.modules[0]], ideal, s.levels)
            else:
                self.objects[s.name] = AdicTower(ideal, [self.objects[m] for m in s.modules])

    def ideal_for(self, cmd: dsl.Command) -> Ideal:
        over = cmd.option("over")
        return self.objects[over[0] if over else self.last_ideal]

    def digest(self, cmd: dsl.Command, flags: dict) -> str:
        text = "\n".join(self.texts.values()) + "\n" + dsl.format_statement(cmd) + "\n" + json.dumps(flags, sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()


def _tests(session: Session, cmd: dsl.Command, ideal: Ideal):
    names = cmd.option("tests")
    if not names:
        return default_torsion_tests(ideal)
    return [session.objects[n] for n in names]


def _one(cmd: dsl.Command, key: str, default: int) -> int:
    v = cmd.option(key)
    return v[0] if v else default


def _strs(base, vecs, rank):
    return [vec_strings(v, base, rank) for v in vecs]


def execute(session: Session, cmd: dsl.Command, kmax: int, depth: int) -> Verdict:
    obj = lambda name: session.objects[name]  # noqa: E731
    name = cmd.name
    bounds = {"kmax": kmax, "depth": depth}
    if name == "gb":
        target = obj(cmd.args[0])
        G = target.groebner
        ok = s_pairs_reduce_to_zero(G)
        base = target.ring.base
        rank = getattr(target, "rank", 1)
        basis = _strs(base, G.elements, rank)
        if not ok:
            return Verdict("gb", FAIL, "an S-pair does not reduce to zero",
                           [Witness("s-pair", "basis failed the S-pair test")], {"basis": basis})
        return Verdict("gb", PASS, f"reduced Gröbner basis with {len(G)} elements", details={"basis": basis})
    if name == "resolve":
        M = obj(cmd.args[0])
        P = free_resolution(M, _one(cmd, "length", depth))
        v = P.verify()
        details = {"ranks": P.ranks(), "complete": P.complete,
                   "differentials": [_strs(M.base, P.differential(j).cols, P.complex.rank(-j + 1))
                                     for j in range(1, P.length + 1)]}
        return Verdict("resolve", v.status, f"free resolution with ranks {P.ranks()}" if v.passed else v.summary,
                       v.witnesses, details, {"length": _one(cmd, "length", depth)})
    if name == "tor":
        N, M, i = obj(cmd.args[0]), obj(cmd.args[1]), cmd.args[2]
        d1 = tor_dimension(N, M, i, free_resolution(M, i + 1))
        d2 = tor_dimension(M, N, i, free_resolution(N, i + 1))
        details = {"dimension": d1, "dimension_other_side": d2}
        if d1 is None or d2 is None:
            return Verdict("tor", UNDETERMINED, "Tor is not finite dimensional or not computable here", [], details)
        if d1 != d2:
            return Verdict("tor", FAIL, "the two resolutions disagree",
                           [Witness("tor-mismatch", f"dimensions {d1} and {d2}")], details)
        return Verdict("tor", PASS, f"dim Tor_{i} = {d1}", details=details)
    if name == "koszul":
        ideal = obj(cmd.args[0])
        tower = KoszulTower(ideal.ring, ideal.gens, kmax)
        dims = {}
        witnesses = []
        for k in range(1, kmax + 1):
            for i in range(tower.n + 1):
                H = tower.homology(i, k)
                dims[f"{i},{k}"] = 0 if H.is_zero() else H.module.vector_space_dim()
                if i > 0 and not H.is_zero() and not any(w.level == k for w in witnesses):
                    witnesses.append(Witness("homology-class", f"H^-{i} of level {k} is nonzero",
                                             H.nonzero_generators()[0], H.ambient.rank, ideal.ring.base,
                                             level=k, degree=-i))
        details = {"homology_dims": dims}
        if witnesses:
            return Verdict("koszul", FAIL, "negative Koszul homology is nonzero", witnesses, details, {"kmax": kmax})
        return Verdict("koszul", PASS, f"negative Koszul homology vanishes for k <= {kmax}", [], details, {"kmax": kmax})
    if name == "wpr":
        ideal = obj(cmd.args[0])
        rep = wpr_report(ideal.ring, ideal.gens, kmax, depth)
        v = rep.verdict
        v.details["entries"] = [e.to_dict() for _, e in sorted(rep.entries.items())]
        return v
    if name == "torsion":
        return torsion_submodule(obj(cmd.args[0]), session.ideal_for(cmd)).verdict
    if name == "flatcheck":
        ideal = session.ideal_for(cmd)
        fv = adic_flat_check(obj(cmd.args[0]), ideal, depth, kmax, _tests(session, cmd, ideal))
        v = fv.overall
        v.details["conditions"] = {k: c.to_dict() for k, c in fv.conditions.items()}
        return v
    if name == "completion":
        return check_completion_comparison(obj(cmd.args[0]), session.ideal_for(cmd), kmax)
    if name == "tower-validate":
        return validate_tower(obj(cmd.args[0]))
    if name == "system-resolution":
        return system_resolution(obj(cmd.args[0]), _one(cmd, "length", 3), depth).verdict
    if name == "lift":
        T: AdicTower = obj(cmd.args[0])
        k = _one(cmd, "level", 0)
        if not 0 <= k < T.kmax:
            raise AlgebraError(f"lift level {k} outside 0..{T.kmax - 1}")
        out = lift_resolution(free_resolution(T.modules[k], depth), T.modules[k + 1], T.transitions[k], depth)
        return out.verdict
    if name == "prop250":
        return check_tensored_resolution_tower(obj(cmd.args[0]), session.ideal_for(cmd), kmax, depth)
    if name == "lemma290":
        SR = system_resolution(obj(cmd.args[0]), _one(cmd, "length", 3), depth)
        if not SR.succeeded:
            return SR.verdict
        return check_base_change_compatibility(SR)
    if name == "limit-flat":
        T = obj(cmd.args[0])
        SR = system_resolution(T, _one(cmd, "length", 3), depth)
        return check_flat_tower_limit(T, SR, _tests(session, cmd, T.ideal), depth)
    raise AlgebraError(f"unknown command {name}")  # pragma: no cover - parser rejects these


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def make_report(cmd: dsl.Command, digest: str, verdict: Verdict, elapsed: float, error: Optional[str] = None) -> dict:
    d = verdict.to_dict()
    report = {
        "schema": SCHEMA_ID,
        "command": dsl.format_statement(cmd),
        "line": cmd.pos[0],
        "inputs_digest": digest,
        "check": d["check"],
        "verdict": d["verdict"],
        "summary": d["summary"],
        "witnesses": _jsonable(d["witnesses"]),
        "bounds": _jsonable(d["bounds"]),
        "details": _jsonable(d["details"]),
        "timing": {"seconds": round(elapsed, 6)},
    }
    if "failing_level" in d:
        report["failing_level"] = d["failing_level"]
    if error is not None:
        report["error"] = error
    return report


def run_script(text: str, kmax: int = 4, depth: int = 4) -> List[dict]:
    """Parse and execute ``text``; raises :class:`dsl.DslError` on invalid input."""
    script = dsl.parse(text)
    session = Session()
    flags = {"kmax": kmax, "depth": depth}
    reports = []
    for s in script.statements:
        if not isinstance(s, dsl.Command):
            session.declare(s)
            continue
        t0 = time.perf_counter()
        error = None
        try:
            verdict = execute(session, s, kmax, depth)
        except (AlgebraError, ValueError) as exc:
            verdict = Verdict(s.name, UNDETERMINED, f"engine error: {exc}")
            error = str(exc)
        reports.append(make_report(s, session.digest(s, flags), verdict, time.perf_counter() - t0, error))
    return reports


def summary_markdown(reports: Sequence[dict]) -> str:
    lines = ["| line | command | verdict | summary |", "|---|---|---|---|"]
    for r in reports:
        lines.append(f"| {r['line']} | `{r['command']}` | {r['verdict']} | {r['summary']} |")
    return "\n".join(lines)


# ---------------------------------------------------------------- property subcommand


def _random_poly(rng: random.Random, base: PolynomialRing, terms: int = 3, deg: int = 3):
    p = base.zero()
    for _ in range(terms):
        m = base.one()
        for v in base.gens():
            m = m * v ** rng.randint(0, deg)
        p = p + base.constant(rng.randint(-5, 5)) * m
    return p


def run_properties(seed: int, count: int) -> List[dict]:
    """Randomized checks: ring axioms, S-pair soundness and parse/print round-trips."""
    rng = random.Random(seed)
    base = PolynomialRing(QQ, ["x", "y", "z"])
    reports = []

    def report(check, failures, n, t0):
        if failures:
            v = Verdict(check, FAIL, f"{len(failures)} of {n} samples failed",
                        [Witness("counterexample", f) for f in failures[:3]])
        else:
            v = Verdict(check, PASS, f"{n} random samples passed")
        r = v.to_dict()
        r.update({"schema": SCHEMA_ID, "command": f"property {check}", "line": 0,
                  "inputs_digest": hashlib.sha256(f"{check}:{seed}:{count}".encode()).hexdigest(),
                  "timing": {"seconds": round(time.perf_counter() - t0, 6)}})
        r["bounds"] = {"count": n, "seed": seed}
        reports.append(r)

    t0 = time.perf_counter()
    bad = []
    for _ in range(count):
        f, g, h = (_random_poly(rng, base) for _ in range(3))
        if (f * (g + h) != f * g + f * h) or ((f * g) * h != f * (g * h)) or (f + g != g + f):
            bad.append(f"{f} ; {g} ; {h}")
    report("ring-axioms", bad, count, t0)

    t0 = time.perf_counter()
    bad = []
    n = max(1, count // 10)
    for _ in range(n):
        gens = [_random_poly(rng, base, 2, 2) for _ in range(rng.randint(1, 3))]
        I = Ideal(base, [g for g in gens if g] or [base.one()])
        if not s_pairs_reduce_to_zero(I.groebner) or not all(I.contains(g) for g in I.gens):
            bad.append(", ".join(map(str, I.gens)))
    report("groebner-soundness", bad, n, t0)

    t0 = time.perf_counter()
    bad = []
    for _ in range(count):
        gens = [_random_poly(rng, base, 2, 2) for _ in range(rng.randint(1, 3))]
        text = "ring A = QQ[x, y, z];\nideal a = <" + ", ".join(str(g) for g in gens) + ">;\nkoszul a;\n"
        s1 = dsl.parse(text)
        s2 = dsl.parse(dsl.format_script(s1))
        if s1 != s2:
            bad.append(text)
    report("parse-roundtrip", bad, count, t0)
    return reports


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="execute an .adic script")
    r.add_argument("script")
    r.add_argument("--kmax", type=int, default=4)
    r.add_argument("--depth", type=int, default=4)
    r.add_argument("--strict", action="store_true", help="exit 1 if any command fails")
    r.add_argument("--summary", action="store_true", help="markdown summary on stderr")
    r.add_argument("--seed", type=int, default=0, help="accepted for symmetry; scripts are deterministic")
    q = sub.add_parser("property", help="randomized property checks")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=200)
    q.add_argument("--strict", action="store_true")
    q.add_argument("--summary", action="store_true")
    return p


def _emit(reports, out) -> None:
    for r in reports:
        out.write(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.cmd == "run":
        if args.kmax < 1 or args.depth < 1:
            print("adic: --kmax and --depth must be positive", file=sys.stderr)
            return EXIT_USAGE
        try:
            with open(args.script, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"adic: {exc}", file=sys.stderr)
            return EXIT_USAGE
        try:
            reports = run_script(text, args.kmax, args.depth)
        except dsl.DslError as err:
            print(json.dumps({"schema": SCHEMA_ID, "error": dsl.describe_error(err)}), file=sys.stderr)
            return EXIT_USAGE
    else:
        if args.count < 1:
            print("adic: --count must be positive", file=sys.stderr)
            return EXIT_USAGE
        reports = run_properties(args.seed, args.count)
    _emit(reports, sys.stdout)
    if args.summary and reports:
        print(summary_markdown(reports), file=sys.stderr)
    failed = any(r["verdict"] == FAIL or "error" in r for r in reports)
    return EXIT_FAIL if args.strict and failed else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
