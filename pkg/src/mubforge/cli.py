"""Command line interface: ``mubforge <command> ...``.

Exit codes: 0 all expectations met, 1 mismatch, 2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from . import __version__
from .weyl import TOL_MUB, TOL_NUM

EXIT_OK, EXIT_MISMATCH, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_SEED = 0x5EED
FORMATS = ("json", "csv", "md")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    n: int | None = None
    spread: int = 0
    antiunitary: bool = False
    budget: float | None = None
    seed: int = DEFAULT_SEED
    tol_num: float = TOL_NUM
    tol_mub: float = TOL_MUB
    output: str | None = None
    format: str = "json"
    count_only: bool = False
    file: str | None = None
    threads: int = 1

    def validate(self):
        from .fp import is_prime

        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        if self.command in ("zsigmondy",):
            if self.p is None or self.n is None or self.p < 2 or self.n < 1:
                raise UsageError("zsigmondy needs integers b >= 2 and a >= 1")
        elif self.p is not None:
            if not is_prime(self.p):
                raise UsageError(f"p = {self.p} is not prime")
            if self.n is None or self.n < 1:
                raise UsageError("n must be a positive integer")
        if self.budget is not None and self.budget <= 0:
            raise UsageError("budget must be positive")
        if self.tol_num <= 0 or self.tol_mub <= 0:
            raise UsageError("tolerances must be positive")
        if self.spread < 0:
            raise UsageError("spread index must be non-negative")
        if self.threads < 1:
            raise UsageError("MUBFORGE_THREADS must be a positive integer")

    def header(self) -> dict:
        d = asdict(self)
        d["seed"] = hex(self.seed)
        d["version"] = __version__
        return d


# command implementations: each returns (result dict or Report list, exit code) ----

def _reports_result(reports):
    return {"ok": all(r.ok for r in reports), "reports": [r.to_dict() for r in reports]}


def cmd_spreads(cfg: RunConfig):
    from .spreads import ResourceLimitError, enumerate_spreads, lagrangian_count

    try:
        spreads = enumerate_spreads(cfg.p, cfg.n, time_budget=cfg.budget)
    except ResourceLimitError as exc:
        raise UsageError(str(exc)) from exc
    except TimeoutError:
        return {"status": "INCONCLUSIVE"}, EXIT_INCONCLUSIVE
    res = {"p": cfg.p, "n": cfg.n, "count": len(spreads), "lagrangians": lagrangian_count(cfg.p, cfg.n)}
    if not cfg.count_only:
        res["spreads"] = [json.loads(s.to_json()) for s in spreads]
    return res, EXIT_OK


def _spread(cfg: RunConfig):
    from .spreads import ResourceLimitError, enumerate_spreads

    try:
        spreads = enumerate_spreads(cfg.p, cfg.n)
    except ResourceLimitError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.spread >= len(spreads):
        raise UsageError(f"spread index {cfg.spread} out of range (0..{len(spreads) - 1})")
    return spreads[cfg.spread]


def cmd_build_mub(cfg: RunConfig):
    from .mub import build_mub

    mub = build_mub(_spread(cfg))
    obj = json.loads(mub.to_json())
    ok = mub.is_valid(cfg.tol_mub)
    obj["max_bias"] = mub.max_bias()
    return obj, EXIT_OK if ok else EXIT_MISMATCH


def cmd_check_mub(cfg: RunConfig):
    from .mub import check_mub_data

    try:
        with open(cfg.file) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return {"valid": False, "message": f"cannot read {cfg.file}: {exc}"}, EXIT_MISMATCH
    if isinstance(obj, dict) and "bases" not in obj and isinstance(obj.get("result"), dict):
        obj = obj["result"]
    ok, msg = check_mub_data(obj, cfg.tol_mub)
    return {"valid": ok, "message": msg}, EXIT_OK if ok else EXIT_MISMATCH


def cmd_singer(cfg: RunConfig):
    from . import fp
    from .groups import cyclic
    from .singer import cyclic_normalizer, is_irreducible, singer_cycle, singer_unitary

    if cfg.p**cfg.n > 16:
        raise UsageError("Singer construction limited to p^n <= 16")
    S = singer_cycle(cfg.p, cfg.n)
    U = singer_unitary(cfg.p, cfg.n)
    q = cfg.p**cfg.n
    res = {
        "cycle": json.loads(fp.matrix_to_json(S, cfg.p)),
        "label": json.loads(U.to_json()),
        "order": cyclic(U).order,
        "irreducible": is_irreducible(S, cfg.p),
        "normalizer_order": cyclic_normalizer(U).order,
        "extended_normalizer_order": cyclic_normalizer(U, extended=True).order,
    }
    ok = res["order"] == q + 1 and res["irreducible"] and res["normalizer_order"] == 2 * cfg.n * (q + 1)
    return res, EXIT_OK if ok else EXIT_MISMATCH


def cmd_zsigmondy(cfg: RunConfig):
    from .numtheory import zsigmondy_exceptional, zsigmondy_primes

    try:
        res = zsigmondy_primes(cfg.p, cfg.n)
    except OverflowError as exc:
        raise UsageError(str(exc)) from exc
    obj = json.loads(res.to_json())
    # the classical theorem: no Zsigmondy prime exactly on its exception list (a >= 2)
    ok = cfg.n < 2 or res.exceptional == zsigmondy_exceptional(cfg.p, cfg.n)
    return obj, EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify_lemmas(cfg: RunConfig):
    from .report import Report
    from .singer import NoZsigmondyPrime, verify_singer_lemma, verify_zsigmondy_lemma

    if cfg.p**cfg.n > 16:
        raise UsageError("lemma suites limited to p^n <= 16")
    reps = [verify_singer_lemma(cfg.p, cfg.n, tol=cfg.tol_num)]
    try:
        reps.append(verify_zsigmondy_lemma(cfg.p, cfg.n, tol=cfg.tol_num))
    except NoZsigmondyPrime as exc:
        r = Report(f"Zsigmondy lemma, p={cfg.p}, n={cfg.n}")
        r.skip("Zsigmondy unitary", str(exc))
        reps.append(r)
    return reps, EXIT_OK if all(r.ok for r in reps) else EXIT_MISMATCH


def _expected_sharp(d: int) -> bool:
    return d in (2, 4)


def cmd_sharp_search(cfg: RunConfig):
    from .covariance import INCONCLUSIVE, NOT_SHARP, SHARP, sharp_search

    d = cfg.p**cfg.n
    if d == 16:
        from .suites import dimension16_suite

        rep = dimension16_suite()
        status = rep.data["verdict"]
        res = {"dimension": 16, "p": 2, "n": 4, "spread": None, "antiunitary_search": cfg.antiunitary,
               "status": status, "unitary_count": 0, "antiunitary_count": 0,
               "method": "Singer normalizer suite", "checks": rep.to_dict()["checks"]}
        return res, EXIT_OK if status == NOT_SHARP else EXIT_MISMATCH
    if d > 8:
        raise UsageError("exhaustive search limited to p^n <= 8 (and p^n = 16 via the Singer suite)")
    try:
        v = sharp_search(cfg.p, cfg.n, cfg.spread, cfg.antiunitary, cfg.budget)
    except IndexError as exc:
        raise UsageError(str(exc)) from exc
    res = v.to_dict()
    if v.status == INCONCLUSIVE:
        return res, EXIT_INCONCLUSIVE
    ok = (v.status == SHARP) == _expected_sharp(d)
    return res, EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify_theorems(cfg: RunConfig):
    from .mub import set_seed
    from .suites import D8_BUDGET, verify_theorems

    set_seed(cfg.seed)
    reps = verify_theorems(d8_budget=cfg.budget if cfg.budget is not None else D8_BUDGET)
    d8 = next(r for r in reps if r.title == "dimension 8")
    inconclusive = any(not d8.data.get(k, {}).get("complete", True) for k in ("search_unitary", "search_antiunitary"))
    if not all(r.ok for r in reps):
        return reps, EXIT_MISMATCH
    return reps, EXIT_INCONCLUSIVE if inconclusive else EXIT_OK


def cmd_symmetry(cfg: RunConfig):
    from .covariance import SymmetryGroup

    if cfg.p**cfg.n > 8:
        raise UsageError("symmetry groups limited to p^n <= 8")
    sym = SymmetryGroup(_spread(cfg), extended=cfg.antiunitary)
    res = {
        "p": cfg.p,
        "n": cfg.n,
        "spread": cfg.spread,
        "extended": cfg.antiunitary,
        "order": sym.order,
        "quotient_order": sym.quotient_order(),
        "sp_stabilizer_order": sym.sp_stabilizer_order,
        "basis_action_order": sym.basis_action_order(),
        "generators": [json.loads(g.to_json()) for g in sym.generators],
    }
    ok = sym.order == sym.q**2 * sym.sp_stabilizer_order * (2 if sym.antiunitary_element is not None else 1)
    return res, EXIT_OK if ok else EXIT_MISMATCH


def cmd_orbit(cfg: RunConfig):
    from .covariance import clifford_orbit_on_spreads

    if cfg.p**cfg.n > 8:
        raise UsageError("spread orbits limited to p^n <= 8")
    r = clifford_orbit_on_spreads(cfg.p, cfg.n)
    return r.to_dict(), EXIT_OK if r.orbit_count == 1 else EXIT_MISMATCH


COMMANDS = {
    "spreads": cmd_spreads,
    "build-mub": cmd_build_mub,
    "check-mub": cmd_check_mub,
    "singer": cmd_singer,
    "zsigmondy": cmd_zsigmondy,
    "verify-lemmas": cmd_verify_lemmas,
    "sharp-search": cmd_sharp_search,
    "verify-theorems": cmd_verify_theorems,
    "symmetry": cmd_symmetry,
    "orbit": cmd_orbit,
}


# output --------------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], json.dumps(obj) if isinstance(obj, (list, dict)) else obj


def render(artifact: dict, fmt: str, reports=None) -> str:
    if fmt == "json":
        return json.dumps(artifact, indent=2, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if reports is not None:
            w.writerow(["report", "check", "status", "detail"])
            for r in reports:
                for c in r.checks:
                    w.writerow([r.title, c.name, c.status, c.detail])
        else:
            w.writerow(["key", "value"])
            for k, v in _flatten(artifact["result"]):
                w.writerow([k, v])
        return buf.getvalue()
    lines = ["# mubforge " + artifact["config"]["command"], "", "```json",
             json.dumps(artifact["config"], indent=2), "```", ""]
    if reports is not None:
        from .suites import reports_markdown

        lines.append(reports_markdown(reports))
    else:
        lines += ["| key | value |", "|---|---|"]
        lines += [f"| {k} | {v} |" for k, v in _flatten(artifact["result"])]
    lines.append(f"\nexit code: {artifact['exit_code']}")
    return "\n".join(lines) + "\n"


def dispatch(cfg: RunConfig) -> tuple[int, str]:
    cfg.validate()
    from .mub import set_seed

    set_seed(cfg.seed)
    started = datetime.now(timezone.utc)
    t0 = time.monotonic()
    result, code = COMMANDS[cfg.command](cfg)
    reports = None
    if isinstance(result, list):
        reports = result
        result = _reports_result(result)
    artifact = {
        "config": cfg.header(),
        "timestamp": {"started": started.isoformat(), "wall_seconds": round(time.monotonic() - t0, 3)},
        "exit_code": code,
        "result": result,
    }
    if cfg.count_only and cfg.command == "spreads":
        text = f"{result.get('count')}\n"
    else:
        text = render(artifact, cfg.format, reports)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(render(artifact, cfg.format, reports))
    return code, text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mubforge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    common.add_argument("--tol-num", type=float, default=TOL_NUM)
    common.add_argument("--tol-mub", type=float, default=TOL_MUB)
    common.add_argument("--output", "-o")
    common.add_argument("--format", choices=FORMATS)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pn(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("p", type=int)
        sp.add_argument("n", type=int)
        return sp

    sp = pn("spreads", "enumerate symplectic spreads (stabilizer MUBs)")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--budget", type=float)
    sp = pn("build-mub", "build the stabilizer MUB of one spread")
    sp.add_argument("--spread", type=int, default=0)
    sp = sub.add_parser("check-mub", parents=[common], help="validate a MUB JSON file")
    sp.add_argument("file")
    pn("singer", "Singer cycle and unitary")
    sp = sub.add_parser("zsigmondy", parents=[common], help="Zsigmondy primes of b^a - 1")
    sp.add_argument("p", metavar="b", type=int)
    sp.add_argument("n", metavar="a", type=int)
    pn("verify-lemmas", "Singer and Zsigmondy lemma suites")
    sp = pn("sharp-search", "search for sharply covariant groups")
    sp.add_argument("--spread", type=int, default=0)
    sp.add_argument("--antiunitary", action="store_true")
    sp.add_argument("--budget", type=float)
    sp = sub.add_parser("verify-theorems", parents=[common], help="run every verification suite")
    sp.add_argument("--budget", type=float, help="budget for each dimension-8 search, seconds")
    sp = pn("symmetry", "symmetry group of one stabilizer MUB")
    sp.add_argument("--spread", type=int, default=0)
    sp.add_argument("--antiunitary", action="store_true")
    pn("orbit", "Clifford orbits on spreads")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    threads = os.environ.get("MUBFORGE_THREADS", "1")
    try:
        threads = int(threads)
    except ValueError as exc:
        raise UsageError("MUBFORGE_THREADS must be a positive integer") from exc
    fmt = ns.format or ("md" if ns.command == "verify-theorems" else "json")
    return RunConfig(
        command=ns.command,
        p=getattr(ns, "p", None),
        n=getattr(ns, "n", None),
        spread=getattr(ns, "spread", 0),
        antiunitary=getattr(ns, "antiunitary", False),
        budget=getattr(ns, "budget", None),
        seed=ns.seed,
        tol_num=ns.tol_num,
        tol_mub=ns.tol_mub,
        output=ns.output,
        format=fmt,
        count_only=getattr(ns, "count_only", False),
        file=getattr(ns, "file", None),
        threads=threads,
    )


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        code, text = dispatch(cfg)
    except UsageError as exc:
        print(f"mubforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
