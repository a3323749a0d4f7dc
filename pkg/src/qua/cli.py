"""Command line entry point.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
configuration error, 3 inconclusive (window too small).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import classify as C
from .modrep import (
    MODULE_RANK_CAP,
    GwaWindow,
    ModuleError,
    ModuleSpec,
    build_module,
    check_relations,
    decompose_pullback,
    is_completely_pointed,
    is_irreducible_on_window,
    window_to_dot,
    window_to_json,
)
from .rootsys import RootError
from .scalars import ScalarError, render_scalar
from .uq.identities import IDENTITY_RANK_CAP, IDENTITY_TAGS, CheckResult, verify_identity
from .uq.pbw import AlgebraError
from .weylq import check_pi_homomorphism, check_weyl_relations

log = logging.getLogger("qua")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    spec: str | None = None
    radius: int | None = None
    params: tuple[str, ...] | None = None
    format: str = "text"
    jobs: int = 1
    only: tuple[str, ...] | None = None
    action: str | None = None
    max_degree: int | None = None
    output: str | None = None


# ------------------------------------------------------------ reporting
def _status_code(results) -> int:
    statuses = {r.status for r in results}
    if "fail" in statuses:
        return EXIT_FAIL
    if "inconclusive" in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _render_checks(results, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in results], indent=2, sort_keys=True) + "\n"
    lines = []
    for r in results:
        idx = ",".join(str(i) for i in r.indices)
        lines.append(f"{r.check}\t({idx})\t{r.status}\t{r.residual}")
    summary = {}
    for r in results:
        summary.setdefault(r.check, [0, 0])
        summary[r.check][0 if r.ok else 1] += 1
    lines.append("")
    for name, (ok, bad) in summary.items():
        lines.append(f"# {name}: {ok} pass, {bad} not passing")
    return "\n".join(lines) + "\n"


def _emit(text: str, cfg: RunConfig):
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------ commands
def _identity_task(args):
    tag, n = args
    return verify_identity(tag, n)


def cmd_identities(cfg: RunConfig) -> int:
    if cfg.n is None or not 1 <= cfg.n <= IDENTITY_RANK_CAP:
        raise UsageError(f"--n must be in 1..{IDENTITY_RANK_CAP} for identity sweeps")
    tags = list(cfg.only) if cfg.only else list(IDENTITY_TAGS)
    unknown = [t for t in tags if t not in IDENTITY_TAGS]
    if unknown:
        raise UsageError(f"unknown identity tag(s) {', '.join(unknown)}; known: {', '.join(IDENTITY_TAGS)}")
    tasks = [(t, cfg.n) for t in tags]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            chunks = list(ex.map(_identity_task, tasks))
    else:
        chunks = [_identity_task(t) for t in tasks]
    results = [r for chunk in chunks for r in chunk]
    _emit(_render_checks(results, cfg.format), cfg)
    return _status_code(results)


def cmd_pi_check(cfg: RunConfig) -> int:
    if cfg.n is None or not 1 <= cfg.n <= IDENTITY_RANK_CAP:
        raise UsageError(f"--n must be in 1..{IDENTITY_RANK_CAP} for pi checks")
    results = check_pi_homomorphism(cfg.n) + check_weyl_relations(cfg.n)
    if cfg.only:
        results = [r for r in results if r.check in cfg.only]
    _emit(_render_checks(results, cfg.format), cfg)
    return _status_code(results)


def _load_spec(cfg: RunConfig) -> ModuleSpec:
    if cfg.spec is None:
        raise UsageError("--spec is required")
    try:
        with open(cfg.spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read spec file: {exc}") from None
    spec = ModuleSpec.from_json(text, radius=cfg.radius, params=cfg.params)
    if cfg.n is not None and cfg.n != spec.n:
        raise UsageError(f"--n {cfg.n} disagrees with the spec rank {spec.n}")
    return spec


def _weights(ws):
    return [render_scalar(x) for x in ws]


def _module_build(w, cfg) -> tuple[dict, int]:
    rel = check_relations(w, depth=2)
    doc = json.loads(window_to_json(w, cfg.max_degree))
    doc["relations"] = [r.to_json() for r in rel]
    return doc, _status_code(rel)


def _module_decompose(w, cfg) -> tuple[dict, int]:
    if not isinstance(w, GwaWindow):
        raise UsageError("decompose needs a gwa-weight spec")
    pieces = []
    code = EXIT_OK
    for p in decompose_pullback(w):
        irr = is_irreducible_on_window(p)
        cp = is_completely_pointed(p, "sl")
        if not cp:
            code = EXIT_FAIL
        pieces.append({
            "degree": p.degree,
            "dimension": p.dimension,
            "complete": p.complete,
            "highest_weight": _weights(p.highest_weight) if getattr(p, "highest_weight", None) else None,
            "completely_pointed": cp,
            "irreducibility": irr.status,
        })
    return {"pieces": pieces}, code


def _module_classify(w, cfg) -> tuple[dict, int]:
    part = C.partition_roots(w)
    doc = {"partition": part.to_json(), "closed": part.is_closed(), "covers": part.covers()}
    code = EXIT_OK if part.is_closed() else EXIT_FAIL
    if part.inconclusive:
        code = max(code, EXIT_INCONCLUSIVE) if code != EXIT_FAIL else code
    try:
        base, targets = C.invariant_targets(part)
        doc["adapted_base"] = [str(b) for b in base]
        doc["invariant_targets"] = sorted(str(r) for r in targets)
        v = C.find_invariant_vector(w, part)
        doc["invariant_vector"] = {"point": list(v), "weight": _weights(w.weight(v))}
    except (C.ClassifyError, RootError) as exc:
        doc["invariant_vector"] = {"error": f"{type(exc).__name__}: {exc}"}
    lam = getattr(w, "lam", None)
    if lam is not None:
        verdict = C.is_cp_highest_weight(lam)
        doc["highest_weight_verdict"] = {"ok": verdict.ok, "tags": list(verdict.tags)}
    return doc, code


def _module_mu_solve(w, cfg) -> tuple[dict, int]:
    pts = sorted(w.interior(1))
    if not pts:
        return {"error": "window has no interior point"}, EXIT_INCONCLUSIVE
    g = pts[len(pts) // 2]
    sols = C.solve_mu(w, g)
    return {
        "point": list(g),
        "weight": _weights(w.weight(g)),
        "solutions": [{"mu": s.literal(), "tag": s.tag} for s in sols],
    }, EXIT_OK


MODULE_ACTIONS = {
    "build": _module_build,
    "decompose": _module_decompose,
    "classify": _module_classify,
    "mu-solve": _module_mu_solve,
}


def _render_doc(doc: dict, fmt: str) -> str:
    if fmt == "dot":
        raise UsageError("--format dot is only available for export")
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = []

    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix}{k}.", x[k])
        elif isinstance(x, list) and x and isinstance(x[0], dict):
            for i, y in enumerate(x):
                walk(f"{prefix}{i}.", y)
        else:
            lines.append(f"{prefix[:-1]}: {x}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def cmd_module(cfg: RunConfig) -> int:
    if cfg.action not in MODULE_ACTIONS:
        raise UsageError(f"module action must be one of {', '.join(MODULE_ACTIONS)}")
    spec = _load_spec(cfg)
    w = build_module(spec)
    doc, code = MODULE_ACTIONS[cfg.action](w, cfg)
    doc = {"spec": spec.to_dict(), "action": cfg.action, **doc}
    _emit(_render_doc(doc, cfg.format), cfg)
    return code


def cmd_export(cfg: RunConfig) -> int:
    spec = _load_spec(cfg)
    w = build_module(spec)
    if cfg.format == "dot":
        text = window_to_dot(w, cfg.max_degree)
    elif cfg.format == "json":
        text = window_to_json(w, cfg.max_degree)
    else:
        raise UsageError("export needs --format json or dot")
    _emit(text, cfg)
    return EXIT_OK


COMMANDS = {
    "identities": cmd_identities,
    "pi-check": cmd_pi_check,
    "module": cmd_module,
    "export": cmd_export,
}


# ------------------------------------------------------------ parsing
def _add_common(p: argparse.ArgumentParser, formats=("json", "text")):
    p.add_argument("--n", type=int, help="rank (gl_{n+1})")
    p.add_argument("--format", choices=formats, default="text" if "text" in formats else formats[0])
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--output", help="write the report here instead of stdout")


def _add_spec(p: argparse.ArgumentParser):
    p.add_argument("--spec", help="module spec (JSON)")
    p.add_argument("--radius", type=int, help="override the spec radius")
    p.add_argument("--params", help="comma separated parameter names, e.g. c1,c2")
    p.add_argument("--max-degree", type=int, help="only export points of total degree <= this")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qua", description="Exact computations in U_q(gl_{n+1}) and A^q_{n+1}.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("identities", help="verify the defining relations and derived identities")
    _add_common(p)
    p.add_argument("--only", help="comma separated identity tags")
    p = sub.add_parser("pi-check", help="check that pi is a homomorphism")
    _add_common(p)
    p.add_argument("--only", help="comma separated check names")
    p = sub.add_parser("module", help="build, decompose, classify or solve a module window")
    p.add_argument("action", choices=list(MODULE_ACTIONS))
    _add_common(p)
    _add_spec(p)
    p = sub.add_parser("export", help="export a window as JSON or DOT")
    _add_common(p, formats=("json", "dot"))
    _add_spec(p)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    def split(s):
        return tuple(x.strip() for x in s.split(",") if x.strip()) if s else None

    cfg = RunConfig(
        command=ns.command,
        n=ns.n,
        spec=getattr(ns, "spec", None),
        radius=getattr(ns, "radius", None),
        params=split(getattr(ns, "params", None)),
        format=ns.format,
        jobs=ns.jobs,
        only=split(getattr(ns, "only", None)),
        action=getattr(ns, "action", None),
        max_degree=getattr(ns, "max_degree", None),
        output=ns.output,
    )
    if cfg.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if cfg.radius is not None and cfg.radius < 1:
        raise UsageError("--radius must be at least 1")
    if cfg.n is not None and cfg.command in ("module", "export") and not 1 <= cfg.n <= MODULE_RANK_CAP:
        raise UsageError(f"--n must be in 1..{MODULE_RANK_CAP} for modules")
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"qua: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScalarError as exc:
        print(f"qua: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ModuleError, AlgebraError, RootError) as exc:
        print(f"qua: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except C.WindowTooSmall as exc:
        print(f"qua: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except C.ClassifyError as exc:
        print(f"qua: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
