"""Command-line entry point; every subcommand writes one JSON document."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field

from . import SCHEMA, __version__
from .checks import run_checks
from .collapse import PRNG_NAME, certificate_from_json, classify, verify
from .nichols import (braiding, characters, find_cyclic_conjugator, gdd, ree_abelian_subgroup,
                      verdict)
from .permgrp import (DEFAULT_GROUP_CAP, DEFAULT_ORBIT_CAP, DEFAULT_SUBGROUP_CAP, CapExceeded,
                      centralizer, class_of, conjugacy_classes, element_order, is_real)
from .rackkit import ConjClassRack, check_axioms
from .registry import FAMILIES, UnknownGroup, build_group, group_id, ree_context, sz_context
from .suzuki import center_U_minus, structural_subgroups, subgroup_T_ZU, torus

logger = logging.getLogger("rackcollapse")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = 0
    budgets: dict = field(default_factory=lambda: {"C": None, "D": None, "F": 1000})
    caps: dict = field(default_factory=lambda: {"orbit": DEFAULT_ORBIT_CAP,
                                                 "group": DEFAULT_GROUP_CAP,
                                                 "subgroup": DEFAULT_SUBGROUP_CAP})
    output: str = "-"
    threads: int = 1
    prng: str = PRNG_NAME

    def to_json(self) -> dict:
        return asdict(self)


def _threads() -> int:
    raw = os.environ.get("RACK_COLLAPSE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"RACK_COLLAPSE_THREADS must be an integer, got {raw!r}")


def _config(args) -> RunConfig:
    if not 0 <= args.seed < 2 ** 64:
        raise UsageError("seed must be a 64-bit unsigned integer")
    return RunConfig(seed=args.seed,
                     budgets={"C": args.budget_c, "D": args.budget_d, "F": args.budget_f},
                     caps={"orbit": args.orbit_cap, "group": args.group_cap,
                           "subgroup": args.subgroup_cap},
                     output=args.output, threads=_threads())


def _gid(args) -> str:
    try:
        return group_id(args.family, getattr(args, "h", None), getattr(args, "q", None))
    except UnknownGroup as exc:
        raise UsageError(str(exc))


def _group_doc(gid: str):
    G = build_group(gid)
    return G, {"id": gid, "order": G.order, "degree": G.degree,
               "generators": [g.to_json() for g in G.generators]}


def _classes_doc(G, cap: int) -> list[dict]:
    out = []
    for i, orb in enumerate(conjugacy_classes(G, cap)):
        r = orb.representative
        out.append({"index": i, "representative": r.to_json(), "element_order": element_order(r),
                    "size": len(orb), "centralizer_order": centralizer(G, r).order,
                    "is_real": is_real(G, r)})
    return out


def cmd_group(args, cfg: RunConfig) -> tuple[dict, int]:
    gid = _gid(args)
    G, doc = _group_doc(gid)
    if args.family == "sz":
        doc["matrices"] = sz_context(args.h).to_json()["matrix_generators"]
    return {"group": doc}, 0


def cmd_classes(args, cfg: RunConfig) -> tuple[dict, int]:
    gid = _gid(args)
    G = build_group(gid)
    return {"group": {"id": gid, "order": G.order}, "classes": _classes_doc(G, cfg.caps["group"])}, 0


def _search_hints(args):
    if args.family == "sz":
        sz = sz_context(args.h)
        return structural_subgroups(sz), torus(sz)
    return (), ()


def cmd_classify(args, cfg: RunConfig) -> tuple[dict, int]:
    gid = _gid(args)
    G = build_group(gid)
    structural, conj = _search_hints(args)
    docs = []
    for i, orb in enumerate(conjugacy_classes(G, cfg.caps["group"])):
        r = orb.representative
        o = element_order(r)
        if o == 1 or (args.class_order is not None and o != args.class_order):
            continue
        if args.class_index is not None and i != args.class_index:
            continue
        rep = classify(G, ConjClassRack(G, orb), cfg.budgets, structural=structural,
                       conjugators=conj, seed=cfg.seed, kinds=args.kinds.upper(),
                       cap=cfg.caps["orbit"])
        rep.pop("_certs")
        docs.append({"class_index": i, **rep})
    if not docs:
        raise UsageError("no class matches the selection")
    return {"group": {"id": gid, "order": G.order}, "classes": docs}, 0


def cmd_braiding(args, cfg: RunConfig) -> tuple[dict, int]:
    if args.family == "sz":
        if args.h < 1:
            raise UsageError("the involution braiding needs --h >= 1")
        sz = sz_context(args.h)
        G, A = subgroup_T_ZU(sz), center_U_minus(sz)
        ctx = sz.field
        g = sz.U(ctx.zero, ctx.one)
        conj = [sz.t(sz.zeta ** i) for i in range(sz.q - 1)] if args.abelian == "explicit" else None
        setting = {"group": f"{sz.perm_group.name}.TZ(U-)", "g": "U(0,1)", "A": "Z(U-)"}
    elif args.family == "ree-g2-3":
        ree = ree_context()
        G, A, g = ree.group, ree_abelian_subgroup(ree), ree.phi
        conj = None
        if args.abelian == "explicit":
            orb = class_of(G, g)
            meet = sorted(x for x in A.elements() if x in orb)
            x = [g] + [m for m in meet if m != g]
            gc = find_cyclic_conjugator(G, x)
            conj = [gc ** i for i in range(3)]
        setting = {"group": G.name, "g": "phi", "A": "A3 x <phi>"}
    else:
        raise UsageError("braiding supports --family sz or ree-g2-3")
    out = []
    for chi in characters(A):
        B = braiding(G, g, A, chi, conj)
        v = verdict(B)
        out.append({"character": chi.to_json(), "matrix": B.to_json()["q"],
                    "gdd": gdd(B).to_json(), "verdict": v.to_json()})
    # Unknown only means no rule fired for this transversal; it is not a failed check
    unknown = sum(1 for c in out if c["verdict"]["outcome"] == "Unknown")
    return {"setting": {**setting, "transversal": args.abelian}, "characters": out,
            "unknown": unknown}, 0


def cmd_verify_paper(args, cfg: RunConfig) -> tuple[dict, int]:
    checks = run_checks(args.h_max)
    failed = [c["name"] for c in checks if not c["ok"]]
    return {"checks": checks, "passed": len(checks) - len(failed), "failed": failed}, (1 if failed else 0)


def _load_certs(path: str) -> list[dict]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate file: {exc}")
    if isinstance(doc, dict) and "kind" in doc:
        return [doc]
    certs = []
    for cls in (doc.get("classes", []) if isinstance(doc, dict) else []):
        certs.extend(cls.get("certificates", []))
    if isinstance(doc, dict) and "certificates" in doc:
        certs.extend(doc["certificates"])
    if not certs:
        raise UsageError("no certificates found in file")
    return certs


def cmd_rack(args, cfg: RunConfig) -> tuple[dict, int]:
    if args.rack_cmd == "verify-cert":
        out = []
        for d in _load_certs(args.file):
            try:
                G = build_group(d["group"])
            except (UnknownGroup, KeyError) as exc:
                out.append({"group": d.get("group"), "kind": d.get("kind"), "verified": False,
                            "error": str(exc)})
                continue
            cert = certificate_from_json(d, G)
            out.append({"group": d["group"], "kind": d["kind"], "verified": verify(cert)})
        return {"results": out}, (0 if all(r["verified"] for r in out) else 1)
    gid = _gid(args)
    G = build_group(gid)
    out = []
    for i, orb in enumerate(conjugacy_classes(G, cfg.caps["group"])):
        rep = check_axioms(ConjClassRack(G, orb), samples=args.samples, seed=cfg.seed,
                           exhaustive=True if G.order <= cfg.caps["subgroup"] else None)
        out.append({"class_index": i, **rep.to_json()})
    return {"group": {"id": gid, "order": G.order}, "classes": out}, (0 if all(r["ok"] for r in out) else 1)


def _add_family(p, required=True):
    p.add_argument("--family", choices=FAMILIES, required=required)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--q", type=int, default=None)


def _common(suppress: bool) -> argparse.ArgumentParser:
    """Global flags; subcommand copies use SUPPRESS so they never clobber earlier values."""
    p = argparse.ArgumentParser(add_help=False)

    def d(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--pretty", action="store_true", default=d(False))
    p.add_argument("--output", default=d("-"))
    p.add_argument("--budget-c", type=int, default=d(None))
    p.add_argument("--budget-d", type=int, default=d(None))
    p.add_argument("--budget-f", type=int, default=d(1000))
    p.add_argument("--orbit-cap", type=int, default=d(DEFAULT_ORBIT_CAP))
    p.add_argument("--group-cap", type=int, default=d(DEFAULT_GROUP_CAP))
    p.add_argument("--subgroup-cap", type=int, default=d(DEFAULT_SUBGROUP_CAP))
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    top = _common(False)
    common = _common(True)

    ap = argparse.ArgumentParser(prog="rack-collapse", parents=[top],
                                 description="Rack collapse checks for Suzuki and small Ree groups.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("group", parents=[common])
    gsub = g.add_subparsers(dest="group_cmd", required=True)
    _add_family(gsub.add_parser("build", parents=[common]))

    _add_family(sub.add_parser("classes", parents=[common]))

    c = sub.add_parser("classify", parents=[common])
    _add_family(c)
    c.add_argument("--class-order", type=int, default=None)
    c.add_argument("--class-index", type=int, default=None)
    c.add_argument("--kinds", default="FCD")

    b = sub.add_parser("braiding", parents=[common])
    _add_family(b)
    b.add_argument("--abelian", choices=("auto", "explicit"), default="auto")

    v = sub.add_parser("verify-paper", parents=[common])
    v.add_argument("--h-max", type=int, default=1)

    r = sub.add_parser("rack", parents=[common])
    rsub = r.add_subparsers(dest="rack_cmd", required=True)
    vc = rsub.add_parser("verify-cert", parents=[common])
    vc.add_argument("file")
    ax = rsub.add_parser("axioms", parents=[common])
    _add_family(ax)
    ax.add_argument("--samples", type=int, default=10_000)
    return ap


COMMANDS = {"group": cmd_group, "classes": cmd_classes, "classify": cmd_classify,
            "braiding": cmd_braiding, "verify-paper": cmd_verify_paper, "rack": cmd_rack}


def _emit(doc: dict, cfg: RunConfig, pretty: bool) -> None:
    text = json.dumps(doc, indent=2 if pretty else None, sort_keys=False)
    if cfg.output == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        body, status = COMMANDS[args.cmd](args, cfg)
    except UsageError as exc:
        print(f"rack-collapse: error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        body, status = {"error": str(exc)}, 1
        cfg = _config(args)
    doc = {"schema": SCHEMA, "command": args.cmd, "config": cfg.to_json(), **body}
    _emit(doc, cfg, args.pretty)
    return status


def main() -> None:
    sys.exit(run())
