"""Command-line surface.

Every pipeline stage is exposed as a subcommand with deterministic output
in json (default), md, or csv.  Exit codes: 0 success / verified, 1 a
verification failed (e.g. orlov status is not VERIFIED_MODULO_FULLNESS),
2 invalid input (unknown target, malformed file or divisor, invalid fan).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .catalog import FanFileError, catalog_names, resolve
from .cohomology import cohomology, weight_patterns
from .cones import bu_set, is_nef, nef_fano_status
from .fan import InvalidFanError, TorusDivisor, canonical_divisor, divisor_class
from .frobenius import frob_set, minimal_stabilizing_ell, pushforward_summands
from .tilting import VERIFIED, build_candidate, ext_vanishing, orlov_check

_COMMANDS = (
    "describe",
    "frob",
    "frob-set",
    "stabilize",
    "nef",
    "cohom",
    "bu",
    "tilting",
    "orlov",
    "batch",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: Optional[str]
    ell: int
    divisor: Optional[str]  # comma-separated ray coefficients
    fmt: str
    jobs: int
    verbose: bool
    manifest: Optional[str]
    patterns: bool


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="frobtilt",
        description="Exact Frobenius splitting and tilting-candidate checks on toric fans",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, target=True):
        if target:
            sp.add_argument("target", help="builtin name or fan file path")
        sp.add_argument("--format", dest="fmt", choices=("json", "md", "csv"),
                        default="json")
        sp.add_argument("-v", "--verbose", action="store_true")

    common(sub.add_parser("describe", help="fan data, ray order, validation"))
    sp = sub.add_parser("frob", help="summands of one pushforward")
    common(sp)
    sp.add_argument("--ell", type=int, default=2)
    sp.add_argument("--divisor", help="comma-separated ray coefficients (default 0)")
    common(sub.add_parser("frob-set", help="all summand classes with witnesses"))
    common(sub.add_parser("stabilize", help="least ell realizing every class at once"))
    sp = sub.add_parser("nef", help="nef/ample verdict for a divisor")
    common(sp)
    sp.add_argument("--divisor", required=True)
    sp = sub.add_parser("cohom", help="cohomology of a divisor")
    common(sp)
    sp.add_argument("--divisor", required=True)
    sp.add_argument("--patterns", action="store_true",
                    help="include the per-weight sign-pattern breakdown")
    common(sub.add_parser("bu", help="anti-nef frob classes"))
    common(sub.add_parser("tilting", help="candidate bundle, Ext table, Gram"))
    common(sub.add_parser("orlov", help="full hypothesis report"))
    sp = sub.add_parser("batch", help="orlov reports for a manifest of targets")
    common(sp, target=False)
    sp.add_argument("--manifest", required=True,
                    help="JSON array of builtin names / fan file paths")
    sp.add_argument("--jobs", type=int, default=1)
    return p


def _parse_divisor(text: Optional[str], fan) -> TorusDivisor:
    if text is None:
        return TorusDivisor(fan, (0,) * fan.n_rays)
    try:
        coeffs = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"divisor {text!r} is not a comma-separated integer list")
    if len(coeffs) != fan.n_rays:
        raise ValueError(
            f"divisor needs {fan.n_rays} coefficients (one per ray), got {len(coeffs)}"
        )
    return TorusDivisor(fan, coeffs)


# --- command handlers; each returns (payload, headers, rows, exit_code) ----


def _cmd_describe(entry, cfg):
    fan = entry.fan
    rep = fan.validation
    payload = {
        "name": entry.name,
        "dim": fan.dim,
        "n_rays": fan.n_rays,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
        "picard_rank": fan.picard_rank if rep.ok else None,
        "valid": rep.ok,
        "smooth": rep.smooth,
        "complete": rep.complete,
        "failures": list(rep.failures),
        "canonical_divisor": list(canonical_divisor(fan).coeffs) if rep.ok else None,
        "nef_fano_status": nef_fano_status(fan) if rep.ok else None,
        "provenance": entry.provenance,
    }
    rows = [[i, json.dumps(list(r))] for i, r in enumerate(fan.rays)]
    return payload, ["ray", "coords"], rows, 0


def _cmd_frob(entry, cfg):
    fan = entry.fan
    D = _parse_divisor(cfg.divisor, fan)
    counts = pushforward_summands(fan, D, cfg.ell)
    summands = [
        {"coords": list(cls.coords), "multiplicity": counts[cls]}
        for cls in sorted(counts)
    ]
    payload = {
        "name": entry.name,
        "ell": cfg.ell,
        "divisor": list(D.coeffs),
        "count": sum(counts.values()),
        "summands": summands,
    }
    rows = [[json.dumps(s["coords"]), s["multiplicity"]] for s in summands]
    return payload, ["class", "multiplicity"], rows, 0


def _cmd_frob_set(entry, cfg):
    fs = frob_set(entry.fan)
    classes = [
        {"coords": list(w.cls.coords), "min_witness_ell": w.min_ell}
        for w in fs.witnesses
    ]
    payload = {"name": entry.name, "size": len(fs), "classes": classes}
    rows = [[json.dumps(c["coords"]), c["min_witness_ell"]] for c in classes]
    return payload, ["class", "min_witness_ell"], rows, 0


def _cmd_stabilize(entry, cfg):
    payload = {"name": entry.name, "minimal_stabilizing_ell": minimal_stabilizing_ell(entry.fan)}
    return payload, None, None, 0


def _cmd_nef(entry, cfg):
    fan = entry.fan
    D = _parse_divisor(cfg.divisor, fan)
    v = is_nef(D)
    failing = None
    if v.failing is not None:
        ci, ri = v.failing
        failing = {"max_cone": list(fan.max_cones[ci]), "ray": ri}
    payload = {
        "name": entry.name,
        "divisor": list(D.coeffs),
        "class": list(v.cls.coords),
        "is_nef": v.is_nef,
        "is_ample": v.is_ample,
        "failing_pair": failing,
    }
    return payload, None, None, 0


def _cmd_cohom(entry, cfg):
    fan = entry.fan
    D = _parse_divisor(cfg.divisor, fan)
    vec = cohomology(fan, D)
    payload = {
        "name": entry.name,
        "divisor": list(D.coeffs),
        "h": list(vec.dims),
        "euler": vec.euler(),
    }
    if cfg.patterns:
        payload["patterns"] = [
            {
                "neg_rays": list(p.neg_rays),
                "point_count": p.point_count,
                "reduced_ranks": list(p.reduced_ranks),
            }
            for p in weight_patterns(fan, D)
        ]
    rows = [[q, h] for q, h in enumerate(vec.dims)]
    return payload, ["degree", "dim"], rows, 0


def _cmd_bu(entry, cfg):
    classes = bu_set(entry.fan)
    payload = {
        "name": entry.name,
        "size": len(classes),
        "classes": [list(c.coords) for c in classes],
    }
    rows = [[json.dumps(list(c.coords))] for c in classes]
    return payload, ["class"], rows, 0


def _cmd_tilting(entry, cfg):
    cand = build_candidate(entry.fan)
    ev = ext_vanishing(cand)
    order = cand.triangular_order()
    payload = {
        "name": entry.name,
        "summands": [list(c.coords) for c in cand.summands],
        "ext_vanishing": ev.ok,
        "ext_violations": [list(v) for v in ev.violations],
        "gram": [list(row) for row in cand.gram],
        "gram_det": cand.gram_det,
        "gram_unimodular": abs(cand.gram_det) == 1,
        "triangular_order": list(order) if order is not None else None,
    }
    rows = [
        [json.dumps(list(c.coords))] + [cand.gram[a][b] for b in range(len(cand.summands))]
        for a, c in enumerate(cand.summands)
    ]
    headers = ["summand"] + [f"chi->{b}" for b in range(len(cand.summands))]
    return payload, headers, rows, 0 if ev.ok else 1


def _cmd_orlov(entry, cfg):
    report = orlov_check(entry.fan, entry.name)
    payload = report.to_dict()
    rows = [[k, json.dumps(v)] for k, v in payload.items()]
    return payload, ["field", "value"], rows, 0 if report.status == VERIFIED else 1


def _batch_worker(target: str) -> dict:
    entry = resolve(target)
    return orlov_check(entry.fan, entry.name).to_dict()


def _cmd_batch(cfg):
    with open(cfg.manifest) as fh:
        targets = json.load(fh)
    if not isinstance(targets, list) or not all(isinstance(t, str) for t in targets):
        raise FanFileError(f"{cfg.manifest}: manifest must be a JSON array of strings")
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_batch_worker, targets))
    else:
        reports = [_batch_worker(t) for t in targets]
    summary = {"verified": 0, "hypothesis_failed": 0, "not_applicable": 0, "total": len(reports)}
    for r in reports:
        if r["status"] == VERIFIED:
            summary["verified"] += 1
        elif r["status"] == "NOT_APPLICABLE":
            summary["not_applicable"] += 1
        else:
            summary["hypothesis_failed"] += 1
    payload = {"entries": reports, "summary": summary}
    headers = ["name", "dim", "n_bu", "m0", "status"]
    rows = [[r["name"], r["dim"], r["n_bu"], r["m0"], r["status"]] for r in reports]
    code = 0 if summary["verified"] == summary["total"] else 1
    return payload, headers, rows, code


_HANDLERS = {
    "describe": _cmd_describe,
    "frob": _cmd_frob,
    "frob-set": _cmd_frob_set,
    "stabilize": _cmd_stabilize,
    "nef": _cmd_nef,
    "cohom": _cmd_cohom,
    "bu": _cmd_bu,
    "tilting": _cmd_tilting,
    "orlov": _cmd_orlov,
}


# --- rendering ---------------------------------------------------------------


def _render(payload, headers, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "md":
        if headers is None:
            headers = ["field", "value"]
            rows = [[k, json.dumps(v)] for k, v in payload.items()]
        out = ["| " + " | ".join(str(h) for h in headers) + " |"]
        out.append("| " + " | ".join("---" for _ in headers) + " |")
        for row in rows:
            out.append("| " + " | ".join(str(x) for x in row) + " |")
        return "\n".join(out) + "\n"
    if fmt == "csv":
        if headers is None:
            headers = ["field", "value"]
            rows = [[k, json.dumps(v)] for k, v in payload.items()]
        import csv as _csv
        import io

        buf = io.StringIO()
        w = _csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows(rows)
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # keep "--divisor -3,0,0" working: glue the value on so argparse does
    # not mistake a leading minus for an option
    for i, a in enumerate(argv[:-1]):
        if a == "--divisor":
            argv[i : i + 2] = [f"--divisor={argv[i + 1]}"]
            break
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        ell=getattr(args, "ell", 1),
        divisor=getattr(args, "divisor", None),
        fmt=args.fmt,
        jobs=getattr(args, "jobs", 1),
        verbose=args.verbose,
        manifest=getattr(args, "manifest", None),
        patterns=getattr(args, "patterns", False),
    )
    if cfg.command == "frob" and cfg.ell < 1:
        print("error: --ell must be >= 1", file=sys.stderr)
        return 2
    try:
        if cfg.command == "batch":
            payload, headers, rows, code = _cmd_batch(cfg)
        else:
            entry = resolve(cfg.target)
            if cfg.verbose:
                print(f"resolved {cfg.target} ({entry.provenance})", file=sys.stderr)
            payload, headers, rows, code = _HANDLERS[cfg.command](entry, cfg)
    except (KeyError, FanFileError, InvalidFanError, ValueError, OSError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(payload, headers, rows, cfg.fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
