"""Command-line front end: ``python -m wronskforms <command> ...``.

Exit status is 0 on success, 1 when a checked statement fails and 2 on
usage errors. JSON output uses sorted keys, so re-emitting parsed output
is byte-identical. Expensive results are cached on disk when a cache
directory is given by ``--cache-dir`` or ``WRONSKFORMS_CACHE_DIR``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .characters import (
    AffineCharSpec,
    VirasoroCharSpec,
    verify_affine_identity,
    verify_virasoro_identity,
)
from .errors import (
    ClassifierMismatch,
    IdentityFails,
    InvalidSpec,
    NotPrime,
    WronskFormsError,
)
from .modforms import JPolynomial, decompose
from .modp import (
    check_f_integrality,
    check_hasse_conjecture,
    check_jacobi_moment_congruence,
    check_theta_congruence,
    probe_w_congruence_mod_p2,
)
from .qseries import QSeries
from .roots import check_zero_location
from .suite import run_suite, table_row
from .wronskian import Family, f_form, verify_eta_closed_form

CACHE_VERSION = "wronskforms-cache-v1"
CACHE_ENV = "WRONSKFORMS_CACHE_DIR"

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    terms: int = 60
    format: str = "json"
    cache_dir: Path | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.terms < 1:
            raise InvalidSpec(f"--terms must be >= 1, got {self.terms}")


class ResultCache:
    """JSON payloads on disk, keyed by (operation, spec, terms)."""

    def __init__(self, root: Path | None):
        self.root = root

    def _path(self, op: str, spec: dict, terms: int) -> Path:
        key = json.dumps([CACHE_VERSION, op, spec, terms], sort_keys=True)
        return self.root / f"{op}-{hashlib.sha256(key.encode()).hexdigest()[:32]}.json"

    def get_or_compute(self, op: str, spec: dict, terms: int, compute):
        if self.root is None:
            return compute()
        path = self._path(op, spec, terms)
        if path.exists():
            return json.loads(path.read_text())
        payload = compute()
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(payload))
        os.replace(tmp, path)
        # round-trip so cold and warm runs hand back identical objects
        return json.loads(path.read_text())


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


# -- rendering ----------------------------------------------------------------


def _is_series(x) -> bool:
    return isinstance(x, dict) and set(x) == {"lattice_den", "order", "terms"}


def _plain_value(x) -> str:
    if _is_series(x):
        return QSeries.from_json(x).format(10)
    if isinstance(x, dict) and x.get("var") == "j":
        return str(JPolynomial.from_json(x))
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def _flat_lines(payload: dict, prefix: str = ""):
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict) and not _is_series(val) and val.get("var") != "j":
            yield from _flat_lines(val, f"{prefix}{key}.")
        else:
            yield f"{prefix}{key}", _plain_value(val)


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return dumps(payload)
    items = payload if isinstance(payload, list) else [payload]
    blocks = []
    for item in items:
        lines = list(_flat_lines(item))
        if fmt == "markdown":
            blocks.append("\n".join(f"- **{k}**: `{v}`" for k, v in lines))
        else:
            blocks.append("\n".join(f"{k}: {v}" for k, v in lines))
    return "\n\n".join(blocks)


def table_markdown(rows: list) -> str:
    out = ["| k | weight | t | delta | epsilon | G(F, j) | zeros |",
           "|---|---|---|---|---|---|---|"]
    for r in rows:
        g = JPolynomial.from_json(r["G"])
        cells = [r["k"], r["weight"], r["t"], r["delta"], r["epsilon"], g, ", ".join(r["zeros"])]
        out.append("| " + " | ".join("-" if c is None else str(c) for c in cells) + " |")
    return "\n".join(out)


def table_plain(rows: list) -> str:
    out = []
    for r in rows:
        g = JPolynomial.from_json(r["G"])
        exps = "-" if r["t"] is None else f"t={r['t']} delta={r['delta']} epsilon={r['epsilon']}"
        out.append(f"k={r['k']:<3} weight={r['weight']:<3} {exps:<26} G = {g}   zeros: "
                   + (", ".join(r["zeros"]) or "-"))
    return "\n".join(out)


# -- commands -----------------------------------------------------------------


def _family(args) -> Family:
    if args.family == "affine":
        if args.level is None:
            raise InvalidSpec("affine family needs --level")
        return Family.affine(args.level)
    if args.p is None or args.pp is None:
        raise InvalidSpec("virasoro family needs --p and --pp")
    return Family.virasoro(args.p, args.pp)


def cmd_char(args, cfg: RunConfig, cache: ResultCache):
    if args.family == "affine":
        spec = AffineCharSpec(args.level, args.index)
        family = "affine"
    else:
        spec = VirasoroCharSpec(args.p, args.pp, args.r, args.s)
        family = "virasoro"
    series = spec.expand(spec.exponent + cfg.terms)
    if args.monic:
        series = series.normalized()
    payload = series.to_json()
    payload.update(family=family, spec=spec.to_json(), c=str(spec.central_charge),
                   h=str(spec.conformal_weight), monic=bool(args.monic))
    return payload, EXIT_OK


def _wronskian_payload(family: Family, terms: int) -> dict:
    return f_form(family, terms=terms).to_json()


def cmd_wronskian(args, cfg: RunConfig, cache: ResultCache):
    family = _family(args)
    payload = cache.get_or_compute("wronskian", family.to_json() | {"kind": family.kind}, cfg.terms,
                                   lambda: _wronskian_payload(family, cfg.terms))
    status = EXIT_OK
    if args.verify_eta:
        try:
            payload["eta_closed_form"] = verify_eta_closed_form(family, min(cfg.terms, 50))
        except IdentityFails as exc:
            payload["eta_closed_form"] = False
            payload["eta_failure"] = str(exc)
            status = EXIT_FAILED
    return payload, status


def _fv_payload(family: Family, terms: int, want_decompose: bool, want_zeros: bool) -> dict:
    res = f_form(family, terms=terms)
    payload = {
        "family": family.kind,
        "spec": family.to_json(),
        "weight": res.f_weight,
        "vanishes": res.vanishes,
        "F_normalized": None if res.normalized_f is None else res.normalized_f.to_json(),
    }
    if want_decompose or want_zeros:
        if res.vanishes:
            payload["decomposition"] = None
            payload["zeros"] = None
        else:
            dec = decompose(res.normalized_f, res.f_weight)
            payload["decomposition"] = dec.to_json()
            if want_zeros:
                payload["zeros"] = check_zero_location(dec.g).to_json()
    return payload


def cmd_fv(args, cfg: RunConfig, cache: ResultCache):
    family = _family(args)
    spec = family.to_json() | {"kind": family.kind, "decompose": args.decompose, "zeros": args.zeros}
    payload = cache.get_or_compute("fv", spec, cfg.terms,
                                   lambda: _fv_payload(family, cfg.terms, args.decompose, args.zeros))
    return payload, EXIT_OK


def cmd_identity(args, cfg: RunConfig, cache: ResultCache):
    try:
        if args.family == "affine":
            rep = verify_affine_identity(args.i, cfg.terms)
        else:
            rep = verify_virasoro_identity(args.pt, args.ppt, cfg.terms)
    except IdentityFails as exc:
        return {"holds": False, "error": str(exc)}, EXIT_FAILED
    return rep.to_json(), EXIT_OK


def cmd_congruence(args, cfg: RunConfig, cache: ResultCache):
    k = args.level
    order = cfg.terms
    reports = {
        "theta": check_theta_congruence(k, order),
        "jacobi_moment": check_jacobi_moment_congruence(2 * k + 3, order),
        "f_integrality": check_f_integrality(k, order),
    }
    if args.hasse:
        reports["hasse"] = check_hasse_conjecture(k, order)
    payload = {"level": k, "p": 2 * k + 3}
    if args.mod_p2_probe:
        h, rep = probe_w_congruence_mod_p2(k, order)
        reports["mod_p2_probe"] = rep
        payload["h"] = h
    payload["reports"] = {name: rep.to_json() for name, rep in reports.items()}
    failed = any(not r.holds for r in reports.values() if r.kind == "assertion")
    return payload, EXIT_FAILED if failed else EXIT_OK


def _row_json(row: dict) -> dict:
    out = dict(row)
    out["G"] = row["G"].to_json()
    return out


def cmd_table(args, cfg: RunConfig, cache: ResultCache):
    def one(k):
        return cache.get_or_compute("table-row", {"k": k}, cfg.terms,
                                    lambda: _row_json(table_row(k, cfg.terms)))

    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        rows = list(pool.map(one, range(1, args.kmax + 1)))
    if cfg.format == "markdown":
        return table_markdown(rows), EXIT_OK
    if cfg.format == "plain":
        return table_plain(rows), EXIT_OK
    return rows, EXIT_OK


def cmd_suite(args, cfg: RunConfig, cache: ResultCache):
    results = run_suite(jobs=cfg.jobs, only=set(args.only) if args.only else None)
    failed = any(not r.passed for r in results if r.kind == "assertion")
    if cfg.format == "json":
        return [r.to_json() for r in results], EXIT_FAILED if failed else EXIT_OK
    return "\n".join(r.line() for r in results), EXIT_FAILED if failed else EXIT_OK


# -- parser -------------------------------------------------------------------


def _family_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("family", choices=["affine", "virasoro"])
    parser.add_argument("--level", type=int, help="affine level k")
    parser.add_argument("--p", type=int)
    parser.add_argument("--pp", type=int, help="p' of the minimal model")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, default=argparse.SUPPRESS,
                        help="integral q-powers requested (default 60)")
    common.add_argument("--format", choices=["json", "markdown", "plain"], default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", type=Path, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="wronskforms", parents=[common],
                                     description="Wronskians of characters and their modular forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    char = sub.add_parser("char", parents=[common], help="character expansion")
    csub = char.add_subparsers(dest="family", required=True)
    ca = csub.add_parser("affine", parents=[common])
    ca.add_argument("--level", type=int, required=True)
    ca.add_argument("--index", type=int, required=True)
    cv = csub.add_parser("virasoro", parents=[common])
    for name in ("--p", "--pp", "--r", "--s"):
        cv.add_argument(name, type=int, required=True)
    for p in (ca, cv):
        p.add_argument("--monic", action="store_true", help="rescale to leading coefficient 1")
        p.set_defaults(func=cmd_char)

    w = sub.add_parser("wronskian", parents=[common], help="W, W' and F for a family")
    _family_args(w)
    w.add_argument("--verify-eta", action="store_true")
    w.set_defaults(func=cmd_wronskian)

    fv = sub.add_parser("fv", parents=[common], help="the normalized form F")
    _family_args(fv)
    fv.add_argument("--decompose", action="store_true")
    fv.add_argument("--zeros", action="store_true")
    fv.set_defaults(func=cmd_fv)

    ident = sub.add_parser("identity", parents=[common], help="almost linear dependences")
    isub = ident.add_subparsers(dest="family", required=True)
    ia = isub.add_parser("affine", parents=[common])
    ia.add_argument("--i", type=int, required=True)
    iv = isub.add_parser("virasoro", parents=[common])
    iv.add_argument("--pt", type=int, required=True)
    iv.add_argument("--ppt", type=int, required=True)
    for p in (ia, iv):
        p.set_defaults(func=cmd_identity)

    cong = sub.add_parser("congruence", parents=[common], help="congruences mod p = 2k+3")
    cong.add_argument("--level", type=int, required=True)
    cong.add_argument("--hasse", action="store_true")
    cong.add_argument("--mod-p2-probe", action="store_true")
    cong.set_defaults(func=cmd_congruence)

    tab = sub.add_parser("table", parents=[common], help="G(F, j) and its zeros for k = 1..kmax")
    tab.add_argument("--kmax", type=int, default=11)
    tab.set_defaults(func=cmd_table)

    suite = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    suite.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    suite.set_defaults(func=cmd_suite)
    return parser


def _config(args) -> RunConfig:
    cache_dir = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV) or None
    return RunConfig(
        terms=getattr(args, "terms", 60),
        format=getattr(args, "format", "json"),
        cache_dir=Path(cache_dir) if cache_dir else None,
        jobs=max(1, getattr(args, "jobs", 1)),
    )


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        payload, status = args.func(args, cfg, ResultCache(cfg.cache_dir))
    except (InvalidSpec, NotPrime) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClassifierMismatch, IdentityFails) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except WronskFormsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    text = payload if isinstance(payload, str) else render(payload, cfg.format)
    print(text, file=out)
    return status


if __name__ == "__main__":
    sys.exit(main())
