"""Command line front end: ``jacobi-pitt <command> [--config PATH] [flags]``.

Config files are flat ``key = value`` text; flags override them. Every run
writes its output atomically and, when an output path is given, echoes the
effective configuration to ``<output>.meta.json``.

Exit codes: 0 success, 2 validation, 3 numerical failure, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .exceptions import NumericalError, ValidationError
from .quadrature import QuadratureSpec
from .regions import ExponentPair, PittQuery, RankOneGeometry, classify, region_boundary
from .special_functions import JacobiParams, jacobi_phi
from .transforms import bump, plancherel_defect, transform_function
from .verifier import (
    TestFamily,
    blowup_scan,
    hpw_l2_ratio,
    necessity_witness,
)
from .weights import SpatialWeight, SpectralWeight, rearrangement_table

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

COMMANDS = ("phi", "transform", "plancherel", "rearrange", "classify", "sweep", "hpw",
            "witness", "region_boundary")

# key -> (type, default); None default means "required when used"
KEYS = {
    "alpha": (float, 0.0), "beta": (float, 0.0), "zeta": (float, 0.0),
    "sigma": (float, 0.0), "kappa": (float, 0.0), "p": (float, 2.0), "q": (float, 2.0),
    "kind": (str, None), "grid_min": (float, None), "grid_max": (float, None),
    "grid_points": (int, None), "tol": (float, 1e-6), "output": (str, None),
    "gamma": (float, 1.0), "delta": (float, 1.0), "p0": (float, 1.0),
    "family": (str, None), "s_min": (float, None), "s_max": (float, None),
    "lam": (float, 1.0), "t": (float, 1.0), "sweep": (str, "t"), "a": (float, 1.0),
    "weight": (str, "inverse_spatial"), "measure": (str, None), "n": (int, None),
}
ALIASES = {"output_path": "output", "lambda": "lam"}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# config


def read_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read config {path}: {exc}") from exc
    out = {}
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(EXIT_VALIDATION, f"{path}:{no}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        out[_key(key, f"{path}:{no}")] = value
    return out


def _key(name: str, where: str) -> str:
    k = name.strip().replace("-", "_")
    k = ALIASES.get(k, k)
    if k not in KEYS:
        raise CliError(EXIT_VALIDATION, f"{where}: unknown key {name!r}")
    return k


def _convert(key: str, value):
    typ = KEYS[key][0]
    try:
        if typ is int:
            return int(value)
        if typ is float:
            return float(value)
        return str(value)
    except ValueError:
        raise CliError(EXIT_VALIDATION, f"{key}: cannot parse {value!r} as {typ.__name__}")


def effective_config(file_values: dict, flag_values: dict) -> dict:
    cfg = {k: d for k, (_, d) in KEYS.items()}
    for source in (file_values, flag_values):
        for k, v in source.items():
            if v is not None:
                cfg[k] = _convert(k, v)
    return cfg


def _need(cfg: dict, *keys):
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise CliError(EXIT_VALIDATION, "missing required setting(s): " + ", ".join(missing))


# ---------------------------------------------------------------------------
# output


def fmt(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def csv_text(header: list, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".jacobi-pitt-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from exc


def emit(cfg: dict, command: str, text: str) -> None:
    path = cfg.get("output")
    if not path:
        sys.stdout.write(text)
        return
    write_atomic(path, text)
    meta = {"command": command, "config": {k: cfg[k] for k in sorted(cfg)}}
    write_atomic(path + ".meta.json", json.dumps(meta, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# shared builders


def _params(cfg) -> JacobiParams:
    return JacobiParams(cfg["alpha"], cfg["beta"])


def _quad(cfg) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=cfg["tol"])


def _grid(cfg, log: bool = False) -> np.ndarray:
    _need(cfg, "grid_min", "grid_max", "grid_points")
    lo, hi, n = cfg["grid_min"], cfg["grid_max"], cfg["grid_points"]
    if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise ValidationError("grid needs grid_points >= 1 and finite grid_min <= grid_max")
    if n == 1:
        return np.array([lo])
    if log:
        if lo <= 0:
            raise ValidationError("log-spaced grids need grid_min > 0")
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _s_grid(cfg) -> np.ndarray:
    _need(cfg, "s_min", "s_max", "grid_points")
    lo, hi = cfg["s_min"], cfg["s_max"]
    if not (0 < lo < hi):
        raise ValidationError("need 0 < s_min < s_max")
    return np.geomspace(lo, hi, cfg["grid_points"])


def _query(cfg) -> PittQuery:
    _need(cfg, "kind")
    if cfg["kind"] == "rank_one":
        _need(cfg, "n")
        geom = RankOneGeometry(cfg["n"])
    else:
        geom = _params(cfg)
    return PittQuery(cfg["kind"], ExponentPair(cfg["p"], cfg["q"]), cfg["sigma"], cfg["kappa"],
                     cfg["zeta"], geom)


def _side_for(kind: str) -> str:
    return "time" if kind.endswith("direct") else "frequency"


# ---------------------------------------------------------------------------
# commands


def cmd_phi(cfg) -> str:
    params = _params(cfg)
    grid = _grid(cfg)
    if cfg["sweep"] == "t":
        vals = jacobi_phi(params, cfg["lam"], grid)
        return csv_text(["t", "phi"], zip(grid, np.atleast_1d(vals)))
    if cfg["sweep"] == "lambda":
        vals = jacobi_phi(params, grid, cfg["t"])
        return csv_text(["lambda", "phi"], zip(grid, np.atleast_1d(vals)))
    raise ValidationError("sweep must be 't' or 'lambda'")


def cmd_transform(cfg) -> str:
    params = _params(cfg)
    kind = cfg["kind"] or "direct"
    table = {"direct": ("time", "lambda"), "modified_direct": ("time", "lambda"),
             "inverse": ("frequency", "t"), "modified_inverse": ("frequency", "t")}
    if kind not in table:
        raise ValidationError(f"transform kind must be one of {sorted(table)}")
    side, col = table[kind]
    grid = _grid(cfg)
    g = transform_function(bump(cfg["a"], side), params, kind, _quad(cfg))
    return csv_text([col, "value"], zip(grid, g(grid)))


def cmd_plancherel(cfg) -> str:
    params = _params(cfg)
    d = plancherel_defect(bump(cfg["a"]), params, _quad(cfg))
    sys.stderr.write(f"plancherel defect: {fmt(d)}\n")
    return csv_text(["a", "defect"], [(cfg["a"], d)])


def cmd_rearrange(cfg) -> str:
    params = _params(cfg)
    grid = _grid(cfg, log=True)
    if cfg["weight"] == "inverse_spatial":
        w = SpatialWeight(cfg["kappa"]).reciprocal()
        measure = cfg["measure"] or "mtilde"
    elif cfg["weight"] == "spectral":
        w = SpectralWeight(cfg["zeta"], cfg["sigma"])
        measure = cfg["measure"] or "n"
    else:
        raise ValidationError("weight must be 'inverse_spatial' or 'spectral'")
    vals = rearrangement_table(w, measure, params, grid)
    return csv_text(["s", "value"], zip(grid, vals))


def cmd_classify(cfg) -> str:
    return classify(_query(cfg)).to_json() + "\n"


def _scan(cfg, family: TestFamily) -> str:
    query = _query(cfg)
    return blowup_scan(query, family, _s_grid(cfg), _quad(cfg)).to_csv()


def cmd_sweep(cfg) -> str:
    query = _query(cfg)
    fam_kind = cfg["family"] or "bump"
    if fam_kind.startswith("witness"):
        base = necessity_witness(query)
        family = TestFamily(fam_kind, 1.0 if fam_kind[-1] == "0" else 2.0, base.params,
                            "time" if fam_kind.startswith("witness_f") else "frequency",
                            base.p, base.kappa, base.zeta, base.modified)
    else:
        family = TestFamily(fam_kind, 1.0, _params(cfg), _side_for(query.kind))
    return _scan(cfg, family)


def cmd_witness(cfg) -> str:
    return _scan(cfg, necessity_witness(_query(cfg)))


def cmd_hpw(cfg) -> str:
    params = _params(cfg)
    rows = []
    for a in _s_grid(cfg):
        r = hpw_l2_ratio(bump(a), cfg["gamma"], cfg["delta"], cfg["p0"], params, _quad(cfg))
        rows.append((a, r.lhs, r.rhs, r.ratio))
    return csv_text(["a", "lhs", "rhs", "ratio"], rows)


def cmd_region_boundary(cfg) -> str:
    _need(cfg, "kind")
    kind = cfg["kind"]
    geom = RankOneGeometry(cfg["n"]) if kind == "rank_one" else _params(cfg)
    if kind == "rank_one":
        _need(cfg, "n")
    rows = region_boundary(kind, cfg["p"], cfg["q"], cfg["zeta"], geom, _grid(cfg))
    if any(r.status == "unknown" for r in rows):
        raise ValidationError("no characterization is known for these parameters; "
                              "region boundaries are only drawn in iff regimes")
    return csv_text(["kappa", "sigma_lower", "sigma_upper"],
                    [(r.kappa, r.sigma_lower, r.sigma_upper) for r in rows])


HANDLERS = {
    "phi": cmd_phi, "transform": cmd_transform, "plancherel": cmd_plancherel,
    "rearrange": cmd_rearrange, "classify": cmd_classify, "sweep": cmd_sweep,
    "hpw": cmd_hpw, "witness": cmd_witness, "region_boundary": cmd_region_boundary,
}


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jacobi-pitt",
                                 description="Jacobi transforms and shifted Pitt inequalities")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", metavar="PATH")
    for key, (typ, _) in KEYS.items():
        flag = "--" + key.replace("_", "-")
        names = [flag, "--lambda"] if key == "lam" else [flag]
        ap.add_argument(*names, dest=key, default=None, metavar="X")
    ap.add_argument("--output-path", dest="output", default=None, help=argparse.SUPPRESS)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        file_values = read_config(args.config) if args.config else {}
        flags = {k: getattr(args, k) for k in KEYS}
        cfg = effective_config(file_values, flags)
        text = HANDLERS[args.command](cfg)
        emit(cfg, args.command, text)
    except CliError as exc:
        sys.stderr.write(f"jacobi-pitt: {exc}\n")
        return exc.code
    except ValidationError as exc:
        sys.stderr.write(f"jacobi-pitt: invalid input: {exc}\n")
        return EXIT_VALIDATION
    except NumericalError as exc:
        sys.stderr.write(f"jacobi-pitt: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        sys.stderr.write(f"jacobi-pitt: I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
