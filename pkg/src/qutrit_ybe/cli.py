"""Command-line front end.

Commands
--------
verify            run every identity check and print a JSON/CSV report
rmatrix           export the 9x9 R-matrix
negativity-sweep  closed-form vs partial-transpose negativity of R|11> over [0, pi]
spectrum          closed-form vs numeric block spectra of H(t)
berry             discrete Berry phase of one band of one subsystem
blocks            export H(t), its subsystem blocks and O H O^T

Exit codes: 0 pass, 1 check failure or non-convergence, 2 config error,
3 degenerate input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import algebra as alg
from . import checks
from . import dynamics as dyn
from . import geometric as geo
from . import yangbaxter as yb
from .errors import DegenerateSpectrum, NotConverged, ZeroFrequency

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_DEGENERATE = 0, 1, 2, 3

COMMANDS = ("verify", "rmatrix", "negativity-sweep", "spectrum", "berry", "blocks")
DEFAULT_SWEEP_STEPS = 61  # pi/3 falls on the grid
DEFAULT_BERRY_STEPS = 2048


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    theta: float = math.pi / 2
    phi1: float = 0.0
    phi2: float = 0.0
    omega1: float = 1.0
    omega2: float = 2.0
    hbar: float = 1.0
    t: float = 0.0
    subsystem: int = 1
    band: str = "+"
    steps: int | None = None
    seed: int = 0
    trials: int = 20
    tol: float = checks.ALGEBRAIC_TOL
    out: str | None = None
    format: str = "json"
    order: str = "paper"
    self_test_negative: bool = False

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        for name in ("theta", "phi1", "phi2", "omega1", "omega2", "hbar", "t", "tol"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"--{name} must be finite")
        if self.hbar <= 0:
            raise ConfigError("--hbar must be positive")
        if self.tol <= 0:
            raise ConfigError("--tol must be positive")
        if self.subsystem not in (1, 2, 3):
            raise ConfigError("--subsystem must be 1, 2 or 3")
        if self.band not in geo.BANDS:
            raise ConfigError(f"--band must be one of {', '.join(geo.BANDS)}")
        if self.seed < 0:
            raise ConfigError("--seed must be non-negative")
        if self.trials < 0:
            raise ConfigError("--trials must be non-negative")
        if self.steps is not None:
            floor = geo.MIN_STEPS if self.command == "berry" else 2
            if self.steps < floor:
                raise ConfigError(f"--steps must be at least {floor} for {self.command}")
        return self

    @property
    def spec(self) -> dyn.HamiltonianSpec:
        return dyn.HamiltonianSpec(self.theta, self.omega1, self.omega2, self.hbar)


# --- serialization ------------------------------------------------------------

def _c(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _matrix_json(m: np.ndarray) -> list:
    return [[_c(z) for z in row] for row in m]


def _matrix_rows(name: str, m: np.ndarray, labels: Sequence[str]) -> list[dict]:
    """Long format: one row per entry, complex split into re and im."""
    rows = []
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            rows.append({"object": name, "row": i, "col": j, "row_label": labels[i],
                         "col_label": labels[j], "re": float(m[i, j].real), "im": float(m[i, j].imag)})
    return rows


def _basis_labels(order: str) -> list[str]:
    if order == "paper":
        return [f"|{a}{b}>" for a, b in alg.DISPLAY_ORDER]
    return [alg.pair_label(i) for i in range(9)]


def _ordered(m: np.ndarray, order: str) -> np.ndarray:
    return alg.to_display_order(m) if order == "paper" else m


def _render(payload, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


# --- commands -------------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> tuple[int, dict, list[dict]]:
    vc = checks.VerifyConfig(seed=cfg.seed, trials=cfg.trials, tol=cfg.tol,
                             inject_ybe_fault=cfg.self_test_negative)
    records = checks.run_checks(vc)
    ok = checks.all_passed(records)
    rows = [r.as_json() for r in records]
    payload = {"seed": cfg.seed, "trials": cfg.trials, "n_checks": len(rows),
               "n_failed": sum(1 for r in records if not r.passed and r.kind != "informational"),
               "pass": ok, "records": rows}
    return (EXIT_OK if ok else EXIT_FAIL), payload, rows


def cmd_rmatrix(cfg: RunConfig) -> tuple[int, dict, list[dict]]:
    p = yb.RParams(cfg.theta, cfg.phi1, cfg.phi2)
    r = _ordered(yb.build_R(p), cfg.order)
    labels = _basis_labels(cfg.order)
    payload = {"theta": p.theta, "phi1": p.phi1, "phi2": p.phi2, "order": cfg.order,
               "basis": labels, "R": _matrix_json(r)}
    return EXIT_OK, payload, _matrix_rows("R", r, labels)


def cmd_negativity_sweep(cfg: RunConfig) -> tuple[int, dict, list[dict]]:
    steps = cfg.steps or DEFAULT_SWEEP_STEPS
    rows = []
    for th in np.linspace(0.0, np.pi, steps):
        closed = yb.negativity_closed(th)
        numeric = yb.negativity(yb.act_on_basis(yb.RParams(th, cfg.phi1, cfg.phi2), 1, 1))
        rows.append({"theta": float(th), "N_closed": closed, "N_numeric": numeric,
                     "abs_diff": abs(closed - numeric)})
    ok = all(r["abs_diff"] < cfg.tol for r in rows)
    return (EXIT_OK if ok else EXIT_FAIL), {"rows": rows, "pass": ok}, rows


def cmd_spectrum(cfg: RunConfig) -> tuple[int, dict, list[dict]]:
    s = cfg.spec
    H = dyn.build_H(s, cfg.t)
    rows = []
    for k in (1, 2, 3):
        closed = dyn.closed_form_spectrum(s, k)
        numeric = dyn.numeric_spectrum(s, k, cfg.t)
        for level, (c, n) in enumerate(zip(closed, numeric)):
            rows.append({"subsystem": k, "level": level, "closed": float(c), "numeric": float(n),
                         "abs_diff": abs(float(c) - float(n))})
    leakage = dyn.block_leakage(H)
    ok = all(r["abs_diff"] < cfg.tol for r in rows) and leakage < 1e-12
    payload = {"theta": s.theta, "omega1": s.omega1, "omega2": s.omega2, "hbar": s.hbar, "t": cfg.t,
               "leakage": leakage, "rows": rows, "pass": ok}
    return (EXIT_OK if ok else EXIT_FAIL), payload, rows


def cmd_berry(cfg: RunConfig) -> tuple[int, dict, list[dict]]:
    loop = geo.LoopSpec(cfg.spec, cfg.subsystem, cfg.band, cfg.steps or DEFAULT_BERRY_STEPS)
    rec = geo.berry_numeric(loop).as_record()
    return EXIT_OK, rec, [rec]


def cmd_blocks(cfg: RunConfig) -> tuple[int, dict, list[dict]]:
    s = cfg.spec
    H = dyn.build_H(s, cfg.t)
    labels = _basis_labels(cfg.order)
    hh = _ordered(H, cfg.order)
    ht = dyn.block_diagonalize(H)
    new_labels = [f"|{i + 1}>" for i in range(9)]
    payload = {"theta": s.theta, "omega1": s.omega1, "omega2": s.omega2, "hbar": s.hbar, "t": cfg.t,
               "order": cfg.order, "basis": labels, "H": _matrix_json(hh),
               "blocks": {}, "OHOt": _matrix_json(ht), "off_pattern_norm": dyn.off_pattern_norm(ht)}
    rows = _matrix_rows("H", hh, labels)
    for k in (1, 2, 3):
        blk = dyn.subsystem_block(H, k)
        kl = [f"|{a}{b}>" for a, b in alg.SUBSYSTEM_KETS[k]]
        payload["blocks"][str(k)] = {"basis": kl, "h": _matrix_json(blk.h)}
        rows += _matrix_rows(f"block{k}", blk.h, kl)
    rows += _matrix_rows("OHOt", ht, new_labels)
    return EXIT_OK, payload, rows


HANDLERS = {
    "verify": cmd_verify, "rmatrix": cmd_rmatrix, "negativity-sweep": cmd_negativity_sweep,
    "spectrum": cmd_spectrum, "berry": cmd_berry, "blocks": cmd_blocks,
}


# --- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qutrit-ybe", description="Qutrit Yang-Baxter toolkit.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--theta", type=float, default=math.pi / 2)
    ap.add_argument("--phi1", type=float, default=0.0)
    ap.add_argument("--phi2", type=float, default=0.0)
    ap.add_argument("--omega1", type=float, default=1.0)
    ap.add_argument("--omega2", type=float, default=2.0)
    ap.add_argument("--hbar", type=float, default=1.0)
    ap.add_argument("--t", type=float, default=0.0)
    ap.add_argument("--subsystem", type=int, default=1)
    ap.add_argument("--band", default="+")
    ap.add_argument("--steps", type=int, default=None,
                    help=f"grid points (sweep: {DEFAULT_SWEEP_STEPS}, berry: {DEFAULT_BERRY_STEPS})")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--tol", type=float, default=checks.ALGEBRAIC_TOL)
    ap.add_argument("--out", default=None, help="write output here instead of stdout")
    ap.add_argument("--format", choices=("csv", "json"), default="json")
    ap.add_argument("--order", choices=("paper", "lex"), default="paper",
                    help="basis ordering of exported 9x9 matrices; 'paper' is the display "
                         "order |11>,|10>,|01>,|1-1>,|00>,|-11>,|0-1>,|-10>,|-1-1>")
    ap.add_argument("--self-test-negative", action="store_true",
                    help="perturb the middle factor of the YBE check; verify must then fail")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        cfg = RunConfig(**vars(ns)).validate()
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        status, payload, rows = HANDLERS[cfg.command](cfg)
    except (DegenerateSpectrum, ZeroFrequency) as e:
        print(f"degenerate input: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NotConverged as e:
        print(f"not converged: {e}", file=sys.stderr)
        return EXIT_FAIL
    text = _render(payload, rows, cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
