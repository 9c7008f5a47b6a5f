"""
Command-line front end.

    coinwalk single   --state chi+ --steps 100 --what distribution
    coinwalk pair     --state bell:phi+ --steps 100 --out ps.csv
    coinwalk boson    --steps 50
    coinwalk delta    --state bell:phi- --steps 200 --delta-coin default
    coinwalk asymptote --state bell:psi-
    coinwalk preset   fig1 --out runs/
    coinwalk sweep    --samples 100 --seed 1 --steps 200

Exit codes: 0 success, 2 bad arguments or state, 3 resource cap exceeded,
4 a preset missed its acceptance gate, 5 output could not be written.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from . import __version__
from . import asymptotics as asym
from .core import L, R, SYMMETRIC, check_unitary, hadamard_eigenbasis
from .delta import DEFAULT_MAX_AMPS, ResourceLimitError, delta_coin_default
from .experiments import ExperimentResult, ExperimentSpec, Table, preset, run, tail_window
from .pair import bell_state, product_state, ps_timeseries

__all__ = ["RunConfig", "StateError", "parse_args", "parse_state", "parse_complex", "emit", "main"]

log = logging.getLogger("coinwalk")

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_GATE, EXIT_IO = 0, 2, 3, 4, 5
OUTPUT_DIR_ENV = "COINWALK_OUTPUT_DIR"
SUBCOMMANDS = ("single", "pair", "boson", "fermion", "delta", "asymptote", "preset", "sweep")

CONVENTIONS = {
    "half_line": "m <= 0 is the negative side (origin included), m >= 1 the positive side",
    "coin_order": "two-coin amplitudes ordered (LL, LR, RL, RR); particle 1 is the left factor",
    "shift": "|L> moves to m-1, |R> moves to m+1 after the coin",
    "ordered_pairs": "indistinguishable joint tables hold only m >= n; diagonal cells are not halved",
}


class StateError(ValueError):
    """A state designation, complex literal or coin file could not be used."""


@dataclass
class RunConfig:
    subcommand: str
    state: str | None = None
    steps: int = 0
    delta_coin: str = "default"
    out: str | None = None
    format: str = "csv"
    max_amps: int = DEFAULT_MAX_AMPS
    seed: int | None = None
    samples: int = 100
    preset: str | None = None
    what: list[str] = field(default_factory=list)


_COMPLEX = re.compile(
    r"""^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?
        ([+-](\d+\.?\d*|\.\d+)([eE][+-]?\d+)?i)?\s*$
      |^\s*[+-]?((\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?i\s*$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``re+imi``, ``re-imi`` or ``imi`` (``i`` alone means 1i)."""
    if not _COMPLEX.match(text):
        raise StateError(f"malformed complex literal {text!r}")
    s = text.strip().replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    return complex(s)


def _single_presets():
    chi_p, chi_m = hadamard_eigenbasis()
    return {"L": L, "R": R, "sym": SYMMETRIC, "chi+": chi_p, "chi-": chi_m}


def _normalize(vec: np.ndarray, text: str) -> np.ndarray:
    norm = float(np.vdot(vec, vec).real)
    if norm == 0.0:
        raise StateError(f"state {text!r} is the zero vector")
    if abs(norm - 1.0) > 1e-6:
        log.warning("state %r has squared norm %.6g; renormalizing", text, norm)
    return vec / np.sqrt(norm)


def parse_state(text: str, width: int) -> np.ndarray:
    """
    Resolve a ``--state`` value to a coin vector of length ``width`` (2 or 4).

    Named single-walker states are ``L``, ``R``, ``sym``, ``chi+``, ``chi-``;
    two-walker states are ``bell:psi+`` etc., ``X*Y`` for a product of named
    states, a single name ``X`` meaning ``X*X``, or explicit amplitudes.
    """
    singles = _single_presets()
    text = text.strip()
    if text.startswith("bell:"):
        if width != 4:
            raise StateError("Bell states need a two-walker command")
        try:
            return bell_state(text[5:])
        except ValueError as exc:
            raise StateError(str(exc)) from None
    if "*" in text:
        parts = text.split("*")
        if width != 4 or len(parts) != 2:
            raise StateError(f"product state {text!r} needs a two-walker command and two factors")
        return product_state(*(parse_state(p, 2) for p in parts))
    if text in singles:
        s = singles[text]
        return s.copy() if width == 2 else product_state(s, s)
    parts = text.split(",")
    if len(parts) != width:
        raise StateError(f"expected {width} comma-separated amplitudes or a preset, got {text!r}")
    return _normalize(np.array([parse_complex(p) for p in parts], dtype=np.complex128), text)


def load_delta_coin(source: str) -> np.ndarray:
    """``default`` or a file of 16 whitespace-separated complex literals, row-major."""
    if source == "default":
        return delta_coin_default()
    try:
        tokens = Path(source).read_text().split()
    except OSError as exc:
        raise StateError(f"cannot read interaction coin {source!r}: {exc}") from None
    if len(tokens) != 16:
        raise StateError(f"interaction coin file needs 16 entries, found {len(tokens)}")
    coin = np.array([parse_complex(t) for t in tokens], dtype=np.complex128).reshape(4, 4)
    try:
        return check_unitary(coin, atol=1e-10)
    except ValueError as exc:
        raise StateError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coinwalk", description="One- and two-particle Hadamard walks on the line.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, state=True, steps=True):
        if state:
            p.add_argument("--state", help="preset name or comma-separated amplitudes (re+imi)")
        if steps:
            p.add_argument("--steps", type=int, default=0, metavar="N")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def what(p, choices, default):
        p.add_argument("--what", action="append", choices=choices, help=f"tables to emit (default {default})")

    p = sub.add_parser("single", help="single walker")
    common(p)
    what(p, ("timeseries", "distribution"), "distribution")
    for name in ("pair", "boson", "fermion", "delta"):
        p = sub.add_parser(name, help=f"{name} walk, same-side probability")
        common(p, state=name in ("pair", "delta"))
        what(p, ("timeseries", "joint"), "timeseries")
        if name == "delta":
            p.add_argument("--delta-coin", default="default", metavar="FILE|default")
            p.add_argument("--max-amps", type=int, default=DEFAULT_MAX_AMPS, metavar="N")
    p = sub.add_parser("asymptote", help="closed-form limits for a coin state")
    common(p, steps=False)
    p = sub.add_parser("preset", help="run a named experiment")
    p.add_argument("preset")
    common(p, state=False, steps=False)
    p.add_argument("--max-amps", type=int, default=DEFAULT_MAX_AMPS, metavar="N")
    p = sub.add_parser("sweep", help="random two-walker coin states")
    common(p, state=False)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    return parser


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    cfg = RunConfig(subcommand=ns.subcommand)
    for key in ("state", "steps", "delta_coin", "out", "format", "max_amps", "seed", "samples", "preset"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    cfg.what = list(getattr(ns, "what", None) or [])
    if cfg.steps < 0:
        raise StateError("--steps must be non-negative")
    if cfg.subcommand in ("single", "pair", "delta", "asymptote") and not cfg.state:
        raise StateError(f"{cfg.subcommand} needs --state")
    return cfg


# -- emission ---------------------------------------------------------------


def _fmt(x: float, as_int: bool) -> str:
    return str(int(x)) if as_int else f"{x:.17g}"


def write_csv(table: Table, fh: TextIO) -> None:
    fh.write(",".join(table.columns) + "\n")
    ints = [c in table.int_columns for c in table.columns]
    for row in table.data:
        fh.write(",".join(_fmt(v, i) for v, i in zip(row, ints)) + "\n")


def read_csv(path: Path) -> tuple[tuple[str, ...], np.ndarray]:
    lines = Path(path).read_text().splitlines()
    cols = tuple(lines[0].split(","))
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]], dtype=float)
    return cols, data.reshape(-1, len(cols))


def _table_json(table: Table) -> dict:
    ints = [c in table.int_columns for c in table.columns]
    rows = [[int(v) if i else float(v) for v, i in zip(row, ints)] for row in table.data]
    out = {"columns": list(table.columns), "rows": rows}
    if table.bounds is not None:
        out["bounds"] = list(table.bounds)
    return out


def _meta(result: ExperimentResult, files: list[str]) -> dict:
    return {
        "tool": "coinwalk",
        "version": __version__,
        "spec": result.spec.describe(),
        "window": list(result.window) if result.window else None,
        "summary": result.summary,
        "passed": result.passed,
        "failures": result.failures,
        "conventions": CONVENTIONS,
        "files": files,
    }


def _targets(result: ExperimentResult, config: RunConfig) -> tuple[Path | None, str]:
    raw = config.out
    if raw is None:
        env = os.environ.get(OUTPUT_DIR_ENV)
        if not env:
            return None, ""
        return Path(env) / result.spec.name, "dir"
    out = Path(raw)
    # Path() drops a trailing separator, so check the raw text for it
    if out.is_dir() or raw.endswith(("/", os.sep)):
        return out / result.spec.name, "dir"
    return out, "file"


def emit(result: ExperimentResult, config: RunConfig, stream: TextIO | None = None) -> list[Path]:
    """
    Write the result tables in ``config.format`` and a ``.meta.json`` sidecar.

    With no ``--out`` and no ``COINWALK_OUTPUT_DIR`` the tables go to
    ``stream`` (stdout) and no sidecar is written.  A single CSV table goes to
    ``--out`` itself; several tables get ``_<table>`` appended to the stem.

    Raises
    ------
    OSError
        If a file cannot be written.
    """
    stream = sys.stdout if stream is None else stream
    base, kind = _targets(result, config)
    ext = ".json" if config.format == "json" else ".csv"

    if base is None:
        if config.format == "json":
            doc = {"tables": {k: _table_json(t) for k, t in result.tables.items()}, **_meta(result, [])}
            stream.write(json.dumps(doc, indent=1) + "\n")
        else:
            for name, table in result.tables.items():
                if len(result.tables) > 1:
                    stream.write(f"# {name}\n")
                write_csv(table, stream)
        return []

    if kind == "dir":
        base.parent.mkdir(parents=True, exist_ok=True)
        stem = base
    else:
        base.parent.mkdir(parents=True, exist_ok=True)
        stem = base.with_suffix("") if base.suffix else base

    written: list[Path] = []
    if config.format == "json":
        path = base.with_suffix(".json") if kind == "dir" else base
        doc = {"tables": {k: _table_json(t) for k, t in result.tables.items()}, **_meta(result, [path.name])}
        path.write_text(json.dumps(doc, indent=1) + "\n")
        written.append(path)
    else:
        single = len(result.tables) == 1 and kind == "file"
        for name, table in result.tables.items():
            path = base if single else stem.parent / f"{stem.name}_{name}{ext}"
            with open(path, "w", newline="") as fh:
                write_csv(table, fh)
            written.append(path)
    meta_path = stem.parent / f"{stem.name}.meta.json"
    meta_path.write_text(json.dumps(_meta(result, [p.name for p in written]), indent=1) + "\n")
    return written + [meta_path]


# -- commands ---------------------------------------------------------------


def _spec_from_config(cfg: RunConfig) -> ExperimentSpec:
    if cfg.subcommand == "preset":
        spec = preset(cfg.preset)
        if spec.mode == "delta":
            spec = ExperimentSpec(**{**spec.__dict__, "max_amps": cfg.max_amps})
        return spec
    width = 2 if cfg.subcommand == "single" else 4
    states = ((cfg.state, parse_state(cfg.state, width)),) if cfg.state else ()
    defaults = {"single": ["distribution"]}
    outputs = tuple(cfg.what or defaults.get(cfg.subcommand, ["timeseries"]))
    kw = dict(name=cfg.subcommand, mode=cfg.subcommand, steps=cfg.steps, states=states, outputs=outputs)
    if cfg.subcommand == "delta":
        kw.update(interaction_coin=load_delta_coin(cfg.delta_coin), max_amps=cfg.max_amps)
    return ExperimentSpec(**kw)


def _two_walker(text: str) -> bool:
    text = text.strip()
    return text.startswith("bell:") or "*" in text or text.count(",") == 3


def _asymptote(cfg: RunConfig, stream: TextIO) -> ExperimentResult:
    spec = ExperimentSpec(name="asymptote", mode="analytic", outputs=())
    result = ExperimentResult(spec)
    if _two_walker(cfg.state):
        state = parse_state(cfg.state, 4)
        value = asym.ps_entangled(state)
        c1, c2, c12 = asym.density_coefficients(state)
        result.summary[cfg.state] = {"p_same": value, "c1": c1, "c2": c2, "c12": c12}
        result.tables["asymptote"] = Table(("p_same",), np.array([[value]]))
        if cfg.out is None:
            stream.write(f"{value:.15g}\n")
    else:
        coin = parse_state(cfg.state, 2)
        pm, pp = asym.asymptotic_half_line(coin)
        result.summary[cfg.state] = {"p_minus": pm, "p_plus": pp}
        result.tables["asymptote"] = Table(("p_minus", "p_plus"), np.array([[pm, pp]]))
        if cfg.out is None:
            stream.write(f"{pm:.15g} {pp:.15g}\n")
    return result


def _sweep(cfg: RunConfig) -> ExperimentResult:
    rng = np.random.default_rng(cfg.seed)
    spec = ExperimentSpec(name="sweep", mode="analytic", steps=cfg.steps, outputs=())
    result = ExperimentResult(spec)
    window = tail_window(cfg.steps)
    rows = []
    for k in range(cfg.samples):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        row = [k, *v.real, *v.imag, asym.ps_entangled(v)]
        if cfg.steps > 0:
            row.append(ps_timeseries(v, cfg.steps).tail_average(*window))
        rows.append(row)
    cols = ["index", "re_LL", "re_LR", "re_RL", "re_RR", "im_LL", "im_LR", "im_RL", "im_RR", "ps_closed_form"]
    if cfg.steps > 0:
        cols.append("ps_simulated")
        result.window = window
    result.tables["sweep"] = Table(tuple(cols), np.array(rows, dtype=float), ("index",))
    return result


def main(argv: Sequence[str] | None = None, stream: TextIO | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    stream = sys.stdout if stream is None else stream
    try:
        cfg = parse_args(argv)
        if cfg.subcommand == "asymptote":
            result = _asymptote(cfg, stream)
            if cfg.out is None:
                return EXIT_OK
        elif cfg.subcommand == "sweep":
            result = _sweep(cfg)
        else:
            result = run(_spec_from_config(cfg))
    except (StateError, KeyError, ValueError) as exc:
        print(f"coinwalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"coinwalk: resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE

    try:
        emit(result, cfg, stream)
    except OSError as exc:
        print(f"coinwalk: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO

    for label, row in result.summary.items():
        shown = ", ".join(f"{k}={v:.6g}" for k, v in row.items())
        print(f"{label}: {shown}", file=sys.stderr)
    if cfg.subcommand == "preset" and not result.passed:
        for msg in result.failures:
            print(f"coinwalk: gate failed: {msg}", file=sys.stderr)
        return EXIT_GATE
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
