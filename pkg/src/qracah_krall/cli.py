"""Command-line front end: eval, table, verify, oracle.

Exit codes: 0 success/pass, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import click

from .exactnum import format_rational, to_fraction
from .family import OrthogonalFamily
from .krall import KrallExistenceError, KrallFamily, MassConfig
from .limits import (
    DualQHahnFamily,
    DualQHahnParams,
    QHahnFamily,
    QHahnParams,
    RacahClassicalParams,
)
from .oracle import DiscreteMeasure, gram_schmidt_monic
from .qracah import QRacahFamily, RacahParams
from .verify import LimitBlocks, run_suite

FAMILIES = ("qracah", "krall", "dual", "dual-krall", "qhahn", "qhahn-krall")
SUITE_NAMES = ("orthogonality", "kernels", "reps", "ttrr", "sode", "limits", "oracle", "all")


class ConfigError(click.ClickException):
    exit_code = 2


@dataclass
class Config:
    params: RacahParams
    masses: MassConfig
    blocks: LimitBlocks


def _field(doc: dict, key: str, where: str = "", required: bool = True):
    if key not in doc:
        if required:
            raise ConfigError(f"config field '{where}{key}' is missing")
        return None
    try:
        return to_fraction(doc[key])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"config field '{where}{key}': {exc}") from None


def parse_config(doc: dict) -> Config:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    N = doc.get("N")
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise ConfigError("config field 'N' must be a positive integer")
    trunc = doc.get("truncation", "gamma")
    if trunc not in ("alpha", "betadelta", "gamma"):
        raise ConfigError("config field 'truncation' must be one of alpha, betadelta, gamma")
    held = {"alpha": "alpha", "betadelta": "beta", "gamma": "gamma"}[trunc]
    values = {"v": _field(doc, "v"), "delta": _field(doc, "delta")}
    for key in ("alpha", "beta", "gamma"):
        if key != held:
            values[key] = _field(doc, key)
    if held in doc:
        raise ConfigError(f"config field '{held}' is derived from the truncation and must be omitted")
    try:
        params = RacahParams.build(
            values["v"],
            alpha=values.get("alpha"),
            beta=values.get("beta"),
            gamma=values.get("gamma"),
            delta=values["delta"],
            N=N,
            truncation=trunc,
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"inadmissible parameters: {exc}") from None
    A = _field(doc, "A", required=False) or Fraction(0)
    B = _field(doc, "B", required=False) or Fraction(0)
    masses = MassConfig(A, B)

    try:
        dual = qhahn = classical = None
        if "dual" in doc:
            d = doc["dual"]
            dual = DualQHahnParams(params.base, _field(d, "gamma", "dual."), _field(d, "delta", "dual."), d.get("N", N))
        if "qhahn" in doc:
            d = doc["qhahn"]
            qhahn = QHahnParams(params.base, _field(d, "mu", "qhahn."), _field(d, "nu", "qhahn."), d.get("N", N))
        if "classical" in doc:
            d = doc["classical"]
            cv = {k: float(_field(d, k, "classical.")) for k in ("alpha", "beta", "delta")}
            classical = RacahClassicalParams.build(cv["alpha"], cv["beta"], cv["delta"], d.get("N", N))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"inadmissible limit-family parameters: {exc}") from None
    return Config(params, masses, LimitBlocks(params, dual, qhahn, classical))


def load_config(path: str) -> Config:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(doc)


def build_family(cfg: Config, family: str) -> OrthogonalFamily:
    base = {
        "qracah": lambda: QRacahFamily(cfg.params),
        "dual": lambda: DualQHahnFamily(cfg.blocks.dual),
        "qhahn": lambda: QHahnFamily(cfg.blocks.qhahn),
    }
    name = family.removesuffix("-krall")
    if family == "krall":
        name = "qracah"
    fam = base[name]()
    if family.endswith("krall"):
        return KrallFamily(fam, cfg.masses)
    return fam


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: _fmt(r[c]) for c in columns} for r in rows], indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


config_option = click.option(
    "--config", "config_path", required=True, type=click.Path(dir_okay=False), help="JSON parameter file."
)
family_option = click.option("--family", type=click.Choice(FAMILIES), default="krall", show_default=True)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact q-Racah and q-Racah-Krall polynomials."""


@main.command("eval")
@config_option
@family_option
@click.option("-n", "n", type=int, required=True, help="Degree.")
@click.option("-s", "s", type=int, required=True, help="Lattice index.")
def cmd_eval(config_path, family, n, s):
    """Print R_n(x(s)) as an exact rational and a decimal."""
    cfg = load_config(config_path)
    fam = build_family(cfg, family)
    if not 0 <= s <= fam.N:
        raise ConfigError(f"s out of lattice range 0..{fam.N}")
    if not 0 <= n <= fam.N:
        raise ConfigError(f"degree n out of range 0..{fam.N}")
    try:
        value = fam.eval(n, s)
    except KrallExistenceError as exc:
        raise click.ClickException(str(exc)) from None
    click.echo(_fmt(value))
    click.echo(f"{float(value):.17g}")


@main.command("table")
@config_option
@family_option
@click.option("--nmax", type=int, default=None, help="Highest degree (default N).")
@click.option("--kind", type=click.Choice(("values", "coefficients")), default="values", show_default=True)
@click.option("--format", "fmt", type=click.Choice(("csv", "json")), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_table(config_path, family, nmax, kind, fmt, out):
    """Tabulate values and masses per (n, s), or recurrence data and norms per n."""
    cfg = load_config(config_path)
    fam = build_family(cfg, family)
    nmax = fam.N if nmax is None else min(nmax, fam.N)
    if kind == "values":
        columns = ["n", "s", "x", "mass", "R"]
        rows = [
            {"n": n, "s": s, "x": fam.xval(s), "mass": fam.mass(s), "R": fam.eval(n, s)}
            for n in range(nmax + 1)
            for s in range(fam.N + 1)
        ]
    else:
        columns = ["n", "beta", "gamma", "d2"]
        rows = [
            {"n": n, "beta": fam.beta(n), "gamma": fam.gamma(n), "d2": fam.d2(n)}
            for n in range(nmax + 1)
        ]
    _emit(_render(rows, columns, fmt), out)


@main.command("verify")
@click.argument("suite", type=click.Choice(SUITE_NAMES))
@config_option
@click.option("--nmax", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_verify(suite, config_path, nmax, fmt, out):
    """Run a verification suite; exit 0 on pass, 1 on failure."""
    cfg = load_config(config_path)
    try:
        rep = run_suite(suite, cfg.params, cfg.masses, nmax, cfg.blocks)
    except KrallExistenceError as exc:
        raise click.ClickException(str(exc)) from None
    text = rep.to_json() + "\n" if fmt == "json" else rep.to_text() + "\n"
    _emit(text, out)
    sys.exit(0 if rep.passed else 1)


@main.command("oracle")
@config_option
@click.option("--family", type=click.Choice(("qracah", "dual", "qhahn")), default="qracah", show_default=True)
@click.option("--nmax", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_oracle(config_path, family, nmax, out):
    """Export Gram-Schmidt coefficients for the base measure plus the configured masses."""
    cfg = load_config(config_path)
    fam = build_family(cfg, family)
    nmax = fam.N if nmax is None else min(nmax, fam.N)
    res = gram_schmidt_monic(DiscreteMeasure.from_family(fam, cfg.masses.A, cfg.masses.B), nmax)
    doc = {
        "family": family,
        "A": _fmt(cfg.masses.A),
        "B": _fmt(cfg.masses.B),
        "nodes": [_fmt(x) for x in fam.nodes],
        "coefficients": [[_fmt(c) for c in row] for row in res.coeffs],
        "norms": [_fmt(h) for h in res.norms],
        "beta": [_fmt(b) for b in res.betas],
        "gamma": [_fmt(g) for g in res.gammas],
    }
    _emit(json.dumps(doc, indent=2) + "\n", out)


if __name__ == "__main__":  # pragma: no cover
    main()
