"""Command-line interface.

Exit codes: 0 every check passed, 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import random
import re
import sys
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

import click

from . import igl, pheno
from .errors import KappaError, ParseError
from .series import DEFAULT_ORDER
from .weyl import MINKOWSKI, MetricSig, format_poly, format_weyl

ORDER_ENV = "KAPPAMINK_ORDER"
FORMATS = ("json", "csv", "table")


class CheckFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration


def read_config(path: str) -> Dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise click.UsageError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


class RunConfig:
    def __init__(self, h_order: int = DEFAULT_ORDER, metric: MetricSig = MINKOWSKI, fmt: str = "table", seed: int = 0):
        self.h_order = h_order
        self.metric = metric
        self.format = fmt
        self.seed = seed


def _resolve(ctx: click.Context, local: dict) -> RunConfig:
    """Subcommand flag > group flag > config file > environment > default."""
    root = ctx.find_root().params
    cfg_path = local.get("config") or root.get("config")
    fileconf = read_config(cfg_path) if cfg_path else {}

    def pick(key, env=None):
        for src in (local.get(key), root.get(key), fileconf.get(key)):
            if src is not None:
                return src
        if env and os.environ.get(env):
            return os.environ[env]
        return None

    try:
        order = int(pick("order", ORDER_ENV) or DEFAULT_ORDER)
    except ValueError:
        raise click.UsageError("order must be an integer") from None
    if not 2 <= order <= 16:
        raise click.UsageError(f"order {order} outside [2, 16]")
    fmt = pick("format") or "table"
    if fmt not in FORMATS:
        raise click.UsageError(f"format must be one of {', '.join(FORMATS)}")
    try:
        metric = MetricSig.parse(pick("metric")) if pick("metric") else MINKOWSKI
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    try:
        seed = int(pick("seed") or 0)
    except ValueError:
        raise click.UsageError("seed must be an integer") from None
    return RunConfig(order, metric, fmt, seed)


def common(f):
    for opt in reversed([
        click.option("--order", type=int, default=None, help="truncation order in h (2..16)"),
        click.option("--metric", default=None, help="metric signature, e.g. -+++"),
        click.option("--format", "fmt_", type=click.Choice(FORMATS), default=None),
        click.option("--seed", type=int, default=None),
        click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None),
    ]):
        f = opt(f)
    return f


def _cfg(ctx, order, metric, fmt_, seed, config) -> RunConfig:
    return _resolve(ctx, {"order": order, "metric": metric, "format": fmt_, "seed": seed, "config": config})


def _need_minkowski(cfg: RunConfig, what: str) -> None:
    if cfg.metric != MINKOWSKI:
        raise click.UsageError(f"{what} supports only the metric {MINKOWSKI}")


# ---------------------------------------------------------------------------
# output


def _fmt_cell(v) -> str:
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.12g}"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if v is None:
        return ""
    return str(v)


def _json_cell(v):
    if isinstance(v, float) and math.isnan(v):
        return None
    if isinstance(v, Fraction):
        return str(v)
    return v


def emit(rows: List[dict], cfg: RunConfig, columns: Optional[Sequence[str]] = None) -> None:
    columns = list(columns or (rows[0].keys() if rows else []))
    if cfg.format == "json":
        click.echo(json.dumps([{k: _json_cell(r.get(k)) for k in columns} for r in rows], sort_keys=True))
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt_cell(r.get(k)) for k in columns])
        click.echo(buf.getvalue(), nl=False)
    else:
        cells = [[_fmt_cell(r.get(k)) for k in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        click.echo("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
        for row in cells:
            click.echo("  ".join(c.ljust(w) for c, w in zip(row, widths)))


def _norm(valuation: Optional[int]) -> float:
    return 0.0 if valuation is None else 2.0 ** (-valuation)


def _finish(rows: List[dict]) -> None:
    if any(not r.get("pass", True) for r in rows):
        raise CheckFailed()


# ---------------------------------------------------------------------------
# argument helpers


def _fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"{what}: cannot parse {text!r} as a rational") from None


def _fraction_list(text: Optional[str], what: str) -> List[Fraction]:
    if not text:
        return []
    return [_fraction(t, what) for t in text.split(",")]


def _theta(text: str) -> List[List[Fraction]]:
    return [[_fraction(c, "--theta") for c in row.split(",")] for row in text.split(";")]


def _twist(family: str, param: Optional[str], theta: Optional[str], order: int):
    from .twist import build_twist

    fam = family.lower()
    if fam == "theta":
        if not theta:
            raise click.UsageError("theta family needs --theta")
        return build_twist("theta", _theta(theta), order)
    if fam in ("abelian", "jordanian"):
        if param is None:
            raise click.UsageError(f"{fam} family needs --param")
        return build_twist(fam, _fraction(param, "--param"), order)
    raise click.UsageError(f"unknown family {family!r}")


_GEN_RE = re.compile(r"^(?:L\^?(\d)_?(\d)|P_?(\d)|D)$")


def _igl_generator(name: str):
    m = _GEN_RE.match(name.strip())
    if not m:
        raise click.UsageError(f"unknown generator {name!r} (use L^a_b, P_mu or D)")
    if m.group(1) is not None:
        return igl.L(int(m.group(1)), int(m.group(2)))
    if m.group(3) is not None:
        return igl.P(int(m.group(3)))
    return igl.D()


# ---------------------------------------------------------------------------
# commands


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--order", type=int, default=None, help=f"truncation order in h (default from ${ORDER_ENV} or 8)")
@click.option("--metric", default=None, help="metric signature, e.g. -+++")
@click.option("--format", "format", type=click.Choice(FORMATS), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None, help="key=value file")
def main(order, metric, format, seed, config):
    """Exact twist, Hopf and DSR verification plus photon-delay phenomenology."""


# verify ----------------------------------------------------------------------


def _verify_twists(cfg: RunConfig, family: Optional[str], param: Optional[str], theta: Optional[str],
                   tables: bool = False) -> List[dict]:
    from .expr import parse_poly
    from .twist import check_cocycle, check_normalization, star_commutator

    if family:
        cases = [(family, param, theta)]
    else:
        cases = [("abelian", p, None) for p in ("0", "1/2", "1")] + \
                [("jordanian", p, None) for p in ("-1", "1", "3")] + [("theta", None, "0,1;-1,0")]
    rows = []
    for fam, par, th in cases:
        tw = _twist(fam, par, th, cfg.h_order)
        label = par if fam != "theta" else th
        base = {"family": fam, "param": label, "order": cfg.h_order}
        res = check_cocycle(tw)
        rows.append(dict(base, check="cocycle", residual_norm=_norm(res.valuation()), **{"pass": res.is_zero()}))
        left, right = check_normalization(tw)
        ok = left.is_zero() and right.is_zero()
        val = min([v for v in (left.valuation(), right.valuation()) if v is not None], default=None)
        rows.append(dict(base, check="normalization", residual_norm=_norm(val), **{"pass": ok}))
        if fam in ("abelian", "jordanian"):
            x = [parse_poly(f"x{m}", h_order=cfg.h_order) for m in range(4)]
            for k in (1, 2, 3):
                res = star_commutator(tw, x[0], x[k]) - parse_poly(f"i*h*x{k}", h_order=cfg.h_order)
                rows.append(dict(base, check=f"[x0,x{k}]_star = i h x{k}", residual_norm=0.0 if res.is_zero() else 1.0,
                                 **{"pass": res.is_zero()}))
            for j, k in ((1, 2), (1, 3), (2, 3)):
                res = star_commutator(tw, x[j], x[k])
                rows.append(dict(base, check=f"[x{j},x{k}]_star = 0", residual_norm=0.0 if res.is_zero() else 1.0,
                                 **{"pass": res.is_zero()}))
            if tables:
                from .twist import homomorphism_residuals
                from .twist_tables import compare_table

                for r in compare_table(tw):
                    val = r["fixed_order"] if r["fixed_order"] is not None else r["axiom_order"]
                    note = "" if r["printed_order"] is None else f" (printed form differs at h^{r['printed_order']})"
                    rows.append(dict(base, check=f"table {r['map']} {r['entry']}{note}", residual_norm=_norm(val),
                                     **{"pass": r["pass"]}))
                bad = {k: v for k, v in homomorphism_residuals(tw).items() if v is not None}
                rows.append(dict(base, check="coproduct homomorphism", residual_norm=_norm(min(bad.values(), default=None)),
                                 **{"pass": not bad}))
    return rows


def _verify_hopf(cfg: RunConfig, basis: str, kappa: str) -> List[dict]:
    from . import hopf

    rows = []
    if basis == "classical":
        spec = hopf.build_kappa_classical(cfg.h_order)
        for e in hopf.check_hopf_axioms(spec):
            rows.append(e)
        xi, xinv = spec.extras["Xi"], spec.extras["Xi_inv"]
        res = hopf.check_grouplike(spec, xi)
        rows.append(hopf._report_entry("grouplike", ["Xi"], res))
        c3, c3i = spec.fn(xi * xi * xi), spec.fn(xinv * xinv * xinv)
        for g in spec.generators:
            res = hopf.check_antipode_square(spec, spec.gen(g), c3, c3i)
            rows.append(hopf._report_entry("S^2 = Ad(Xi^3)", [g], res))
    elif basis == "bicrossproduct":
        spec = hopf.build_kappa_classical(cfg.h_order)
        for k, res in hopf.bicross_checks(spec).items():
            if not k.endswith("_printed"):
                rows.append(hopf._report_entry("bicrossproduct", [k], res))
        for k, res in hopf.bicross_coaction_checks(spec).items():
            rows.append(hopf._report_entry("coaction", [k], res))
    elif basis == "qanalog":
        spec = hopf.build_kappa_qanalog(_fraction(kappa, "--kappa"))
        rows.extend(hopf.check_hopf_axioms(spec))
        res = hopf.qanalog_casimir_relation(spec)
        rows.append({"axiom": "C = C_kappa (1 + C_kappa / 4 kappa^2)", "generators": [], "lowest_order": None,
                     "pass": res.is_zero()})
    else:
        raise click.UsageError(f"unknown basis {basis!r}")
    for r in rows:
        r["order"] = cfg.h_order if basis != "qanalog" else "exact"
        r["residual_ultra_norm"] = _norm(r.pop("lowest_order"))
    return rows


def _verify_dsr(cfg: RunConfig, realization: str, psi: Optional[str], gamma: Optional[str], samples: int) -> List[dict]:
    from . import dsr

    if realization == "natural":
        cases = [("natural", dsr.realize_natural(cfg.h_order))]
    elif realization in ("bicrossproduct", "hermitian", "minimal"):
        p, g = dsr.example_params(realization)
        cases = [(realization, dsr.realize_noncovariant(p, g, cfg.h_order))]
    elif realization == "noncovariant":
        if psi:
            cases = [("noncovariant", dsr.realize_noncovariant(_fraction_list(psi, "--psi"),
                                                               _fraction_list(gamma, "--gamma") or [0], cfg.h_order))]
        else:
            rng = random.Random(cfg.seed)
            cases = []
            for _ in range(samples):
                p, g = dsr.random_noncovariant_params(rng)
                cases.append((f"psi={','.join(map(str, p))};gamma={','.join(map(str, g))}",
                              dsr.realize_noncovariant(p, g, cfg.h_order)))
    else:
        raise click.UsageError(f"unknown realization {realization!r}")
    rows = []
    for name, real in cases:
        for e in dsr.verify_dsr(real):
            rows.append({"realization": name, "relation": e["relation"], "order": cfg.h_order,
                         "residual_ultra_norm": _norm(e["lowest_order"]), "pass": e["pass"]})
    return rows


@main.command()
@click.argument("suite", type=click.Choice(["twists", "hopf", "dsr", "all"]))
@click.option("--family", default=None, help="twists: abelian, jordanian or theta")
@click.option("--param", default=None, help="twists: s or r as a rational")
@click.option("--theta", default=None, help='twists: antisymmetric matrix rows, e.g. "0,1;-1,0"')
@click.option("--basis", default="classical", type=click.Choice(["classical", "bicrossproduct", "qanalog"]))
@click.option("--kappa", default="1", help="hopf qanalog: kappa as a rational")
@click.option("--realization", default="natural",
              type=click.Choice(["natural", "bicrossproduct", "hermitian", "minimal", "noncovariant"]))
@click.option("--psi", default=None, help="dsr noncovariant: psi Taylor coefficients")
@click.option("--gamma", default=None, help="dsr noncovariant: gamma Taylor coefficients")
@click.option("--samples", default=20, type=int, help="dsr noncovariant: random samples when --psi is absent")
@click.option("--tables", is_flag=True, help="twists: also compare the closed-form coproduct/antipode tables")
@common
@click.pass_context
def verify(ctx, suite, family, param, theta, basis, kappa, realization, psi, gamma, samples, tables, order, metric, fmt_,
           seed, config):
    """Run a verification suite; exit 0 iff every residual vanishes."""
    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    _need_minkowski(cfg, "verify")
    rows: List[dict] = []
    if suite in ("twists", "all"):
        rows += [dict(r, suite="twists") for r in _verify_twists(cfg, family, param, theta, tables)]
    if suite in ("hopf", "all"):
        rows += [dict(check=r["axiom"], generators=r["generators"], order=r["order"],
                      residual_norm=r["residual_ultra_norm"], suite="hopf", **{"pass": r["pass"]})
                 for r in _verify_hopf(cfg, basis, kappa)]
    if suite in ("dsr", "all"):
        rows += [dict(check=r["relation"], family=r["realization"], order=r["order"],
                      residual_norm=r["residual_ultra_norm"], suite="dsr", **{"pass": r["pass"]})
                 for r in _verify_dsr(cfg, realization, psi, gamma, samples)]
    cols = ["suite", "check", "family", "param", "generators", "order", "residual_norm", "pass"]
    emit(rows, cfg, cols)
    _finish(rows)


# star ------------------------------------------------------------------------


@main.command()
@click.argument("f")
@click.argument("g")
@click.option("--family", required=True)
@click.option("--param", default=None)
@click.option("--theta", default=None)
@common
@click.pass_context
def star(ctx, f, g, family, param, theta, order, metric, fmt_, seed, config):
    """Twisted star product f * g of two polynomials in x0..x3."""
    from .expr import parse_poly
    from .twist import star_product

    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    _need_minkowski(cfg, "star")
    tw = _twist(family, param, theta, cfg.h_order)
    out = star_product(tw, parse_poly(f, h_order=cfg.h_order), parse_poly(g, h_order=cfg.h_order))
    if cfg.format == "json":
        click.echo(json.dumps(out.to_json_obj(), sort_keys=True))
    else:
        click.echo(format_poly(out))


# coproduct -------------------------------------------------------------------


@main.command()
@click.argument("generator")
@click.option("--family", default=None, help="abelian, jordanian or theta twist")
@click.option("--param", default=None)
@click.option("--theta", default=None)
@click.option("--basis", default=None, type=click.Choice(["classical"]), help="kappa-Poincare classical basis")
@click.option("--antipode", is_flag=True, help="print the antipode instead")
@common
@click.pass_context
def coproduct(ctx, generator, family, param, theta, basis, antipode, order, metric, fmt_, seed, config):
    """Coproduct (or antipode) of a generator, twisted or in the classical kappa-Poincare basis."""
    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    _need_minkowski(cfg, "coproduct")
    if basis == "classical":
        from . import hopf

        spec = hopf.build_kappa_classical(cfg.h_order)
        table = spec.antipode if antipode else spec.coproduct
        generator = generator.replace("_", "")
        if generator not in table:
            raise click.UsageError(f"unknown generator {generator!r}; choose from {', '.join(spec.generators)}")
        click.echo(table[generator].format())
        return
    if not family:
        raise click.UsageError("give --family or --basis classical")
    from .twist import twisted_antipode, twisted_coproduct

    tw = _twist(family, param, theta, cfg.h_order)
    gen = _igl_generator(generator)
    w = twisted_antipode(tw, gen) if antipode else twisted_coproduct(tw, gen)
    click.echo(w.to_json() if cfg.format == "json" else format_weyl(w))


# rmatrix ---------------------------------------------------------------------


@main.command()
@click.option("--family", required=True)
@click.option("--param", default=None)
@click.option("--theta", default=None)
@click.option("--check-qybe", is_flag=True, help="also check the quantum Yang-Baxter equation")
@common
@click.pass_context
def rmatrix(ctx, family, param, theta, check_qybe, order, metric, fmt_, seed, config):
    """Classical r-matrix (the h-coefficient of R = F21 F^-1)."""
    from .twist import check_qybe as qybe, classical_r

    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    _need_minkowski(cfg, "rmatrix")
    tw = _twist(family, param, theta, cfg.h_order)
    r = classical_r(tw)
    click.echo(r.to_json() if cfg.format == "json" else format_weyl(r))
    if check_qybe:
        res = qybe(tw)
        rows = [{"check": "QYBE", "order": cfg.h_order, "residual_norm": _norm(res.valuation()), "pass": res.is_zero()}]
        emit(rows, cfg)
        _finish(rows)


# realization -----------------------------------------------------------------


@main.command()
@click.option("--family", required=True,
              type=click.Choice(["abelian", "jordanian", "natural", "noncovariant", "bicrossproduct", "hermitian",
                                 "minimal"]))
@click.option("--param", default=None, help="abelian s or jordanian r")
@click.option("--side", default="left", type=click.Choice(["left", "right"]))
@click.option("--psi", default=None)
@click.option("--gamma", default=None)
@common
@click.pass_context
def realization(ctx, family, param, side, psi, gamma, order, metric, fmt_, seed, config):
    """Heisenberg realization of the kappa-Minkowski coordinates."""
    from . import dsr
    from .twist import realize_coordinates

    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    _need_minkowski(cfg, "realization")
    if family in ("abelian", "jordanian"):
        if param is None:
            raise click.UsageError(f"{family} needs --param")
        xs = realize_coordinates(family, _fraction(param, "--param"), side, cfg.h_order)
        names = [f"x{mu}_star" for mu in range(4)]
    else:
        if family == "natural":
            real = dsr.realize_natural(cfg.h_order)
        elif family == "noncovariant":
            if not psi:
                raise click.UsageError("noncovariant needs --psi")
            real = dsr.realize_noncovariant(_fraction_list(psi, "--psi"), _fraction_list(gamma, "--gamma") or [0],
                                            cfg.h_order)
        else:
            real = dsr.realize_noncovariant(*dsr.example_params(family), h_order=cfg.h_order)
        xs = list(real.X) + list(real.P)
        names = [f"X^{mu}" for mu in range(4)] + [f"P_{mu}" for mu in range(4)]
    if cfg.format == "json":
        click.echo(json.dumps({n: json.loads(x.to_json()) for n, x in zip(names, xs)}, sort_keys=True))
    else:
        for n, x in zip(names, xs):
            click.echo(f"{n} = {format_weyl(x)}")


# phenomenology ---------------------------------------------------------------


def _model_options(f):
    for opt in reversed([
        click.option("--model", default="abelian",
                     help="abelian, jordanian, hermitian, abelian-hermitian, jordanian-hermitian, abelian-dsr, "
                          "magueijo-smolin or custom"),
        click.option("--param", default=None),
        click.option("--b1", default=None),
        click.option("--b2", default=None),
    ]):
        f = opt(f)
    return f


def _model(model, param, b1, b2) -> pheno.DelayModel:
    try:
        return pheno.resolve_model(model, param, None if b1 is None else _fraction(b1, "--b1"),
                                   None if b2 is None else _fraction(b2, "--b2"))
    except (ValueError, ZeroDivisionError) as e:
        raise click.UsageError(str(e)) from None


@main.command()
@_model_options
@click.option("--psi", default=None, help="psi Taylor coefficients (overrides --model)")
@click.option("--gamma", default=None, help="gamma Taylor coefficients")
@common
@click.pass_context
def dispersion(ctx, model, param, b1, b2, psi, gamma, order, metric, fmt_, seed, config):
    """Dispersion and delay coefficients b1, b2, B1, B2 (exact)."""
    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    if psi:
        dm = pheno.dispersion_series(_fraction_list(psi, "--psi"), _fraction_list(gamma, "--gamma") or [0], 2,
                                     "series", f"psi={psi};gamma={gamma or 0}")
    else:
        dm = _model(model, param, b1, b2)
    row = {"model": dm.family, "param": dm.param}
    row.update(dm.as_dict())
    emit([row], cfg, ["model", "param", "b1", "b2", "B1", "B2", "c1", "c2"])


@main.command()
@_model_options
@click.option("--E", "energy", type=float, default=None, help="photon energy in GeV (flat delay)")
@click.option("--l-mpc", type=float, default=None, help="distance in Mpc (flat delay)")
@click.option("--MQ", "mq", type=float, default=pheno.M_PLANCK_GEV, show_default=True, help="quantum gravity scale, GeV")
@click.option("--z", type=float, default=None, help="redshift (cosmological delay)")
@click.option("--dE", "de", type=float, default=None, help="observed energy difference in GeV (cosmological delay)")
@click.option("--form", default="energy", type=click.Choice(["energy", "momentum"]))
@common
@click.pass_context
def delay(ctx, model, param, b1, b2, energy, l_mpc, mq, z, de, form, order, metric, fmt_, seed, config):
    """Photon time delay: flat (--E, --l-mpc) or cosmological (--z, --dE), in seconds."""
    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    dm = _model(model, param, b1, b2)
    rows = []
    if z is not None:
        if de is None:
            raise click.UsageError("cosmological delay needs --dE")
        rows.append(pheno.delay_row(dm, E=de, z=z, delay_s=pheno.cosmological_delay(z, de, mq, dm)))
    if energy is not None or l_mpc is not None:
        if energy is None or l_mpc is None:
            raise click.UsageError("flat delay needs --E and --l-mpc")
        if energy <= 0 or l_mpc <= 0:
            raise click.UsageError("energies and distances must be positive")
        rows.append(pheno.delay_row(dm, E=energy, delay_s=pheno.time_delay(energy, l_mpc, mq, dm, form)))
    if not rows:
        raise click.UsageError("give --E and --l-mpc, or --z and --dE")
    emit(rows, cfg, pheno.ROW_COLUMNS)


@main.command()
@_model_options
@click.option("--baseline", default="mccf", type=click.Choice(sorted(pheno.BASELINES)))
@click.option("--ratio", type=float, default=None, help="use M_Q/M_Pl > ratio as the |B1| = 1 baseline")
@click.option("--kind", default="auto", type=click.Choice(["auto", "linear", "quadratic"]))
@click.option("--parameter", is_flag=True, help="print the parameter bound of the family instead")
@common
@click.pass_context
def bounds(ctx, model, param, b1, b2, baseline, ratio, kind, parameter, order, metric, fmt_, seed, config):
    """Lower bounds on M_Q by |B1| (or sqrt|B2|) scaling of a baseline limit."""
    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    if parameter:
        fam = model.split("-")[0]
        try:
            rel, val = pheno.parameter_bound(fam)
        except ValueError as e:
            raise click.UsageError(str(e)) from None
        emit([{"model": fam, "relation": rel, "bound": val, "beta_cal": pheno.BETA_CAL}], cfg)
        return
    if param is None and model in ("abelian", "jordanian", "hermitian"):
        raise click.UsageError(f"model {model} needs --param")
    dm = _model(model, param, b1, b2)
    inp = pheno.BoundInput.from_ratio(ratio) if ratio else pheno.BASELINES[baseline]
    res = pheno.bound_MQ(inp, dm, kind)
    row = pheno.delay_row(dm, bound_GeV=res.bound_GeV)
    emit([row], cfg, pheno.ROW_COLUMNS)


# schouten --------------------------------------------------------------------


@main.command()
@common
@click.pass_context
def schouten(ctx, order, metric, fmt_, seed, config):
    """Schouten brackets of the Jordanian and kappa-Poincare r-matrices."""
    from . import schouten as sch

    cfg = _cfg(ctx, order, metric, fmt_, seed, config)
    lie_h = sch.poincare(cfg.metric)
    lie = sch.real_form(lie_h)
    r = sch.kappa_r_matrix(lie, cfg.metric)
    lhs = sch.schouten(r, r)
    rhs = sch.lorentz_momentum_trivector(lie, cfg.metric)
    igl_l = sch.igl_affine()
    d = sch.dilatation(igl_l)
    dp = sch.Multivector.wedge(igl_l, [d, sch.vec(igl_l, (1, "P0"))])
    rows = [
        {"check": "[[D^P0, D^P0]] = 0", "pass": sch.schouten(dp, dp).is_zero()},
        {"check": "[[N_i^P^i, N_j^P^j]] = M_{mu nu}^P^mu^P^nu", "pass": (lhs - rhs).is_zero()},
    ]
    emit(rows, cfg)
    _finish(rows)


# ---------------------------------------------------------------------------


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point returning the exit code instead of exiting."""
    try:
        main.main(args=list(argv) if argv is not None else None, standalone_mode=False, prog_name="kappamink")
        return 0
    except CheckFailed:
        return 1
    except click.exceptions.Abort:
        return 2
    except click.ClickException as e:
        e.show()
        return 2
    except (KappaError, ValueError) as e:
        click.echo(f"Error: {e}", err=True)
        return 2


def entry() -> None:
    sys.exit(run())
