"""Command-line front end.

Subcommands write one report (JSON, DOT, CSV or Markdown) to --out or stdout.
Exit codes: 0 success, 2 bad configuration, 3 a series failed to stabilise,
4 an asserted identity was found to fail (the report is still written),
1 any other error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import pickle
import sys
from fractions import Fraction

from . import __version__, eisenstein, kernels
from .algebra import AlgebraError, Ideal
from .eisenstein import EisensteinError
from .fq import field

EXIT_OK, EXIT_ERROR, EXIT_CONFIG, EXIT_STABILISATION, EXIT_FALSIFIED = 0, 1, 2, 3, 4
FORMATS = ("json", "dot", "csv", "md")


class ConfigError(ValueError):
    pass


# --- configuration --------------------------------------------------------------------

def parse_level(q: int, s: str, allow_one: bool = True) -> Ideal:
    try:
        I = Ideal.parse(q, s)
    except (AlgebraError, ValueError, KeyError) as exc:
        raise ConfigError(f"cannot parse level {s!r}: {exc}") from exc
    if I.degree == 0 and not allow_one:
        raise ConfigError("the level must be a non-constant polynomial")
    if not I.squarefree:
        raise ConfigError(f"level {I} is not square-free")
    return I


def check_q(q: int):
    try:
        field(q)
    except Exception as exc:
        raise ConfigError(f"q={q} is not a supported prime power: {exc}") from exc
    if q > 9:
        raise ConfigError("q must be at most 9")


def config_of(args) -> dict:
    skip = {"func", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def header(args) -> dict:
    return {"version": __version__, "config": config_of(args)}


# --- output helpers ----------------------------------------------------------------------

def to_csv(rows: list) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    return buf.getvalue()


def md_table(rows: list) -> str:
    if not rows:
        return "_no rows_\n"
    cols = list(rows[0])
    cell = lambda v: (json.dumps(v) if isinstance(v, (dict, list)) else str(v)).replace("|", "\\|")
    out = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        out.append("| " + " | ".join(cell(r.get(c, "")) for c in cols) + " |")
    return "\n".join(out) + "\n"


def md_config(args) -> str:
    h = header(args)
    lines = [f"- version: `{h['version']}`"]
    lines += [f"- {k}: `{v}`" for k, v in h["config"].items()]
    return "\n".join(lines) + "\n"


def render(args, title: str, payload: dict, rows: list, dot: str = None, sections=None) -> str:
    fmt = args.format
    if fmt == "json":
        return json.dumps({**header(args), **payload}, indent=2) + "\n"
    if fmt == "csv":
        return to_csv(rows)
    if fmt == "dot":
        if dot is None:
            raise ConfigError("--format dot is only available for the graph command")
        return dot
    parts = [f"# {title}\n", "## Configuration\n", md_config(args), "## Results\n", md_table(rows)]
    for name, body in sections or []:
        parts += [f"\n## {name}\n", body]
    return "\n".join(parts)


# --- commands ----------------------------------------------------------------------------

def cmd_graph(args):
    from .quotient import build_quotient

    I = parse_level(args.q, args.I)
    g = build_quotient(I, depth=args.depth)
    on_ray = g.cusp_of_edge()
    rows = [{"edge": e.id, "n": e.n, "origin": e.o, "terminus": e.t, "stab": e.stab, "mu": str(e.mu),
             "cusp": g.F.fmt(on_ray[e.id]) if e.id in on_ray else "", "rep": str(e.rep)} for e in g.edges]
    return render(args, f"Quotient graph for level {I}", {"graph": g.to_json()}, rows, g.to_dot()), False


def _forms(I):
    from .forms import cusp_form_space, eigenforms
    from .quotient import build_quotient

    g = build_quotient(I)
    S = cusp_form_space(g)
    return g, S, (eigenforms(S) if S.dim else [])


def cmd_forms(args):
    from .forms import fourier_properties, harmonic_residuals

    I = parse_level(args.q, args.I)
    g, S, efs = _forms(I)
    rows, datas = [], []
    for i, f in enumerate(efs):
        data = f.to_json(args.fourier_degree)
        fails = fourier_properties(f, args.fourier_degree)
        data["fourier_identities_failing"] = {k: v for k, v in fails.items() if v}
        datas.append(data)
        rows.append({"form": i, "field": data["field"], "eigenvalues": data["eigenvalues"],
                     "harmonic": not any(harmonic_residuals(f.form)),
                     "fourier_identities_failing": sorted(k for k, v in fails.items() if v)})
    payload = {"dimension": S.dim, "basis": [b.to_json() for b in S.basis], "eigenforms": datas}
    return render(args, f"Cusp forms of level {I}", payload, rows), False


def cmd_hecke(args):
    from .forms import hecke_operator, matmul, small_primes

    I = parse_level(args.q, args.I)
    F = I.F
    g, S, _ = _forms(I)
    primes = [F.pmonic(F.parse(p)) for p in args.P] if args.P else small_primes(F, 3) + list(I.primes)
    mats = {P: hecke_operator(P, S) for P in primes}
    commute = all(matmul(mats[a], mats[b]) == matmul(mats[b], mats[a]) for a in mats for b in mats)
    rows = [{"P": F.fmt(P), "matrix": [[str(x) for x in r] for r in M]} for P, M in mats.items()]
    payload = {"dimension": S.dim, "matrices": {F.fmt(P): [[str(x) for x in r] for r in M] for P, M in mats.items()},
               "commute": commute}
    return render(args, f"Hecke matrices at level {I}", payload, rows), not commute


def cmd_eisenstein(args):
    from .eisenstein import (E_reduced, eisenstein_E, functional_equation_residual, lambda_completed)
    from .quotient import build_quotient

    I = parse_level(args.q, args.I)
    q = I.q
    g = build_quotient(I)
    edges = g.edges if args.edges == "all" else [e for e in g.edges if e.n <= g.stable_from + 1]
    rows = []
    bad = False
    for e in edges:
        lam = lambda_completed(e.rep, q, args.completion)
        lam_p = lambda_completed(e.rep, q, "plain")
        res = functional_equation_residual(lam, q)
        res_p = functional_equation_residual(lam_p, q)
        bad = bad or not res.is_zero()
        row = {"edge": e.id, "n": e.n, "rep": str(e.rep), "Lambda": str(lam),
               "fe_residual": "0" if res.is_zero() else str(res),
               "fe_residual_plain_completion": "0" if res_p.is_zero() else str(res_p),
               "residue_at_1/q": str(lam.residue_at(Fraction(1, q)))}
        if I.degree:
            row["E_I_origin"] = str(eisenstein_E(e.rep.origin, I).value)
        rows.append(row)
    return render(args, f"Eisenstein series on edges of level {I}", {"edges": rows}, rows), bad


def _pair_forms(args):
    from .forms import cusp_form_space, eigenforms
    from .quotient import build_quotient

    q = args.q
    I1, I2 = parse_level(q, args.I1, False), parse_level(q, args.I2, False)
    F = I1.F
    if F.pgcd(I1.gen, I2.gen) != (1,):
        raise ConfigError("I1 and I2 must be coprime")
    I = Ideal(q, F.pmul(I1.gen, I2.gen))
    if not I.squarefree:
        raise ConfigError("I1 * I2 must be square-free")
    fs = eigenforms(cusp_form_space(build_quotient(I1)), tag="a")
    gs = eigenforms(cusp_form_space(build_quotient(I2)), tag="b")
    return I1, I2, I, build_quotient(I), fs, gs


def cmd_lfun(args):
    from .lfunctions import (dirichlet_series, l_prime_at_zero, phi_function, phi_series_residual,
                             rankin_identity_check)

    I1, I2, I, g, fs, gs = _pair_forms(args)
    rows, reports = [], []
    bad = False
    for f in fs:
        for h in gs:
            ds = dirichlet_series(f, h, args.N)
            rk = rankin_identity_check(f, h, g, args.N, ds)
            phi = phi_function(f, h, g, args.completion)
            sv = l_prime_at_zero(phi)
            fe = phi.fe_residual()
            series_ok = not any(phi_series_residual(phi, ds))
            bad = bad or not (fe.is_zero() and ds.ok and rk.to_json()["corrected_residual_zero"] and series_ok)
            reports.append({"f": f.field_name(), "g": h.field_name(), "dirichlet": ds.to_json(), "rankin": rk.to_json(),
                            "phi": phi.to_json(), "phi_matches_L_series": series_ok, "special_value": sv.to_json()})
            rows.append({"f": f.field_name(), "g": h.field_name(), "fe_residual": "0" if fe.is_zero() else str(fe),
                         "phi_at_0": str(sv.phi0), "L_prime_0": str(sv.Lprime0),
                         "rankin_literal_zero": rk.to_json()["literal_residual_zero"],
                         "rankin_corrected_zero": rk.to_json()["corrected_residual_zero"]})
    payload = {"level": str(I), "N": args.N, "pairs": reports}
    return render(args, f"Rankin-Selberg data for levels {I1}, {I2}", payload, rows), bad


def cmd_units(args):
    from .ktheory import build_xi, class_group_bound, decompose_simple_units, divisor_delta_I, slope_table

    I = parse_level(args.q, args.I, False)
    F = I.F
    f0 = F.pmonic(F.parse(args.f0)) if args.f0 else None
    st = slope_table(I)
    dec = decompose_simple_units(I, f0)
    xi = build_xi(I, dec=dec)
    cg = class_group_bound(I)
    dd = divisor_delta_I(I)
    rows = [{"cusp": r["cusp"], "scale": r["scale"], "order": r["order"], "order_rho": r["order_rho"],
             "slope": r["slope"]} for r in st.to_json()["rows"]]
    payload = {"orders": st.to_json(), "divisor_delta_I": dd.to_json(), "decomposition": dec.to_json(),
               "xi": xi.to_json(), "class_group": cg.to_json()}
    sections = [("Decomposition", md_table([u.to_json() for u in dec.units])),
                ("Checks", md_table([{"check": k, "holds": v} for k, v in dec.checks.items()])),
                ("Class group", md_table([cg.to_json()]))]
    return render(args, f"Modular units of level {I}", payload, rows, sections=sections), not xi.six_term_ok


def cmd_verify(args):
    from .ktheory import search_levels, verify_regulator_identity

    I1, I2 = parse_level(args.q, args.I1, False), parse_level(args.q, args.I2, False)
    F = I1.F
    f0 = F.pmonic(F.parse(args.f0)) if args.f0 else None
    rep = verify_regulator_identity(I1, I2, f0)
    if args.search:
        rep.search = search_levels(max_total_deg=args.search_degree)
    data = rep.to_json()
    rows = [{"f": p["f"], "g": p["g"], "lhs": p["lhs"], "rhs": p["rhs"], "lhs_over_rhs": p["lhs_over_rhs"],
             "matched_sign": p["matched_sign"], "sign_with_(q+1)/2": p["sign_with_constant_(q+1)/2"],
             "bridge_phi0_over_integral": p["bridge"]["phi0_over_log_integral"]} for p in data["pairs"]]
    summary = [{"kappa": rep.kappa, "C": rep.C, "class_group_bound": rep.bound.bound,
                "printed_identity_holds": rep.holds, "holds_with_(q+1)/2": rep.holds_corrected,
                "global_sign": data["global_sign"], "note": rep.note or ""}]
    sections = [("Summary", md_table(summary)),
                ("Bridge constant for Phi(0)", md_table([{"f": p["f"], "g": p["g"], **p["bridge"]} for p in data["pairs"]])),
                ("Cocycle", md_table([{"f0": F.fmt(rep.xi.f0), "total_divisor": data["xi"]["total_divisor"],
                                      "with_printed_sign": data["xi"]["printed_sign_total_divisor"]}]))]
    if rep.search:
        sections.append(("Search for the smallest coprime levels with newforms", md_table(rep.search[:20])))
    return render(args, f"Regulator identity for levels {I1}, {I2}", data, rows, sections=sections), not rep.holds


# --- entry point ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drinfeld", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--q", type=int, default=2)
        sp.add_argument("--format", choices=FORMATS, default="json")
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = add("graph", cmd_graph, "quotient graph Gamma_0(I) \\ T")
    sp.add_argument("--I", default="1")
    sp.add_argument("--depth", type=int, default=None)
    sp = add("forms", cmd_forms, "cusp forms and eigenforms")
    sp.add_argument("--I", required=True)
    sp.add_argument("--fourier-degree", type=int, default=3)
    sp = add("hecke", cmd_hecke, "Hecke matrices")
    sp.add_argument("--I", required=True)
    sp.add_argument("--P", action="append", help="prime (repeatable)")
    sp = add("eisenstein", cmd_eisenstein, "completed Eisenstein series per edge class")
    sp.add_argument("--I", default="1")
    sp.add_argument("--edges", choices=("core", "all"), default="core")
    sp.add_argument("--completion", choices=("symmetric", "plain"), default="symmetric")
    sp = add("lfun", cmd_lfun, "Rankin-Selberg Phi(s) and L'(0)")
    sp.add_argument("--I1", required=True)
    sp.add_argument("--I2", required=True)
    sp.add_argument("--N", type=int, default=6)
    sp.add_argument("--completion", choices=("symmetric", "plain"), default="symmetric")
    sp = add("units", cmd_units, "cusp orders, simple units, class-group bound")
    sp.add_argument("--I", required=True)
    sp.add_argument("--f0", default=None)
    sp = add("verify", cmd_verify, "end-to-end regulator identity")
    sp.add_argument("--I1", required=True)
    sp.add_argument("--I2", required=True)
    sp.add_argument("--N", type=int, default=6)
    sp.add_argument("--f0", default=None)
    sp.add_argument("--search", action="store_true", help="include the search for the smallest level pair")
    sp.add_argument("--search-degree", type=int, default=6)
    return p


def _cache_path():
    d = os.environ.get("DRINFELD_CACHE_DIR")
    return os.path.join(d, "eisenstein.pkl") if d else None


def _load_cache():
    path = _cache_path()
    if path and os.path.exists(path):
        with open(path, "rb") as fh:
            e, f = pickle.load(fh)
        eisenstein._E_CACHE.update(e)
        eisenstein._F_CACHE.update(f)


def _save_cache():
    path = _cache_path()
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "wb") as fh:
            pickle.dump((eisenstein._E_CACHE, eisenstein._F_CACHE), fh)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        check_q(args.q)
        _load_cache()
        text, falsified = args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EisensteinError as exc:
        print(f"stabilisation failure: {exc}", file=sys.stderr)
        return EXIT_STABILISATION
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _save_cache()
    return EXIT_FALSIFIED if falsified else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
