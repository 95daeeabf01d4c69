"""Command-line front end: dheis {sweep-dispersion | state | verify | spectrum}.

Emits deterministic machine-readable tables (CSV with a '#' metadata line, or
JSON mirroring the same schema).  Exit codes: 0 ok, 1 invariant failure,
2 usage, 3 convergence failure (partial output removed), 4 conditioning.
"""

import argparse
import cmath
import json
import math
import os
import sys

import numpy as np

from . import aes_series, dispersion, paragrassmann, pseudo_hermitian
from .deformed_algebra import (DeformationParams, RealizationKind,
                               build_realization, commutator_residual_tilde,
                               commutator_residual_uzp)
from .errors import (BadParams, DeformedHeisenbergError, IllConditioned,
                     NotConverged, NotPositiveDefinite)
from .fock_core import (TruncationConfig, annihilation, coherent_state,
                        creation, guarded_norm, normalize)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3
EXIT_CONDITIONING = 4


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, complex):
        return f"{_fmt(v.real)}{'+' if v.imag >= 0 else '-'}{_fmt(abs(v.imag))}j"
    return str(v)


def _jsonable(v):
    # complex has no JSON form; everything else passes through natively
    if isinstance(v, complex):
        return _fmt(v)
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _meta(args) -> dict:
    keep = ("subcommand delta phi beta theta gamma eta_phase z p var vmin "
            "vmax steps dim guard tol format out suite nu".split())
    out = {}
    for k in keep:
        if hasattr(args, k):
            v = getattr(args, k)
            out[k.replace("vmin", "min").replace("vmax", "max")] = v
    return out


class _Writer:
    """Streams rows to --out (or stdout); removes partial files on abort."""

    def __init__(self, path, fmt, meta, header):
        self.path = path
        self.fmt = fmt
        self.meta = meta
        self.header = header
        self.rows = []
        self.fh = open(path, "w") if path else sys.stdout
        if fmt == "csv":
            kv = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(meta.items()))
            self.fh.write(f"# {kv}\n")
            self.fh.write(",".join(header) + "\n")

    def row(self, values):
        if self.fmt == "csv":
            self.fh.write(",".join(_fmt(v) for v in values) + "\n")
        else:
            self.rows.append([_jsonable(v) for v in values])

    def finish(self, diagnostics=None):
        if self.fmt == "csv":
            if diagnostics:
                for k, v in sorted(diagnostics.items()):
                    self.fh.write(f"# {k}={_fmt(v)}\n")
        else:
            doc = {"meta": {k: _jsonable(v) for k, v in self.meta.items()},
                   "header": self.header, "rows": self.rows}
            if diagnostics:
                doc["diagnostics"] = {k: _jsonable(v) for k, v in
                                      sorted(diagnostics.items())}
            json.dump(doc, self.fh, indent=1, sort_keys=True)
            self.fh.write("\n")
        if self.path:
            self.fh.close()

    def abort(self):
        if self.path:
            self.fh.close()
            if os.path.exists(self.path):
                os.remove(self.path)


def _cfg(args) -> TruncationConfig:
    return TruncationConfig(dim=args.dim, guard=args.guard)


def _check_common(args) -> str:
    if args.dim < 8:
        return "dim must be >= 8"
    if getattr(args, "steps", 2) < 2:
        return "steps must be >= 2"
    if hasattr(args, "vmin") and not (args.vmin < args.vmax):
        return "min must be < max"
    return ""


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_sweep_dispersion(args) -> int:
    grid = np.linspace(args.vmin, args.vmax, args.steps)
    header = ["grid_value", "var_x_mus", "var_p_mus", "var_x_def",
              "var_p_def", "product_def", "srur_bound", "validity_flag"]
    w = _Writer(args.out, args.format, _meta(args), header)
    try:
        for g in grid:
            d, f = (args.delta, g) if args.var == "phi" else (g, args.phi)
            vx0, vp0 = dispersion.mus_dispersions(d, f)
            stats = dispersion.perturbed_quadrature_stats(
                d, f, args.beta, args.theta, args.z, args.p)
            m = dispersion.perturbed_moments(
                d, f, args.beta, args.theta, args.z, args.p)
            ok = abs(m.epsilon) <= dispersion.VALIDITY_EPSILON_THRESHOLD
            w.row([float(g), vx0, vp0, stats.var_x, stats.var_p,
                   stats.product, stats.srur_bound, ok])
    except NotConverged as e:
        w.abort()
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE
    w.finish()
    return EXIT_OK


def cmd_state(args) -> int:
    if args.gamma != 0:
        print("error: state emission covers the nu=0 squeezed family; "
              "use --gamma 0", file=sys.stderr)
        return EXIT_USAGE
    params = DeformationParams.from_polar(z=args.z, p=args.p, delta=args.delta,
                                          phi=args.phi, beta=args.beta,
                                          theta=args.theta, gamma=0.0,
                                          eta_phase=0.0)
    header = ["n", "re_c", "im_c", "abs_sq"]
    w = _Writer(args.out, args.format, _meta(args), header)
    try:
        n_max = args.dim - 1
        if params.z == 0:
            vec = aes_series.squeezed_symbol_coefficients(params.lam, params.mu,
                                                          n_max)
            c, tail = vec.c, 0.0
        else:
            vec, diag = aes_series.fock_coefficients(params, n_max, tol=args.tol)
            c, tail = vec.c, diag.tail_estimate
        c0, norm_diag = aes_series.normalization_c0(params, n_max=max(96, n_max),
                                                    tol=min(args.tol, 1e-12))
        cn = c0 * c
        for n in range(len(cn)):
            w.row([n, cn[n].real, cn[n].imag, abs(cn[n]) ** 2])
    except NotConverged as e:
        w.abort()
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE
    w.finish(diagnostics={"c0": c0, "tail_estimate": max(tail,
                                                         norm_diag.tail_estimate)})
    return EXIT_OK


def _check_xp(cfg):
    X = dispersion.position_operator(cfg)
    P = dispersion.momentum_operator(cfg)
    return guarded_norm(X @ P - P @ X - 1j * np.eye(cfg.dim), cfg)


def _check_tilde(kind, z, cfg):
    params = DeformationParams(z=z, p=0.0, lam=0, mu=0, nu=0)
    triple = build_realization(kind, params, cfg)
    return max(commutator_residual_tilde(triple, params, cfg))


def _check_uzp(p, cfg):
    params = DeformationParams(z=0.02, p=p, lam=0, mu=0, nu=0)
    triple = build_realization(RealizationKind.Uzp_One, params, cfg)
    return max(commutator_residual_uzp(triple, params, cfg))


def _check_routes():
    params = DeformationParams(z=0.5, p=0.0, lam=0.7 + 0.2j, mu=0.3 - 0.1j,
                               nu=0)
    _, diag = aes_series.fock_coefficients(params, 10, cross_check=True)
    return diag.tail_estimate


def _check_eigenstate(cfg):
    sp = DeformationParams.from_polar(z=0.01, p=0.0, delta=0.4, phi=0.9,
                                      beta=1.2, theta=0.4, gamma=0.0,
                                      eta_phase=0.0)
    psi = aes_series.deformed_squeezed_state(sp, cfg)
    op = aes_series.aes_operator(sp, cfg)
    return float(np.linalg.norm((op @ psi - sp.lam * psi)[:cfg.kept]))


def _check_ode():
    spec = paragrassmann.GrassmannODESpec(lam=2, mu=3, nu=1, k0=3)
    worst = 0.0
    for s in paragrassmann.solve_appendix_a(spec):
        r = paragrassmann.residual_check(s, spec)
        worst = max(worst, 0.0 if r.is_zero() else 1.0)
    return worst


def _check_gamma(cfg):
    worst = 0.0
    for k in range(4):
        for l in range(4):
            closed = dispersion.gamma_element(k, l, 0.3, 0.7, 1.0, 0.2)
            worst = max(worst, abs(closed - _gamma_matrix(k, l, 0.3, 0.7, 1.0,
                                                          0.2, cfg)))
    return worst


def _check_mus():
    vx, vp = dispersion.mus_dispersions(0.5, math.pi / 2)
    return abs(vx - 5 / 6) + abs(vp - 5 / 6)


def _verify_checks(args):
    """(suite, name, residual, bound) rows for every invariant check.

    A check that raises is reported as failed (residual inf) instead of
    killing the rest of the report; small boxes trip the tail guards.
    """
    cfg = _cfg(args)
    checks = [
        ("fock", "canonical_xp_commutator", lambda: _check_xp(cfg), 1e-10),
        ("fock", "coherent_normalization",
         lambda: abs(np.linalg.norm(coherent_state(1.0, cfg)) - math.e ** 0.5),
         1e-8),
    ]
    for z in (0.0, 0.02, -0.02):
        for kind in (RealizationKind.TildeZ0_Cas1,
                     RealizationKind.TildeZ0_Cas2):
            checks.append(("algebra", f"tilde_residual_{kind.name}_z{z}",
                           lambda kind=kind, z=z: _check_tilde(kind, z, cfg),
                           1e-8))
    for p in (0.1, 0.4):
        checks.append(("algebra", f"uzp_residual_p{p}",
                       lambda p=p: _check_uzp(p, cfg), 1e-7))
    checks += [
        ("series", "coefficient_route_agreement", _check_routes, 1e-7),
        ("series", "squeezed_eigenstate_residual",
         lambda: _check_eigenstate(cfg), 1e-7),
        ("paragrassmann", "exact_ode_residual", _check_ode, 0.5),
        ("dispersion", "gamma_closed_vs_matrix", lambda: _check_gamma(cfg),
         1e-8),
        ("dispersion", "mus_point", _check_mus, 1e-12),
    ]
    # reference box for the pseudo-Hermitian bounds; eta's condition number
    # grows fast with dim, so the stated tolerances are tied to this size
    ref = TruncationConfig(48, 12)
    sysm = pseudo_hermitian.build_system(0.2, 0.02, ref)
    checks += [
        ("pseudo", "pseudo_hermiticity",
         lambda: pseudo_hermitian.pseudo_hermiticity_residual(sysm), 1e-7),
        ("pseudo", "rho_g_unitarity",
         lambda: pseudo_hermitian.unitarity_check(sysm), 1e-6),
        ("pseudo", "commutators",
         lambda: max(pseudo_hermitian.commutator_checks(sysm)), 1e-8),
    ]
    rows = []
    for suite, name, thunk, bound in checks:
        try:
            r = float(thunk())
        except DeformedHeisenbergError:
            r = math.inf
        rows.append((suite, name, r, bound))
    return rows


def _gamma_matrix(k, l, delta, phi, beta, theta, cfg):
    from .fock_core import displacement_operator, squeeze_operator, vacuum
    S = squeeze_operator(-math.atanh(delta) * cmath.exp(1j * phi), cfg)
    D = displacement_operator(beta * cmath.exp(1j * theta)
                              / math.sqrt(1 - delta * delta), cfg)
    v = S @ (D @ vacuum(cfg))
    ad = creation(cfg)
    a = annihilation(cfg)
    return complex(v.conj() @ (np.linalg.matrix_power(ad, k)
                               @ np.linalg.matrix_power(a, l) @ v))


def cmd_verify(args) -> int:
    try:
        rows = _verify_checks(args)
    except (IllConditioned, NotPositiveDefinite) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONDITIONING
    except NotConverged as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE
    if args.suite:
        rows = [r for r in rows if r[0] == args.suite]
        if not rows:
            print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
            return EXIT_USAGE
    report = {"meta": {k: _fmt(v) if isinstance(v, float) else v
                       for k, v in _meta(args).items()},
              "checks": [{"suite": s, "name": n, "residual": _fmt(float(r)),
                          "bound": _fmt(b), "passed": bool(r <= b)}
                         for s, n, r, b in rows]}
    report["passed"] = all(c["passed"] for c in report["checks"])
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["passed"] else EXIT_INVARIANT


def cmd_spectrum(args) -> int:
    cfg = _cfg(args)
    mu = args.delta * cmath.exp(1j * args.phi)
    header = ["n", "h_eig", "h_deviation", "ht_eig", "ht_deviation"]
    w = _Writer(args.out, args.format, _meta(args), header)
    try:
        sysm = pseudo_hermitian.build_system(mu, args.z, cfg)
        rep_h = pseudo_hermitian.spectrum_report(sysm, "pseudo")
        rep_ht = pseudo_hermitian.spectrum_report(sysm, "hermitian")
    except (IllConditioned, NotPositiveDefinite) as e:
        w.abort()
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONDITIONING
    for n in range(cfg.dim):
        eh = rep_h.eigenvalues[n].real
        et = rep_ht.eigenvalues[n].real
        w.row([n, eh, abs(eh - n), et, abs(et - n)])
    w.finish(diagnostics={
        "eta_condition": sysm.eta_condition,
        "h_max_deviation": rep_h.max_deviation_from_integers,
        "ht_max_deviation": rep_ht.max_deviation_from_integers})
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sp):
    sp.add_argument("--delta", type=float, default=0.5)
    sp.add_argument("--phi", type=float, default=0.0)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--gamma", type=float, default=0.0)
    sp.add_argument("--eta-phase", dest="eta_phase", type=float, default=0.0)
    sp.add_argument("--z", type=float, default=0.001)
    sp.add_argument("--p", type=float, default=0.0)
    sp.add_argument("--dim", type=int, default=64)
    sp.add_argument("--guard", type=int, default=-1)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None)


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="dheis",
        description="Deformed Heisenberg algebra states: data tables and checks")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("sweep-dispersion",
                        help="variance table over a phi or delta grid")
    _add_common(sp)
    sp.add_argument("--var", choices=("phi", "delta"), default="phi")
    sp.add_argument("--min", dest="vmin", type=float, default=-math.pi)
    sp.add_argument("--max", dest="vmax", type=float, default=math.pi)
    sp.add_argument("--steps", type=int, default=200)
    sp.set_defaults(func=cmd_sweep_dispersion)

    sp = sub.add_parser("state", help="Fock amplitudes of a deformed state")
    _add_common(sp)
    sp.set_defaults(func=cmd_state)

    sp = sub.add_parser("verify", help="run the invariant suites")
    _add_common(sp)
    sp.add_argument("--suite", default=None,
                    help="restrict to one suite (fock, algebra, series, "
                         "paragrassmann, dispersion, pseudo)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("spectrum", help="H and H~ spectra with deviations")
    _add_common(sp)
    sp.set_defaults(func=cmd_spectrum)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    msg = _check_common(args)
    if msg:
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except BadParams as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotConverged as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (IllConditioned, NotPositiveDefinite) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONDITIONING
    except DeformedHeisenbergError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
