"""Algebra eigenstates of the deformed oscillator: series amplitudes and states.

The eigenstates of  e^{z a+} a + mu a+ + nu e^{z a+}  are built two independent
ways: (i) exact finite-sum Fock amplitudes c_n (polynomials of degree n-1 in z),
and (ii) the nilpotent operator exponential acting on the vacuum.  First-order
perturbed squeezed/coherent states and the two-parameter Bargmann symbol live
here as well.
"""

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from . import _gaussian
from .deformed_algebra import DeformationParams
from .errors import BadParams, NonNormalizable, NotConverged, PhaseWindow, BranchCut
from .fock_core import (FockVector, TruncationConfig, annihilation,
                        check_tail, creation, displacement_operator, norm,
                        normalize, squeeze_operator, vacuum)


@dataclass(frozen=True)
class SeriesDiagnostics:
    """Convergence report for an adaptively truncated series."""

    terms_used: int
    tail_estimate: float
    converged: bool


@dataclass(frozen=True)
class CoefficientVector:
    """Fock amplitudes c_n (c[0] = c0_fixed, the arbitrary overall constant)."""

    c: np.ndarray
    params: DeformationParams
    c0_fixed: complex = 1.0


# ---------------------------------------------------------------------------
# upsilon table and amplitude polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UpsilonTable:
    """Exact integers upsilon[m][j] (0 <= m <= n, 0 <= j <= n-m) defined by

        k^{n-m}/(k-m)!  =  sum_j upsilon[m][j] / (k-m-j)!   for all k >= m,

    where 1/(negative)! = 0.
    """

    n: int
    rows: tuple

    def identity_residual(self, m: int, k: int) -> Fraction:
        """LHS - RHS of the defining identity at integer k >= m (exact rational)."""
        d = k - m
        lhs = Fraction(k ** (self.n - m), factorial(d))
        rhs = sum((Fraction(self.rows[m][j], factorial(d - j))
                   for j in range(min(d, self.n - m) + 1)), Fraction(0))
        return lhs - rhs


@lru_cache(maxsize=None)
def upsilon_table(n: int) -> UpsilonTable:
    """Solve for the upsilon integers by matching the identity at k = m..n;
    the system is triangular in j."""
    if n < 0:
        raise BadParams("n must be >= 0")
    rows = []
    for m in range(n + 1):
        d = n - m
        v = []
        for i in range(d + 1):          # match at k = m + i
            k = m + i
            lhs = Fraction(k ** d, factorial(i))
            acc = sum((v[j] * Fraction(1, factorial(i - j)) for j in range(i)),
                      Fraction(0))
            val = lhs - acc
            if val.denominator != 1:
                raise ArithmeticError(f"upsilon({n})[{m}][{i}] not integral: {val}")
            v.append(val)
        rows.append(tuple(int(x) for x in v))
    return UpsilonTable(n=n, rows=tuple(rows))


@lru_cache(maxsize=None)
def amplitude_coefficients(n: int):
    """Integer coefficients K of the scaled amplitude

        c_n * sqrt(n!) / C_0  =  sum_{s,t} K[(s,t)] lam^t mu^s z^{n-2s-t},

    obtained by expanding the (X, Y) double sum exactly.  The z-degree of every
    monomial is n - 2s - t >= 0 and the pure-z term is absent for n >= 1 (the
    amplitude is a z-polynomial of degree n-1).
    """
    if n == 0:
        return (((0, 0), 1),)
    ups = upsilon_table(n).rows
    out = {}
    for s in range(n + 1):
        for t in range(n + 1 - s):
            if n - 2 * s - t < 0:
                continue
            tot = 0
            for m in range(min(s, n) + 1):
                j = s + t - m
                if 0 <= j <= n - m:
                    tot += comb(n, m) * (-1) ** (n - m) * ups[m][j] * comb(s + t - m, t)
            val = (-1) ** t * tot
            if val:
                out[(s, t)] = val
    assert (0, 0) not in out, "pure-z monomial must cancel for n >= 1"
    return tuple(sorted(out.items()))


def _scaled_amplitude(n: int, lam: complex, mu: complex, z: float) -> complex:
    """c_n * sqrt(n!) with C_0 = 1."""
    tot = 0j
    for (s, t), K in amplitude_coefficients(n):
        tot += K * lam ** t * mu ** s * z ** (n - 2 * s - t)
    return tot


def _amplitude_iter(params: DeformationParams, n_max: int):
    """Yield c_0, c_1, ... lazily; each c_n costs an exact-integer table whose
    price grows quickly with n, so adaptive consumers should stop early."""
    lam, mu, z = params.lam, params.mu, params.z
    sqrt_fact = 1.0
    for n in range(n_max + 1):
        if n > 0:
            sqrt_fact *= math.sqrt(n)
        yield _scaled_amplitude(n, lam, mu, z) / sqrt_fact


def _amplitudes(params: DeformationParams, n_max: int) -> np.ndarray:
    """c_n for n = 0..n_max with C_0 = 1 (finite-sum route, exact)."""
    return np.fromiter(_amplitude_iter(params, n_max), dtype=complex,
                       count=n_max + 1)


# ---------------------------------------------------------------------------
# the double-sum route (independent cross-check of the finite-sum amplitudes)
# ---------------------------------------------------------------------------

# Float-route cap on |Y| = |mu/z^2 - lam/z|.  The k-sum peaks at k ~ |Y| with
# terms ~ Y^k/k!; in double precision Y**k overflows once k ln|Y| > 709 and
# 1/k! underflows to zero near k ~ 280, so stay well below both.
_FLOAT_Y_MAX = 80.0


def _phase_window_check(params: DeformationParams) -> None:
    if params.mu == 0 and params.lam != 0 and params.z != 0:
        theta = cmath.phase(params.lam)
        ok = math.cos(theta) >= -1e-12 if params.z > 0 else math.cos(theta) <= 1e-12
        if not ok:
            warnings.warn(PhaseWindow(
                f"mu=0 series phase arg(lam)={theta:.4f} outside the convergence "
                f"window for z={params.z}"))


def _double_sum_term(n, k, X, Y):
    # divide the X/Y value by the integer factorial, never int/int: the latter
    # goes through float and underflows to exact zero for k beyond ~280
    term = 0 * X
    for m in range(min(k, n) + 1):
        term += (X ** m * Y ** (k - m)) * (comb(n, m) * (-k) ** (n - m)) / factorial(k - m)
    return term


def _double_sum_amplitudes(params, n_max, k_cutoff, tol, use_mp):
    """c_n via the unsummed (k, m) double series; returns (array, terms, tail)."""
    lam, mu, z = params.lam, params.mu, params.z
    if use_mp:
        import mpmath as mp
        Y0 = mu / z ** 2 - lam / z
        # 0.434|Y| digits cancel in e^{-Y} sum_k Y^k/k!, up to ~0.87|Y| for
        # complex Y; the k^n and X^m growth adds ~n log10|Y| more
        dps = (40 + int(0.9 * abs(Y0))
               + int(n_max * max(2.0, math.log10(max(abs(Y0), 10.0)))))
        with mp.workdps(dps):
            X, Y = mp.mpc(mu) / z ** 2, mp.mpc(mu) / z ** 2 - mp.mpc(lam) / z
            pref = mp.e ** (-Y)
            floor = mp.mpf("1e-300")
            out = np.empty(n_max + 1, dtype=complex)
            worst_tail, worst_k = 0.0, 0
            for n in range(n_max + 1):
                total, small, k = mp.mpc(0), 0, 0
                while k <= k_cutoff:
                    t = _double_sum_term(n, k, X, Y)
                    total += t
                    # compare in mp: float(|total|) overflows past 1e308
                    if abs(t) < tol * (abs(total) + floor):
                        small += 1
                        if small >= 3:
                            break
                    else:
                        small = 0
                    k += 1
                tail = float(abs(t) / (abs(total) + floor))
                if small < 3:
                    raise NotConverged(
                        f"double sum for c_{n} not converged after {k_cutoff} terms "
                        f"(tail {tail:.2e})")
                worst_tail, worst_k = max(worst_tail, tail), max(worst_k, k + 1)
                out[n] = complex(pref * z ** n * total / mp.sqrt(mp.factorial(n)))
        return out, worst_k, worst_tail
    X = mu / z ** 2
    Y = mu / z ** 2 - lam / z
    pref = cmath.exp(-Y)
    out = np.empty(n_max + 1, dtype=complex)
    worst_tail, worst_k = 0.0, 0
    for n in range(n_max + 1):
        total, small, k = 0j, 0, 0
        while k <= k_cutoff:
            t = _double_sum_term(n, k, X, Y)
            total += t
            if abs(t) < tol * max(abs(total), 1e-300):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            k += 1
        tail = abs(t) / max(abs(total), 1e-300)
        if small < 3:
            raise NotConverged(
                f"double sum for c_{n} not converged after {k_cutoff} terms "
                f"(tail {tail:.2e})")
        worst_tail, worst_k = max(worst_tail, tail), max(worst_k, k + 1)
        out[n] = pref * z ** n * total / math.sqrt(factorial(n))
    return out, worst_k, worst_tail


def fock_coefficients(params: DeformationParams, n_max: int, k_cutoff=None,
                      tol: float = 1e-10, cross_check="auto"):
    """Amplitudes c_n (C_0 = 1) of the deformed squeezed eigenstate, z != 0.

    The returned values come from the exact finite-sum route.  When the
    eigenvalue data allows it (|mu/z^2 - lam/z| small enough for floating
    point, or cross_check=True forcing high-precision arithmetic), the
    unsummed double series is evaluated independently and folded into the
    diagnostics: tail_estimate covers both the k-sum tail and the worst
    relative deviation between the two routes.

    cross_check: "auto" | True | False.
    """
    if params.z == 0:
        raise BadParams("z = 0 eigenstates come from squeezed_symbol_coefficients")
    _phase_window_check(params)
    c = _amplitudes(params, n_max)
    vec = CoefficientVector(c=c, params=params, c0_fixed=1.0)

    Y = abs(params.mu / params.z ** 2 - params.lam / params.z)
    run = cross_check is True or (cross_check == "auto" and Y <= _FLOAT_Y_MAX)
    if not run:
        return vec, SeriesDiagnostics(terms_used=0, tail_estimate=0.0, converged=True)

    if k_cutoff is None:
        k_cutoff = max(300, int(4 * Y) + 40 * (n_max + 1))
    other, terms, tail = _double_sum_amplitudes(params, n_max, k_cutoff, tol,
                                                use_mp=Y > _FLOAT_Y_MAX)
    dev = float(max(abs(other - c) / np.maximum(np.abs(c), 1.0)))
    if dev > max(100 * tol, 1e-6):
        raise NotConverged(f"route deviation {dev:.2e}: double sum mis-converged, "
                           f"raise k_cutoff or tighten tol")
    tail = max(tail, dev)
    return vec, SeriesDiagnostics(terms_used=terms, tail_estimate=tail,
                                  converged=tail < max(tol, 1e-9))


def squeezed_symbol_coefficients(lam: complex, mu: complex, n_max: int) -> CoefficientVector:
    """Taylor amplitudes of the z = 0 symbol exp(lam xi - mu xi^2/2):
    c_n = g_n sqrt(n!) with g the Taylor coefficients."""
    if abs(mu) >= 1:
        raise NonNormalizable(f"|mu| = {abs(mu)} >= 1 squeezed state has no norm")
    g = np.zeros(n_max + 1, dtype=complex)
    g[0] = 1.0
    for n in range(1, n_max + 1):
        g[n] = (lam * g[n - 1] - (mu * g[n - 2] if n >= 2 else 0.0)) / n
    sqrt_fact = np.array([math.sqrt(factorial(n)) for n in range(n_max + 1)])
    return CoefficientVector(c=g * sqrt_fact,
                             params=DeformationParams(z=0.0, lam=lam, mu=mu))


def normalization_c0(params: DeformationParams, n_max: int = 96, tol: float = 1e-12):
    """Real positive C_0 with sum |c_n|^2 = 1, by adaptive partial sums."""
    _phase_window_check(params)
    if params.z == 0:
        amps = iter(squeezed_symbol_coefficients(params.lam, params.mu, n_max).c)
    else:
        amps = _amplitude_iter(params, n_max)
    total, small, used, w = 0.0, 0, 0, 0.0
    for cn in amps:
        w = abs(cn) ** 2
        total += w
        used += 1
        if w < tol * max(total, 1e-300):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    tail = w / max(total, 1e-300)
    if small < 3:
        raise NotConverged(
            f"norm series not converged by n_max={n_max} (tail {tail:.2e})")
    return 1.0 / math.sqrt(total), SeriesDiagnostics(terms_used=used,
                                                     tail_estimate=tail,
                                                     converged=True)


# ---------------------------------------------------------------------------
# operator-route state assembly
# ---------------------------------------------------------------------------

def _apply_exp_nilpotent(X: np.ndarray, v: np.ndarray) -> np.ndarray:
    """exp(X) v for strictly triangular X, by the (finite) Taylor sum."""
    out = v.copy()
    term = v.copy()
    for m in range(1, X.shape[0] + 1):
        term = X @ term / m
        if not term.any():
            break
        out += term
    return out


def deformed_exponent_operator(params: DeformationParams, cfg: TruncationConfig) -> np.ndarray:
    """The nilpotent exponent  sum_k ((-z a+)^k/(k+1)!)(lam a+ - ((k+1)/(k+2)) mu (a+)^2)
    whose exponential applied to |0> gives the deformed squeezed state."""
    ad = creation(cfg)
    N = cfg.dim
    X = np.zeros((N, N), dtype=complex)
    ad_pow = np.eye(N, dtype=complex)          # (a+)^k as we go
    z, lam, mu = params.z, params.lam, params.mu
    for k in range(N):
        base = (-z) ** k / factorial(k + 1)
        ad_k1 = ad_pow @ ad                    # (a+)^{k+1}
        if not ad_k1.any():
            break
        X += base * lam * ad_k1
        ad_k2 = ad_k1 @ ad
        if ad_k2.any():
            X += base * (-(k + 1) / (k + 2) * mu) * ad_k2
        ad_pow = ad_k1
    return X


def deformed_squeezed_state(params: DeformationParams, cfg: TruncationConfig) -> FockVector:
    """Normalized eigenstate of e^{z a+} a + mu a+ with eigenvalue lam,
    assembled as the exact nilpotent exponential acting on the vacuum."""
    X = deformed_exponent_operator(params, cfg)
    v = _apply_exp_nilpotent(X, vacuum(cfg))
    v = normalize(v)
    check_tail(v, cfg)
    return v


def aes_operator(params: DeformationParams, cfg: TruncationConfig) -> np.ndarray:
    """The eigenvalue operator  e^{z a+} a + mu a+ + nu e^{z a+}  (all sums
    finite by nilpotency of a+)."""
    ad = creation(cfg)
    ez = _apply_exp_nilpotent(params.z * ad, np.eye(cfg.dim, dtype=complex))
    return ez @ annihilation(cfg) + params.mu * ad + params.nu * ez


def deformed_coherent_state(params: DeformationParams, cfg: TruncationConfig) -> FockVector:
    """Normalized eigenstate of e^{z a+} a + mu a+ + nu e^{z a+} with eigenvalue
    lam: the nu-shifted state  exp(exponent) e^{-nu a+} |0>."""
    n = np.arange(cfg.dim)
    seed = np.array([(-params.nu) ** k / math.sqrt(factorial(k)) for k in n],
                    dtype=complex)
    X = deformed_exponent_operator(params, cfg)
    v = _apply_exp_nilpotent(X, seed)
    v = normalize(v)
    check_tail(v, cfg)
    return v


# ---------------------------------------------------------------------------
# first-order perturbed states and their norm factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerturbedState:
    """First-order state with its printed norm factor.

    raw is Omega * (bracket) S D |0> exactly as assembled (normalized only to
    first order); normalized is raw rescaled to unit norm; norm_error is
    | ||raw|| - 1 |, an O(z^2)-grade diagnostic.
    """

    raw: FockVector
    normalized: FockVector
    omega: float
    norm_error: float


def omega_first_order(delta, phi, beta, theta, z) -> float:
    """Closed-form first-order norm factor of the perturbed squeezed state."""
    d2 = delta * delta
    r2 = 1 - d2
    b2 = beta * beta
    bracket = ((2 * d2 + b2 * (1 + d2) / r2) * math.cos(theta)
               - delta * (1 + d2 + 2 * b2 / r2) * math.cos(phi - theta)
               + d2 * b2 * (1 + 2 * d2 / (3 * r2)) * math.cos(2 * phi - 3 * theta)
               - (2 * delta * b2 / (3 * r2)) * math.cos(phi - 3 * theta))
    return 1 + z * beta / (2 * r2 * r2) * bracket


def merged_displacement(beta, theta, gamma, eta_phase):
    """Polar form (beta~, theta~) of lam - nu = beta e^{i theta} + gamma e^{i eta}."""
    w = beta * cmath.exp(1j * theta) + gamma * cmath.exp(1j * eta_phase)
    return abs(w), cmath.phase(w) if w != 0 else 0.0


def omega_two_param(delta, phi, beta, theta, gamma, eta_phase, z, p) -> float:
    """First-order norm factor of the two-parameter perturbed state, derived
    from the squeezed-displaced moments <(a+)^k>:

        Omega~ = 1 - Re[ z (mu G30/3 - lam G20/2)
                         + (p^2/4)(mu G20/4 - (lam/2 - nu/3) G10) ],

    with the moments taken at the merged displacement (beta~, theta~).
    Reduces to omega_first_order when gamma = 0 and p = 0.
    """
    bt, tt = merged_displacement(beta, theta, gamma, eta_phase)
    mu = delta * cmath.exp(1j * phi)
    lam = beta * cmath.exp(1j * theta)
    nu = -gamma * cmath.exp(1j * eta_phase)
    g10 = _gaussian.gamma_kl(1, 0, delta, phi, bt, tt)
    g20 = _gaussian.gamma_kl(2, 0, delta, phi, bt, tt)
    g30 = _gaussian.gamma_kl(3, 0, delta, phi, bt, tt)
    corr = (z * (mu * g30 / 3 - lam * g20 / 2)
            + (p * p / 4) * (mu * g20 / 4 - (lam / 2 - nu / 3) * g10))
    return 1 - corr.real


def omega_two_param_printed(delta, phi, beta, theta, gamma, eta_phase, z, p) -> float:
    """The closed printed form of the two-parameter norm factor, kept verbatim
    for comparison.  Both its gamma-dependent z-block corrections and its p^2
    block disagree with the derivation at first order (omega_two_param tracks
    the numeric state norm to O(2nd order), this form does not; see the test
    suite); one typographically truncated factor is read minimally as a bare
    coefficient 3.
    """
    bt, tt = merged_displacement(beta, theta, gamma, eta_phase)
    d2 = delta * delta
    r2 = 1 - d2
    bt2 = bt * bt
    z_block = bt * ((2 * d2 + bt2 * (1 + d2) / r2) * math.cos(tt)
                    - delta * (1 + d2 + 2 * bt2 / r2) * math.cos(phi - tt)
                    + d2 * bt2 * (1 + 2 * d2 / (3 * r2)) * math.cos(2 * phi - 3 * tt)
                    - (2 * delta * bt2 / (3 * r2)) * math.cos(phi - 3 * tt))
    z_block -= gamma * (bt2 * math.cos(eta_phase - 2 * tt)
                        - delta * (2 * bt2 + r2) * math.cos(eta_phase - tt)
                        + d2 * bt2 * math.cos(2 * phi - eta_phase - 2 * tt))
    p_block = (delta * bt2 * 3 * math.cos(phi - 2 * tt)
               + (2 * gamma / 3) * bt * r2 * (math.cos(eta_phase - tt)
                                              + delta * math.cos(phi - eta_phase - tt))
               - 2 * bt2 - d2 + d2 * d2)
    return 1 + z / (2 * r2 * r2) * z_block - p * p / (16 * r2 * r2) * p_block


def _bracket_operator(coeffs, cfg):
    """I + sum_j coeffs[j] (a+)^j for a {power: coefficient} mapping."""
    ad = creation(cfg)
    out = np.eye(cfg.dim, dtype=complex)
    pw = np.eye(cfg.dim, dtype=complex)
    top = max(coeffs)
    for j in range(1, top + 1):
        pw = pw @ ad
        if j in coeffs:
            out += coeffs[j] * pw
    return out


def perturbed_state_first_order(delta, phi, beta, theta, z,
                                cfg: TruncationConfig) -> PerturbedState:
    """First-order-in-z normalized deformed squeezed state

        Omega [1 + z(mu (a+)^3/3 - lam (a+)^2/2)] S(-artanh(delta) e^{i phi})
              D(lam / sqrt(1-delta^2)) |0>.
    """
    if not (0 <= delta < 1):
        raise BadParams("need 0 <= delta < 1")
    mu = delta * cmath.exp(1j * phi)
    lam = beta * cmath.exp(1j * theta)
    S = squeeze_operator(-math.atanh(delta) * cmath.exp(1j * phi), cfg)
    D = displacement_operator(lam / math.sqrt(1 - delta * delta), cfg)
    T = _bracket_operator({3: z * mu / 3, 2: -z * lam / 2}, cfg)
    omega = omega_first_order(delta, phi, beta, theta, z)
    raw = omega * (T @ (S @ (D @ vacuum(cfg))))
    return PerturbedState(raw=raw, normalized=normalize(raw), omega=omega,
                          norm_error=abs(norm(raw) - 1.0))


def two_param_perturbed_state(delta, phi, beta, theta, gamma, eta_phase, z, p,
                              cfg: TruncationConfig) -> PerturbedState:
    """First order in z and p^2 normalized two-parameter state; the displacement
    carries the merged amplitude lam - nu while the bracket keeps lam, mu, nu."""
    if not (0 <= delta < 1):
        raise BadParams("need 0 <= delta < 1")
    mu = delta * cmath.exp(1j * phi)
    lam = beta * cmath.exp(1j * theta)
    nu = -gamma * cmath.exp(1j * eta_phase)
    bt, tt = merged_displacement(beta, theta, gamma, eta_phase)
    S = squeeze_operator(-math.atanh(delta) * cmath.exp(1j * phi), cfg)
    D = displacement_operator(bt * cmath.exp(1j * tt) / math.sqrt(1 - delta * delta), cfg)
    T = _bracket_operator({3: z * mu / 3,
                           2: -z * lam / 2 + (p * p / 16) * mu,
                           1: -(p * p / 4) * (lam / 2 - nu / 3)}, cfg)
    omega = omega_two_param(delta, phi, beta, theta, gamma, eta_phase, z, p)
    raw = omega * (T @ (S @ (D @ vacuum(cfg))))
    return PerturbedState(raw=raw, normalized=normalize(raw), omega=omega,
                          norm_error=abs(norm(raw) - 1.0))


# ---------------------------------------------------------------------------
# two-parameter Bargmann symbols
# ---------------------------------------------------------------------------

def _warn_branch(w, what):
    if w.real <= 0 and abs(w.imag) <= 1e-9 * max(abs(w), 1.0):
        warnings.warn(BranchCut(f"{what} evaluated on/near the branch cut at {w}"))


def two_param_log_symbol(params: DeformationParams, zeta: complex) -> complex:
    """log of the two-parameter symbol psi_{z,p} at zeta = e^{z xi}, C_0 = 1:

        sqrt(1 + p^2 zeta^2/4)/(z^2 zeta) ((1 + ln zeta) mu - lam z
            + (2 nu z/p) arcsinh(p zeta/2))
            - (mu p/(2 z^2)) arcsinh(p zeta/2) - (nu/z) ln zeta.

    Principal branches throughout.  The log form stays finite for tiny z
    where the symbol itself overflows (the exponent scales like 1/z^2).
    """
    z, p = params.z, params.p
    lam, mu, nu = params.lam, params.mu, params.nu
    if z == 0 or p == 0:
        raise BadParams("two_param_symbol needs z != 0 and p != 0")
    if zeta == 0:
        raise BadParams("zeta = e^{z xi} cannot vanish")
    zeta = complex(zeta)
    _warn_branch(zeta, "ln(zeta)")
    w = 1 + p * p * zeta * zeta / 4
    _warn_branch(w, "sqrt / arcsinh factor")
    root = cmath.sqrt(w)
    s_half = cmath.asinh(p * zeta / 2)
    log_zeta = cmath.log(zeta)
    return (root / (z * z * zeta) * ((1 + log_zeta) * mu - lam * z
                                     + (2 * nu * z / p) * s_half)
            - mu * p / (2 * z * z) * s_half
            - nu / z * log_zeta)


def two_param_symbol(params: DeformationParams, zeta: complex) -> complex:
    """The two-parameter symbol psi_{z,p}(zeta); see two_param_log_symbol."""
    return cmath.exp(two_param_log_symbol(params, zeta))


def standard_squeezed_symbol_zero_z(p, lam, mu, nu, xi) -> complex:
    """The z = 0 member of the two-parameter family, with C_0 = 1:

        exp( [ (lam - nu (2/p) arcsinh(p/2)) xi - mu xi^2/2 ] / sqrt(1 + p^2/4) ).

    The 1/sqrt(1+p^2/4) in the exponent makes the associated Fock state the
    exact eigenstate of  sqrt(1+p^2/4) a + mu a+ + nu (2/p) arcsinh(p/2) I
    with eigenvalue lam.
    """
    if p == 0:
        raise BadParams("need p != 0 (use the plain squeezed symbol at p = 0)")
    shift = nu * (2 / p) * math.asinh(p / 2)
    c = math.sqrt(1 + p * p / 4)
    return cmath.exp(((lam - shift) * xi - mu * xi * xi / 2) / c)
