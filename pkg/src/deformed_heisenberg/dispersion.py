"""Quadrature statistics of the deformed states.

Covers the X/P operators and their dispersions, the squeezed-vacuum matrix
elements Gamma_kl / Lambda_kl, the first-order perturbed moment formulas, the
all-order C_n(tau) dispersion sums, and the data sweeps behind the standard
figure set (variance vs phi / delta).
"""

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _gaussian
from .aes_series import fock_coefficients, squeezed_symbol_coefficients
from .deformed_algebra import DeformationParams
from .errors import BadParams, NotConverged
from .fock_core import (FockOperator, FockVector, TruncationConfig,
                        annihilation, check_tail, creation, expectation,
                        normalize)

SQRT2 = math.sqrt(2.0)

# |Omega - 1| above this marks a first-order row as untrustworthy (the state's
# normalization correction is no longer small); calibrated so the delta sweep
# at z=0.0025, p=0.01, beta=2, theta=0.8 pi trips just past delta = 0.75
# (|eps| = 0.074 at 0.75, 0.083 at 0.76).
VALIDITY_EPSILON_THRESHOLD = 0.075


# ---------------------------------------------------------------------------
# quadratures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureStats:
    """Means and dispersions of X and P plus the X-P correlation <F>,
    F = {X - <X>, P - <P>}."""

    mean_x: float
    mean_p: float
    var_x: float
    var_p: float
    corr_f: float

    @property
    def srur_bound(self) -> float:
        return 0.25 * (1.0 + self.corr_f ** 2)

    @property
    def product(self) -> float:
        return self.var_x * self.var_p


def position_operator(cfg: TruncationConfig) -> FockOperator:
    a = annihilation(cfg)
    return (a + a.conj().T) / SQRT2


def momentum_operator(cfg: TruncationConfig) -> FockOperator:
    a = annihilation(cfg)
    return 1j * (a.conj().T - a) / SQRT2


def quadrature_stats(state: FockVector, cfg: TruncationConfig) -> QuadratureStats:
    """Direct matrix evaluation of the X/P statistics on a Fock vector."""
    check_tail(state, cfg)
    psi = normalize(state)
    X = position_operator(cfg)
    P = momentum_operator(cfg)
    mx = expectation(X, psi).real
    mp = expectation(P, psi).real
    x2 = expectation(X @ X, psi).real
    p2 = expectation(P @ P, psi).real
    f = expectation(X @ P + P @ X, psi).real - 2 * mx * mp
    return QuadratureStats(mean_x=mx, mean_p=mp,
                           var_x=x2 - mx * mx, var_p=p2 - mp * mp, corr_f=f)


def mus_dispersions(delta: float, phi: float):
    """Dispersions of the undeformed squeezed states (independent of lam)."""
    if not (0 <= delta < 1):
        raise BadParams("need 0 <= delta < 1")
    r2 = 2 * (1 - delta * delta)
    base = 1 + delta * delta
    return ((base - 2 * delta * math.cos(phi)) / r2,
            (base + 2 * delta * math.cos(phi)) / r2)


# ---------------------------------------------------------------------------
# squeezed-vacuum matrix elements
# ---------------------------------------------------------------------------

def gamma_element(k: int, l: int, delta, phi, beta, theta) -> complex:
    """<0|D+ S+ (a+)^k a^l S D|0> by exact differentiation of the Gaussian
    generating function."""
    return _gaussian.gamma_kl(k, l, delta, phi, beta, theta)


def lambda_element(k: int, l: int, delta, phi, beta, theta) -> complex:
    """<0|D+ S+ a^k (a+)^l S D|0>, same generating-function route."""
    return _gaussian.lambda_kl(k, l, delta, phi, beta, theta)


@dataclass(frozen=True)
class MatrixElementTable:
    """All Gamma_kl and Lambda_kl with k, l <= k_max."""

    gamma: np.ndarray
    lambda_elem: np.ndarray

    @property
    def k_max(self) -> int:
        return self.gamma.shape[0] - 1


def matrix_element_table(delta, phi, beta, theta, k_max: int) -> MatrixElementTable:
    g = np.empty((k_max + 1, k_max + 1), dtype=complex)
    lm = np.empty_like(g)
    for k in range(k_max + 1):
        for l in range(k_max + 1):
            g[k, l] = gamma_element(k, l, delta, phi, beta, theta)
            lm[k, l] = lambda_element(k, l, delta, phi, beta, theta)
    return MatrixElementTable(gamma=g, lambda_elem=lm)


# ---------------------------------------------------------------------------
# first-order moments of the perturbed states (gamma = 0 sector)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerturbedMoments:
    """<X>^2, <X^2> and the P analogues, first order in z and p^2."""

    mean_x_sq: float
    x2_mean: float
    mean_p_sq: float
    p2_mean: float
    epsilon: float           # Omega~ - 1, the norm correction actually used
    mean_a: complex          # first-order <a>
    a_sq: complex            # first-order <a^2>
    n_bar: float             # first-order <a+ a>

    @property
    def var_x(self) -> float:
        return self.x2_mean - self.mean_x_sq

    @property
    def var_p(self) -> float:
        return self.p2_mean - self.mean_p_sq


def _first_order_expectations(delta, phi, beta, theta, z, p):
    """<a>, <a^2>, <a+a> and epsilon on the normalized first-order state.

    The corrections come from sandwiching the bracket operator
    1 + z Q + (p^2/4) R,  Q = mu (a+)^3/3 - lam (a+)^2/2,
    R = mu (a+)^2/4 - (lam/2) a+  (nu = 0), against S D |0>, normal-ordering
    everything onto Gamma / Lambda elements; second-order cross terms in
    (z, p^2, epsilon) are dropped.
    """
    mu = delta * cmath.exp(1j * phi)
    lam = beta * cmath.exp(1j * theta)

    def G(k, l):
        return _gaussian.gamma_kl(k, l, delta, phi, beta, theta)

    def L(k, l):
        return _gaussian.lambda_kl(k, l, delta, phi, beta, theta)

    q = p * p / 4.0
    mean_q = mu * G(3, 0) / 3 - lam * G(2, 0) / 2
    mean_r = mu * G(2, 0) / 4 - lam / 2 * G(1, 0)
    eps = -(z * mean_q + q * mean_r).real

    # <a (.)> and <a+ (.)> blocks
    aQ = mu * L(1, 3) / 3 - lam * L(1, 2) / 2
    adQ = mu * G(4, 0) / 3 - lam * G(3, 0) / 2
    aR = mu * L(1, 2) / 4 - lam / 2 * L(1, 1)
    adR = mu * G(3, 0) / 4 - lam / 2 * G(2, 0)
    mean_a = ((1 + 2 * eps) * G(0, 1)
              + z * (aQ + adQ.conjugate()) + q * (aR + adR.conjugate()))

    a2Q = mu * L(2, 3) / 3 - lam * L(2, 2) / 2
    ad2Q = mu * G(5, 0) / 3 - lam * G(4, 0) / 2
    a2R = mu * L(2, 2) / 4 - lam / 2 * L(2, 1)
    ad2R = mu * G(4, 0) / 4 - lam / 2 * G(3, 0)
    a_sq = ((1 + 2 * eps) * G(0, 2)
            + z * (a2Q + ad2Q.conjugate()) + q * (a2R + ad2R.conjugate()))

    # a+ a against (a+)^k: a (a+)^k = (a+)^k a + k (a+)^{k-1}
    ndQ = mu * (G(4, 1) + 3 * G(3, 0)) / 3 - lam * (G(3, 1) + 2 * G(2, 0)) / 2
    ndR = mu * (G(3, 1) + 2 * G(2, 0)) / 4 - lam / 2 * (G(2, 1) + G(1, 0))
    n_bar = ((1 + 2 * eps) * G(1, 1).real
             + 2 * (z * ndQ + q * ndR).real)
    return mean_a, a_sq, n_bar, eps


def perturbed_moments(delta, phi, beta, theta, z, p) -> PerturbedMoments:
    """First-order <X>^2, <X^2>, <P>^2, <P^2> assembled from the normal-ordered
    expectation decomposition (strictly first order in z, p^2 and epsilon)."""
    mean_a, a_sq, n_bar, eps = _first_order_expectations(delta, phi, beta,
                                                         theta, z, p)
    mu = delta * cmath.exp(1j * phi)
    lam = beta * cmath.exp(1j * theta)
    q = p * p / 4.0

    def G(k, l):
        return _gaussian.gamma_kl(k, l, delta, phi, beta, theta)

    def L(k, l):
        return _gaussian.lambda_kl(k, l, delta, phi, beta, theta)

    g01 = G(0, 1)
    corr = (z * ((mu * L(1, 3) / 3 - lam * L(1, 2) / 2)
                 + (mu * G(4, 0) / 3 - lam * G(3, 0) / 2).conjugate())
            + q * ((mu * L(1, 2) / 4 - lam / 2 * L(1, 1))
                   + (mu * G(3, 0) / 4 - lam / 2 * G(2, 0)).conjugate()))
    mean_x_sq = 2 * (g01.real ** 2 * (1 + 4 * eps) + 2 * g01.real * corr.real)
    mean_p_sq = 2 * (g01.imag ** 2 * (1 + 4 * eps) + 2 * g01.imag * corr.imag)

    core = (1 + 2 * eps) * (G(1, 1).real + G(0, 2).real)
    core_p = (1 + 2 * eps) * (G(1, 1).real - G(0, 2).real)
    zQ2 = (mu * L(2, 3) / 3 - lam * L(2, 2) / 2
           + (mu * G(5, 0) / 3 - lam * G(4, 0) / 2).conjugate())
    pR2 = (mu * L(2, 2) / 4 - lam / 2 * L(2, 1)
           + (mu * G(4, 0) / 4 - lam / 2 * G(3, 0)).conjugate())
    zN = 2 * (mu * (G(4, 1) + 3 * G(3, 0)) / 3
              - lam * (G(3, 1) + 2 * G(2, 0)) / 2)
    pN = 2 * (mu * (G(3, 1) + 2 * G(2, 0)) / 4
              - lam / 2 * (G(2, 1) + G(1, 0)))
    x2_mean = 0.5 + core + (z * (zQ2 + zN) + q * (pR2 + pN)).real
    p2_mean = 0.5 + core_p + (z * (-zQ2 + zN) + q * (-pR2 + pN)).real
    return PerturbedMoments(mean_x_sq=mean_x_sq, x2_mean=x2_mean,
                            mean_p_sq=mean_p_sq, p2_mean=p2_mean,
                            epsilon=eps, mean_a=mean_a, a_sq=a_sq, n_bar=n_bar)


def _perturbed_moments_literal(delta, phi, beta, theta, z, p):
    """The same four moments, transcribed term-for-term from the grouped
    Gamma/Lambda presentation (the one that mixes Lambda_41 - Gamma_03 style
    differences).  Kept private as an independent assembly; equality with
    perturbed_moments is asserted in the test suite."""
    mu = delta * cmath.exp(1j * phi)
    lam = beta * cmath.exp(1j * theta)
    mub, lamb = mu.conjugate(), lam.conjugate()

    def G(k, l):
        return _gaussian.gamma_kl(k, l, delta, phi, beta, theta)

    def L(k, l):
        return _gaussian.lambda_kl(k, l, delta, phi, beta, theta)

    eps = -(z * (mu * G(3, 0) / 3 - lam * G(2, 0) / 2)
            + p * p / 4 * (mu * G(2, 0) / 4 - lam / 2 * G(1, 0))).real

    inner = ((1 + 4 * eps) * G(0, 1)
             + 2 * z * (mub / 3 * G(0, 4) - lamb / 2 * G(0, 3)
                        + mu / 3 * L(1, 3) - lam / 2 * L(1, 2))
             + p * p / 2 * (mub / 4 * G(0, 3) - lamb / 2 * G(0, 2)
                            + mu / 4 * L(1, 2) - lam / 2 * L(1, 1)))
    mean_x_sq = 2 * G(0, 1).real * inner.real
    mean_p_sq = 2 * G(0, 1).imag * inner.imag

    re_blocks = (z * (mub / 3 * G(0, 5) - lamb / 2 * G(0, 4)
                      + mu / 3 * L(2, 3) - lam / 2 * L(2, 2))
                 + p * p / 4 * (mub / 4 * G(0, 4) - lamb / 2 * G(0, 3)
                                + mu / 4 * L(2, 2) - lam / 2 * L(2, 1)))
    plain_blocks = (z * (mub / 3 * (L(4, 1) - G(0, 3))
                         - lamb / 2 * (L(3, 1) - G(0, 2))
                         + mu / 3 * (L(1, 4) - L(0, 3))
                         - lam / 2 * (L(1, 3) - L(0, 2)))
                    + p * p / 4 * (mub / 4 * (L(3, 1) - G(0, 2))
                                   - lamb / 2 * (L(2, 1) - G(0, 1))
                                   + mu / 4 * (L(1, 3) - L(0, 2))
                                   - lam / 2 * (L(1, 2) - L(0, 1))))
    base = (1 + 2 * eps) * (G(1, 1) + G(0, 2)).real
    base_p = (1 + 2 * eps) * (G(1, 1) - G(0, 2)).real
    x2_mean = 0.5 + base + re_blocks.real + plain_blocks.real
    p2_mean = 0.5 + base_p - re_blocks.real + plain_blocks.real
    return mean_x_sq, x2_mean, mean_p_sq, p2_mean


def perturbed_quadrature_stats(delta, phi, beta, theta, z, p) -> QuadratureStats:
    """QuadratureStats view of perturbed_moments (means, variances, <F>)."""
    m = perturbed_moments(delta, phi, beta, theta, z, p)
    mean_x = SQRT2 * m.mean_a.real
    mean_p = SQRT2 * m.mean_a.imag
    corr_f = 2 * m.a_sq.imag - 2 * mean_x * mean_p
    return QuadratureStats(mean_x=mean_x, mean_p=mean_p,
                           var_x=m.var_x, var_p=m.var_p, corr_f=corr_f)


# ---------------------------------------------------------------------------
# all-order dispersions from C_n(tau)
# ---------------------------------------------------------------------------

def _reduced_coefficients(params: DeformationParams, n_max: int, tol: float):
    """c_n with C_0 = 1 for the z-deformed squeezed state (nu = 0 sector).

    These are the per-n inner double sums of the tau expansion with the
    common exp factor cancelled against the normalization denominator.
    """
    if params.nu != 0:
        raise BadParams("the all-order dispersion sums cover the nu = 0 states")
    if params.z == 0:
        return squeezed_symbol_coefficients(params.lam, params.mu, n_max).c
    vec, diag = fock_coefficients(params, n_max, tol=tol)
    if not diag.converged:
        raise NotConverged("coefficient routes disagree beyond tolerance")
    return vec.c


def general_cn_tau(params: DeformationParams, n: int, tau: complex,
                   n_max=None, tol: float = 1e-10) -> complex:
    """C_n(tau): the n-th amplitude of e^{tau a+ / sqrt2} applied to the
    (unnormalized, C_0 = 1) deformed squeezed state.

        C_n(tau) = sum_r  (n r) (tau/sqrt2)^r sqrt((n-r)!/n!) c_{n-r}
    """
    if n_max is None:
        n_max = n
    c = _reduced_coefficients(params, max(n, n_max), tol)
    total = 0.0 + 0.0j
    for r in range(n + 1):
        w = math.comb(n, r) * math.sqrt(math.factorial(n - r) / math.factorial(n))
        total += (tau / SQRT2) ** r * w * c[n - r]
    return total


def cnp0(c, n: int) -> complex:
    """C'_n(0) = sqrt(n/2) c_{n-1}; zero for n = 0."""
    if n == 0:
        return 0j
    return math.sqrt(n / 2.0) * c[n - 1]


def cnpp0(c, n: int) -> complex:
    """C''_n(0) = sqrt(n(n-1))/2 c_{n-2}; zero for n < 2."""
    if n < 2:
        return 0j
    return math.sqrt(n * (n - 1)) / 2.0 * c[n - 2]


def general_dispersion(params: DeformationParams, n_max: int = 128,
                       tol: float = 1e-12) -> QuadratureStats:
    """All-order dispersions of X and P on the z-deformed squeezed state from
    the C_n(0), C'_n(0), C''_n(0) sums; P follows by the tau -> i tau rule."""
    c = _reduced_coefficients(params, n_max, max(tol, 1e-12))
    w = np.abs(c) ** 2
    s0 = float(np.sum(w))
    if s0 <= 0:
        raise NotConverged("empty norm sum")
    if w[-3:].sum() > max(tol, 1e-12) * s0:
        raise NotConverged(
            f"norm series tail {w[-3:].sum() / s0:.2e} above tolerance at "
            f"n_max={n_max}")

    s_cp = complex(0)      # sum conj(C_n) C'_n
    s_cpp = complex(0)     # sum conj(C_n) C''_n
    s_pp = 0.0             # sum |C'_n|^2
    for n in range(n_max + 1):
        cb = c[n].conjugate()
        cp = cnp0(c, n)
        s_cp += cb * cp
        s_cpp += cb * cnpp0(c, n)
        s_pp += abs(cp) ** 2

    mean_x = 2 * s_cp.real / s0
    mean_p = -2 * s_cp.imag / s0
    x2 = -0.5 + (2 * s_cpp.real + 2 * s_pp) / s0
    p2 = -0.5 + (-2 * s_cpp.real + 2 * s_pp) / s0
    a_sq = (2 * s_cpp / s0).conjugate()
    corr_f = 2 * a_sq.imag - 2 * mean_x * mean_p
    return QuadratureStats(mean_x=mean_x, mean_p=mean_p,
                           var_x=x2 - mean_x ** 2, var_p=p2 - mean_p ** 2,
                           corr_f=corr_f)


# ---------------------------------------------------------------------------
# figure sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    grid_value: float
    var_x_mus: float
    var_p_mus: float
    var_x_def: float
    var_p_def: float
    product_def: float
    srur_bound: float
    validity_flag: bool


def figure_sweep(*, delta, phi, beta, theta, varying: str, grid,
                 z_values, p_values):
    """Variance table rows over a phi or delta grid, one block per (z, p).

    Returns a list of (z, p, rows) with rows in grid order.  validity_flag
    is False where |epsilon| = |Omega~ - 1| exceeds the module threshold and
    the first-order state can no longer be trusted.
    """
    if varying not in ("phi", "delta"):
        raise BadParams("varying must be 'phi' or 'delta'")
    if np.isscalar(z_values):
        z_values = [z_values]
    if np.isscalar(p_values):
        p_values = [p_values]
    blocks = []
    for z, p in itertools.product(z_values, p_values):
        rows = []
        for g in grid:
            d, f = (delta, g) if varying == "phi" else (g, phi)
            vx0, vp0 = mus_dispersions(d, f)
            stats = perturbed_quadrature_stats(d, f, beta, theta, z, p)
            m = perturbed_moments(d, f, beta, theta, z, p)
            rows.append(SweepRow(
                grid_value=float(g), var_x_mus=vx0, var_p_mus=vp0,
                var_x_def=stats.var_x, var_p_def=stats.var_p,
                product_def=stats.product, srur_bound=stats.srur_bound,
                validity_flag=abs(m.epsilon) <= VALIDITY_EPSILON_THRESHOLD))
        blocks.append((z, p, rows))
    return blocks
