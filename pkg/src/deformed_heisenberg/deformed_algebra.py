"""Boson realizations of the deformed oscillator algebras and residual checks.

Two families are covered: the one-parameter algebra with relations

    [A, B] = 0,   [B, C] = -z B^2,      [A, C] = B        (tilde form)

and the two-parameter algebra with

    [A, B] = 0,   [B, C] = -(2z/p^2)(cosh(pB) - 1),   [A, C] = (1/p) sinh(pB).

All matrix functions of nilpotent-plus-scalar arguments are evaluated by exact
finite Taylor sums (triangular_matrix_function), never by iterative solvers.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadParams, SingularCosh
from .fock_core import (FockOperator, TruncationConfig, annihilation, creation,
                        guarded_norm, triangular_matrix_function)


@dataclass(frozen=True)
class DeformationParams:
    """Deformation scalars z, p (real) and the linear-combination coefficients
    lam, mu, nu (complex), with polar accessors:

        mu = delta e^{i phi},  lam = beta e^{i theta},  nu = -gamma e^{i eta_phase}.
    """

    z: float = 0.0
    p: float = 0.0
    lam: complex = 0.0
    mu: complex = 0.0
    nu: complex = 0.0

    def __post_init__(self):
        for name in ("z", "p"):
            val = getattr(self, name)
            if isinstance(val, complex) and val.imag != 0:
                raise BadParams(f"{name} must be real, got {val}")
            object.__setattr__(self, name, float(np.real(val)))

    @classmethod
    def from_polar(cls, delta=0.0, phi=0.0, beta=0.0, theta=0.0,
                   gamma=0.0, eta_phase=0.0, z=0.0, p=0.0):
        if delta < 0 or beta < 0 or gamma < 0:
            raise BadParams("polar moduli delta, beta, gamma must be >= 0")
        return cls(z=z, p=p,
                   lam=beta * cmath.exp(1j * theta),
                   mu=delta * cmath.exp(1j * phi),
                   nu=-gamma * cmath.exp(1j * eta_phase))

    @property
    def delta(self) -> float:
        return abs(self.mu)

    @property
    def phi(self) -> float:
        return cmath.phase(self.mu) if self.mu != 0 else 0.0

    @property
    def beta(self) -> float:
        return abs(self.lam)

    @property
    def theta(self) -> float:
        return cmath.phase(self.lam) if self.lam != 0 else 0.0

    @property
    def gamma(self) -> float:
        return abs(self.nu)

    @property
    def eta_phase(self) -> float:
        return cmath.phase(-self.nu) if self.nu != 0 else 0.0


class RealizationKind(Enum):
    """The six boson realizations."""

    TildeZ0_Cas1 = "tilde_z0_case1"     # A = -a+, B = e^{z a+}, C = e^{z a+} a
    TildeZ0_Cas2 = "tilde_z0_case2"     # A = a,  B = e^{-z a}, C = a+ e^{-z a}
    Uzp_One = "uzp_one"                 # two-parameter, built on a+
    Uzp_Two = "uzp_two"                 # two-parameter, built on a
    Celeghini_One = "celeghini_one"     # z = 0 special case of Uzp_One
    Celeghini_Two = "celeghini_two"     # z = 0 special case, C built on a+

P_KINDS = {RealizationKind.Uzp_One, RealizationKind.Uzp_Two,
           RealizationKind.Celeghini_One, RealizationKind.Celeghini_Two}


@dataclass(frozen=True, eq=False)
class AlgebraTriple:
    A: FockOperator
    B: FockOperator
    C: FockOperator
    kind: RealizationKind


# ---------------------------------------------------------------------------
# scalar Taylor-series generators (expansion coefficients f^(m)(alpha)/m!)
# ---------------------------------------------------------------------------

def _pow_series(u, c, n):
    """Coefficients of (u(x))^c to order n-1 given coefficients of u, u[0] != 0.

    J.C.P. Miller recurrence: w0 = u0^c, n w_n u0 = sum_k ((c+1)k - n) u_k w_{n-k}.
    """
    u = list(u) + [0.0] * n
    w = [complex(u[0]) ** c]
    for m in range(1, n):
        acc = 0.0j
        for k in range(1, m + 1):
            acc += ((c + 1) * k - m) * u[k] * w[m - k]
        w.append(acc / (m * u[0]))
    return w


def exp_series(alpha, n):
    """exp(alpha + x) = e^alpha sum x^m/m!."""
    e = cmath.exp(alpha)
    out, term = [], e
    for m in range(n):
        out.append(term)
        term /= (m + 1)
    return out


def cosh_series(alpha, n):
    c, s = cmath.cosh(alpha), cmath.sinh(alpha)
    return [(c if m % 2 == 0 else s) / math.factorial(m) for m in range(n)]


def sinh_series(alpha, n):
    c, s = cmath.cosh(alpha), cmath.sinh(alpha)
    return [(s if m % 2 == 0 else c) / math.factorial(m) for m in range(n)]


def asinh_series(alpha, n):
    """Coefficients of arcsinh(alpha + x): derivative is (1+(alpha+x)^2)^(-1/2)."""
    h = _pow_series([1 + alpha * alpha, 2 * alpha, 1.0], -0.5, max(n - 1, 1))
    out = [cmath.asinh(alpha)]
    for m in range(1, n):
        out.append(h[m - 1] / m)
    return out


def sqrt_one_plus_sq_series(alpha, n):
    """Coefficients of sqrt(1 + (alpha + x)^2)."""
    return _pow_series([1 + alpha * alpha, 2 * alpha, 1.0], 0.5, n)


def recip_series(alpha, n):
    """Coefficients of 1/(alpha + x)."""
    return [(-1) ** m / alpha ** (m + 1) for m in range(n)]


def _nilpotent_part(M, tol=1e-12):
    """Split M = alpha I + K with K strictly triangular; the diagonal must be constant."""
    d = np.diag(M)
    alpha = complex(d[0])
    if np.max(np.abs(d - alpha)) > tol:
        raise BadParams("matrix diagonal is not constant; cannot split off scalar part")
    K = M - alpha * np.eye(M.shape[0], dtype=complex)
    np.fill_diagonal(K, 0.0)
    return alpha, K


def _apply_series(series_fn, M, cfg):
    """f(M) for M = alpha I + nilpotent, with f's Taylor data from series_fn(alpha, N)."""
    alpha, K = _nilpotent_part(M)
    return triangular_matrix_function(series_fn(alpha, cfg.dim), alpha, K, cfg)


# ---------------------------------------------------------------------------
# realizations
# ---------------------------------------------------------------------------

def build_realization(kind: RealizationKind, params: DeformationParams,
                      cfg: TruncationConfig) -> AlgebraTriple:
    """Operator triple (A, B, C) for the requested realization.

    Raises BadParams when p = 0 is passed for a p-dependent kind.
    """
    z, p = params.z, params.p
    if kind in P_KINDS and p == 0:
        raise BadParams(f"{kind.name} needs p != 0")
    a = annihilation(cfg)
    ad = creation(cfg)
    N = cfg.dim
    ident = np.eye(N, dtype=complex)

    if kind == RealizationKind.TildeZ0_Cas1:
        E = triangular_matrix_function(exp_series(0.0, N), 0.0, z * ad, cfg)
        return AlgebraTriple(A=-ad, B=E, C=E @ a, kind=kind)

    if kind == RealizationKind.TildeZ0_Cas2:
        E = triangular_matrix_function(exp_series(0.0, N), 0.0, -z * a, cfg)
        return AlgebraTriple(A=a, B=E, C=ad @ E, kind=kind)

    if kind == RealizationKind.Uzp_One:
        E = triangular_matrix_function(exp_series(0.0, N), 0.0, z * ad, cfg)
        M = (p / 2) * E                       # diag p/2, rest nilpotent
        B = (2 / p) * _apply_series(asinh_series, M, cfg)
        C = E @ _apply_series(sqrt_one_plus_sq_series, M, cfg) @ a
        return AlgebraTriple(A=-ad, B=B, C=C, kind=kind)

    if kind == RealizationKind.Uzp_Two:
        E = triangular_matrix_function(exp_series(0.0, N), 0.0, -z * a, cfg)
        M = (p / 2) * E
        B = (2 / p) * _apply_series(asinh_series, M, cfg)
        C = ad @ E @ _apply_series(sqrt_one_plus_sq_series, M, cfg)
        return AlgebraTriple(A=a, B=B, C=C, kind=kind)

    if kind == RealizationKind.Celeghini_One:
        B = (2 / p) * math.asinh(p / 2) * ident
        return AlgebraTriple(A=-ad, B=B, C=math.sqrt(1 + p * p / 4) * a, kind=kind)

    if kind == RealizationKind.Celeghini_Two:
        B = (2 / p) * math.asinh(p / 2) * ident
        return AlgebraTriple(A=a, B=B, C=math.sqrt(1 + p * p / 4) * ad, kind=kind)

    raise BadParams(f"unknown realization kind {kind!r}")


def commutator_residual_uzp(triple: AlgebraTriple, params: DeformationParams,
                            cfg: TruncationConfig):
    """Guarded norms of the two-parameter defining relations:

        [A,B],   [B,C] + (2z/p^2)(cosh pB - 1),   [A,C] - (1/p) sinh pB.
    """
    z, p = params.z, params.p
    A, B, C = triple.A, triple.B, triple.C
    ident = np.eye(cfg.dim, dtype=complex)
    cosh_pB = _apply_series(cosh_series, p * B, cfg)
    sinh_pB = _apply_series(sinh_series, p * B, cfg)
    r1 = guarded_norm(A @ B - B @ A, cfg)
    r2 = guarded_norm(B @ C - C @ B + (2 * z / p ** 2) * (cosh_pB - ident), cfg)
    r3 = guarded_norm(A @ C - C @ A - sinh_pB / p, cfg)
    return r1, r2, r3


def commutator_residual_tilde(triple: AlgebraTriple, params: DeformationParams,
                              cfg: TruncationConfig):
    """Guarded norms of [A,B], [B,C] + z B^2, [A,C] - B."""
    z = params.z
    A, B, C = triple.A, triple.B, triple.C
    r1 = guarded_norm(A @ B - B @ A, cfg)
    r2 = guarded_norm(B @ C - C @ B + z * (B @ B), cfg)
    r3 = guarded_norm(A @ C - C @ A - B, cfg)
    return r1, r2, r3


def tilde_basis_change(triple: AlgebraTriple, p: float,
                       cfg: TruncationConfig) -> AlgebraTriple:
    """Map a two-parameter triple to the one-parameter (tilde) basis:

        A -> A,   B -> (2/p) sinh(pB/2),   C -> cosh(pB/2)^{-1} C.

    The inverse cosh factor is an exact finite sum (reciprocal series on the
    nilpotent split); SingularCosh if its scalar part vanishes numerically.
    """
    A, B, C = triple.A, triple.B, triple.C
    half = (p / 2) * B
    B_t = (2 / p) * _apply_series(sinh_series, half, cfg)
    cosh_half = _apply_series(cosh_series, half, cfg)
    alpha, K = _nilpotent_part(cosh_half)
    if abs(alpha) < 1e-12:
        raise SingularCosh(f"cosh(pB/2) scalar part {alpha} ~ 0")
    inv = triangular_matrix_function(recip_series(alpha, cfg.dim), alpha, K, cfg)
    return AlgebraTriple(A=A, B=B_t, C=inv @ C, kind=triple.kind)
