"""Truncated Fock-space linear algebra.

States are plain 1-d complex numpy arrays of amplitudes over |0>..|N-1>
(FockVector); operators are dense N x N complex matrices (FockOperator).
Identity checks always exclude the top ``guard`` levels because truncation
breaks the ladder relations there.
"""

from dataclasses import dataclass
from math import factorial, sqrt

import numpy as np
import scipy.linalg

from .errors import NotNilpotent, TailTooHeavy, ZeroNorm

# semantic aliases; everything here is plain numpy
FockVector = np.ndarray
FockOperator = np.ndarray


@dataclass(frozen=True)
class TruncationConfig:
    """Basis size, guard band and tail tolerance for a truncated Fock space.

    guard defaults to dim // 4; tail_tol is the maximum relative norm allowed
    in the top ``guard`` levels of any state accepted as converged.
    """

    dim: int
    guard: int = -1  # -1 means "use dim // 4"
    tail_tol: float = 1e-8

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.guard == -1:
            object.__setattr__(self, "guard", self.dim // 4)
        if not (0 <= self.guard < self.dim):
            raise ValueError(f"need 0 <= guard < dim, got guard={self.guard}")
        if self.tail_tol < 0:
            raise ValueError("tail_tol must be >= 0")

    @property
    def kept(self) -> int:
        """Number of levels below the guard band."""
        return self.dim - self.guard


DEFAULT_CONFIG = TruncationConfig(dim=64, guard=16)


def annihilation(cfg: TruncationConfig) -> FockOperator:
    """Matrix of a: entry (n-1, n) = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1, cfg.dim, dtype=float)), 1).astype(complex)


def creation(cfg: TruncationConfig) -> FockOperator:
    """Matrix of a^dagger: entry (n+1, n) = sqrt(n+1). Strictly lower triangular,
    hence nilpotent in the truncation: (a^dagger)^N = 0."""
    return annihilation(cfg).conj().T


def number_operator(cfg: TruncationConfig) -> FockOperator:
    return np.diag(np.arange(cfg.dim, dtype=float)).astype(complex)


def vacuum(cfg: TruncationConfig) -> FockVector:
    v = np.zeros(cfg.dim, dtype=complex)
    v[0] = 1.0
    return v


def coherent_state(xi_bar: complex, cfg: TruncationConfig) -> FockVector:
    """Unnormalized |xi_bar> = e^{xi_bar a^dagger}|0>: amps[n] = xi_bar^n / sqrt(n!)."""
    amps = np.empty(cfg.dim, dtype=complex)
    amps[0] = 1.0
    for n in range(1, cfg.dim):
        amps[n] = amps[n - 1] * xi_bar / sqrt(n)
    check_tail(amps, cfg)
    return amps


def tail_fraction(v: FockVector, cfg: TruncationConfig) -> float:
    """Relative norm carried by the top ``guard`` levels."""
    total = float(np.linalg.norm(v))
    if total == 0.0:
        return 0.0
    if cfg.guard == 0:
        return 0.0
    return float(np.linalg.norm(v[cfg.kept:])) / total


def check_tail(v: FockVector, cfg: TruncationConfig) -> None:
    frac = tail_fraction(v, cfg)
    if frac > cfg.tail_tol:
        raise TailTooHeavy(
            f"top-{cfg.guard} levels hold {frac:.3e} of the norm "
            f"(tail_tol={cfg.tail_tol:.1e}); increase dim"
        )


def guarded_block(mat: FockOperator, cfg: TruncationConfig) -> FockOperator:
    """Leading (N-g) x (N-g) block, the only part where operator identities hold."""
    k = cfg.kept
    return mat[:k, :k]


def guarded_norm(mat: FockOperator, cfg: TruncationConfig) -> float:
    """Spectral norm of the guarded block."""
    return float(np.linalg.norm(guarded_block(mat, cfg), ord=2))


def triangular_matrix_function(series_coeffs, alpha: complex, K: FockOperator,
                               cfg: TruncationConfig) -> FockOperator:
    """f(alpha*I + K) for strictly triangular (nilpotent) K, by the exact finite
    Taylor sum  sum_m coeffs[m] K^m  with coeffs[m] = f^(m)(alpha)/m!.

    Exact within the truncation since K^N = 0; alpha is the expansion point the
    coefficients were generated at (recorded for the caller's bookkeeping).
    """
    if np.any(np.abs(np.diag(K)) != 0):
        raise NotNilpotent("K has a nonzero diagonal entry")
    N = cfg.dim
    out = complex(series_coeffs[0]) * np.eye(N, dtype=complex)
    term = np.eye(N, dtype=complex)
    for m in range(1, min(len(series_coeffs), N)):
        term = term @ K
        if not term.any():
            break
        out += complex(series_coeffs[m]) * term
    return out


def matrix_exponential(M: FockOperator) -> FockOperator:
    """expm via scipy's scaling-and-squaring (Pade) implementation."""
    return scipy.linalg.expm(np.asarray(M, dtype=complex))


def displacement_operator(lam: complex, cfg: TruncationConfig) -> FockOperator:
    """D(lam) = exp(lam a^dagger - conj(lam) a)."""
    a = annihilation(cfg)
    ad = a.conj().T
    return matrix_exponential(lam * ad - np.conj(lam) * a)


def squeeze_operator(chi: complex, cfg: TruncationConfig) -> FockOperator:
    """S(chi) = exp(chi (a^dagger)^2/2 - conj(chi) a^2/2).

    With chi = -artanh(delta) e^{i phi} this satisfies the Bogoliubov relation
    S^dagger a S = (a - delta e^{i phi} a^dagger) / sqrt(1 - delta^2)
    on the guarded subspace.
    """
    a = annihilation(cfg)
    ad = a.conj().T
    return matrix_exponential(chi * (ad @ ad) / 2 - np.conj(chi) * (a @ a) / 2)


def inner_product(u: FockVector, v: FockVector) -> complex:
    """<u|v> with the physicists' convention (antilinear in u)."""
    return complex(np.vdot(u, v))


def norm(v: FockVector) -> float:
    return float(np.linalg.norm(v))


def normalize(v: FockVector) -> FockVector:
    n = norm(v)
    if n < 1e-300:
        raise ZeroNorm("cannot normalize a zero vector")
    return v / n


def expectation(op: FockOperator, v: FockVector) -> complex:
    """<v|op|v> for a normalized state v."""
    return complex(np.vdot(v, op @ v))
