"""Internal: derivatives of Gaussian generating functions at the origin.

Everything here evaluates

    d^k/dsigma^k d^l/dtau^l  exp(A sigma^2 + B tau^2 + C sigma tau + D sigma + E tau) |_0

by exact combinatorial expansion (no numeric differencing).  Shared by the
squeezed-displaced matrix-element closed forms and the first-order norm
factors of the perturbed states.
"""

import cmath
from math import factorial, sqrt


def quadratic_exponential_derivative(k: int, l: int, A, B, C, D, E) -> complex:
    """Mixed derivative of exp(A s^2 + B t^2 + C s t + D s + E t) at s = t = 0."""
    tot = 0j
    for na in range(k // 2 + 1):
        for nb in range(l // 2 + 1):
            for nc in range(min(k - 2 * na, l - 2 * nb) + 1):
                i = k - 2 * na - nc
                j = l - 2 * nb - nc
                tot += (A ** na * B ** nb * C ** nc * D ** i * E ** j /
                        (factorial(na) * factorial(nb) * factorial(nc)
                         * factorial(i) * factorial(j)))
    return tot * factorial(k) * factorial(l)


def _displacement_pair(delta, phi, beta, theta):
    r = sqrt(1 - delta * delta)
    d_plus = (beta * cmath.exp(-1j * theta)
              - delta * beta * cmath.exp(1j * (theta - phi))) / r
    d_minus = (beta * cmath.exp(1j * theta)
               - delta * beta * cmath.exp(1j * (phi - theta))) / r
    return d_plus, d_minus


def gamma_kl(k: int, l: int, delta: float, phi: float, beta: float, theta: float) -> complex:
    """<0|D+ S+ (a+)^k a^l S D|0> for the squeezed-displaced vacuum."""
    if delta >= 1:
        raise ValueError("need delta < 1")
    r = sqrt(1 - delta * delta)
    A = -delta * cmath.exp(-1j * phi) / 2
    B = -delta * cmath.exp(1j * phi) / 2
    C = delta * delta
    D, E = _displacement_pair(delta, phi, beta, theta)
    return quadratic_exponential_derivative(k, l, A, B, C, D, E) / r ** (k + l)


def lambda_kl(k: int, l: int, delta: float, phi: float, beta: float, theta: float) -> complex:
    """<0|D+ S+ a^k (a+)^l S D|0> (anti-normal ordering)."""
    if delta >= 1:
        raise ValueError("need delta < 1")
    r = sqrt(1 - delta * delta)
    A = -delta * cmath.exp(1j * phi) / 2
    B = -delta * cmath.exp(-1j * phi) / 2
    C = 1.0
    d_plus, d_minus = _displacement_pair(delta, phi, beta, theta)
    # sigma couples to a^k, tau to (a+)^l: linear coefficients swap vs gamma_kl
    return quadratic_exponential_derivative(k, l, A, B, C, d_minus, d_plus) / r ** (k + l)
