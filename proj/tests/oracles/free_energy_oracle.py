"""Independent reference values for the unit and acceptance tests.

Free energy: direct Matsubara sum with scipy.integrate.quad on the plain
Fresnel coefficients. Temperature corrections: mpmath, with g(m) taken at
leading order in alpha where it reduces to -Li3(A_mu).
"""
import math

import mpmath as mp
import numpy as np
from scipy import integrate

HBAR = 1.054571817e-34
KB = 1.380649e-23
C = 299792458.0


def permittivity(zeta, eps_bar, omega0, four_pi_sigma):
    return 1 + (eps_bar - 1) / (1 + (zeta / omega0) ** 2) + four_pi_sigma / zeta


def g_mode(m, T, a, pol, eps_bar=11.67, omega0=8e15, four_pi_sigma=1e12):
    zeta = 2 * math.pi * KB * T / HBAR * m
    x0 = 2 * a / C * zeta
    if m == 0:
        r2 = 1.0 if pol == "TM" else 0.0
        if r2 == 0.0:
            return 0.0
        f = lambda x: x * math.log(-math.expm1(-x))
        return integrate.quad(f, 0, np.inf, epsabs=0, epsrel=1e-13, limit=400)[0]
    eps = permittivity(zeta, eps_bar, omega0, four_pi_sigma)

    def f(x):
        q2 = (x0 / x) ** 2
        k = math.sqrt(1 + (eps - 1) * q2)
        r = (eps - k) / (eps + k) if pol == "TM" else (1 - k) / (1 + k)
        return x * math.log1p(-r * r * math.exp(-x))

    pts = [x0, x0 + 1, x0 + 10, x0 + 60]
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        total += integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-13, limit=400)[0]
    return total


def free_energy(T, a, pol):
    """F in J/m^2: (kB T / (8 pi a^2)) sum' g(m)."""
    s = 0.5 * g_mode(0, T, a, pol)
    m = 1
    while True:
        g = g_mode(m, T, a, pol)
        s += g
        if abs(g) < 1e-18 * abs(s):
            break
        m += 1
    return KB * T / (8 * math.pi * a * a) * s


def delta_f_tm_leading(T, eps_bar, a=1e-6, four_pi_sigma=1e12, n_sum=200):
    mp.mp.dps = 30
    T, eb, sig, a = mp.mpf(T), mp.mpf(eps_bar), mp.mpf(four_pi_sigma), mp.mpf(a)
    t = 2 * mp.pi * KB * T / HBAR / sig
    A = lambda mu: ((1 + (eb - 1) * mu) / (1 + (eb + 1) * mu)) ** 2
    g = lambda m: -mp.polylog(3, A(m * t)) if m > 0 else -mp.zeta(3)
    s = g(0) / 2 + mp.fsum(g(m) for m in range(1, n_sum)) + g(n_sum) / 2
    integral = mp.quad(g, [0, 1e-6, 1e-3, 1 / t / eb, 1 / t, n_sum])
    tail = mp.mpf(0)
    for k in range(1, 6):
        tail -= mp.bernoulli(2 * k) / mp.factorial(2 * k) * mp.diff(g, n_sum, 2 * k - 1)
    gamma = s - integral + tail
    alpha = 2 * a / C * sig
    return sig**3 * t / (4 * mp.pi**2 * alpha**2) * gamma * HBAR / C**2


if __name__ == "__main__":
    for pol in ("TM", "TE"):
        print(f"F_{pol}(Si, 1 um, 1 K) = {free_energy(1.0, 1e-6, pol):.12e}")
    for eb in (11.67, 1.0):
        for T in (0.02, 0.05):
            print(f"dF_TM(eps_bar={eb}, T={T}) = {mp.nstr(delta_f_tm_leading(T, eb), 12)}")
