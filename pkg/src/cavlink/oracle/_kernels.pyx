# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled fixed-step RK4 kernels for the cavity-QED time-domain oracle.

Both kernels mirror :mod:`cavlink.oracle._kernels_py` operation for operation;
the Python module is the reference implementation.
"""
import numpy as np


def emission_rk4(double g, double kappa, double gamma, double kappa_l, double dt, Py_ssize_t n):
    """Integrate single-photon emission from |e,0⟩ for ``n`` steps of ``dt``.

    Returns ``(p, cg)``: cumulative leaked probability 2κ_L∫|c_g|² and the
    cavity amplitude c_g, both sampled at the ``n + 1`` step boundaries.
    """
    p_out = np.empty(n + 1, dtype=np.float64)
    cg_out = np.empty(n + 1, dtype=np.complex128)
    cdef double[::1] p = p_out
    cdef double complex[::1] cgv = cg_out
    cdef double complex ce = 1.0, cg = 0.0, ig = 1j * g
    cdef double complex k1e, k1g, k2e, k2g, k3e, k3g, k4e, k4g, te, tg
    cdef double acc = 0.0, k1p, k2p, k3p, k4p, two_kl = 2.0 * kappa_l
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    cdef Py_ssize_t i
    p[0] = 0.0
    cgv[0] = cg
    for i in range(n):
        k1e = -gamma * ce - ig * cg
        k1g = -kappa * cg - ig * ce
        k1p = two_kl * (cg.real * cg.real + cg.imag * cg.imag)
        te = ce + h2 * k1e
        tg = cg + h2 * k1g
        k2e = -gamma * te - ig * tg
        k2g = -kappa * tg - ig * te
        k2p = two_kl * (tg.real * tg.real + tg.imag * tg.imag)
        te = ce + h2 * k2e
        tg = cg + h2 * k2g
        k3e = -gamma * te - ig * tg
        k3g = -kappa * tg - ig * te
        k3p = two_kl * (tg.real * tg.real + tg.imag * tg.imag)
        te = ce + dt * k3e
        tg = cg + dt * k3g
        k4e = -gamma * te - ig * tg
        k4g = -kappa * tg - ig * te
        k4p = two_kl * (tg.real * tg.real + tg.imag * tg.imag)
        ce = ce + h6 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e)
        cg = cg + h6 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        acc = acc + h6 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        p[i + 1] = acc
        cgv[i + 1] = cg
    return p_out, cg_out


def scatter_rk4(double g, double kappa, double gamma, double kappa_l,
                double delta_c, double delta_a, double dt, double complex[::1] a_in):
    """Integrate the driven cavity/atom amplitudes.

    ``a_in`` holds the input field at half-step resolution (length ``2n + 1``).
    Returns the cavity amplitude ``a`` and atomic amplitude ``s`` at the
    ``n + 1`` step boundaries.
    """
    cdef Py_ssize_t m = a_in.shape[0]
    cdef Py_ssize_t n = (m - 1) // 2
    a_out = np.empty(n + 1, dtype=np.complex128)
    s_out = np.empty(n + 1, dtype=np.complex128)
    cdef double complex[::1] av = a_out
    cdef double complex[::1] sv = s_out
    cdef double complex lc = 1j * delta_c + kappa, la = 1j * delta_a + gamma, ig = 1j * g
    cdef double sq = (2.0 * kappa_l) ** 0.5
    cdef double complex a = 0.0, s = 0.0, d0, d1, d2
    cdef double complex k1a, k1s, k2a, k2s, k3a, k3s, k4a, k4s, ta, ts
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    cdef Py_ssize_t i
    av[0] = a
    sv[0] = s
    for i in range(n):
        d0 = sq * a_in[2 * i]
        d1 = sq * a_in[2 * i + 1]
        d2 = sq * a_in[2 * i + 2]
        k1a = -lc * a - ig * s + d0
        k1s = -la * s - ig * a
        ta = a + h2 * k1a
        ts = s + h2 * k1s
        k2a = -lc * ta - ig * ts + d1
        k2s = -la * ts - ig * ta
        ta = a + h2 * k2a
        ts = s + h2 * k2s
        k3a = -lc * ta - ig * ts + d1
        k3s = -la * ts - ig * ta
        ta = a + dt * k3a
        ts = s + dt * k3s
        k4a = -lc * ta - ig * ts + d2
        k4s = -la * ts - ig * ta
        a = a + h6 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        s = s + h6 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        av[i + 1] = a
        sv[i + 1] = s
    return a_out, s_out
