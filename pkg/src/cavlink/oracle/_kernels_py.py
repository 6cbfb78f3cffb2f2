"""Pure-Python fixed-step RK4 kernels (reference implementation).

These are used when the compiled extension is unavailable, or when the
environment variable ``CAVLINK_PURE_PYTHON`` is set.
"""
import numpy as np


def emission_rk4(g, kappa, gamma, kappa_l, dt, n):
    """Integrate single-photon emission from |e,0⟩ for ``n`` steps of ``dt``.

    Returns ``(p, cg)``: cumulative leaked probability 2κ_L∫|c_g|² and the
    cavity amplitude c_g, both sampled at the ``n + 1`` step boundaries.
    """
    n = int(n)
    p = [0.0] * (n + 1)
    cgs = [0j] * (n + 1)
    ce, cg = 1.0 + 0j, 0j
    ig = 1j * g
    two_kl = 2.0 * kappa_l
    h2, h6 = 0.5 * dt, dt / 6.0
    acc = 0.0
    for i in range(n):
        k1e = -gamma * ce - ig * cg
        k1g = -kappa * cg - ig * ce
        k1p = two_kl * (cg.real * cg.real + cg.imag * cg.imag)
        te, tg = ce + h2 * k1e, cg + h2 * k1g
        k2e = -gamma * te - ig * tg
        k2g = -kappa * tg - ig * te
        k2p = two_kl * (tg.real * tg.real + tg.imag * tg.imag)
        te, tg = ce + h2 * k2e, cg + h2 * k2g
        k3e = -gamma * te - ig * tg
        k3g = -kappa * tg - ig * te
        k3p = two_kl * (tg.real * tg.real + tg.imag * tg.imag)
        te, tg = ce + dt * k3e, cg + dt * k3g
        k4e = -gamma * te - ig * tg
        k4g = -kappa * tg - ig * te
        k4p = two_kl * (tg.real * tg.real + tg.imag * tg.imag)
        ce = ce + h6 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e)
        cg = cg + h6 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        acc = acc + h6 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        p[i + 1] = acc
        cgs[i + 1] = cg
    return np.asarray(p, dtype=np.float64), np.asarray(cgs, dtype=np.complex128)


def scatter_rk4(g, kappa, gamma, kappa_l, delta_c, delta_a, dt, a_in):
    """Integrate the driven cavity/atom amplitudes.

    ``a_in`` holds the input field at half-step resolution (length ``2n + 1``).
    Returns the cavity amplitude ``a`` and atomic amplitude ``s`` at the
    ``n + 1`` step boundaries.
    """
    drive = (2.0 * kappa_l) ** 0.5 * np.asarray(a_in, dtype=np.complex128)
    drive = drive.tolist()
    n = (len(drive) - 1) // 2
    lc, la, ig = 1j * delta_c + kappa, 1j * delta_a + gamma, 1j * g
    h2, h6 = 0.5 * dt, dt / 6.0
    a, s = 0j, 0j
    av = [0j] * (n + 1)
    sv = [0j] * (n + 1)
    for i in range(n):
        d0, d1, d2 = drive[2 * i], drive[2 * i + 1], drive[2 * i + 2]
        k1a = -lc * a - ig * s + d0
        k1s = -la * s - ig * a
        ta, ts = a + h2 * k1a, s + h2 * k1s
        k2a = -lc * ta - ig * ts + d1
        k2s = -la * ts - ig * ta
        ta, ts = a + h2 * k2a, s + h2 * k2s
        k3a = -lc * ta - ig * ts + d1
        k3s = -la * ts - ig * ta
        ta, ts = a + dt * k3a, s + dt * k3s
        k4a = -lc * ta - ig * ts + d2
        k4s = -la * ts - ig * ta
        a = a + h6 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        s = s + h6 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        av[i + 1] = a
        sv[i + 1] = s
    return np.asarray(av, dtype=np.complex128), np.asarray(sv, dtype=np.complex128)
