"""Regenerate the least-asymmetric scaling filter table in parma.wavelet.

The filters are built by spectral factorization of the Daubechies half-band
polynomial.  For V vanishing moments the squared magnitude of the scaling
filter is

    |H(w)|^2 = 2 (cos^2 w/2)^V * P(sin^2 w/2),
    P(y) = sum_{k=0}^{V-1} C(V-1+k, k) y^k.

P is factored over the z-plane (y = (2 - z - 1/z)/4) and one root is kept
from each reciprocal pair.  Among the 2^g admissible factorizations the
least-asymmetric one minimizes the deviation of the filter phase from a
linear phase, which is the defining property of the symlet family.

Run from the repository root:

    python3 scripts/mint_la_filters.py

and paste the printed table into src/parma/wavelet.py.
"""

import numpy as np
from fractions import Fraction
from math import comb
from itertools import product

import mpmath as mp

mp.mp.dps = 60


def _conv(a, b):
    out = [mp.mpf(0) * a[0]] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _halfband_z_poly(vm):
    """Coefficients (highest degree first) of z^(V-1) * P((2 - z - 1/z)/4).

    Computed exactly over the rationals so the subsequent root finding
    starts from the true polynomial.
    """
    deg = vm - 1
    acc = [Fraction(0)] * (2 * deg + 1)  # z^-deg .. z^deg, center index = deg
    base = [Fraction(-1, 4), Fraction(1, 2), Fraction(-1, 4)]
    for k in range(vm):
        c = comb(vm - 1 + k, k)
        term = [Fraction(1)]
        for _ in range(k):
            new = [Fraction(0)] * (len(term) + 2)
            for i, x in enumerate(term):
                for j, y in enumerate(base):
                    new[i + j] += x * y
            term = new
        lo = deg - k
        for i, x in enumerate(term):
            acc[lo + i] += c * x
    return [mp.mpf(f.numerator) / f.denominator for f in acc[::-1]]


def _phase_nonlinearity(h):
    """Max deviation of the filter phase from the best linear phase."""
    n = 1024
    w = np.linspace(0.01, np.pi - 0.01, n)
    k = np.arange(len(h))
    resp = (h[None, :] * np.exp(-1j * np.outer(w, k))).sum(axis=1)
    phase = np.unwrap(np.angle(resp))
    slope = np.polyfit(w, phase, 1)
    return np.abs(phase - np.polyval(slope, w)).max()


def la_scaling_filter(vm):
    """Least-asymmetric orthonormal scaling filter with `vm` vanishing moments."""
    if vm == 1:
        return np.array([1.0, 1.0]) / np.sqrt(2.0)
    roots = mp.polyroots(_halfband_z_poly(vm), maxsteps=200, extraprec=120)
    inside = [r for r in roots if abs(r) < 1]
    # group conjugate pairs; real roots stand alone
    real = sorted((r.real for r in inside if abs(mp.im(r)) < mp.mpf("1e-40")))
    cplx = sorted(
        (r for r in inside if mp.im(r) > mp.mpf("1e-40")), key=lambda r: mp.re(r)
    )
    groups = [[r] for r in real] + [[r, mp.conj(r)] for r in cplx]

    binom = [mp.mpf(1)]
    for _ in range(vm):
        binom = _conv(binom, [mp.mpf("0.5"), mp.mpf("0.5")])

    best = None
    for keep_inside in product([True, False], repeat=len(groups)):
        sel = []
        for grp, inside_flag in zip(groups, keep_inside):
            sel.extend(r if inside_flag else 1 / r for r in grp)
        q = [mp.mpc(1)]
        for r in sel:
            q = _conv(q, [mp.mpc(1), -r])
        h = _conv(binom, [mp.re(c) for c in q])
        scale = mp.sqrt(2) / mp.fsum(h)
        h = [c * scale for c in h]
        score = _phase_nonlinearity(np.array([float(c) for c in h]))
        if best is None or score < best[0] - 1e-12:
            best = (score, h)
    return np.array([float(c) for c in best[1]])


def check(h):
    vm = len(h) // 2
    assert abs(h.sum() - np.sqrt(2.0)) < 1e-10, "scaling sum"
    for s in range(1, vm):
        assert abs(np.dot(h[: len(h) - 2 * s], h[2 * s:])) < 1e-10, "even shift"
    assert abs(np.dot(h, h) - 1.0) < 1e-10, "unit norm"
    # vm zeros at z = -1 for the wavelet filter
    g = h[::-1].copy()
    g[1::2] *= -1.0
    k = np.arange(len(g))
    for p in range(vm):
        scale = np.abs(k ** p).sum()
        assert abs(np.dot(k ** p, g)) / scale < 1e-8, f"vanishing moment {p}"


if __name__ == "__main__":
    print("_LA_SCALING = {")
    for vm in range(2, 11):
        h = la_scaling_filter(vm)
        check(h)
        body = ",\n        ".join(repr(float(c)) for c in h)
        print(f"    {vm}: (\n        {body},\n    ),")
    print("}")
