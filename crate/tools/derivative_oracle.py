#!/usr/bin/env python3
"""Brute-force extreme slopes of the preset initial profiles.

Maximizes/minimizes the analytic derivative of each profile on a dense
grid, then polishes with golden-section search at 50-digit precision.
The printed values are frozen into the Rust test suite.
"""

import mpmath as mp

mp.mp.dps = 50


def dense_extreme(df, lo, hi, samples=200001, maximize=True):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    step = (hi - lo) / (samples - 1)
    best_x, best = lo, df(lo)
    for i in range(1, samples):
        x = lo + i * step
        v = df(x)
        if (v > best) if maximize else (v < best):
            best_x, best = x, v
    # golden-section polish in a +/- step bracket
    a, b = best_x - step, best_x + step
    phi = (mp.sqrt(5) - 1) / 2
    for _ in range(200):
        c = b - phi * (b - a)
        d = a + phi * (b - a)
        fc, fd = df(c), df(d)
        if (fc > fd) if maximize else (fc < fd):
            b = d
        else:
            a = c
    x = (a + b) / 2
    return x, df(x)


def two_plateaus_d(x):
    # d/dx [0.1 + 0.35 e^{-(x+5)^2} + 0.55 e^{-(x+3)^2}]
    a1, c1, a2, c2 = mp.mpf("0.35"), -5, mp.mpf("0.55"), -3
    return -2 * a1 * (x - c1) * mp.exp(-((x - c1) ** 2)) - 2 * a2 * (x - c2) * mp.exp(
        -((x - c2) ** 2)
    )


def three_plateaus_d(x):
    terms = [(mp.mpf("0.35"), -5), (mp.mpf("0.65"), -2), (mp.mpf("0.45"), 0)]
    return sum(-2 * a * (x - c) * mp.exp(-((x - c) ** 2)) for a, c in terms)


def steep_plateau_d(x):
    # d/dx [0.8 e^{-8(x+2)^4}]
    s = x + 2
    return -mp.mpf("25.6") * s**3 * mp.exp(-8 * s**4)


def gaussian_d(x, a=mp.mpf("0.35"), c=0):
    return -2 * a * (x - c) * mp.exp(-((x - c) ** 2))


if __name__ == "__main__":
    for name, df, lo, hi in [
        ("two_plateaus", two_plateaus_d, -15, 10),
        ("three_plateaus", three_plateaus_d, -15, 10),
        ("steep_plateau", steep_plateau_d, -15, 12),
        ("gaussian a=0.35 c=0", gaussian_d, -15, 10),
    ]:
        xs, sup = dense_extreme(df, lo, hi, maximize=True)
        xi, inf = dense_extreme(df, lo, hi, maximize=False)
        print(f"{name:22s} sup d0 = {mp.nstr(sup, 17)} at x = {mp.nstr(xs, 10)}")
        print(f"{'':22s} inf d0 = {mp.nstr(inf, 17)} at x = {mp.nstr(xi, 10)}")
    # closed-form checks
    print("gaussian analytic sup = a*sqrt(2)*exp(-1/2) =",
          mp.nstr(mp.mpf("0.35") * mp.sqrt(2) * mp.exp(mp.mpf(-1) / 2), 17))
    s4 = mp.mpf(3) / 32
    s = s4 ** mp.mpf("0.25")
    print("steep analytic |d|max = 25.6*s^3*exp(-8 s^4), s=(3/32)^(1/4) =",
          mp.nstr(mp.mpf("25.6") * s**3 * mp.exp(-8 * s4), 17))
