#!/usr/bin/env python3
"""High-precision reference values for the closed-form blow-up thresholds.

Evaluates the three threshold formulas with 50-digit arithmetic (mpmath)
and prints the values frozen into the Rust test suite. Run:

    python3 tools/threshold_oracle.py
"""

import mpmath as mp

mp.mp.dps = 50


def threshold_const_ab(ga, gb, inf_d0):
    ga, gb, inf_d0 = mp.mpf(ga), mp.mpf(gb), mp.mpf(inf_d0)
    p = (ga + gb) / (ga * gb)
    scaled = (ga * gb) / (ga + gb) * inf_d0
    m = min(mp.mpf(-1), scaled)
    return p * (mp.mpf(1) / 2 + mp.sqrt(2) / 4 * mp.sqrt(3 - m))


def threshold_lin_ab(ga, gb):
    ga, gb = mp.mpf(ga), mp.mpf(gb)
    p = (ga + gb) / (ga * gb)
    q = ga / (2 * (ga + gb))
    return p * (1 + mp.sqrt(mp.mpf(3) / 2 + q * q))


def threshold_const_a(ga, inf_d0):
    ga, inf_d0 = mp.mpf(ga), mp.mpf(inf_d0)
    m = min(mp.mpf(-1), ga * inf_d0)
    return (mp.mpf(1) / 2 + mp.sqrt(2) / 4 * mp.sqrt(3 - m)) / ga


def show(label, value):
    print(f"{label:42s} = {mp.nstr(value, 20)}")


if __name__ == "__main__":
    show("const_ab(1, 0.5, -1)", threshold_const_ab(1, "0.5", -1))
    show("  exact 1.5 + 1.5*sqrt(2)", mp.mpf(3) / 2 + mp.mpf(3) / 2 * mp.sqrt(2))
    show("const_ab(1, 1, 0)", threshold_const_ab(1, 1, 0))
    show("  exact 1 + sqrt(2)", 1 + mp.sqrt(2))
    show("const_ab(3, 1.5, -2.0489)", threshold_const_ab(3, "1.5", "-2.0489"))
    show("lin_ab(1, 1)", threshold_lin_ab(1, 1))
    show("lin_ab(1, 0.5)", threshold_lin_ab(1, "0.5"))
    show("  exact 3*(1 + sqrt(29/18))", 3 * (1 + mp.sqrt(mp.mpf(29) / 18)))
    show("lin_ab(3, 1.5)", threshold_lin_ab(3, "1.5"))
    show("const_a(1, -1)", threshold_const_a(1, -1))
    show("const_a(1, -5)", threshold_const_a(1, -5))
    show("const_a(2, 0)", threshold_const_a(2, 0))
