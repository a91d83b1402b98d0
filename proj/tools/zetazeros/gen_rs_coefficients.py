#!/usr/bin/env python3
"""Emit Taylor coefficients (in w = p - 1/2) of the Riemann-Siegel
correction functions C_0..C_4 as a C++ include file.

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p); with p = w + 1/2 this is
-[cos(5pi/8) cos(2 pi w^2) + sin(5pi/8) sin(2 pi w^2)] / cos(2 pi w).
"""
import sys
import mpmath as mp

mp.mp.dps = 120
DEG = 140  # working series length


def series_cos_sin_w2():
    # cos(2 pi w^2), sin(2 pi w^2) as series in w
    c = [mp.mpf(0)] * DEG
    s = [mp.mpf(0)] * DEG
    a = 2 * mp.pi
    for k in range(DEG):
        if 2 * k >= DEG:
            break
        term = a ** k / mp.factorial(k)
        if k % 4 == 0:
            c[2 * k] = term
        elif k % 4 == 1:
            s[2 * k] = term
        elif k % 4 == 2:
            c[2 * k] = -term
        else:
            s[2 * k] = -term
    return c, s


def series_cos_w():
    d = [mp.mpf(0)] * DEG
    a = 2 * mp.pi
    for k in range(DEG):
        if k % 2 == 0:
            d[k] = (-1) ** (k // 2) * a ** k / mp.factorial(k)
    return d


def divide(num, den):
    out = [mp.mpf(0)] * DEG
    for i in range(DEG):
        acc = num[i]
        for j in range(1, i + 1):
            acc -= den[j] * out[i - j]
        out[i] = acc / den[0]
    return out


def deriv(series, k):
    out = series
    for _ in range(k):
        out = [out[i + 1] * (i + 1) for i in range(len(out) - 1)] + [mp.mpf(0)]
    return out


def lin(*pairs):
    out = [mp.mpf(0)] * DEG
    for coef, ser in pairs:
        for i in range(DEG):
            out[i] += coef * ser[i]
    return out


def main():
    cw2, sw2 = series_cos_sin_w2()
    num = lin((-mp.cos(5 * mp.pi / 8), cw2), (-mp.sin(5 * mp.pi / 8), sw2))
    psi = divide(num, series_cos_w())
    pi = mp.pi
    d = lambda k: deriv(psi, k)
    C = [
        psi,
        lin((-1 / (96 * pi**2), d(3))),
        lin((1 / (64 * pi**2), d(2)), (1 / (18432 * pi**4), d(6))),
        lin((-1 / (64 * pi**2), d(1)), (-1 / (3840 * pi**4), d(5)),
            (-1 / (5308416 * pi**6), d(9))),
        lin((1 / (128 * pi**2), psi), (19 / (24576 * pi**4), d(4)),
            (11 / (5898240 * pi**6), d(8)), (1 / (2038431744 * pi**8), d(12))),
    ]
    out = sys.stdout
    out.write("// Generated by gen_rs_coefficients.py; do not edit.\n")
    out.write("// Taylor coefficients of C_k(p) in w = p - 1/2, |w| <= 1/2.\n")
    for k, ser in enumerate(C):
        # keep terms until |coef| * 2^-i is negligible and the tail stays so
        last = 0
        for i in range(DEG - 20):
            if abs(ser[i]) * mp.mpf(2) ** (-i) > mp.mpf(10) ** -24:
                last = i
        coeffs = ser[: last + 1]
        out.write(f"inline constexpr double kRsC{k}[{len(coeffs)}] = {{\n")
        for c in coeffs:
            out.write(f"    {mp.nstr(c, 20, min_fixed=0, max_fixed=0)},\n")
        out.write("};\n")


if __name__ == "__main__":
    main()
