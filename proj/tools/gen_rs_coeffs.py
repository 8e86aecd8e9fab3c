#!/usr/bin/env python3
"""Regenerates src/zeta/rs_coeffs.inc: Taylor coefficients of
Phi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) about p = 1/2.

Phi is entire, so the expansion converges on the whole range p in [0, 1).
The division by cos(2 pi z) is badly conditioned in double precision,
which is why the table is produced here with mpmath.
"""
import sys
import mpmath as mp

DEGREE = 64

def main():
    mp.mp.dps = 80
    phi = lambda z: -mp.cos(2 * mp.pi * z * z - 5 * mp.pi / 8) / mp.cos(2 * mp.pi * z)
    coeffs = mp.taylor(phi, 0, DEGREE)
    out = sys.stdout
    out.write("// Generated by tools/gen_rs_coeffs.py. Do not edit.\n")
    out.write("// Taylor coefficients of Phi(1/2 + z) in powers of z.\n")
    out.write("inline constexpr double kPhiTaylor[%d] = {\n" % (DEGREE + 1))
    for k, c in enumerate(coeffs):
        # Phi(1/2 + z) is even in z; odd coefficients are exactly zero.
        if k % 2 == 1 or c == 0:
            out.write("    0.0,\n")
        else:
            out.write("    %s,\n" % mp.nstr(c, 20, min_fixed=-1, max_fixed=-1))
    out.write("};\n")

if __name__ == "__main__":
    main()
