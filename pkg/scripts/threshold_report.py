#!/usr/bin/env python3
"""Solve the threshold equation and print the full report.

Usage: python scripts/threshold_report.py [tol]
"""

import math
import sys

from wkbspec import completeness_verdict, solve_theta0


def main() -> int:
    tol = float(sys.argv[1]) if len(sys.argv) > 1 else 1e-12
    rep = solve_theta0(tol)
    print(f"theta0            = {rep.theta0:.15f} rad")
    print(f"enclosure         = [{rep.enclosure.lo:.15f}, {rep.enclosure.hi:.15f}]")
    print(f"interval          = (pi/10, pi/9) = ({math.pi/10:.15f}, {math.pi/9:.15f})")
    print(f"F at pi/10, pi/9  = {rep.f_lo:.6e}, {rep.f_hi:.6e}")
    print(f"sector half-angle = pi/2 + theta0 = {math.pi/2 + rep.theta0:.15f} rad"
          f" = {math.degrees(math.pi/2 + rep.theta0):.9f} deg")
    print()
    print("identity checks:")
    for chk in rep.identity_checks:
        print(f"  {'PASS' if chk.passed else 'FAIL'} {chk.name:22s} value={chk.value:+.9e}")
    print()
    for arg_deg in (0.0, 45.0, 90.0, 90.0 + 18.0, 90.0 + 20.5):
        import cmath

        c = cmath.exp(1j * math.radians(arg_deg))
        v = completeness_verdict(c)
        print(
            f"arg c = {arg_deg:6.1f} deg: complete={str(v.complete_by_threshold):5s} "
            f"margin={v.margin:+.6f} rad classical={v.classical_sector}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
