"""Map the stability region in the (field angle, E1) plane.

For |H| = |Hv| = 1 the instability threshold is E1^2 > 1 - |cos(alpha)|,
with alpha the angle between the two fields; this sweep samples the plane,
prints an ASCII map, and writes a plot-ready CSV.
Run: python demos/03_stability_map.py [out.csv]
"""

import math
import sys

import pvstab as pv

N_ALPHA, N_E1 = 61, 25


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else "stability_map.csv"
    alphas = [math.pi * k / (N_ALPHA - 1) for k in range(N_ALPHA)]
    e1s = [1.2 * k / (N_E1 - 1) for k in range(N_E1)]

    rows = []
    grid = {}
    for alpha in alphas:
        for e1 in e1s:
            st = pv.EquilibriumState(H_hat_t=(1.0, 0.0),
                                     Hv_hat_t=(math.cos(alpha), math.sin(alpha)),
                                     E1_hat=e1)
            cls = pv.classify(st)
            grid[(alpha, e1)] = cls.verdict
            rows.append((alpha, e1, cls.verdict.value, cls.margin, cls.f_min))

    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("# pvstab-csv v1\n")
        fh.write("alpha,E1,verdict,margin,f_min\n")
        for alpha, e1, verdict, margin, f_min in rows:
            fh.write(f"{alpha!r},{e1!r},{verdict},{margin!r},{f_min!r}\n")

    print("stability map, |H| = |Hv| = 1  ('#' unstable, '.' neutral, 'T' band)")
    print("E1")
    for e1 in reversed(e1s):
        cells = []
        for alpha in alphas:
            v = grid[(alpha, e1)]
            cells.append("#" if v is pv.Verdict.VIOLENTLY_UNSTABLE
                         else "T" if v.value.startswith("Transitional") else ".")
        print(f"{e1:5.2f} {''.join(cells)}")
    print("      " + "0" + " " * (N_ALPHA // 2 - 2) + "pi/2" + " "
          * (N_ALPHA // 2 - 4) + "pi  (alpha)")
    print()
    print("analytic boundary: E1 = sqrt(1 - |cos alpha|); "
          f"full grid written to {out_path}")


if __name__ == "__main__":
    main()
