"""Point counts, closed points, primitive orbits, fixed-point groups.

The same integers show up four ways and the demo prints the crosswalk:
N_n as det(F^n - I), the Moebius-inverted closed points a_d, the
primitive orbit counts b_nu of the Frobenius action, and the Smith
normal form of the group of F^n-fixed points.

Run:  python demos/orbit_atlas.py
"""

from weilflow import (
    build_count_table,
    closed_point_count,
    fixed_point_group,
    frobenius_model,
    orbit_table,
    parse_weil_datum,
    primitive_orbit_count,
)

INPUTS = [
    {"q": 5, "trace": 2, "label": "E/F5, a=2"},
    {"q": 7, "trace": 3, "label": "E/F7, a=3"},
    {"q": 5, "g": 2, "weil_poly": [1, -6, 18, -30, 25], "label": "surface/F5"},
]

N_MAX = 8


def main():
    for doc in INPUTS:
        w = parse_weil_datum(doc)
        model = frobenius_model(w)
        ct = build_count_table(model, N_MAX)
        orbits = orbit_table(ct)

        print(f"=== {w.label}   (q={w.q}, g={w.g})")
        print(f"{'n':>3} {'N_n':>12} {'a_n':>12} {'b_n':>12}   fixed group")
        for n in range(1, N_MAX + 1):
            a_n = closed_point_count(ct, n)
            b_n = primitive_orbit_count(ct, n)
            grp = fixed_point_group(model, n)
            shape = " x ".join(f"Z/{d}" for d in grp.divisors if d > 1)
            print(f"{n:>3} {ct.count(n):>12} {a_n:>12} {b_n:>12}   {shape}")
            assert a_n == b_n
            assert grp.order == ct.count(n)

        # every degree-n point lies on exactly one primitive orbit, so the
        # weighted orbit counts reassemble the fixed-point totals
        n = N_MAX
        total = sum(d * closed_point_count(ct, d)
                    for d in range(1, n + 1) if n % d == 0)
        print(f"sum of d*a_d over d | {n}: {total} = N_{n}")
        print(f"orbit lengths are d*log q: first few "
              f"{[round(l, 4) for l in orbits.lengths[:4]]}")
        print()


if __name__ == "__main__":
    main()
