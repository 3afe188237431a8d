"""Reeb-orbit combinatorics of Brieskorn links.

Principal periods, minimal Conley-Zehnder indices per orbit family, the
bounded-period positivity certificate for SFT degrees, and the resulting
order predictions.
"""

from s1cochain import (
    global_min_cz,
    is_adc_certified,
    milnor_model,
    min_cz,
    orbit_families,
    order_of_dilation,
    predicted_order,
    principal_periods,
)


def main() -> None:
    for exps in ([2, 3, 3, 3], [2, 3, 4, 4, 4], [3, 3, 3, 3]):
        print(f"\nexponents {tuple(exps)}")
        pps = principal_periods(exps)
        print(f"  principal periods: {[(p.period, p.indices) for p in pps]}")
        bound = 4 * max(p.period for p in pps)
        for fam in orbit_families(exps, bound)[:6]:
            print(f"  family T={fam.principal.period} N={fam.count}: "
                  f"total period {fam.total_period}, "
                  f"min CZ index {min_cz(exps, fam)}")
        g = global_min_cz(exps, bound)
        print(f"  global minimum {g.minimum} within period bound {bound} "
              f"(at the minimal period: {g.min_attained_at_minimal_period})")
        cert = is_adc_certified(exps, bound)
        print(f"  positive SFT degrees within bound: {cert.certified} "
              f"(minimal degree {cert.minimal_sft_degree})")
        pred = predicted_order(exps, bound)
        print(f"  predicted (semi-)dilation order: {pred.predicted_order} "
              f"(kodaira obstruction: {pred.kodaira_obstruction})")

    print("\nprediction vs. direct computation for the constant vectors:")
    for k, m in [(2, 2), (2, 3), (3, 3), (3, 4)]:
        pred = predicted_order([k] * (m + 1))
        direct = order_of_dilation(milnor_model(k, m, include_spheres=False))
        print(f"  (k,m)=({k},{m}): predicted {pred.predicted_order}, "
              f"computed {direct.order}")


if __name__ == "__main__":
    main()
