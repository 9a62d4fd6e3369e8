"""Smoke test for the pymodsupport extension.

Build and install first:
    pip install --no-build-isolation ./crates/python
"""

import cmath
import math

import pymodsupport as ms


def main():
    third = ms.RatioParam.rational(1, 3)
    assert ms.rajchman_classify(third)["verdict"] == "NotRajchman_IntegerReciprocal"
    assert ms.pisot_check([1, -1, -1])["verdict"] == "Pisot"

    value, bound = ms.fs_coeff_product(third, 3)
    one, _ = ms.fs_coeff_product(third, 1)
    assert abs(abs(value) - abs(one)) <= 2 * bound + 1e-15
    oracle = ms.fs_coeff_oracle(third, 12, 3)
    assert abs(oracle - value) <= 2 * math.pi * 3 * 3.0**-12 + 1e-12
    table = ms.coefficient_table(ms.RatioParam.rational(2, 5), 0, 16)
    assert len(table) == 17 and table[0] == 1

    lam = 0.5 * cmath.exp(0.3j)
    series = ms.CoefficientSeries([1, 0.5, 0.25j])
    phi = ms.phi_lambda(lam, series.degree)
    assert abs(series.pairing(phi) - series.evaluate(lam)) < 1e-14
    sup = ms.sup_over_s0(series, angles=1024, max_k=12)
    bracket = series.sup_norm_estimate(1024)
    assert sup["best"] <= bracket["upper"] + 1e-12

    alpha, xi = 0.6, ms.RatioParam.rational(2, 13)
    assert ms.admissible_parameters(alpha, xi.value)["accepted"]
    w = ms.herglotz_weight(alpha, xi, 4, 256)
    assert w["mass_identity_gap"] < 1e-6

    cand = ms.build_peak_candidate(alpha, xi, 4, 256, sup_grid=1 << 16, ring_grid=1 << 12, deficiency_cap=1.0)
    d = cand.diagnostics
    assert d["sup_upper"] <= 1 + 1e-6
    moments = ms.cantor_moments(xi, cand.series.degree)
    report = ms.verify_support_pair(cand.series, moments, grid=1 << 16)
    print(f"candidate D={cand.series.degree}: sup {d['sup_lower']:.6f}..{d['sup_upper']:.6f}, ratio {report['ratio']:.6f}")

    vanished = cand.vanish_at_origin()
    assert vanished.series.coefficients[0] == 0
    cross = ms.pairing_crosscheck(cand.series, xi, 10)
    assert cross["difference"] <= cross["bound"]
    print("smoke test ok")


if __name__ == "__main__":
    main()
