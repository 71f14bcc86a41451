#!/usr/bin/env python3
"""Smoke test for the unirule extension module.

Build and stage the module first:

    cargo build --release -p unirule-py
    cp target/release/libunirule.so python/unirule.so

then run `python3 python/smoke_test.py`.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

try:
    import unirule
except ImportError as exc:
    sys.exit(
        f"cannot import unirule ({exc}); build it with\n"
        "  cargo build --release -p unirule-py\n"
        "  cp target/release/libunirule.so python/unirule.so"
    )


def check(label, actual, expected):
    if actual != expected:
        sys.exit(f"FAIL {label}: expected {expected!r}, got {actual!r}")
    print(f"ok   {label}: {actual!r}")


def main():
    f7 = unirule.make_prime_field(7)
    check("F7 size", (f7.p, f7.k, f7.q), (7, 1, 7))

    cubic = unirule.parse_poly("x0^3 + x1^3 + x2^3", f7, 2)
    check("cubic degree", cubic.degree, 3)
    check("cubic terms", cubic.num_terms, 3)
    check("cubic eval at (1,1,3)", cubic.evaluate([1, 1, 3]), 1)

    counts = unirule.count_projective([cubic], f7, 2, verify=True)
    check("cubic projective count", counts["projective_points"], 9)
    check("cubic affine cone", counts["affine_cone_zeros"], 55)

    cert = unirule.certify_not_uniruled([cubic], f7, 2)
    check("certify verdict", cert["verdict"], "not-geometrically-uniruled")
    check("certify residue", cert["residue"], 2)
    check("certify smoothness", cert["smoothness"]["kind"], "fermat-exact")
    check("certify classification", cert["classification"], "calabi-yau")

    coeff = unirule.hasse_coefficient(cubic, mode="both")
    check("coefficient", coeff["coefficient"], 6)
    check("coefficient agreement", coeff["agreement"], True)

    hc = unirule.hasse_certify([cubic], f7, 2, verify=True)
    check("hasse verdict", hc["verdict"], "not-geometrically-uniruled")
    check("hasse cross-check count", hc["count"], 9)

    f2 = unirule.make_prime_field(2)
    cubic2 = unirule.fermat_poly(2, 3, f2)
    cert2 = unirule.certify_not_uniruled([cubic2], f2, 2)
    check("F2 cubic verdict", cert2["verdict"], "inconclusive")
    check("F2 cubic count", cert2["count"], 3)

    f4 = unirule.make_extension_field(2, 2, seed=1)
    check("F4 size", f4.q, 4)
    check("F4 modulus", f4.modulus, [1, 1, 1])

    try:
        unirule.make_prime_field(6)
    except ValueError as exc:
        print(f"ok   composite rejected: {exc}")
    else:
        sys.exit("FAIL: make_prime_field(6) should raise")

    try:
        unirule.parse_poly("x0^2 + x1", f7, 2)
    except ValueError as exc:
        print(f"ok   inhomogeneous rejected: {exc}")
    else:
        sys.exit("FAIL: inhomogeneous parse should raise")

    bounds = unirule.codimension_bounds(3, [5])
    check("bounds rc lb", bounds["rc_locus_codim_lb"], 1)
    check("bounds uniruled lb", bounds["uniruled_locus_codim_lb"], 2)
    check("bounds threshold", bounds["no_rational_curves"], True)
    check("bounds moduli dim", bounds["hypersurface_moduli_dim"], 55)

    check("classify quartic surface", unirule.classify(3, [4]), "calabi-yau")

    sk = unirule.shioda_katsura(2, 5, 3)
    check("sk exponent", sk["sk_nu"], 2)
    check("sk verdict", sk["unirational"], "yes")

    fr = unirule.fermat_nonuniruled(7, 3, 2, verify=True)
    check("fermat family flag", fr["paper_nonuniruled"], True)
    check("fermat family coefficient", fr["verified_coefficient"], 6)

    rows = unirule.fermat_scan((2, 7), (5, 5), (3, 3))
    check("scan rows", [r["p"] for r in rows], [2, 3, 5, 7])
    check("scan nu", rows[0]["sk_nu"], 2)

    print("\nall smoke checks passed")


if __name__ == "__main__":
    main()
