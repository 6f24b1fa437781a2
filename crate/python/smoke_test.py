#!/usr/bin/env python3
"""Smoke test for the cancelkit_py extension module.

Build the module first, then run this script from the repository root:

    cargo build -p cancelkit-py --release
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    lib = ROOT / "target" / "release" / "libcancelkit_py.so"
    if not lib.exists():
        sys.exit("build the extension first: cargo build -p cancelkit-py --release")
    staging = pathlib.Path(tempfile.mkdtemp(prefix="cancelkit_py_"))
    shutil.copy2(lib, staging / "cancelkit_py.so")
    sys.path.insert(0, str(staging))
    import cancelkit_py

    return cancelkit_py


def main():
    ck = load_module()

    # obstruction for {T2, T3} over Q, including the case-3(a) witness
    rep = json.loads(ck.decide("t", ["T(2)", "T(3)"], 2))
    assert rep["verdict"] == "OBSTRUCTED", rep["verdict"]
    cases = {w["case"] for w in rep["witnesses"]}
    assert "CASE3A" in cases, cases
    assert all(w["status"] == "VERIFIED" for w in rep["witnesses"])

    # determinism: the JSON string is byte-identical across runs
    assert ck.decide("t", ["T(2)", "T(3)"], 2) == ck.decide("t", ["T(2)", "T(3)"], 2)

    # absence certificate for {T5, P5}
    rep = json.loads(ck.decide("t", ["T(5)", "P(5)"], 3))
    assert rep["verdict"] == "PROVEN_CANCELLATION", rep["verdict"]
    assert rep["absence_proof"]["candidate_d_set"], rep["absence_proof"]

    # normal form of x^3 - 2x: fixes x Q(x^d) with d = 2
    nf = json.loads(ck.normal_form("t", "x^3 - 2*x"))
    assert "XQXD" in nf["kinds"], nf
    assert nf["xqxd_gcd"] == 2, nf

    # conic with a rational point, verified exactly
    conic = json.loads(ck.conic_point("t", "X^2 + X*Y + Y^2 - 3"))
    assert conic["verdict"]["status"] == "POINT_FOUND", conic
    assert len(conic["verdict"]["point"]) == 2, conic

    # conic with no rational point (Legendre obstruction)
    conic = json.loads(ck.conic_point("t", "X^2 + Y^2 + 1"))
    assert conic["verdict"]["status"] == "NO_POINT", conic

    # Chebyshev basis: x^3 = T3 + 3 T1
    cheb = json.loads(ck.cheb_coefficients("t", "x^3"))
    assert cheb == {"0": "0", "1": "3", "3": "1"}, cheb

    # collision oracle: T2 equalizes 1 and -1 immediately
    word, depth = ck.oracle("t", ["T(2)", "T(3)"], "1", "-1", 3)
    assert word == [0] and depth == 1, (word, depth)

    # errors surface as ValueError
    try:
        ck.decide("t", ["x + 1"], 2)
    except ValueError as e:
        assert "DEGREE_LT_2" in str(e), e
    else:
        sys.exit("degree guard did not trigger")

    print("smoke test passed: decide, normal_form, conic_point, "
          "cheb_coefficients, oracle")


if __name__ == "__main__":
    main()
