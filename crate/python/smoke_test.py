#!/usr/bin/env python3
"""Smoke test for the suq2py extension module.

Locates the compiled cdylib under target/ (building it if necessary),
imports it under the proper module name, and drives the main types and
operations end to end.  Exits nonzero on the first failure.
"""

import pathlib
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parents[1]


def locate_extension() -> pathlib.Path:
    candidates = [
        ROOT / "target" / "release" / "libsuq2py.so",
        ROOT / "target" / "debug" / "libsuq2py.so",
    ]
    for path in candidates:
        if path.exists():
            return path
    subprocess.run(
        ["cargo", "build", "-p", "suq2-py"],
        cwd=ROOT,
        check=True,
    )
    return candidates[1]


def main() -> None:
    so = locate_extension()
    staging = tempfile.mkdtemp(prefix="suq2py-")
    shutil.copy2(so, pathlib.Path(staging) / "suq2py.so")
    sys.path.insert(0, staging)
    import suq2py

    # exact Haar values
    assert suq2py.haar("-1", 0, 2, 2) == "1/3"
    assert Fraction(suq2py.haar("-1/2", 0, 1, 1)) == Fraction(4, 5)
    assert Fraction(suq2py.haar("-99/100", 0, 1, 1)) == Fraction(10000, 19801)
    assert suq2py.haar("-1", 1, 1, 1) == "0"
    profile = suq2py.haar_profile(0, 1, 1, ["-1", "-1/2"])
    assert [Fraction(v) for v in profile] == [Fraction(1, 2), Fraction(4, 5)]

    # exact algebra: the defining relations collapse to zero
    for q in ("-1", "-1/2", "-3/5"):
        a = suq2py.Element.alpha(q)
        g = suq2py.Element.gamma(q)
        one = suq2py.Element.unit(q)
        rel = a.star() * a + g.star() * g - one
        assert rel.term_count() == 0, f"relation failed at q={q}: {rel}"
    comm = suq2py.Element.gamma("-1") * suq2py.Element.gamma_star("-1")
    comm = comm - suq2py.Element.gamma_star("-1") * suq2py.Element.gamma("-1")
    assert comm.is_zero()

    # construction, serialization, printing
    x = suq2py.Element("-1")
    x.add_term(1, 0, 0, "3")
    x.add_term(0, 1, 1, "-1/2", "1/3")
    assert x.term_count() == 2 and x.degree() == 2 and x.q == "-1"
    round_trip = suq2py.Element.from_json(x.to_json())
    assert (round_trip - x).is_zero()
    assert "eta(1,0,0)" in str(x)

    # Haar state and invariance on an element
    w = suq2py.Element.monomial("-1", 0, 3, 3)
    assert w.haar() == "1/4"
    assert w.invariance_residual_terms() == (0, 0)

    # coproduct: counit-style collapse of gamma and a homomorphism check
    dg = suq2py.Element.gamma("-1").coproduct()
    assert dg.term_count() == 2
    lhs = (suq2py.Element.alpha("-1") * suq2py.Element.gamma("-1")).coproduct()
    rhs = suq2py.Element.alpha("-1").coproduct() * dg
    assert (lhs - rhs).is_zero()
    assert suq2py.TensorElement.from_json(dg.to_json()).term_count() == 2

    # the q = -1 matrix model: alpha at the pole is diag(1, -1)
    mat = suq2py.Element.alpha("-1").eval(0.0, 0.0, 0.0)
    assert abs(mat[0][0] - 1) < 1e-12 and abs(mat[1][1] + 1) < 1e-12
    assert abs(mat[0][1]) < 1e-12 and abs(mat[1][0]) < 1e-12

    # fiber norm bounds
    assert abs(suq2py.Element.alpha("-1/2").norm_lower_bound(12, 8) - 1.0) < 1e-12
    assert suq2py.Element.gamma("-1").model_norm_bound(8) <= 1.0 + 1e-12

    # degree pairings
    assert suq2py.phi_u_degree(24) == 2
    assert suq2py.witness_degree("fundamental", 24) == 1

    # error paths surface as ValueError
    try:
        suq2py.Element.alpha("0")
    except ValueError:
        pass
    else:
        raise AssertionError("q = 0 should be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
