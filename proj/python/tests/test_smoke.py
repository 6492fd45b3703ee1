"""Smoke tests for the _weightbench extension.

Run directly (argv[1] = directory containing the built module) or via pytest
after an editable install.
"""

import math
import sys

if len(sys.argv) > 1:
    sys.path.insert(0, sys.argv[1])

import numpy as np

import _weightbench as wb


def check(name, cond):
    status = "ok" if cond else "FAIL"
    print(f"{status:4s}  {name}")
    return bool(cond)


def main():
    results = []

    results.append(check("version is a string", isinstance(wb.version(), str)))

    # Maximal function of an indicator dominates the indicator and peaks at 1.
    n = 256
    x = np.linspace(-2, 2, n, endpoint=False) + 2.0 / n
    f = ((x > 0) & (x < 1)).astype(float)
    mf = wb.hl_maximal(f, L=2.0)
    results.append(check("Mf >= f pointwise", bool(np.all(mf >= f - 1e-15))))
    results.append(check("max Mf == 1", abs(mf.max() - 1.0) < 1e-12))

    # Constant weight is exactly A_q^+ with constant 1 at q = 1.
    w = np.ones(64)
    rep = wb.aplus_constant(w, q=1.0, L=2.0)
    results.append(check("aplus(1, q=1) == 1", abs(rep["constant"] - 1.0) < 1e-12))

    # Constructive decomposition reassembles the input exactly.
    d = wb.decompose_ml(f, p=2.0, s=8.0, w=np.ones(n), L=2.0)
    results.append(check("decompose_ml reconstructs", d["recon_err"] <= 1e-10))
    results.append(check("decompose_ml quasinorm finite", math.isfinite(d["quasinorm"])))

    # Truncated Hilbert transform of an odd function about 0 stays odd.
    g = np.sin(np.pi * x / 2) * np.exp(-x * x)
    hg = wb.op_apply("hilbert:h", g, L=2.0)
    results.append(check("hilbert output shape", hg.shape == g.shape))
    results.append(check("hilbert output finite", bool(np.all(np.isfinite(hg)))))

    # Morrey norm of a constant against a constant weight is positive.
    mn = wb.morrey_norm(np.ones(64), p=2.0, sprime=2.0, w=np.ones(64), L=2.0)
    results.append(check("morrey norm positive", mn > 0))

    ok = all(results)
    print("smoke:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
