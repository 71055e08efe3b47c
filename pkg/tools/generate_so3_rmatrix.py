#!/usr/bin/env python3
"""Generate the N=3 orthogonal braid matrix data file.

Construction: the spin-1 representation of U_t(sl2) with t = s = q^(1/2),
whose universal R-matrix gives the braid operator with eigenvalues
(t^2, -t^-2, t^-4) = (q, -q^-1, q^(1-3)) -- exactly the orthogonal
spectral structure in the deformation parameter q.  A diagonal basis
rescale (1, 1, t^2 + 1) symmetrizes the matrix, which is the index
convention the differential-calculus layer relies on.

The emitted file is DATA: the engine accepts it only after validating
the braid identity, the cubic characteristic identity and invertibility.
Entries are exact Laurent polynomials in s in the engine's scalar syntax.

Run from the repository root:  python tools/generate_so3_rmatrix.py
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qweyl.coeff import GR_ONE, GaussianRational, Scalar  # noqa: E402


def main():
    one = Scalar.one()
    t = Scalar.s_power(1)
    tinv = Scalar.s_power(-1)
    two = Scalar.from_int(2)

    # spin-1 matrices in the weight basis (v_+, v_0, v_-):
    #   E = [2] e_{0,-1} + e_{+,0},  F = e_{-,0} + [2] e_{0,+},  K = diag(t^2,1,t^-2)
    # universal R = t^(H(x)H/2) sum_n c_n E^n (x) F^n,
    #   c_0 = 1, c_1 = t - t^-1, c_2 = (t - t^-1)^2 t / [2]
    # evaluated directly on basis vectors below.
    lam2 = t + tinv                      # [2]_t
    c1 = t - tinv
    c2_times_lam2sq = c1 * c1 * t * lam2  # c_2 [2]^2 (the only place c_2 appears)

    m = {1: 0, 0: 1, -1: 2}              # weight label -> position
    labels = [1, 0, -1]

    def weight_factor(a, b):
        return Scalar.q_power(a * b)      # t^(2ab) = q^(ab)

    # R(v_a (x) v_b) as {(c, d): Scalar}
    def R_on(a, b):
        out = {}

        def put(c, d, coeff):
            out[(c, d)] = out.get((c, d), Scalar.zero()) + coeff

        # n = 0 term
        put(a, b, weight_factor(a, b))
        # n = 1: E v_a (x) F v_b
        ea = {(-1): (0, lam2), 0: (1, one)}.get(a)
        fb = {1: (0, lam2), 0: (-1, one)}.get(b)
        if ea and fb:
            (a1, ca), (b1, cb) = ea, fb
            put(a1, b1, c1 * ca * cb * weight_factor(a1, b1))
        # n = 2: E^2 v_a (x) F^2 v_b; E^2 = [2] e_{+,-}, F^2 = [2] e_{-,+}
        if a == -1 and b == 1:
            put(1, -1, c2_times_lam2sq * weight_factor(1, -1))
        return out

    # braid operator: flip after R
    rhat = {}
    for a in labels:
        for b in labels:
            for (c, d), coeff in R_on(a, b).items():
                if not coeff.is_zero():
                    rhat[((d, c), (a, b))] = coeff

    # symmetrizing diagonal rescale v_- -> (t^2 + 1) v_-
    scale = {1: one, 0: one, -1: t * t + one}
    sym = {}
    for ((i, j), (k, l)), coeff in rhat.items():
        factor_num = scale[i] * scale[j]
        den = scale[k] * scale[l]
        # all scale factors are monic polynomials in t^2; the quotient is
        # exact for every nonzero entry of this matrix
        val = _exact_div(factor_num * coeff, den)
        sym[((i, j), (k, l))] = val

    lines = ["# N=3 orthogonal braid matrix, lightcone basis (-1, 0, 1)",
             "# entries: i j k l  value     (value * v_i v_j component of "
             "Rhat(v_k v_l))",
             "N=3 basis=-1,0,1"]
    for ((i, j), (k, l)), coeff in sorted(sym.items()):
        if not coeff.is_zero():
            lines.append(f"{i} {j} {k} {l} {coeff}")
    path = os.path.join(os.path.dirname(__file__), "..",
                        "src", "qweyl", "data", "so3.rmat")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {path} with {len(sym)} entries")


def _exact_div(num: Scalar, den: Scalar) -> Scalar:
    """Exact division of Laurent polynomials (raises if not divisible)."""
    from qweyl.linalg import ScalarFraction
    f = ScalarFraction(num, den)
    if not f.den.is_one():
        raise ValueError(f"non-exact division: {num} / {den}")
    return f.num


if __name__ == "__main__":
    main()
