# A single Blaschke factor close to the circle breaks the wandering subspace property
import numpy as np

from shiftlab import (InnerFunction, ParamPair, build_subspace, find_counterexample, h5_witness,
                      thresholds, wsp_decision, wsp_inequality_lhs)

pair = ParamPair(np.sqrt(0.95), np.sqrt(0.05))
for a in (0.5, 0.7, 0.9):
    m = build_subspace(pair, InnerFunction.blaschke(a), 256)
    rep = wsp_decision(m, oracle_N=256)
    print(f"a={a}: lhs={wsp_inequality_lhs(pair, a):+.4f} |r|={rep.abs_r:.4f} "
          f"{rep.verdict} (krylov codim {rep.krylov_codim})")

# h5 is linear and vanishes at r
w = h5_witness(m)
print("h5 =", np.round(w.h5.coeffs[:3], 6), " root", w.root, " r", m.r)

print("1/(4+gamma) =", thresholds().one_over_4_plus_gamma)
for b in (0.02, 0.05, 0.1, 0.2, 0.24, 0.3):
    print(b, find_counterexample(b))
