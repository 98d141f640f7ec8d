# Invariant subspaces C f2 + C f1 + z^3 theta H^2 for a few inner functions
import numpy as np

from shiftlab import InnerFunction, ParamPair, build_subspace, verify_invariance
from shiftlab.subspaces import codimension_report, orthogonality_residuals

pair = ParamPair.from_alpha_sq(0.6, 0.3, -0.4)

thetas = [
    InnerFunction.monomial(1),
    InnerFunction.monomial(3),
    InnerFunction.blaschke(0.5j),
    InnerFunction.blaschke(0.3, -0.6 + 0.2j, power=1),
]

for th in thetas:
    m = build_subspace(pair, th, 128)
    inv = max(verify_invariance(m).values())
    orth = max(orthogonality_residuals(m).values())
    cod = codimension_report(m)["codim"]
    print(f"{str(th):28s} |g|^2={m.norm_sq_g:10.4f} |r|={m.abs_r:.4f} "
          f"invariance {inv:.1e} orthogonality {orth:.1e} codim {cod}")

# g solves (z - ab) g = (beta/t)(theta - t); the first few coefficients for one factor
m = build_subspace(pair, InnerFunction.blaschke(0.5j), 32)
print(np.round(m.g.coeffs[:6], 5))
