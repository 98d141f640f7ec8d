# When does ker S* generate the whole space? Threshold |alpha|^2 = 1/(1+u).
import numpy as np

from shiftlab import ParamPair, full_space_krylov_oracle, full_space_wsp, thresholds
from shiftlab.errors import InconclusiveTruncation

th = thresholds()
print("u =", th.u, " 1/(1+u) =", th.one_over_u_plus_1)

for x in np.linspace(0.1, 0.95, 10):
    pair = ParamPair.from_alpha_sq(x)
    v = full_space_wsp(pair)
    try:
        est = full_space_krylov_oracle(pair, 128)
        k = f"krylov codim {est.codim}"
    except InconclusiveTruncation:
        k = "krylov: too close to call"
    print(f"|alpha|^2={x:.3f}  |p|={v.abs_p:.4f}  holds={v.holds!s:5s}  {k}")
