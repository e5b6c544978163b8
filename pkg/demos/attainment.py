"""When is the infimum actually achieved?

With a rank-deficient X the data can force an off-diagonal block of
the optimal A while the diagonal block that must dominate it goes
singular.  Then no PSD matrix attains the infimum.  The solver detects
this through a kernel-containment test and returns an epsilon-accurate
approximant instead.

This script shows both outcomes side by side on 20 random instances
and then walks the epsilon ladder on one unattained instance.
"""

import numpy as np

from psdp import InstanceSpec, an_fgm_solve, fro_norm, gen

rng = np.random.default_rng(0)
counts = {True: 0, False: 0}
for seed in range(20):
    X, _ = gen(InstanceSpec("rank_deficient", 12, 12, seed))
    if seed % 2:
        B, kind = np.asarray(_), "generic B"
    else:
        # consistent data B = A0 X with PSD A0: residual zero, attained
        W = rng.normal(size=(12, 12))
        B, kind = (W @ W.T / 12) @ X, "B = A0 X "
    sol = an_fgm_solve(X, B)
    counts[sol.attained] += 1
    gap = sol.objective - sol.infimum
    print("seed %2d  %s  attained=%-5s  infimum %10.4f  objective excess %.2e"
          % (seed, kind, sol.attained, sol.infimum, gap))

print("\n%d of 20 attained: consistent data always is, generic data" % counts[True])
print("with a rank-deficient X almost never.  Forcing the issue now.\n")

# a 2x2 instance where the unattained geometry is visible by hand:
# A must map (1, 0) to (0, 1) while staying PSD, which only works in
# the limit of an ever larger (2, 2) entry.
X = np.array([[1.0, 0.0], [0.0, 0.0]])
B = np.array([[0.0, 0.0], [1.0, 0.0]])
for eps in (1e-1, 1e-3, 1e-5):
    sol = an_fgm_solve(X, B, eps=eps)
    obj = fro_norm(sol.A @ X - B) ** 2
    print("eps %-7g  A[1,1] = %12.1f  objective - infimum = %.2e"
          % (eps, sol.A[1, 1], obj - sol.infimum))
