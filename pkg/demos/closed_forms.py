"""Closed-form solutions on rank-1 data.

When X has rank one, the nearest-PSD-multiplier problem
min ||A X - B||_F over A >= 0 splits into three cases depending on the
sign of t = u'Bv and on whether B has any mass outside span(u).  This
script builds one instance of each kind and compares the closed form
against the general semi-analytical path.
"""

import numpy as np

from psdp import an_fgm_solve, fro_norm, rank1_solve

rng = np.random.default_rng(7)

n, m = 6, 5
u = rng.normal(size=n)
u /= np.linalg.norm(u)
v = rng.normal(size=m)
v /= np.linalg.norm(v)
X = 1.3 * np.outer(u, v)


def show(tag, B):
    sol = rank1_solve(X, B)
    gen = an_fgm_solve(X, B, use_closed_forms=False)
    obj = fro_norm(sol.A @ X - B) ** 2
    print(tag)
    print("  attained        %s" % sol.attained)
    print("  infimum         %.12f" % sol.infimum)
    print("  objective       %.12f  (recomputed %.12f)" % (sol.objective, obj))
    print("  general path    %.12f" % gen.infimum)
    if not sol.attained:
        print("  epsilon         %g, excess %.3e" % (sol.epsilon, obj - sol.infimum))
    print()


# case 1: positive cross term, the infimum is attained
B = rng.normal(size=(n, m))
t = u @ B @ v
if t <= 0:
    B -= 2 * t * np.outer(u, v)
show("t > 0 (attained)", B)

# case 2: nonpositive cross term and B v in span(u): A = 0 is optimal
B2 = -0.8 * np.outer(u, v) + rng.normal(size=(n, m))
B2 -= np.outer(B2 @ v, v)  # kill the component acting on v
B2 += -0.8 * np.outer(u, v)
show("t <= 0, no forced block (A = 0)", B2)

# case 3: nonpositive cross term with a forced block: unattained.
# The epsilon ladder shows the objective tracking the infimum.
B3 = rng.normal(size=(n, m))
t = u @ B3 @ v
if t > 0:
    B3 -= 2 * t * np.outer(u, v)
show("t <= 0 with forced block (unattained)", B3)
print("epsilon ladder for the unattained case:")
for eps in (1e-1, 1e-2, 1e-3, 1e-4):
    sol = rank1_solve(X, B3, eps=eps)
    obj = fro_norm(sol.A @ X - B3) ** 2
    print("  eps %-8g objective - infimum = %.3e  ||A||_F = %9.3g"
          % (eps, obj - sol.infimum, fro_norm(sol.A)))
print("\nthe approximants blow up in norm as eps -> 0; no finite PSD")
print("matrix achieves the infimum itself.")
