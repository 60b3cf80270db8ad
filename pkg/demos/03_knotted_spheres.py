#!/usr/bin/env python3
# %% [markdown]
# # Knotted spheres
#
# Two pairs of objects (L1, L1, L2, L2) share the graded space R of
# morphisms between them.  Mutating by c c r c- r c- puts the squared twist
# of L2 around L1 first, and H(hom(Y1, Y4)) is a model of its Floer
# cohomology with L2.  A three-term complex built from R, q1 and q2 predicts
# the same answer.

# %%
import numpy as np

from ainfmut.generators import KnottedSpec, random_square_zero_pair
from ainfmut.knotted import run_knotted_pipeline

for r in range(1, 5):
    rep = run_knotted_pipeline(KnottedSpec(r=r))
    print(f"r={r}  names {rep['names']}")
    print(f"      engine {rep['engine_dims']}  oracle {rep['oracle_dims']}  "
          f"coker(psi) {rep['coker_psi']} >= {rep['coker_bound']}")

# %% [markdown]
# With q1 = q2 = 0 the total is 2 r^2, larger than the 2 of a sphere once
# r >= 2.  Nonzero square-zero pairs shrink it, but the cokernel of
# psi(x) = q1 x + x q1 still has dimension at least r^2 / 2.

# %%
rng = np.random.default_rng(1)
for _ in range(5):
    spec = random_square_zero_pair(rng, 4)
    rep = run_knotted_pipeline(spec)
    print(f"degrees {spec.degrees}  total {rep['engine_total']}  "
          f"coker {rep['coker_psi']}  agree {rep['ok']}")
