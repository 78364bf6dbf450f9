"""Classifying moment sequences on a half-line.

A finite list of q x q Hermitian matrices is a candidate moment sequence
for a measure on [alpha, inf) (right) or (-inf, alpha] (left).  The
classifier reports two verdicts: the plain Hankel class (solvability over
the whole real line) and the alpha-Stieltjes class (solvability over the
half-line), decided through the interlaced Schur complements.
"""

import numpy as np

import stieltjesmp as smp

# the scalar workhorse fixtures: moments of delta_1 padded with freedom
f1 = smp.sequence([1.0, 1.0], alpha=0.0, side="right")
f2 = smp.sequence([1.0, 1.0, 2.0], alpha=0.0, side="right")

for name, s in (("(1, 1)", f1), ("(1, 1, 2)", f2)):
    cls = smp.classify(s)
    print(f"s = {name}:  hankel={cls.hankel}  stieltjes={cls.stieltjes}")

# a first moment that is negative cannot come from a measure on [0, inf)
bad = smp.sequence([1.0, -1.0])
print("s = (1, -1):", smp.classify(bad).stieltjes)

# boundary cases: the moments of delta_1 exactly (extendable but not PD),
# and a sequence that solves the <=-problem without being extendable
print("s = (1, 1, 1):", smp.classify(smp.sequence([1.0, 1.0, 1.0])).stieltjes)
print("s = (0, 1):  ", smp.classify(smp.sequence([0.0, 1.0])).stieltjes)

# matrix case: a random PD fixture and its reflection onto the other
# half-line carry the same class
s = smp.random_stieltjes_pd_sequence(q=2, kappa=4, alpha=0.5, seed=1)
t = smp.reflect(s)
print("\nrandom q=2 fixture:", smp.classify(s))
print("its reflection:    ", smp.classify(t))

# the interlaced Schur complements behind the verdict
p = smp.stieltjes_param(s)
print("\ninterlaced Schur complement eigenvalues (all must be positive):")
for j, v in enumerate(p.values):
    print(f"  Q_{j}: {np.linalg.eigvalsh(v).round(6)}")
