# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Moving unipotent matrices around SL2(C)
#
# The set of matrices `[[1, n], [0, 1]]` with n = 1, 2, 3, ... can be permuted
# by a holomorphic automorphism of SL2(C). The automorphism here is a product
# of four left-multiplication shears. Each shear function is a finite Newton
# interpolant, and everything runs in exact arithmetic over Q(i).

# %%
from fractions import Fraction

from tameshear import InjectionTable, build_sl2_program, verify_sl2_program
from tameshear.flows import apply_program
from tameshear.tame_sl2 import build_sl2_construction, index_recovery_certificate, tame_point

table = InjectionTable(((1, 5), (2, 1), (3, 8), (7, 2)))
cons = build_sl2_construction(table)
for n, ln, f, mu, g in zip([n for n, _ in table], [ln for _, ln in table],
                           cons.f_values, cons.mu_values, cons.g_values):
    print(f"n={n} -> {ln}:  f={f}  mu={mu}  g={g}")

# %% [markdown]
# The scaling step needs one function of the products bc and bd that tells
# the intermediate points apart. We take u = bd + theta*bc, where theta is
# the smallest value that works.

# %%
print("theta =", cons.theta)
for step in cons.program.describe():
    print(step["kind"], step.get("generator"), step.get("coordinate"), len(step.get("nodes", [])), "nodes")

# %% [markdown]
# ## Following one point

# %%
final, trace = apply_program(cons.program, tame_point(3))
for i, m in enumerate(trace):
    print(i, m, "det", m.det())

# %% [markdown]
# ## The whole table, and index recovery
#
# After the first two steps, n can be read back from the point. Both closed
# forms hold exactly.

# %%
report = verify_sl2_program(table, cons.program)
print(report.summary())
ok, rows = index_recovery_certificate(table)
print("index recovery:", ok)
for r in rows:
    print(r["n"], "bd/bc =", r["bd"] / r["bc"], "=", Fraction(r["n"]) + Fraction(1, r["n"] + 1))
