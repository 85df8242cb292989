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
# # The Danielewski surface and spectral-ball fibres
#
# Both constructions solve a quadratic for each row, so square roots show up.
# The float backend handles them. With the default double precision, large
# tables lose too many digits: the interpolants are steep at their nodes. A
# multiprecision backend keeps the residuals far below 1e-9.

# %%
import random

from tameshear import FloatBackend, InjectionTable
from tameshear.danielewski import build_dani_program, dani_point, verify_dani_program
from tameshear.flows import apply_program

table = InjectionTable(((1, 3), (2, 1), (4, 7), (6, 2)))
hp = FloatBackend(1e-9, dps=50)
report = verify_dani_program(table, build_dani_program(table, hp), hp)
for case in report.cases:
    print(case.input, "residual %.2e" % case.residual_value(),
          "relation %.2e" % case.extra["max_relation_residual"])

# %% [markdown]
# ## Precision on larger tables

# %%
rng = random.Random(11)
ns = rng.sample(range(1, 1001), 30)
ls = rng.sample(range(1, 1001), 30)
big = InjectionTable(tuple(zip(ns, ls)))
for backend in (FloatBackend(1e-9), FloatBackend(1e-9, dps=50)):
    rep = verify_dani_program(big, build_dani_program(big, backend), backend)
    print(backend, "passed:", rep.passed, "worst residual %.3g" % rep.max_residual())

# %% [markdown]
# ## Rows that stay rational
#
# When 1 + 4 l (n + 1) is a perfect square, the step function is rational and
# the exact backend follows the row end to end.

# %%
one_three = InjectionTable(((1, 3),))
final, trace = apply_program(build_dani_program(one_three), dani_point(1))
for p in trace:
    print(p, "relation", p.relation())

# %% [markdown]
# ## A fibre of the spectral ball
#
# Conjugation by unipotents keeps trace and determinant fixed, so each
# program stays inside one fibre.

# %%
from tameshear.spectral import FiberTask, build_fiber_program, fiber_point, pi_map

lam, mu = hp.coerce(0.4 + 0.3j), hp.coerce(-0.6)
task = FiberTask(lam, mu, InjectionTable(((1, 4), (2, 9), (4, 1))))
prog = build_fiber_program(task, hp)
final, trace = apply_program(prog, fiber_point(2, lam, mu, hp))
tr0, det0 = pi_map(trace[0])
for m in trace:
    tr, det = pi_map(m)
    print("drift %.1e" % max(abs(tr - tr0), abs(det - det0)))
print("final b entry:", complex(final.b))
