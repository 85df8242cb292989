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
# # Passing to finite quotients
#
# A shear whose time function is invariant under a finite group descends to
# the quotient. Averaging an interpolant over the group gives such a function.
# It hits the required values as long as every orbit point carries the same
# target.

# %%
from tameshear import InjectionTable
from tameshear.quotients import verify_psl2_tame

table = InjectionTable(((1, 3), (2, 1), (4, 7)))
report = verify_psl2_tame(table)
for cert in report.certificates:
    print(cert.passed, cert.name)
print(report.summary())

# %% [markdown]
# Dropping the mirrored nodes breaks it. The average then sits halfway
# between the wanted value and whatever the interpolant does at -M.

# %%
broken = verify_psl2_tame(table, mirror=False)
print("passed without mirror nodes:", broken.passed)

# %% [markdown]
# ## The Danielewski surface modulo an involution
#
# iota(x, y, z) = (-x, -y, 1 - z) commutes with both unipotent flows.

# %%
from tameshear import FloatBackend
from tameshear.quotients import verify_dani_quotient_tame

rep = verify_dani_quotient_tame(table, FloatBackend(1e-9, dps=50))
for cert in rep.certificates:
    print(cert.passed, cert.name)
for case in rep.cases:
    print(case.input, case.extra)
