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
# # Lie-algebra certificates
#
# Every identity below is checked by exact normal forms in a polynomial ring.
# The ring has the trig pair s = sin(p z), c = cos(p z) and the radicals
# sqrt 3 and sqrt 5.

# %%
from tameshear.density import (kk_sweep, sl2_bracket_relations_check, spanning_det_certificate,
                               z_identity_checks)

for cert in sl2_bracket_relations_check():
    print(cert.passed, cert.name, cert.detail)

# %% [markdown]
# The relation with +2W fails. For these three fields the bracket of U and W
# is -2W, and that is what Jacobi allows given the other two relations.

# %%
for cert in z_identity_checks():
    print(cert.passed, cert.name)
print(kk_sweep())

# %% [markdown]
# ## The 4x4 system at a point (j, 0)

# %%
for cert in spanning_det_certificate():
    print(cert.passed, cert.name, cert.detail)

# %% [markdown]
# ## Raising the order of vanishing
#
# Take a random field vanishing on {-2, ..., 2} x {0}. Subtract four matched
# fields whose linear parts agree with it at every point. What is left
# vanishes to order two.

# %%
import random

from tameshear.density import order_two_step, order_vanishing, random_vanishing_field

xi = random_vanishing_field(random.Random(5))
print("before:", {j: order_vanishing(xi, j) for j in range(-2, 3)})
rest, orders = order_two_step(xi)
print("after: ", orders)
