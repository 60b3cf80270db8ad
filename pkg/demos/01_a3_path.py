#!/usr/bin/env python3
# %% [markdown]
# # The A3 path category
#
# Three objects X1 -> X2 -> X3 with one morphism per pair and a single
# composition b . a = c.  Everything is over GF(2).

# %%
from ainfmut import a3_path, gram_matrix, hom_cohomology, validate_ainf
from ainfmut.twist import hom_complex, object_tw, twist_object

a = a3_path()
print(a.names, "valid:", validate_ainf(a).ok)
for (i, k), space in sorted(a.homs.items()):
    print(f"hom({a.names[i]}, {a.names[k]}) = {space.basis}")
print(gram_matrix(a))

# %% [markdown]
# ## A twist
#
# T_{X1}(X2) is the cone of hom(X1, X2) (x) X1 -> X2.  It is invisible to
# X1, which is the point of the construction.

# %%
t = twist_object(0, object_tw(a, 1))
print([(s.obj, s.shift) for s in t.summands])
for i in range(a.m):
    print(f"H(hom(X{i + 1}, T)) =", hom_complex(object_tw(a, i), t).cohomology())

# %% [markdown]
# ## Rotating with c
#
# c moves the first object to the end; three rotations return the
# original gram matrix.

# %%
from ainfmut import apply_c

b = a
for step in range(4):
    print(step, b.names, gram_matrix(b).tolist())
    b = apply_c(b)
print("H(hom(Y1, Y3)) after one c:", hom_cohomology(apply_c(a), 0, 2))
