#!/usr/bin/env python
# coding: utf-8
# Discriminants on two small complexes: the boundary of a tetrahedron and a
# five-triangle complex with a branching edge.

import numpy as np

from sgrover import build_discriminant, build_edge_ops, eig, generate_complex

np.set_printoptions(precision=4, suppress=True)

# In[1]: the tetrahedron boundary, up-walk on edges

sphere = generate_complex("sphere")
order = [sphere.oriented(x) for x in ["01", "02", "12", "13", "23", "03"]]
D = build_discriminant(sphere, 1, "up", "reduced", order)
print(D.matrix.real)

# In[2]: its spectrum is +-1/2, three times each; the full basis adds zeros
# coming from symmetric (orientation-blind) functions

print(eig(D).to_dict()["clusters"])
full = eig(build_discriminant(sphere, 1, "up", "full"))
print("zeros in the full basis:", full.multiplicity(0.0))

# In[3]: the walk unitary has every eigenvalue t +- i sqrt(1 - t^2), plus +-1

U = build_edge_ops(sphere, 1, "up").U
ev = eig(U, "unitary")
print("dim U =", len(ev), " real parts:", sorted({round(float(z.real), 6) + 0.0 for z in ev.eigenvalues}))

# In[4]: down-walk on the triangles of the five-triangle complex

fig5 = generate_complex("fig5")
order = [fig5.oriented(x) for x in ["012", "214", "134", "013", "213"]]
D2 = build_discriminant(fig5, 2, "down", "reduced", order)
print(D2.matrix.real)
print(np.round(np.linalg.eigvalsh(D2.matrix), 6))
