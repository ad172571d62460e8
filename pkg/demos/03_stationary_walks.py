#!/usr/bin/env python
# coding: utf-8
# Stationary measures: a symmetric initial cochain is annihilated by the
# discriminant, which turns it into an eigenvector of the walk.

import numpy as np

from sgrover import generate_complex
from sgrover.walk import stationarity_report

np.set_printoptions(precision=5, suppress=True)

# In[1]: edges of the tetrahedron boundary, constant cochain

sphere = generate_complex("sphere")
rep = stationarity_report(sphere, 1, "up", n_max=20)
print("up walk, first and last rows:")
print(rep.table.values[[0, -1]])
print(rep.checks)

# In[2]: the S-quantum walk on triangles started from the lifted cochain

rep = stationarity_report(sphere, 1, "ordered", n_max=20)
print("S-walk finding probabilities:", rep.table.values[0])

# In[3]: down walk on the five-triangle complex; the branching triangle
# collects more mass

fig5 = generate_complex("fig5")
rep = stationarity_report(fig5, 2, "down", n_max=20)
for lab, p in zip(rep.table.labels, rep.table.values[0]):
    print(f"{lab:10s} {p:.5f}")
print("time deviation:", rep.time_deviation)
