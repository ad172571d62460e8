#!/usr/bin/env python
# coding: utf-8
# Orientability shows up as +-1 in the top-dimensional down spectrum, and a
# bipartite down graph makes the spectrum symmetric about zero.

import numpy as np

from sgrover import (build_discriminant, find_antisymmetric_switching, generate_complex,
                     orientability_spectral, orientation_search)

# In[1]: cylinder versus Moebius strip

for kind in ("cylinder-strip", "moebius-strip"):
    c = generate_complex(kind, m=5)
    spec = orientability_spectral(c)
    found = orientation_search(c, "coherent")
    print(f"{c.name:20s} spectral {spec['coherent']!s:5s} combinatorial {found is not None}")

# In[2]: both strips have bipartite down graphs, so one sign flip per class
# negates the discriminant exactly

c = generate_complex("moebius-strip", m=5)
theta = find_antisymmetric_switching(c, 2)
D = build_discriminant(c, 2, "down", "reduced").matrix
print("theta =", theta.astype(int))
print("D^theta == -D:", np.array_equal(np.diag(theta) @ D @ np.diag(theta), -D))
ev = np.linalg.eigvalsh(D)
print("symmetric spectrum:", np.allclose(np.sort(ev), np.sort(-ev)))

# In[3]: the five-triangle complex is not bipartite, yet its spectrum is
# symmetric: a switching followed by a row/column swap negates it

fig5 = generate_complex("fig5")
print("bipartite switching exists:", find_antisymmetric_switching(fig5, 2) is not None)
print(np.round(np.linalg.eigvalsh(build_discriminant(fig5, 2, "down", "reduced").matrix), 6))
