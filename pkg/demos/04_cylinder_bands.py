#!/usr/bin/env python
# coding: utf-8
# Spectral bands of the infinite triangulated cylinder, checked against
# finite periodic quotients.

import numpy as np

from sgrover.bloch import band, closed_form_residual, finite_quotient_check

# In[1]: triangles -- the bands fill [-1, 1]

b2 = band(2, 360)
print("triangle bands:", round(b2.global_min, 6), round(b2.global_max, 6))
print("closed-form residual:", closed_form_residual(2, 360))

# In[2]: edges -- a flat band at -1/5 and a moving band peaking at 7/10

b1 = band(1, 360)
print("flat bands:", b1.flat_values())
theta, curve = b1.argmax()
print(f"max {b1.global_max:.6f} on {curve} at theta = {theta:.4f} (2pi/3 = {2 * np.pi / 3:.4f})")

# In[3]: quotienting the cylinder by N steps gives a finite complex whose
# spectrum is the band union at the N-th roots of unity

print([finite_quotient_check(N, dq) for N in (3, 5, 8) for dq in (1, 2)])

# In[4]: export for plotting elsewhere
print(b1.to_csv().splitlines()[0])
