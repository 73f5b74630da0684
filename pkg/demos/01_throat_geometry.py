"""
How wide is the wormhole away from the throat?

For the Gaussian throat the areal radius f(l) does not grow monotonically:
it first shrinks to two symmetric minima before opening up like flat space.
"""

import math

import numpy as np

from wormhole_qm.geometry import ShapeFunction, eval_shape, radial_factor, stretch_extrema

gauss = ShapeFunction.gaussian(1.0)
const = ShapeFunction.constant(1.0)

print("   l      b(l)     f gaussian   f constant")
for l in np.linspace(-3.0, 3.0, 13):
    print(f"{l:5.1f}  {eval_shape(gauss, l)[0]:9.6f}  {radial_factor(gauss, l).f:11.6f}  "
          f"{radial_factor(const, l).f:11.6f}")

print("\nstationary points of f for the Gaussian throat:")
for e in stretch_extrema(gauss):
    print(f"  {e.kind:3s} at l = {e.l:+.9f}, f = {e.f:.9f}")
print(f"closed form for the minima: +-sqrt(ln 2 / 2) = {math.sqrt(math.log(2) / 2):.9f}")

# a constant throat only narrows at l = 0
print("constant throat:", [(e.kind, e.l) for e in stretch_extrema(const)])
