"""
Reciprocals of unit generators
==============================

If a unit generates a power integral basis then so does its inverse.  For
a monic polynomial with constant term +-1 the inverse of a root is, up to
sign and translation, the element whose coordinates are the polynomial's
coefficients read backwards.
"""

from sextic_pib import polyalg
from sextic_pib.absolute_solver import disc_of_reciprocal, power_basis_index, reciprocal_generator
from sextic_pib.sextic_field import FieldSpec, FieldSpecError, from_power_basis, index, is_equivalent

# the family x^3 + (2 + b sqrt2) x + (1 + c sqrt2) over Q(sqrt 2)
for b, c in [(0, 0), (1, 0), (1, 1), (0, 1), (1, -1), (2, 0), (-1, 1)]:
    try:
        spec = FieldSpec(2, (0, 0), (2, b), (1, c))
    except FieldSpecError:
        print(f"b={b}, c={c}: reducible")
        continue
    ia = index(spec.alpha, spec)
    if ia != 1:
        print(f"b={b}, c={c}: alpha has index {ia}")
        continue
    coeffs = reciprocal_generator(spec.g, spec)
    gamma = from_power_basis(coeffs, spec)
    print(f"b={b}, c={c}: g = {polyalg.to_str(spec.g)}")
    print(f"    reversed element {coeffs}: index {index(gamma, spec)},"
          f" equivalent to alpha: {is_equivalent(gamma, spec.alpha)}")
    print(f"    disc(1/alpha) = disc(alpha) = {disc_of_reciprocal(spec.alpha, spec)}")

# a cubic: 1/alpha = alpha^2 - 1 for alpha^3 = alpha + 1
f = [-1, -1, 0, 1]
print("x^3 - x - 1:", reciprocal_generator(f), "index", power_basis_index([0, 0, 1], f))
