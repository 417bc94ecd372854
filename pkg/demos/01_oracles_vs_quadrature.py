"""Compare the two reference routes for variable-order Caputo derivatives.

For power functions the six operators (types I/II/III, left and right) have
closed forms; for everything else we integrate the defining expressions with
the singularity removed by substitution.  This script tabulates both routes
for x(t) = t^2 (left) and y(t) = (1-t)^2 (right) under alpha(t) = (5t+1)/10
and shows they agree to quadrature tolerance.
"""

from varcaputo import (
    Kind,
    Side,
    affine_order,
    caputo_quadrature,
    power_closed_form,
    power_function,
)

order = affine_order(0.5, 0.1, (0.0, 1.0))  # alpha(t) = 0.1 + 0.5 t

print(f"{'kind':8s} {'side':6s} {'t':>4s} {'closed form':>22s} {'quadrature':>22s} {'gap':>10s}")
for side in Side:
    x = power_function(2.0, 0.0, 1.0, side)
    for kind in Kind:
        for t in (0.25, 0.5, 0.75):
            closed = power_closed_form(kind, side, 2.0, order, t)
            quadv = caputo_quadrature(kind, x, order, t, side, tol=1e-10)
            print(
                f"{kind.name:8s} {side.value:6s} {t:4.2f} "
                f"{closed:22.15e} {quadv:22.15e} {abs(closed - quadv):10.2e}"
            )

print()
print("With a constant order the three kinds coincide:")
const = affine_order(0.0, 0.4, (0.0, 1.0))
x = power_function(2.0, 0.0, 1.0, Side.LEFT)
for kind in Kind:
    v = caputo_quadrature(kind, x, const, 0.6, Side.LEFT, tol=1e-10)
    print(f"  {kind.name}: {v:.15f}")
