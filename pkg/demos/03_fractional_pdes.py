"""Method-of-lines solutions of two variable-order fractional PDEs.

The expansion turns the time-fractional derivative into u_t plus marched
moment fields V_p, giving a classical ODE system.  Both test problems have
known exact solutions, so the script reports max-norm errors and shows they
shrink as the expansion truncation N grows.
"""

from varcaputo import (
    Grid1D,
    affine_order,
    burgers_exact,
    diffusion_exact,
    field_error,
    manufactured_diffusion,
    solve_burgers,
    solve_diffusion,
)

order = affine_order(0.1, 0.5, (0.0, 1.0))  # alpha(t) = (t+5)/10
grid = Grid1D(mx=16, mt=80, t0=1e-4)

print("Time-fractional diffusion, exact solution t^2 sin(2 pi x):")
for N in (3, 6, 12):
    fieldv = solve_diffusion(manufactured_diffusion(order, N=N), grid)
    print(f"  N = {N:2d}: max error {field_error(fieldv, diffusion_exact):.3e}")

print("\nLinear inhomogeneous Burgers, exact solution x^2 + t^2:")
for N in (3, 6, 12):
    fieldv = solve_burgers(order, grid, N=N)
    print(f"  N = {N:2d}: max error {field_error(fieldv, burgers_exact):.3e}")
