"""Tour of the symbolic closed forms behind the period computation.

Everything here runs over the symbolic scalar field, so q stays a formal
variable and all printed identities are exact.
"""

from toricperiod import (
    PHI_W,
    SPH,
    MembershipSolver,
    QSymbolic,
    cleared_window,
    cs_factor_regularized,
    image_ideal,
    image_ideal_alt,
    shintani_sph,
    spherical_ratio,
    toric_period,
    whittaker_coefficient,
)

S = QSymbolic()


def show(label, value):
    print(f"  {label:<38} {value}")


print("Whittaker coefficients (X-coordinate display)")
for k in range(0, 4):
    show(f"c_{k}(spherical)", whittaker_coefficient(SPH, k, S).to_x_display())
for k in (-1, 0, 2):
    show(f"c_{k}(Iwahori f0)", whittaker_coefficient(PHI_W, k, S).to_x_display())
show("h_3(Y1, Y2)", shintani_sph(S, 3).to_y_display())

print("\nCleared zeta windows: (1 - Y1 Z)(1 - Y2 Z) * I(f, Z)")
for name, vec in (("spherical", SPH), ("Iwahori f0", PHI_W)):
    window = cleared_window(vec, S)
    body = " + ".join(
        f"({v.to_x_display()})·Z^{k}" if k else f"({v.to_x_display()})"
        for k, v in sorted(window.coeffs.items())
    )
    show(name, body)

print("\nPeriods at Z = 1")
show("l(spherical)", toric_period(SPH, S).to_x_display())
show("l(Iwahori f0)", toric_period(PHI_W, S).to_x_display())
show("l(spherical) / l(spherical)", spherical_ratio(SPH, S).to_x_display())
show("l(f0) / l(spherical) in the ring?", spherical_ratio(PHI_W, S))

print("\nImage ideal structure")
solver = MembershipSolver()
g1, g2 = image_ideal(S)
a1, _ = image_ideal_alt(S)
show("generator 1", g1.to_x_display())
show("generator 2", g2.to_x_display())
show("alternate generator", a1.to_x_display())
certs = solver.ideal_equal(image_ideal(S), image_ideal_alt(S))
show("presentations agree", certs is not None and all(c.verified for c in certs))
show("contains 1?", not solver.is_proper(g1, g2))
principal, gcd = solver.is_principal_pair(g1, g2)
show("principal?", principal)
show("gcd of the generators", gcd.to_x_display())
