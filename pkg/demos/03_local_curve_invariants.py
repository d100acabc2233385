"""Stable-pair invariants of a local curve, one fixed point at a time.

The torus-fixed pairs of degree d and length n are indexed by weak
compositions; each contributes a signed reciprocal Euler class, and the
invariant P(n, d) is the sum.  The conjectured closed answer is simple:
1/(d! * l3^d) on the diagonal n = d, zero whenever n > d.
"""

from stablepairs import (
    GEOM_STANDARD,
    SplitGeometry,
    d1_fixed_points,
    enumerate_fixed_points,
    euler_factored,
    expected_conjecture_value,
    half_obstruction_general,
    is_homogeneous_of_degree,
    js_invariant_closed_form,
    js_invariant_enumerated,
    kclass_str,
    orientation_sign,
    ratfun_str,
    residue_vanishing_check,
    verify_conjecture,
)

# -- fixed points --------------------------------------------------------------
# Degree 1, length n: the section vanishes to order a at one fixed point of
# the curve and order b at the other, a + b = n - 1.

print("degree-1 fixed points at n=3:",
      [f"(a={p.a},b={p.b})" for p in d1_fixed_points(3)])

# General degree: weak compositions of the length across the section orders.
print("degree-2 fixed points at n=4:",
      [c.parts for c in enumerate_fixed_points(4, 2)])

# -- one contribution, by hand ---------------------------------------------------
# The square-root obstruction class sits at virtual-negative multiplicity, so
# its Euler class is already the reciprocal product of weight forms; the fixed
# point contributes that class times an orientation sign.
comp = enumerate_fixed_points(2, 2)[0]
half = half_obstruction_general(comp)
print("half obstruction at", comp.parts, "=", kclass_str(half))
contribution = euler_factored(half).times_scalar(orientation_sign(comp))
print("sign * euler         =", ratfun_str(contribution.to_ratfun(4)))

# -- the invariants --------------------------------------------------------------
print()
print("P(n, d) on the standard geometry (-1, -1, 0):")
for d in range(1, 4):
    row = []
    for ratio in range(1, 5):
        n = ratio * d
        value = js_invariant_enumerated(n, d).value
        row.append(ratfun_str(value))
    print(f"  d={d}:  " + "   ".join(row))

# the closed product formula gives the same values without enumerating
print("closed == enumerated:",
      all(js_invariant_closed_form(k * 3, 3).value
          == js_invariant_enumerated(k * 3, 3).value for k in range(1, 5)))

# per-fixed-point audit of a vanishing invariant: the three contributions
# cancel exactly
audit = js_invariant_enumerated(4, 2, audit=True)
for label, value in audit.contributions:
    print(f"  point {label}: {ratfun_str(value)}")
print("audit total          =", ratfun_str(audit.value),
      "| status:", audit.conjecture_status())

# other geometries: the n = 1, d = 1 invariant is the product of fiber
# weights prescribed by the degrees
for degrees in [(-1, -1, 0), (0, -1, -1), (1, -1, -2)]:
    value = js_invariant_enumerated(1, 1, SplitGeometry(*degrees)).value
    print(f"  P(1,1) on {degrees} = {ratfun_str(value)}")

# every invariant is homogeneous of degree -n
print("homogeneous of -n    =",
      is_homogeneous_of_degree(js_invariant_enumerated(3, 3).value, -3))

# -- sweeping the conjecture ------------------------------------------------------
print()
report = verify_conjecture(d_max=3, ratio_max=6)
print(f"conjecture sweep d<=3, n/d<=6: {len(report['rows'])} invariants,",
      "ok" if report["ok"] else "counterexample found")
print("expected P(2,2)      =", ratfun_str(expected_conjecture_value(2, 2)))

# -- the residue certificate -------------------------------------------------------
# For n = 2d the vanishing has a one-line proof: the l3 = 1 slice is a proper
# rational function of l0 whose residues at every integer pole cancel.
report = residue_vanishing_check(3)
print()
print(f"residues of the n={report['n']}, d=3 slice at integer poles:")
print("  ", {row["m"]: row["residue"] for row in report["poles"]})
print("identically zero     =", report["phi_is_zero"])
