"""Torus characters, pairings on the local threefold, and Euler classes.

The four-torus acts on the total space of O(l1) + O(l2) + O(l3) over the
line.  Cohomology characters live in a Laurent ring Z[t0..t3]; the
anticanonical relation t0*t1*t2*t3 = 1 lets every character be normalized
so the Euler-class recipe sees honest nonzero weights.
"""

from stablepairs import (
    EqLineBundleP1,
    KClass,
    SplitGeometry,
    TrivialWeightError,
    check_square_root,
    chi_adjunction,
    chi_p1_line,
    chi_x_pair,
    euler_class,
    euler_factored,
    kclass_parse,
    kclass_str,
    ratfun_str,
)

# -- characters on the line ------------------------------------------------------
# O(a*Z0 + b*Zinf) has cohomology concentrated on the t0 axis.  Three regimes:
# sections (a+b >= 0), nothing (a+b = -1), first cohomology (a+b <= -2).

for a, b in [(2, 1), (0, -1), (-2, -1)]:
    chi = chi_p1_line(a, b)
    print(f"chi O({a}*Z0 + {b}*Zinf)  =", kclass_str(chi), f"   rank {chi.rank()}")

# -- pairings on the total space ---------------------------------------------------
# The resolved pairing chi_X(A, B) on the threefold is an alternating Koszul
# sum over the three normal directions.  On the standard geometry
# (-1, -1, 0) the self-pairing of the structure sheaf is rigid:

geom = SplitGeometry(-1, -1, 0)
o = EqLineBundleP1(0, 0)
print("chi_X(O, O)          =", kclass_str(chi_x_pair(o, o, geom)))

# chi(F, F) for F = O + O(-Z0) keeps the conjugation symmetry chi = conj(chi)
# that every self-pairing must have.
bundles = [o, EqLineBundleP1(-1, 0)]
pairing = chi_adjunction(bundles, geom)
print("chi_X(F, F)          =", kclass_str(pairing))
print("conjugation-fixed    =", pairing == pairing.conj())
print("rank                 =", pairing.rank())

# -- square roots -----------------------------------------------------------------
# The obstruction theory only ever needs *half* of such a self-dual class:
# full = half + conj(half).  check_square_root validates a proposed half.

full = kclass_parse("2 - t3 - t3^-1")
half = kclass_parse("1 - t3")
print("half verified        =", check_square_root(full, half))

# -- Euler classes ------------------------------------------------------------------
# The equivariant Euler class turns each weight into a linear form in the
# parameters l0..l3.  Positive multiplicities multiply, negative divide.

kc = kclass_parse("t0 - t3 + t0*t3^-2")
print("euler(kc)            =", ratfun_str(euler_class(kc)))
print("factored first       =", ratfun_str(euler_factored(kc).to_ratfun(4)))

# A surviving weight-zero character has no Euler class; normalization must
# remove it first or the computation refuses to continue.
try:
    euler_class(KClass({(0, 0, 0, 0): 1}))
except TrivialWeightError as exc:
    print("trivial weight       -> TrivialWeightError:", exc)

# cy_normalized rewrites the second torus coordinate away via the relation
# t0*t1*t2*t3 = 1; ranks never change under the rewrite.
raw = chi_x_pair(o, o, geom, raw=True)
print("raw pairing          =", kclass_str(raw))
print("normalized           =", kclass_str(raw.cy_normalized()))
print("ranks agree          =", raw.rank() == raw.cy_normalized().rank())
