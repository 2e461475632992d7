"""Convergents of T-fractions and where they stabilize."""

from qtouch.contfrac import convergent, motzkin_spec, stable_expansion, touchard_spec

spec = touchard_spec()
for depth in (1, 2, 4, 6):
    print(f"depth {depth}:", convergent(spec, depth, 3))

res = stable_expansion(spec, 6)
print("stable to order 6 at depth", res.depth_used)
for k, c in enumerate(res.series.coeffs):
    print(f"  v^{k}: {c}")

# the Motzkin fraction at q = 0 counts Motzkin paths
print("Motzkin at q=0:", stable_expansion(motzkin_spec(), 8).series.evaluate_q(0))
