"""Run catalog checks and inspect a report."""

from qtouch.checks import catalog_ids, run_check

for id in ("touchard-main", "coeff-ext", "riordan", "recu2"):
    rep = run_check(id)
    print(f"{id:15s} {rep.status} at order {rep.order}")

# the displayed two-sum general-d form disagrees with its fraction; the report shows where
rep = run_check("general-d", 4)
print("general-d:", rep.status, "first mismatch at v^%d" % rep.first_mismatch.power)
print("  lhs:", rep.first_mismatch.lhs)
print("  rhs:", rep.first_mismatch.rhs)
print("general-d-corrected:", run_check("general-d-corrected", 8).status)
print(len(catalog_ids()), "checks in the catalog")
