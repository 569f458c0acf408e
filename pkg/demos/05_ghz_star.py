import numpy as np

from bellhv import ghz

star = ghz.build_mermin_star()
signs = ghz.edge_products(star)
for e, s in enumerate(signs):
    print(" * ".join(star.edge_labels(e)), "=", "+I" if s > 0 else "-I")
print("product of edge signs:", np.prod(signs))

# Any fixed +/-1 values multiply to +1 around the star: each word is on two edges.
vals = ghz.assignments(10)
print("value products over all 1024 assignments:",
      {ghz.assignment_parity_product(star, v) for v in vals})

system = ghz.build_ghz_system(star)
print("system:", system.A.shape, "ones per row:", set(system.A.sum(axis=1)))
for e in range(5):
    rows = system.edge_rows(e)
    print(f"edge {e}: sum b = {system.b[rows].sum():.3f}, "
          f"parity zeros = {np.isin(system.zero_rows, rows).sum()}, "
          f"zeros for this state = {np.isin(system.state_zero_rows, rows).sum()}")

# Every atom sits in some row of probability zero.
print("all atoms forced to zero:", ghz.verify_zero_forcing(system).all_covered)
print("without the composite edge, atoms left:", ghz.verify_zero_forcing(system, exclude_edges=(4,)).uncovered.size)

print("spin-1 identities:", ghz.spin1_identities())
