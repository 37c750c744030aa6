"""The smallest interesting input: four corners of the unit square.

Run with ``python3 demos/unit_square.py``.

The alpha filtration of a square has one 1-cycle: it is born when the four
sides appear (alpha = 1/2) and filled when the two triangles appear
(alpha = sqrt(2)/2).  The sparse filtration must reproduce it, and with only
four points every weight stays zero before the cycle dies, so it does so exactly.
"""

from sparse_delaunay import build
from sparse_delaunay.kernel import mpq
from sparse_delaunay.oracles import exact_alpha_filtration
from sparse_delaunay.persistence import bottleneck_log, reduce

square = [(mpq(0), mpq(0)), (mpq(1), mpq(0)), (mpq(1), mpq(1)), (mpq(0), mpq(1))]

result = build(square, eps=1)
print("Sparse filtration (squared scale, simplex):")
for entry in result.store:
    print(f"  {str(entry.birth):>8}  {entry.simplex}")

print("\nGreedy order and squared freezing times:")
for rank, idx in enumerate(result.greedy.order):
    print(f"  rank {rank}: point {idx}, lambda^2 = {result.schedule.lambda_sq[idx]}")

sparse = reduce(result.store)
alpha = reduce(exact_alpha_filtration(square))
print("\nDiagram (dim, birth alpha, death alpha):")
for pair in sparse.pairs:
    print("  ", pair)
print("\nLog-bottleneck distance to the exact alpha diagram:", bottleneck_log(sparse, alpha))
