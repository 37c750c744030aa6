"""How close is the sparse diagram to the exact one, and what does it cost?

Run with ``python3 demos/approximation.py``.

For a fixed random sample we build the sparse filtration at several values of
epsilon and compare its persistence diagram with the exact alpha-complex
diagram.  The guarantee is multiplicative, so distances are measured after a
log transform and compared with log(1 + eps).  Smaller eps tracks the exact
diagram more tightly; larger eps freezes points earlier and triggers more
refinement, visible in the Steiner count.
"""

import math
import random
import time
from fractions import Fraction

from sparse_delaunay import build
from sparse_delaunay.kernel import mpq
from sparse_delaunay.oracles import exact_alpha_filtration
from sparse_delaunay.persistence import bottleneck_log, reduce

rng = random.Random(7)
points = [(mpq(rng.randrange(10 ** 6), 10 ** 6), mpq(rng.randrange(10 ** 6), 10 ** 6))
          for _ in range(48)]

exact_store = exact_alpha_filtration(points)
exact = reduce(exact_store)
print(f"{len(points)} points, exact alpha filtration has {len(exact_store)} simplices\n")
print(f"{'eps':>5} {'entries':>8} {'Steiner':>8} {'log-bottleneck':>15} {'log(1+eps)':>11} {'seconds':>8}")
for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2)):
    t0 = time.perf_counter()
    result = build(points, eps)
    took = time.perf_counter() - t0
    d = bottleneck_log(reduce(result.store), exact)
    print(f"{str(eps):>5} {len(result.store):>8} {result.stats.steiner:>8} {d:>15.4f} "
          f"{math.log(1 + eps):>11.4f} {took:>8.2f}")
