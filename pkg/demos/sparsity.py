"""Linear size: the sparse filtration grows in proportion to the input.

Run with ``python3 demos/sparsity.py`` (about half a minute).

An alpha filtration is already linear in the plane, so the interesting part is
that clipping and weighting keep the per-point cost flat even though every
point participates at every scale.  We also sample slices and report the
largest vertex degree, which stays bounded as n doubles.
"""

import math
import random
import time

from sparse_delaunay import build
from sparse_delaunay.kernel import mpq

print(f"{'n':>6} {'entries':>8} {'entries/n':>10} {'Steiner':>8} {'max degree':>11} {'seconds':>8}")
for n in (64, 128, 256, 512):
    rng = random.Random(n)
    points = [(mpq(rng.randrange(10 ** 6), 10 ** 6), mpq(rng.randrange(10 ** 6), 10 ** 6))
              for _ in range(n)]
    t0 = time.perf_counter()
    result = build(points, eps=1)
    took = time.perf_counter() - t0
    lams = [l for l in result.schedule.lambda_sq if l is not None]
    lo, hi = math.log(float(min(lams)) / 4), math.log(float(max(lams)) * 4)
    scales = [mpq(math.exp(rng.uniform(lo, hi))) for _ in range(10)]
    degree = max(result.max_slice_degree(s) for s in scales)
    print(f"{n:>6} {len(result.store):>8} {len(result.store) / n:>10.2f} {result.stats.steiner:>8} "
          f"{degree:>11} {took:>8.2f}")
