import random
import sys

from hypothesis import HealthCheck, settings

from sparse_delaunay.kernel import mpq

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_points(seed, n, denom=10 ** 6):
    """n distinct seeded points in the unit square with coordinates on a 1/denom grid."""
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < n:
        p = (mpq(rng.randrange(denom), denom), mpq(rng.randrange(denom), denom))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


UNIT_SQUARE = [(mpq(0), mpq(0)), (mpq(1), mpq(0)), (mpq(1), mpq(1)), (mpq(0), mpq(1))]


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acc.RESULTS, key=lambda k: int(k[1:])):
        terminalreporter.write_line(acc.RESULTS[key])
