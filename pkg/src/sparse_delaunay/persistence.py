"""GF(2) persistence of a filtration and log-scale bottleneck distance."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .filtration import FiltrationStore
from .kernel import SqScale

ExactPair = Tuple[int, SqScale, Optional[SqScale]]

LOG_FLOOR = -1.0e6  # log-coordinate standing in for a birth at scale 0
TOL = 1e-9


class LogScaleError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    """Multiset of (dim, birth, death) in unsquared scale; death ``math.inf`` if essential.

    ``exact`` carries the same pairs in exact squared scale when known.
    """

    pairs: Tuple[Tuple[int, float, float], ...]
    exact: Optional[Tuple[ExactPair, ...]] = None

    @classmethod
    def from_exact(cls, exact: Sequence[ExactPair]) -> "Diagram":
        ex = tuple(sorted(exact, key=_exact_key))
        pairs = tuple((d, b.alpha(), math.inf if e is None else e.alpha()) for d, b, e in ex)
        return cls(pairs, ex)

    def dim(self, k: int) -> List[Tuple[float, float]]:
        return [(b, d) for dd, b, d in self.pairs if dd == k]

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        return sorted(self.pairs) == sorted(other.pairs)

    def __hash__(self):
        return hash(tuple(sorted(self.pairs)))

    def write(self, stream: TextIO) -> None:
        for d, b, e in sorted(self.pairs):
            stream.write(f"{d} {_fmt(b)} {_fmt(e)}\n")

    def dumps(self) -> str:
        buf = io.StringIO()
        self.write(buf)
        return buf.getvalue()

    @classmethod
    def read(cls, stream: TextIO) -> "Diagram":
        pairs = []
        for lineno, line in enumerate(stream, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'dim birth death'")
            try:
                pairs.append((int(parts[0]), float(parts[1]), float(parts[2])))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return cls(tuple(sorted(pairs)))

    @classmethod
    def loads(cls, text: str) -> "Diagram":
        return cls.read(io.StringIO(text))


def _exact_key(p: ExactPair):
    d, b, e = p
    return (d, b, e is None, SqScale(0) if e is None else e)


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.17g}"


def pairs_from_lows(store: FiltrationStore, lows: Dict[int, int], max_dim: int = 1) -> Diagram:
    """Diagram from pivot pairs ``lows[death_col] = birth_row``."""
    ents = store.entries
    paired = set(lows) | set(lows.values())
    out: List[ExactPair] = []
    for j, i in lows.items():
        d = ents[i].dim
        if d > max_dim:
            continue
        b, e = ents[i].birth, ents[j].birth
        if b != e:
            out.append((d, b, e))
    for i, ent in enumerate(ents):
        if i not in paired and ent.dim <= max_dim:
            out.append((ent.dim, ent.birth, None))
    return Diagram.from_exact(out)


def boundary_columns(store: FiltrationStore) -> List[int]:
    """Boundary of each entry as a bitset over entry positions."""
    idx = store.index
    cols = []
    for e in store.entries:
        s = e.simplex
        col = 0
        if len(s) > 1:
            for k in range(len(s)):
                col |= 1 << idx[s[:k] + s[k + 1:]]
        cols.append(col)
    return cols


def reduce(store: FiltrationStore, max_dim: int = 1) -> Diagram:
    """Standard column reduction over GF(2); reports dims 0..max_dim, zero-length pairs dropped."""
    problems = store.validate()
    if problems:
        raise ValueError("invalid filtration: " + "; ".join(problems[:5]))
    cols = boundary_columns(store)
    pivot: Dict[int, int] = {}
    lows: Dict[int, int] = {}
    for j, col in enumerate(cols):
        while col:
            low = col.bit_length() - 1
            k = pivot.get(low)
            if k is None:
                break
            col ^= cols[k]
        cols[j] = col
        if col:
            low = col.bit_length() - 1
            pivot[low] = j
            lows[j] = low
    return pairs_from_lows(store, lows, max_dim)


# -- bottleneck ---------------------------------------------------------------


def _log(x: float) -> float:
    return LOG_FLOOR if x == 0 else math.log(x)


def _finite_points(dgm: Diagram, dim: int) -> List[Tuple[float, float]]:
    pts = []
    for b, d in dgm.dim(dim):
        if math.isinf(d):
            continue
        if b == 0 and dim > 0:
            raise LogScaleError("log-scale undefined")
        pts.append((_log(b), _log(d)))
    return pts


def _essential(dgm: Diagram, dim: int) -> List[float]:
    out = []
    for b, d in dgm.dim(dim):
        if math.isinf(d):
            if b == 0 and dim > 0:
                raise LogScaleError("log-scale undefined")
            out.append(_log(b))
    return sorted(out)


def _perfect(A, B, r: float) -> bool:
    na, nb = len(A), len(B)
    size = na + nb
    rows, cols = [], []
    for i, (ab, ad) in enumerate(A):
        for j, (bb, bd) in enumerate(B):
            if max(abs(ab - bb), abs(ad - bd)) <= r:
                rows.append(i)
                cols.append(j)
        if (ad - ab) / 2 <= r:
            rows.append(i)
            cols.append(nb + i)
    for j, (bb, bd) in enumerate(B):
        if (bd - bb) / 2 <= r:
            rows.append(na + j)
            cols.append(j)
        for i in range(na):
            rows.append(na + j)
            cols.append(nb + i)
    if size == 0:
        return True
    g = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    match = maximum_bipartite_matching(g, perm_type="column")
    return bool(np.all(match >= 0))


def _bottleneck_finite(A, B) -> float:
    cands = {0.0}
    for ab, ad in A:
        cands.add((ad - ab) / 2)
        for bb, bd in B:
            cands.add(max(abs(ab - bb), abs(ad - bd)))
    for bb, bd in B:
        cands.add((bd - bb) / 2)
    cands = sorted(cands)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect(A, B, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


def bottleneck_log(d1: Diagram, d2: Diagram, dims: Sequence[int] = (0, 1)) -> float:
    """Bottleneck distance between diagrams in log coordinates, maximised over dims."""
    worst = 0.0
    for k in dims:
        e1, e2 = _essential(d1, k), _essential(d2, k)
        if len(e1) != len(e2):
            return math.inf
        for x, y in zip(e1, e2):
            worst = max(worst, abs(x - y))
        worst = max(worst, _bottleneck_finite(_finite_points(d1, k), _finite_points(d2, k)))
    return worst


def bottleneck(d1: Diagram, d2: Diagram, dims: Sequence[int] = (0, 1)) -> float:
    """Ordinary (additive) bottleneck distance, maximised over dims."""
    worst = 0.0
    for k in dims:
        f1 = [(b, d) for b, d in d1.dim(k) if not math.isinf(d)]
        f2 = [(b, d) for b, d in d2.dim(k) if not math.isinf(d)]
        e1 = sorted(b for b, d in d1.dim(k) if math.isinf(d))
        e2 = sorted(b for b, d in d2.dim(k) if math.isinf(d))
        if len(e1) != len(e2):
            return math.inf
        for x, y in zip(e1, e2):
            worst = max(worst, abs(x - y))
        worst = max(worst, _bottleneck_finite(f1, f2))
    return worst
