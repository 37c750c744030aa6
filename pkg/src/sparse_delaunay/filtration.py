"""Immutable filtered simplicial complex and its text serialisation.

Format::

    sdf v1 d=2 n=<points> eps=<num>/<den>
    <birth> <id> [<id> ...]

Births are exact squared scales: ``num/den`` or, for quadratic surds,
``a+b*sqrt(r)`` with rational ``a``, ``b`` and integer ``r``.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, TextIO, Tuple

from .kernel import SqScale, as_rational, mpq


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class FiltrationEntry:
    simplex: Tuple[int, ...]
    birth: SqScale

    @property
    def dim(self) -> int:
        return len(self.simplex) - 1

    def sort_key(self):
        return (self.birth, len(self.simplex), self.simplex)


class FiltrationStore:
    """Entries sorted by (birth, dim, vertex ids) with an index by simplex."""

    def __init__(self, entries: Iterable[FiltrationEntry] = (), n: Optional[int] = None, eps=None):
        ents = []
        for e in entries:
            if not isinstance(e.birth, SqScale):
                e = FiltrationEntry(tuple(e.simplex), SqScale(e.birth))
            ents.append(e)
        ents.sort(key=FiltrationEntry.sort_key)
        self.entries: Tuple[FiltrationEntry, ...] = tuple(ents)
        self.index: Dict[Tuple[int, ...], int] = {}
        for i, e in enumerate(self.entries):
            if e.simplex in self.index:
                raise ValueError(f"duplicate simplex {e.simplex}")
            self.index[e.simplex] = i
        if n is None:
            n = sum(1 for e in self.entries if e.dim == 0)
        self.n = n
        self.eps = None if eps is None else as_rational(eps)

    @classmethod
    def from_births(cls, births: Dict[Tuple[int, ...], object], **kw) -> "FiltrationStore":
        return cls((FiltrationEntry(tuple(s), SqScale.coerce(b)) for s, b in births.items()), **kw)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, FiltrationStore):
            return NotImplemented
        return self.entries == other.entries

    def birth(self, simplex) -> SqScale:
        return self.entries[self.index[tuple(simplex)]].birth

    def simplices(self, dim: Optional[int] = None) -> List[Tuple[int, ...]]:
        return [e.simplex for e in self.entries if dim is None or e.dim == dim]

    def count_by_dim(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for e in self.entries:
            out[e.dim] = out.get(e.dim, 0) + 1
        return out

    def validate(self) -> List[str]:
        """Violations of face closure and face-before-coface; empty when valid."""
        problems = []
        for e in self.entries:
            s = e.simplex
            if list(s) != sorted(set(s)):
                problems.append(f"unsorted simplex {s}")
                continue
            if len(s) < 2:
                continue
            for face in combinations(s, len(s) - 1):
                j = self.index.get(face)
                if j is None:
                    problems.append(f"face absent: {face} of {s}")
                elif self.entries[j].birth > e.birth:
                    problems.append(f"face after coface: {face} of {s}")
        return problems

    # -- serialisation ---------------------------------------------------

    def write(self, stream: TextIO) -> None:
        eps = self.eps if self.eps is not None else mpq(0)
        stream.write(f"sdf v1 d=2 n={self.n} eps={eps.numerator}/{eps.denominator}\n")
        for e in self.entries:
            stream.write(str(e.birth) + " " + " ".join(map(str, e.simplex)) + "\n")

    def dumps(self) -> str:
        buf = io.StringIO()
        self.write(buf)
        return buf.getvalue()

    @classmethod
    def read(cls, stream: TextIO) -> "FiltrationStore":
        header = stream.readline()
        m = _HEADER.match(header.strip())
        if not m:
            raise FormatError(f"line 1: bad header {header.strip()!r}")
        n = int(m.group(1))
        eps = mpq(m.group(2))
        entries = []
        for lineno, line in enumerate(stream, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 2:
                raise FormatError(f"line {lineno}: expected birth and vertex ids")
            try:
                birth = SqScale.parse(parts[0])
                ids = tuple(int(x) for x in parts[1:])
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
            if list(ids) != sorted(set(ids)) or len(ids) > 4 or min(ids) < 0:
                raise FormatError(f"line {lineno}: ids must be strictly increasing, 1 to 4 of them")
            entries.append(FiltrationEntry(ids, birth))
        try:
            return cls(entries, n=n, eps=eps if eps != 0 else None)
        except ValueError as exc:
            raise FormatError(str(exc)) from None

    @classmethod
    def loads(cls, text: str) -> "FiltrationStore":
        return cls.read(io.StringIO(text))


_HEADER = re.compile(r"^sdf v1 d=2 n=(\d+) eps=(-?\d+/\d+)$")
