"""Partial distances over a labelled set, with infinity as a distinct value."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .rational import INF, as_fraction, format_number

__all__ = ["MatrixError", "PartialDistance", "DistanceMatrix"]


class MatrixError(ValueError):
    """Invalid matrix contents; ``coords`` names the offending label pair(s)."""

    def __init__(self, message, coords=()):
        super().__init__(message)
        self.coords = tuple(coords)


def _coerce(value):
    if value is INF:
        return INF
    if isinstance(value, str) and value.strip() == "inf":
        return INF
    return as_fraction(value)


class PartialDistance:
    """Symmetric map X x X -> positive rationals or INF, zero exactly on the diagonal."""

    __slots__ = ("_labels", "_index", "_rows", "_rank")

    def __init__(self, labels: Sequence[str], rows: Sequence[Sequence]):
        labels = tuple(labels)
        n = len(labels)
        if len(set(labels)) != n:
            dup = sorted({l for l in labels if labels.count(l) > 1})
            raise MatrixError(f"duplicate labels {dup}")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise MatrixError(f"expected a {n}x{n} matrix")
        vals = [[_coerce(v) for v in r] for r in rows]
        for i in range(n):
            if vals[i][i] != 0:
                raise MatrixError(
                    f"diagonal entry ({labels[i]},{labels[i]}) is {format_number(vals[i][i])}, expected 0",
                    [(labels[i], labels[i])],
                )
            for j in range(i + 1, n):
                a, b = vals[i][j], vals[j][i]
                if a != b:
                    raise MatrixError(
                        f"asymmetric entries ({labels[i]},{labels[j]})={format_number(a)} "
                        f"and ({labels[j]},{labels[i]})={format_number(b)}",
                        [(labels[i], labels[j]), (labels[j], labels[i])],
                    )
                if a is not INF and a <= 0:
                    raise MatrixError(
                        f"off-diagonal entry ({labels[i]},{labels[j]}) is {format_number(a)}, expected > 0",
                        [(labels[i], labels[j])],
                    )
        self._labels = labels
        self._index = {l: i for i, l in enumerate(labels)}
        self._rows = tuple(tuple(r) for r in vals)
        self._rank = None

    @classmethod
    def from_pairs(cls, labels: Iterable[str], pairs: Mapping, default=INF):
        """Build from ``{(x, y): value}``; unlisted off-diagonal pairs get ``default``."""
        labels = tuple(labels)
        idx = {l: i for i, l in enumerate(labels)}
        n = len(labels)
        rows = [[0 if i == j else default for j in range(n)] for i in range(n)]
        for (x, y), v in pairs.items():
            rows[idx[x]][idx[y]] = v
            rows[idx[y]][idx[x]] = v
        return cls(labels, rows)

    @property
    def labels(self) -> tuple:
        return self._labels

    def __len__(self):
        return len(self._labels)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown label {label!r}") from None

    def __getitem__(self, pair):
        x, y = pair
        return self._rows[self.index(x)][self.index(y)]

    def value(self, i: int, j: int):
        return self._rows[i][j]

    def rows(self) -> tuple:
        return self._rows

    @property
    def is_total(self) -> bool:
        return all(v is not INF for r in self._rows for v in r)

    def finite_pairs(self):
        """Yield (x, y, value) for each unordered finite off-diagonal pair, x before y."""
        n = len(self._labels)
        for i in range(n):
            for j in range(i + 1, n):
                v = self._rows[i][j]
                if v is not INF:
                    yield self._labels[i], self._labels[j], v

    def restrict(self, keep: Iterable[str]) -> "PartialDistance":
        keep_set = set(keep)
        missing = keep_set - set(self._labels)
        if missing:
            raise KeyError(f"unknown labels {sorted(missing)}")
        labels = [l for l in self._labels if l in keep_set]
        idx = [self._index[l] for l in labels]
        rows = [[self._rows[i][j] for j in idx] for i in idx]
        return type(self)(labels, rows)

    def rank_matrix(self) -> np.ndarray:
        """Order-preserving int64 encoding: 0 diagonal, 1..K finite, -1 infinite."""
        if self._rank is None:
            values = sorted({v for r in self._rows for v in r if v is not INF and v != 0})
            code = {v: k + 1 for k, v in enumerate(values)}
            n = len(self._labels)
            m = np.zeros((n, n), dtype=np.int64)
            for i, r in enumerate(self._rows):
                for j, v in enumerate(r):
                    if i != j:
                        m[i, j] = -1 if v is INF else code[v]
            self._rank = m
        return self._rank

    def with_entry(self, x, y, value) -> "PartialDistance":
        """Copy with the (x, y) and (y, x) entries replaced."""
        rows = [list(r) for r in self._rows]
        i, j = self.index(x), self.index(y)
        rows[i][j] = rows[j][i] = value
        cls = DistanceMatrix if value is not INF and isinstance(self, DistanceMatrix) else PartialDistance
        return cls(self._labels, rows)

    def as_partial(self) -> "PartialDistance":
        return PartialDistance(self._labels, self._rows)

    def __eq__(self, other):
        if not isinstance(other, PartialDistance):
            return NotImplemented
        if set(self._labels) != set(other._labels):
            return False
        return all(self[x, y] == other[x, y] for x in self._labels for y in self._labels)

    def __hash__(self):
        key = sorted(self._labels)
        return hash(tuple((x, y, self[x, y]) for x in key for y in key))

    def __repr__(self):
        kind = type(self).__name__
        return f"{kind}({list(self._labels)!r}, {sum(1 for _ in self.finite_pairs())} finite pairs)"


class DistanceMatrix(PartialDistance):
    """A partial distance with every entry finite."""

    __slots__ = ()

    def __init__(self, labels, rows):
        super().__init__(labels, rows)
        for x, y in ((x, y) for x in self._labels for y in self._labels):
            if self[x, y] is INF:
                raise MatrixError(f"entry ({x},{y}) is inf in a distance matrix", [(x, y)])

    @classmethod
    def from_pairs(cls, labels, pairs, default=None):
        if default is None:
            labels = tuple(labels)
            have = {frozenset(p) for p in pairs}
            for i, x in enumerate(labels):
                for y in labels[i + 1:]:
                    if frozenset((x, y)) not in have:
                        raise MatrixError(f"missing entry ({x},{y})", [(x, y)])
            default = Fraction(1)
        return super().from_pairs(labels, pairs, default)
