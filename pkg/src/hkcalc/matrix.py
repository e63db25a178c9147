"""Dense matrices with polynomial entries."""
from __future__ import annotations

from .polynomial import PolyRing, Polynomial


class PolyMatrix:
    """Immutable ``rows x cols`` matrix over a :class:`PolyRing`, row-major."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: PolyRing, rows: int, cols: int, entries):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        for e in entries:
            if not isinstance(e, Polynomial) or e.ring != ring:
                raise ValueError(f"entry {e!r} is not an element of {ring}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: PolyRing, rows, cols: int | None = None) -> "PolyMatrix":
        rows = [[ring.parse(e) if isinstance(e, str) else (ring.constant(e) if isinstance(e, int) else e)
                 for e in row] for row in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(ring, len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, ring: PolyRing, columns, rows: int | None = None) -> "PolyMatrix":
        columns = [list(c) for c in columns]
        nrows = len(columns[0]) if columns else (rows or 0)
        if any(len(c) != nrows for c in columns):
            raise ValueError("ragged columns")
        return cls(ring, nrows, len(columns),
                   [columns[j][i] for i in range(nrows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        one, z = ring.one(), ring.zero()
        return cls(ring, n, n, [one if i == j else z for i in range(n) for j in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Polynomial]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Polynomial]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_columns(self.ring, [self.row(i) for i in range(self.rows)], self.cols)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.rows, self.cols, [fn(e) for e in self.entries])

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("matrices over different rings")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(row):
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.ring, self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.ring, self.rows, self.cols, self.entries) == (
            other.ring, other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"
