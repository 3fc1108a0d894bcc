"""Exact integer matrices, Smith normal form and finitely generated abelian groups.

Everything here works on Python ints, so entries never overflow. Matrices
are small and dense (the intended sizes are at most ten or so rows).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence


class MatrixError(ValueError):
    """Raised for malformed matrices, dimension mismatches and bad matrix files."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise MatrixError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        entries = tuple(self.entries)
        if len(entries) != self.rows * self.cols:
            raise MatrixError(
                f"expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, "
                f"got {len(entries)}"
            )
        for x in entries:
            if isinstance(x, bool) or not isinstance(x, int):
                raise MatrixError(f"matrix entries must be integers, got {x!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise MatrixError("matrix must have at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise MatrixError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> IntMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def _check_same_shape(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch: {self.shape} vs {other.shape}")

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.entries)

    def row_sums(self) -> list[int]:
        return [sum(self.row(i)) for i in range(self.rows)]

    def permuted(self, perm: Sequence[int]) -> IntMatrix:
        """Return P M P^-1 where row/column ``i`` of the result is row/column ``perm[i]`` of self."""
        if not self.is_square or sorted(perm) != list(range(self.rows)):
            raise MatrixError("permuted() needs a square matrix and a permutation of its indices")
        return IntMatrix.from_rows([[self[perm[i], perm[j]] for j in range(self.cols)] for i in range(self.rows)])

    def __str__(self) -> str:
        return format_matrix(self)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise MatrixError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = b.transpose()
    return IntMatrix(
        a.rows, b.cols,
        tuple(sum(x * y for x, y in zip(a.row(i), bt.row(j))) for i in range(a.rows) for j in range(b.cols)),
    )


def mat_pow(m: IntMatrix, k: int) -> IntMatrix:
    """k-th power by repeated squaring; ``mat_pow(m, 0)`` is the identity."""
    if not m.is_square:
        raise MatrixError("matrix power needs a square matrix")
    if k < 0:
        raise MatrixError("negative exponent")
    result = IntMatrix.identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def _bareiss(m: IntMatrix) -> tuple[int, int]:
    # fraction-free elimination; returns (rank, sign-corrected last pivot)
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r, sign * prev


def rank_exact(m: IntMatrix) -> int:
    """Rank over the rationals by Bareiss elimination."""
    return _bareiss(m)[0]


def determinant(m: IntMatrix) -> int:
    if not m.is_square:
        raise MatrixError("determinant needs a square matrix")
    rank, last = _bareiss(m)
    return last if rank == m.rows else 0


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D diagonal.

    The diagonal of D lists the invariant factors: nonnegative, each dividing
    the next, zeros last.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def nonzero_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 0)

    def verify(self, m: IntMatrix) -> None:
        """Raise ``AssertionError`` unless this is a valid decomposition of ``m``."""
        problems = []
        if self.U @ m @ self.V != self.D:
            problems.append("U M V != D")
        if abs(determinant(self.U)) != 1 or abs(determinant(self.V)) != 1:
            problems.append("U or V is not unimodular")
        diag = [self.D[i, i] for i in range(min(self.D.shape))]
        if tuple(diag) != self.invariant_factors:
            problems.append("invariant factors do not match the diagonal of D")
        if any(self.D[i, j] for i in range(self.D.rows) for j in range(self.D.cols) if i != j):
            problems.append("D is not diagonal")
        if any(x < 0 for x in diag):
            problems.append("negative invariant factor")
        for a, b in zip(diag, diag[1:]):
            if (b != 0) if a == 0 else (b % a != 0):
                problems.append(f"divisibility chain broken at {a}, {b}")
        if problems:
            raise AssertionError("; ".join(problems))


def smith_normal_form(m: IntMatrix, *, check: bool = True) -> SmithDecomposition:
    """Smith normal form with certifying unimodular transforms.

    Pivoting: move a nonzero entry of least absolute value to the pivot,
    reduce its row and column by division with remainder, and repeat until
    both are clear.  A remaining entry not divisible by the pivot is folded
    into the pivot row by a row addition, which lowers the pivot next round.

    With ``check`` (the default) the result is re-multiplied and compared
    against the minor-gcd identity before being returned.
    """
    nr, nc = m.rows, m.cols
    d = m.to_rows()
    u = IntMatrix.identity(nr).to_rows()
    v = IntMatrix.identity(nc).to_rows()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, nc):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    snf = SmithDecomposition(
        U=IntMatrix.from_rows(u),
        D=IntMatrix.from_rows(d),
        V=IntMatrix.from_rows(v),
        invariant_factors=tuple(d[i][i] for i in range(min(nr, nc))),
    )
    if check:
        snf.verify(m)
        _check_minor_gcds(m, snf.invariant_factors)
    return snf


def _check_minor_gcds(m: IntMatrix, factors: Sequence[int], max_order: int = 4) -> None:
    from itertools import combinations

    rows = m.to_rows()
    prod = 1
    for k in range(1, min(max_order, len(factors)) + 1):
        prod *= factors[k - 1]
        g = 0
        # every k x k minor is a multiple of d1...dk, so the running gcd can stop once it gets there
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                g = gcd(g, determinant(IntMatrix.from_rows([[rows[i][j] for j in cs] for i in rs])))
                if g == prod and g != 0:
                    break
            if g == prod and g != 0:
                break
        if g != prod:
            raise AssertionError(f"gcd of {k}x{k} minors is {g}, but d1...d{k} = {prod}")


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank + Z/t1 + ... + Z/tk with t1 | t2 | ... | tk, every ti >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        torsion = tuple(self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(t < 2 for t in torsion):
            raise ValueError(f"torsion coefficients must be >= 2, got {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"torsion {torsion} is not a divisibility chain")

    @classmethod
    def free(cls, rank: int) -> FGAbelianGroup:
        return cls(rank, ())

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}Z" for t in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, "Z")
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> FGAbelianGroup:
        return cls(int(data["free_rank"]), tuple(int(t) for t in data["torsion"]))


def _require_square(m: IntMatrix) -> None:
    if not m.is_square:
        raise MatrixError(f"expected a square matrix, got {m.rows}x{m.cols}")


def cokernel(m: IntMatrix) -> FGAbelianGroup:
    """Z^n / image(m) for a square integer matrix m."""
    _require_square(m)
    factors = smith_normal_form(m).invariant_factors
    rank = rank_exact(m)
    return FGAbelianGroup(m.rows - rank, tuple(d for d in factors if d > 1))


def kernel_rank(m: IntMatrix) -> int:
    # integer kernels are free, so the rank is the whole story
    _require_square(m)
    return m.rows - rank_exact(m)


def parse_matrix(text: str) -> IntMatrix:
    """Read the ``rows cols`` header + row-major integers format, or its JSON mirror."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            return IntMatrix(int(data["rows"]), int(data["cols"]), tuple(data["entries"]))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise MatrixError(f"bad JSON matrix: {exc}") from exc
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if len(tokens) < 2:
        raise MatrixError("missing 'rows cols' header")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise MatrixError(f"non-integer token in matrix file: {exc}") from exc
    rows, cols, entries = nums[0], nums[1], nums[2:]
    return IntMatrix(rows, cols, tuple(entries))


def format_matrix(m: IntMatrix) -> str:
    width = max(len(str(x)) for x in m.entries)
    lines = [f"{m.rows} {m.cols}"]
    lines += [" ".join(str(x).rjust(width) for x in m.row(i)) for i in range(m.rows)]
    return "\n".join(lines) + "\n"


def matrix_to_json(m: IntMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": list(m.entries)}


def entrywise_positive_power(m: IntMatrix, max_power: int) -> int | None:
    """Least k in 1..max_power with m^k entrywise positive, or None."""
    p = m
    for k in range(1, max_power + 1):
        if p.is_positive():
            return k
        p = p @ m
    return None

