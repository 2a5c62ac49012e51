"""Exact rational matrices and row-reduced span bases.

Matrices are square with entries kept as exact numbers: Python ints where
possible (the common case for sampled matrices, and much faster) and
Fraction wherever division has occurred.  Both are exact rationals and mix
freely in arithmetic and comparisons.

A SpanBasis holds a subspace of M_d flattened row-major to length-d^2
vectors, maintained in reduced row echelon form.  Echelon canonicality makes
subspace equality a plain row-list comparison and membership a single
reduction pass.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

Num = Union[int, Fraction]
Vector = tuple[Num, ...]


class DimensionMismatch(Exception):
    """Operands have incompatible dimensions."""


class DuplicateNodes(Exception):
    """Interpolation nodes are not pairwise distinct."""


class NonzeroTrace(Exception):
    """Operation requires a trace-zero matrix."""


class NotInSpan(Exception):
    """Target matrix does not lie in the given span."""


class Classification(Enum):
    """The possible linear spans of polynomial values on M_d.

    A span of values is {0}, the scalar matrices, the trace-zero matrices,
    or all of M_d; UNDETERMINED records a sampling budget that ran out
    before the basis matched one of the four.
    """

    ZERO = "ZERO"
    SCALARS = "SCALARS"
    TRACE_ZERO = "TRACE_ZERO"
    FULL = "FULL"
    UNDETERMINED = "UNDETERMINED"


class MatrixQ:
    """Immutable d x d matrix over the rationals."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Iterable[Iterable[Num]]):
        rows = tuple(tuple(r) for r in rows)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixQ is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(d: int) -> MatrixQ:
        return MatrixQ([[0] * d for _ in range(d)])

    @staticmethod
    def identity(d: int) -> MatrixQ:
        return MatrixQ([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @staticmethod
    def diagonal(entries: Sequence[Num]) -> MatrixQ:
        d = len(entries)
        return MatrixQ(
            [[entries[i] if i == j else 0 for j in range(d)] for i in range(d)]
        )

    @staticmethod
    def unit(d: int, j: int, k: int) -> MatrixQ:
        """Matrix unit E_jk: 1 in row j, column k (0-based), 0 elsewhere."""
        return MatrixQ(
            [[1 if (r, c) == (j, k) else 0 for c in range(d)] for r in range(d)]
        )

    @staticmethod
    def unflatten(vec: Sequence[Num], d: int) -> MatrixQ:
        if len(vec) != d * d:
            raise DimensionMismatch(f"need {d * d} entries, got {len(vec)}")
        return MatrixQ([vec[i * d : (i + 1) * d] for i in range(d)])

    # -- queries ------------------------------------------------------------

    def __getitem__(self, rc: tuple[int, int]) -> Num:
        return self.rows[rc[0]][rc[1]]

    def flatten(self) -> Vector:
        """Row-major length-d^2 vector."""
        return tuple(x for row in self.rows for x in row)

    def trace(self) -> Num:
        return sum(self.rows[i][i] for i in range(self.dim))

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def is_scalar(self) -> bool:
        """True iff self is a scalar multiple of the identity."""
        d = self.dim
        lam = self.rows[0][0]
        return all(
            self.rows[i][j] == (lam if i == j else 0)
            for i in range(d)
            for j in range(d)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(",".join(str(x) for x in row) for row in self.rows)
        return f"MatrixQ({body!r})"

    # -- arithmetic -----------------------------------------------------------

    def _check_dim(self, other: MatrixQ) -> None:
        if not isinstance(other, MatrixQ):
            raise TypeError(f"expected MatrixQ, got {type(other).__name__}")
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: MatrixQ) -> MatrixQ:
        self._check_dim(other)
        return MatrixQ(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: MatrixQ) -> MatrixQ:
        self._check_dim(other)
        return MatrixQ(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self) -> MatrixQ:
        return MatrixQ([[-x for x in row] for row in self.rows])

    def __mul__(self, other: MatrixQ) -> MatrixQ:
        self._check_dim(other)
        d = self.dim
        cols = tuple(zip(*other.rows))
        return MatrixQ(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.rows
            ]
        )

    def scale(self, c: Num) -> MatrixQ:
        return MatrixQ([[c * x for x in row] for row in self.rows])

    def __rmul__(self, c: Num) -> MatrixQ:
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def inverse(self) -> MatrixQ:
        """Exact inverse via Gauss-Jordan; raises ValueError if singular."""
        d = self.dim
        aug = [
            [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)]
            for i, row in enumerate(self.rows)
        ]
        for col in range(d):
            sel = next((r for r in range(col, d) if aug[r][col]), None)
            if sel is None:
                raise ValueError("matrix is singular")
            aug[col], aug[sel] = aug[sel], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    c = aug[r][col]
                    aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
        return MatrixQ([row[d:] for row in aug])


def mat_add(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    return a + b


def mat_mul(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    return a * b


def mat_scale(a: MatrixQ, c: Num) -> MatrixQ:
    return a.scale(c)


def trace(a: MatrixQ) -> Num:
    return a.trace()


def commutator(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    """[a, b] = ab - ba."""
    return a * b - b * a


# ---------------------------------------------------------------------------
# Reduced-echelon span bases
# ---------------------------------------------------------------------------

def _reduce_vector(
    rows: Sequence[Vector], pivots: Sequence[int], vec: Sequence[Num]
) -> list[Num]:
    """Reduce vec against RREF rows (each row has leading 1 at its pivot)."""
    v = list(vec)
    for row, p in zip(rows, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return v


def _rref_insert(
    rows: tuple[Vector, ...], pivots: tuple[int, ...], vec: Sequence[Num]
) -> tuple[tuple[Vector, ...], tuple[int, ...], bool]:
    """Insert vec into an RREF row set; returns (rows, pivots, grew)."""
    v = _reduce_vector(rows, pivots, vec)
    p = next((i for i, x in enumerate(v) if x), None)
    if p is None:
        return rows, pivots, False
    pv = Fraction(v[p])
    new_row = tuple(x / pv for x in v)
    adjusted = []
    for row in rows:
        c = row[p]
        if c:
            row = tuple(a - c * b for a, b in zip(row, new_row))
        adjusted.append(row)
    pos = next((k for k, q in enumerate(pivots) if q > p), len(pivots))
    out_rows = tuple(adjusted[:pos]) + (new_row,) + tuple(adjusted[pos:])
    out_pivots = pivots[:pos] + (p,) + pivots[pos:]
    return out_rows, out_pivots, True


class SpanBasis:
    """Row-reduced basis of a subspace of M_d, flattened row-major.

    Instances are values: insert returns a new basis, so bases built in
    different orders from the same matrices end up identical.
    """

    __slots__ = ("dim", "rows", "pivots")

    def __init__(
        self,
        dim: int,
        rows: tuple[Vector, ...] = (),
        pivots: tuple[int, ...] = (),
    ):
        if dim < 1:
            raise DimensionMismatch("dimension must be positive")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("SpanBasis is immutable")

    @staticmethod
    def from_matrices(dim: int, mats: Iterable[MatrixQ]) -> SpanBasis:
        basis = SpanBasis(dim)
        for m in mats:
            basis, _ = basis.insert(m)
        return basis

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, m: MatrixQ) -> tuple[SpanBasis, bool]:
        """Adjoin a matrix; grew is True iff the rank increased."""
        if m.dim != self.dim:
            raise DimensionMismatch(f"dimensions {m.dim} and {self.dim} differ")
        rows, pivots, grew = _rref_insert(self.rows, self.pivots, m.flatten())
        if not grew:
            return self, False
        return SpanBasis(self.dim, rows, pivots), True

    def contains(self, m: MatrixQ) -> bool:
        """Exact membership test by reduction against the basis rows."""
        if m.dim != self.dim:
            raise DimensionMismatch(f"dimensions {m.dim} and {self.dim} differ")
        residual = _reduce_vector(self.rows, self.pivots, m.flatten())
        return not any(residual)

    def is_subspace_of(self, other: SpanBasis) -> bool:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return all(other.contains(m) for m in self.row_matrices())

    def row_matrices(self) -> list[MatrixQ]:
        return [MatrixQ.unflatten(row, self.dim) for row in self.rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanBasis):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.dim, self.rows))

    def __repr__(self) -> str:
        return f"SpanBasis(dim={self.dim}, rank={self.rank})"

    def _row_traces_vanish(self) -> bool:
        d = self.dim
        return all(
            not sum(row[i * d + i] for i in range(d)) for row in self.rows
        )

    def equals_canonical(self, which: Classification) -> bool:
        """Compare against one of the four canonical subspaces of M_d."""
        d = self.dim
        if which is Classification.ZERO:
            return self.rank == 0
        if which is Classification.SCALARS:
            return self.rank == 1 and self.rows[0] == MatrixQ.identity(d).flatten()
        if which is Classification.TRACE_ZERO:
            return self.rank == d * d - 1 and self._row_traces_vanish()
        if which is Classification.FULL:
            return self.rank == d * d
        raise ValueError(f"no canonical subspace for {which}")

    def canonical_match(self) -> Classification | None:
        """The canonical space this basis equals, if any."""
        for which in (
            Classification.ZERO,
            Classification.SCALARS,
            Classification.TRACE_ZERO,
            Classification.FULL,
        ):
            if self.equals_canonical(which):
                return which
        return None


def subspace_of(b1: SpanBasis, b2: SpanBasis) -> bool:
    return b1.is_subspace_of(b2)


def express_in_terms(
    vectors: Sequence[Sequence[Num]], target: Sequence[Num]
) -> list[Fraction] | None:
    """Solve sum_j lam_j * vectors[j] = target exactly.

    Returns one solution (free coordinates set to zero), or None when the
    target is outside the span of the vectors.
    """
    k = len(vectors)
    n = len(target)
    aug = [
        [Fraction(vectors[j][r]) for j in range(k)] + [Fraction(target[r])]
        for r in range(n)
    ]
    pivot_cols: list[int] = []
    row = 0
    for col in range(k):
        sel = next((r for r in range(row, n) if aug[r][col]), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if aug[r][k]:
            return None
    sol = [Fraction(0)] * k
    for r, col in enumerate(pivot_cols):
        sol[col] = aug[r][k]
    return sol


# ---------------------------------------------------------------------------
# Vandermonde extraction
# ---------------------------------------------------------------------------

def vandermonde_extract(
    lambdas: Sequence[Num], values: Sequence[MatrixQ]
) -> list[MatrixQ]:
    """Recover matrices c_0..c_m from values[j] = sum_i lambdas[j]^i * c_i.

    The nodes must be pairwise distinct; the system is solved exactly by
    inverting the Vandermonde matrix, entrywise over the value matrices.
    """
    k = len(lambdas)
    if len(values) != k:
        raise ValueError(f"{k} nodes but {len(values)} values")
    if k == 0:
        return []
    if len(set(Fraction(lam) for lam in lambdas)) != k:
        raise DuplicateNodes("interpolation nodes must be pairwise distinct")
    d = values[0].dim
    for v in values:
        if v.dim != d:
            raise DimensionMismatch("value matrices have differing dimensions")
    vand = MatrixQ([[Fraction(lam) ** i for i in range(k)] for lam in lambdas])
    inv = vand.inverse()
    out = []
    for i in range(k):
        acc = MatrixQ.zero(d)
        for j in range(k):
            c = inv[i, j]
            if c:
                acc = acc + values[j].scale(c)
        out.append(acc)
    return out


def default_nodes(m: int) -> list[int]:
    """Interpolation nodes 0, 1, ..., m (small and guaranteed distinct)."""
    return list(range(m + 1))


# ---------------------------------------------------------------------------
# Commutator decompositions
# ---------------------------------------------------------------------------

def _first_non_eigenvector(m: MatrixQ) -> list[Num]:
    """A coordinate-ish vector v with v, m*v linearly independent.

    Exists whenever m is not scalar: either some standard basis vector
    works, or m is diagonal with two distinct eigenvalues and e_i + e_j
    works for those positions.
    """
    d = m.dim
    for i in range(d):
        if any(m.rows[r][i] for r in range(d) if r != i):
            return [int(r == i) for r in range(d)]
    # m is diagonal here; find two distinct diagonal entries
    diag = [m.rows[i][i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            if diag[i] != diag[j]:
                return [int(r == i or r == j) for r in range(d)]
    raise ValueError("matrix is scalar; no cyclic-ish vector exists")


def _apply(m: MatrixQ, v: Sequence[Num]) -> list[Num]:
    return [sum(a * b for a, b in zip(row, v)) for row in m.rows]


def _complete_basis(cols: list[list[Num]], d: int) -> MatrixQ:
    """Extend independent columns to a basis with standard basis vectors."""
    rows: tuple[Vector, ...] = ()
    pivots: tuple[int, ...] = ()
    for c in cols:
        rows, pivots, grew = _rref_insert(rows, pivots, c)
        assert grew, "seed columns must be independent"
    full = list(cols)
    for i in range(d):
        if len(full) == d:
            break
        e = [int(r == i) for r in range(d)]
        rows, pivots, grew = _rref_insert(rows, pivots, e)
        if grew:
            full.append(e)
    return MatrixQ([[full[j][i] for j in range(d)] for i in range(d)])


def zero_diagonal_conjugate(m: MatrixQ) -> tuple[MatrixQ, MatrixQ]:
    """Find invertible P with N = P^-1 m P having an all-zero diagonal.

    Classical similarity argument: a trace-zero matrix that is not scalar
    admits a vector v with (v, m v) independent, which zeroes one diagonal
    entry; recursing on the trailing block (still trace zero) clears the
    rest.  A trace-zero scalar matrix is already zero in characteristic 0.
    """
    if m.trace():
        raise NonzeroTrace(f"trace is {m.trace()}, expected 0")
    d = m.dim
    if all(not m.rows[i][i] for i in range(d)):
        return MatrixQ.identity(d), m
    v = _first_non_eigenvector(m)
    p = _complete_basis([v, _apply(m, v)], d)
    conj = p.inverse() * m * p
    # conj has first column (0, 1, 0, ..., 0); recurse on the trailing block
    block = MatrixQ([row[1:] for row in conj.rows[1:]])
    q, _ = zero_diagonal_conjugate(block)
    embed = [[1 if (i, j) == (0, 0) else 0 for j in range(d)] for i in range(d)]
    for i in range(d - 1):
        for j in range(d - 1):
            embed[i + 1][j + 1] = q.rows[i][j]
    p_total = p * MatrixQ(embed)
    n = p_total.inverse() * m * p_total
    return p_total, n


def commutator_decomposition(m: MatrixQ) -> tuple[MatrixQ, MatrixQ]:
    """Write a trace-zero matrix as a single commutator [a, b] = m, exactly.

    Conjugate m to zero diagonal, where [diag(1..d), b'] = n is solved by
    b'_jk = n_jk / (j - k), then conjugate the pair back.
    """
    if m.trace():
        raise NonzeroTrace(f"trace is {m.trace()}, expected 0")
    d = m.dim
    if m.is_zero():
        return MatrixQ.zero(d), MatrixQ.zero(d)
    p, n = zero_diagonal_conjugate(m)
    a0 = MatrixQ.diagonal(list(range(1, d + 1)))
    b0 = MatrixQ(
        [
            [n.rows[j][k] / Fraction(j - k) if j != k else 0 for k in range(d)]
            for j in range(d)
        ]
    )
    p_inv = p.inverse()
    return p * a0 * p_inv, p * b0 * p_inv
