"""Term-orderings given by integer matrices."""

from __future__ import annotations

from .errors import DimensionMismatch, InvalidIndex, InvalidMatrix

LESS, EQUAL, GREATER = -1, 0, 1


def rational_rank(rows):
    """Rank over QQ by fraction-free elimination on integer rows."""
    rows = [list(map(int, r)) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            a = rows[i][col]
            if a:
                rows[i] = [p[col] * x - a * y for x, y in zip(rows[i], p)]
        rank += 1
    return rank


def is_term_ordering(matrix):
    """True iff ``matrix`` is square, of full rank, and every column's first nonzero entry is positive."""
    rows = [tuple(int(x) for x in r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        return False
    for j in range(n):
        first = next((r[j] for r in rows if r[j] != 0), 0)
        if first <= 0:
            return False
    return rational_rank(rows) == n


class OrderMatrix:
    """An ``n x n`` integer matrix defining a term-ordering.

    The sort key of a power-product is the vector ``M . a``; comparing keys
    lexicographically is exactly the matrix ordering.
    """

    __slots__ = ("rows", "n", "name", "_sparse")

    def __init__(self, rows, name=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not is_term_ordering(rows):
            raise InvalidMatrix(f"matrix {list(map(list, rows))} is not a term-ordering")
        self.rows = rows
        self.n = len(rows)
        self.name = name
        self._sparse = tuple(tuple((j, c) for j, c in enumerate(r) if c) for r in rows)

    def key(self, pp):
        return tuple(sum(c * pp[j] for j, c in row) for row in self._sparse)

    def compare(self, a, b):
        if len(a) != self.n or len(b) != self.n:
            raise DimensionMismatch("power-product length does not match the ordering")
        for row in self._sparse:
            d = sum(c * (a[j] - b[j]) for j, c in row)
            if d:
                return GREATER if d > 0 else LESS
        return EQUAL

    def is_degree_compatible(self, weights):
        return list(self.rows[0]) == list(weights)

    def __eq__(self, other):
        return isinstance(other, OrderMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"OrderMatrix({[list(r) for r in self.rows]})"

    def __str__(self):
        return format_matrix(self.rows)


def format_matrix(rows):
    """Display as ``matrix(ZZ, [[...], ...])`` with one row per line."""
    body = ",\n  ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows)
    return f"matrix(ZZ,\n [{body}])"


def make_lex(n):
    if n < 1:
        raise ValueError("need at least one indeterminate")
    return OrderMatrix([[int(i == j) for j in range(n)] for i in range(n)], name="lex")


def make_deglex(n):
    if n < 1:
        raise ValueError("need at least one indeterminate")
    rows = [[1] * n] + [[int(i == j) for j in range(n)] for i in range(n - 1)]
    return OrderMatrix(rows, name="DegLex")


def make_std_deg_rev_lex(n):
    """Row 1 all ones; row k (k >= 2) has -1 in column n-k+2 (1-based)."""
    if n < 1:
        raise ValueError("need at least one indeterminate")
    rows = [[1] * n]
    for k in range(2, n + 1):
        row = [0] * n
        row[n - k + 1] = -1
        rows.append(row)
    return OrderMatrix(rows, name="StdDegRevLex")


def make_weighted_rev_lex(weights, last=None):
    """Weight row first, then reverse-lex tie-breaks; ``last`` is the index treated as smallest."""
    n = len(weights)
    order = list(range(n - 1, -1, -1))
    if last is not None:
        order.remove(last)
        order.insert(0, last)
    rows = [list(weights)]
    for j in order:
        if len(rows) == n:
            break
        row = [0] * n
        row[j] = -1
        if rational_rank(rows + [row]) > len(rows):
            rows.append(row)
    return OrderMatrix(rows)


def elim_mat(elim, n):
    """Elimination ordering for the 1-based indeterminate indices in ``elim``.

    Row 1 is the indicator of ``elim``, row 2 is all ones, and reverse-lex rows
    ``-e_n, -e_{n-1}, ...`` complete the matrix wherever they raise the rank.
    """
    elim = sorted(set(int(i) for i in elim))
    if not elim:
        raise InvalidIndex("elimination set must be nonempty")
    if elim[0] < 1 or elim[-1] > n:
        raise InvalidIndex(f"indices must lie in 1..{n}")
    rows = [[int(j + 1 in elim) for j in range(n)]]
    candidates = [[1] * n]
    for j in range(n - 1, -1, -1):
        row = [0] * n
        row[j] = -1
        candidates.append(row)
    for row in candidates:
        if len(rows) == n:
            break
        if rational_rank(rows + [row]) > len(rows):
            rows.append(row)
    return OrderMatrix(rows, name="elim")


def graded_elim_mat(weights, elim):
    """Weighted-degree first, then the indicator of the 0-based ``elim`` indices, then revlex.

    Eliminates ``elim`` for ideals homogeneous with respect to ``weights``.
    """
    n = len(weights)
    rows = [list(weights), [int(j in elim) for j in range(n)]]
    for j in range(n - 1, -1, -1):
        if len(rows) == n:
            break
        row = [0] * n
        row[j] = -1
        if rational_rank(rows + [row]) > len(rows):
            rows.append(row)
    return OrderMatrix(rows, name="elim")


def compare_pp(M, a, b):
    return M.compare(a, b)
