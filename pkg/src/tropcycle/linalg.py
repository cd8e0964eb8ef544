"""Small exact linear algebra over Q and Z.

Matrices are lists of rows of Fractions.  Sizes in this package are tiny
(at most a few dozen rows), so plain Gaussian elimination is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = list
Matrix = list


def to_frac_matrix(A) -> Matrix:
    return [[Fraction(x) for x in row] for row in A]


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(map(Fraction, row)) for row in A]
    if not M:
        return M, []
    rows, cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : A x = 0} over Q."""
    if not A:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(A)
    n = len(A[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence) -> Vector | None:
    """One solution of A x = b over Q, or None when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = R[i][n]
    return x


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(A: Matrix) -> Fraction:
    M = [list(map(Fraction, row)) for row in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence) -> Vector:
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_positive_definite(Q: Matrix) -> bool:
    """Sylvester's criterion on leading principal minors (exact)."""
    n = len(Q)
    if any(Q[i][j] != Q[j][i] for i in range(n) for j in range(n)):
        return False
    return all(det([row[:k] for row in Q[:k]]) > 0 for k in range(1, n + 1))


# ---------------------------------------------------------------- integers

def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout_vector(v: Sequence[int]) -> list[int]:
    """Integer vector y with <v, y> = gcd(v)."""
    y = [0] * len(v)
    g = 0
    for i, a in enumerate(v):
        if a == 0:
            continue
        if g == 0:
            g, y[i] = abs(a), (1 if a > 0 else -1)
            continue
        g2, s, t = ext_gcd(g, a)
        y = [s * c for c in y]
        y[i] = t
        g = g2
    return y


def column_hermite(A: list[list[int]]) -> tuple[list[list[int]], list[list[int]], int]:
    """Unimodular column reduction A U = [H | 0].

    Returns (H_full, U, r) where H_full = A U, the first r columns are
    independent and the last columns of A U vanish.  U is unimodular.
    """
    m = len(A)
    n = len(A[0]) if A else 0
    M = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for X in (M, U):
            for row in X:
                ci, cj = row[i], row[j]
                row[i], row[j] = a * ci + b * cj, c * ci + d * cj

    r = 0
    for row_idx in range(m):
        if r >= n:
            break
        for j in range(r + 1, n):
            a, b = M[row_idx][r], M[row_idx][j]
            if b == 0:
                continue
            g, s, t = ext_gcd(a, b)
            # new col_r = s col_r + t col_j ; new col_j = (-b/g) col_r + (a/g) col_j
            colop(r, j, s, t, -b // g, a // g)
        if M[row_idx][r] != 0:
            r += 1
    return M, U, r


def integer_kernel(A: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the lattice {x in Z^n : A x = 0}."""
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    _, U, r = column_hermite(A)
    return [[U[i][j] for i in range(ncols)] for j in range(r, ncols)]


def saturated_lattice_basis(vectors: Sequence[Sequence], n: int) -> list[list[int]]:
    """Integer basis of span_Q(vectors) ∩ Z^n."""
    vecs = [list(map(Fraction, v)) for v in vectors if any(Fraction(x) != 0 for x in v)]
    if not vecs:
        return []
    normals = nullspace(vecs, n)
    if not normals:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    int_normals = [list(primitive(v)) for v in normals]
    return integer_kernel(int_normals, n)


def in_integer_span(gens: Sequence[Sequence], target: Sequence) -> bool:
    """Decide target ∈ Z·gens exactly (gens rational vectors of equal length)."""
    target = [Fraction(x) for x in target]
    if not gens:
        return all(x == 0 for x in target)
    cols = [list(map(Fraction, g)) for g in gens]
    den = 1
    for v in cols + [target]:
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
    A = [[int(cols[j][i] * den) for j in range(len(cols))] for i in range(len(target))]
    t = [int(x * den) for x in target]
    # A U = [H | 0]; target in image iff H y = t has an integer solution.
    H, _, r = column_hermite(A)
    Hr = [row[:r] for row in H]
    y = solve([list(map(Fraction, row)) for row in Hr], t) if r else None
    if r == 0:
        return all(x == 0 for x in t)
    if y is None:
        return False
    return all(v.denominator == 1 for v in y)
