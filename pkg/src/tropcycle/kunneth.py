"""Künneth projectors on the cohomology of products of curves.

Each factor C of genus g has the basis ``1, a_1..a_g, b_1..b_g, w`` of
H^0 + H^1 + H^2 with ``a_i . b_i = w`` and ``int w = 1``.  Correspondences
on C x C act by ``Gamma_*(x) = pr2_*(pr1^* x . Gamma)``; the projectors are
the actions of ``pt x C``, ``C x pt`` and the diagonal minus both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import sparse

from . import linalg as la


def cup_pairing(g: int) -> list[list[int]]:
    """``P[k][i] = int e_k . e_i`` in the factor basis."""
    n = 2 * g + 2
    P = [[0] * n for _ in range(n)]
    P[0][n - 1] = P[n - 1][0] = 1
    for i in range(g):
        P[1 + i][1 + g + i] = 1
        P[1 + g + i][1 + i] = -1
    return P


def factor_degrees(g: int) -> list[int]:
    return [0] + [1] * (2 * g) + [2]


def correspondence_action(coeffs: Sequence[Sequence[int]], g: int) -> list[list[int]]:
    """Matrix of ``Gamma_*`` for ``Gamma = sum c_ij e_i (x) e_j``: ``A = C^T P^T``."""
    P = cup_pairing(g)
    n = len(P)
    return [[sum(coeffs[i][j] * P[k][i] for i in range(n)) for k in range(n)] for j in range(n)]


def diagonal_class(g: int) -> list[list[int]]:
    """Künneth coefficients of the diagonal, characterised by ``Delta_* = id``."""
    P = cup_pairing(g)
    Pinv = la.inverse([[Fraction(x) for x in row] for row in P])
    return [[int(x) for x in row] for row in Pinv]


def factor_projectors(g: int) -> tuple[list, list, list]:
    """(pi_0, pi_1, pi_2) for one curve of genus g as integer matrices."""
    n = 2 * g + 2
    pt_x_C = [[0] * n for _ in range(n)]
    pt_x_C[n - 1][0] = 1  # w (x) 1
    C_x_pt = [[0] * n for _ in range(n)]
    C_x_pt[0][n - 1] = 1  # 1 (x) w
    pi0 = correspondence_action(pt_x_C, g)
    pi2 = correspondence_action(C_x_pt, g)
    delta = correspondence_action(diagonal_class(g), g)
    pi1 = [[delta[i][j] - pi0[i][j] - pi2[i][j] for j in range(n)] for i in range(n)]
    return pi0, pi1, pi2


@dataclass(frozen=True)
class KunnethSpace:
    """H^* of ``C_1 x ... x C_n`` in the tensor basis of the factor bases."""

    genera: tuple

    def __post_init__(self):
        object.__setattr__(self, "genera", tuple(int(g) for g in self.genera))
        if any(g < 0 for g in self.genera):
            raise ValueError("genera must be non-negative")

    @property
    def n(self) -> int:
        return len(self.genera)

    @property
    def dims(self) -> list[int]:
        return [2 * g + 2 for g in self.genera]

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims)) if self.genera else 1

    def basis(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(d) for d in self.dims]))

    def degrees(self) -> list[int]:
        fd = [factor_degrees(g) for g in self.genera]
        return [sum(fd[i][k] for i, k in enumerate(idx)) for idx in self.basis()]

    def labels(self) -> list[tuple[int, ...]]:
        """Per-factor degree label alpha of every basis element."""
        fd = [factor_degrees(g) for g in self.genera]
        return [tuple(fd[i][k] for i, k in enumerate(idx)) for idx in self.basis()]

    def degree_dimension(self, k: int) -> int:
        """Künneth count ``sum_{|alpha| = k} prod dim H^{alpha_i}``."""
        tot = 0
        for alpha in itertools.product((0, 1, 2), repeat=self.n):
            if sum(alpha) == k:
                p = 1
                for a, g in zip(alpha, self.genera):
                    p *= 2 * g if a == 1 else 1
                tot += p
        return tot


def _check_alpha(K: KunnethSpace, alpha) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != K.n or any(a not in (0, 1, 2) for a in alpha):
        raise ValueError(f"alpha must have {K.n} entries in {{0, 1, 2}}, got {alpha}")
    return alpha


def kunneth_projector(K: KunnethSpace, alpha) -> sparse.csr_matrix:
    """Projector onto ``H^{alpha_1} (x) ... (x) H^{alpha_n}`` (sparse int64)."""
    alpha = _check_alpha(K, alpha)
    out = sparse.identity(1, dtype=np.int64, format="csr")
    for a, g in zip(alpha, K.genera):
        pi = sparse.csr_matrix(np.array(factor_projectors(g)[a], dtype=np.int64))
        out = sparse.kron(out, pi, format="csr")
    return out


def degree_projector(K: KunnethSpace, k: int) -> sparse.csr_matrix:
    """``sum_{|alpha| = k} pi_alpha``."""
    tot = sparse.csr_matrix((K.dim, K.dim), dtype=np.int64)
    for alpha in itertools.product((0, 1, 2), repeat=K.n):
        if sum(alpha) == k:
            tot = tot + kunneth_projector(K, alpha)
    return tot


def pushforward(K: KunnethSpace, keep: Sequence[int]) -> tuple[KunnethSpace, sparse.csr_matrix]:
    """``pr_S*`` onto the factors in ``keep``: integrates out the others (keeps their w-coefficient)."""
    keep = sorted(set(keep))
    KS = KunnethSpace(tuple(K.genera[i] for i in keep))
    rows, cols = [], []
    index = {idx: r for r, idx in enumerate(KS.basis())}
    for c, idx in enumerate(K.basis()):
        if all(idx[i] == K.dims[i] - 1 for i in range(K.n) if i not in keep):
            rows.append(index[tuple(idx[i] for i in keep)])
            cols.append(c)
    M = sparse.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(KS.dim, K.dim))
    return KS, M


def xi(i: int, n: int) -> list[tuple[int, ...]]:
    """Increasing maps ``{1..i-1} -> {1..n}`` (0-based images); empty for i <= 0."""
    if i <= 0:
        return []
    return list(itertools.combinations(range(n), i - 1))


def li_filtration_membership(K: KunnethSpace, cls: Sequence, i: int) -> bool:
    """Whether a degree-n class lies in ``L_i``: killed by every ``pr_S* . pi_n``, S in Xi_{i-1}."""
    cls = [Fraction(x) for x in cls]
    if len(cls) != K.dim:
        raise ValueError(f"class has {len(cls)} coordinates, expected {K.dim}")
    degs = K.degrees()
    if any(c != 0 and d != K.n for c, d in zip(cls, degs)):
        raise ValueError(f"class is not homogeneous of degree {K.n}")
    # integer coordinates up to a common denominator
    den = 1
    for c in cls:
        den = den * c.denominator // np.gcd(den, c.denominator)
    vec = np.array([int(c * den) for c in cls], dtype=object)
    pin = degree_projector(K, K.n)
    for S in xi(i, K.n):
        _, M = pushforward(K, S)
        op = (M @ pin).tocsr()
        out = [sum(int(op[r, c]) * vec[c] for c in op[r].indices) for r in range(op.shape[0])]
        if any(x != 0 for x in out):
            return False
    return True
