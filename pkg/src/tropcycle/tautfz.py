"""Exact power series behind the FZ relations and their formal tautological expansion."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .tropnum import format_rat, rat


@dataclass(frozen=True)
class RatSeries:
    """Truncated power series ``sum_{j <= R} c_j z^j`` with rational coefficients."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))

    @classmethod
    def zero(cls, R: int) -> "RatSeries":
        return cls((Fraction(0),) * (R + 1))

    @classmethod
    def one(cls, R: int) -> "RatSeries":
        return cls((Fraction(1),) + (Fraction(0),) * R)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j <= self.order else Fraction(0)

    def truncate(self, R: int) -> "RatSeries":
        return RatSeries(tuple(self[j] for j in range(R + 1)))

    def _common(self, other: "RatSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "RatSeries") -> "RatSeries":
        R = self._common(other)
        return RatSeries(tuple(self[j] + other[j] for j in range(R + 1)))

    def __neg__(self) -> "RatSeries":
        return RatSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RatSeries") -> "RatSeries":
        return self + (-other)

    def scale(self, c) -> "RatSeries":
        c = rat(c)
        return RatSeries(tuple(c * x for x in self.coeffs))

    def __mul__(self, other) -> "RatSeries":
        if not isinstance(other, RatSeries):
            return self.scale(other)
        R = self._common(other)
        return RatSeries(tuple(sum((self[i] * other[j - i] for i in range(j + 1)), Fraction(0)) for j in range(R + 1)))

    __rmul__ = __mul__

    def __truediv__(self, other: "RatSeries") -> "RatSeries":
        if other[0] == 0:
            raise ZeroDivisionError("division by a series with zero constant term")
        R = self._common(other)
        q = []
        for j in range(R + 1):
            acc = self[j] - sum((q[i] * other[j - i] for i in range(j)), Fraction(0))
            q.append(acc / other[0])
        return RatSeries(tuple(q))

    def derivative(self) -> "RatSeries":
        """d/dz; the top coefficient is lost, so the order drops by one (kept >= 0)."""
        if self.order == 0:
            return RatSeries((Fraction(0),))
        return RatSeries(tuple(j * self[j] for j in range(1, self.order + 1)))

    def shift(self, k: int = 1) -> "RatSeries":
        """Multiply by z^k keeping the truncation order."""
        return RatSeries(tuple(self[j - k] for j in range(self.order + 1)))

    def log(self) -> "RatSeries":
        """Formal logarithm; needs constant term 1.  Uses (log f)' = f'/f."""
        if self[0] != 1:
            raise ValueError("log needs constant term 1")
        R = self.order
        d = [Fraction(0)] * (R + 1)
        q = [Fraction(0)] * (R + 1)  # q = f'/f
        fp = [(j + 1) * self[j + 1] for j in range(R)]
        for j in range(R):
            q[j] = fp[j] - sum((q[i] * self[j - i] for i in range(j)), Fraction(0))
        for j in range(1, R + 1):
            d[j] = q[j - 1] / j
        return RatSeries(tuple(d))

    def exp(self) -> "RatSeries":
        """Formal exponential; needs constant term 0.  Uses e' = f' e."""
        if self[0] != 0:
            raise ValueError("exp needs constant term 0")
        R = self.order
        e = [Fraction(1)] + [Fraction(0)] * R
        for j in range(1, R + 1):
            e[j] = sum((k * self[k] * e[j - k] for k in range(1, j + 1)), Fraction(0)) / j
        return RatSeries(tuple(e))

    def to_list(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]


def series_A(R: int) -> RatSeries:
    """``sum_j (6j)! / ((2j)! (3j)!) z^j``."""
    if R < 0:
        raise ValueError("R must be >= 0")
    return RatSeries(tuple(Fraction(factorial(6 * j), factorial(2 * j) * factorial(3 * j)) for j in range(R + 1)))


def series_B(R: int) -> RatSeries:
    """``sum_j (6j)! / ((2j)! (3j)!) (6j+1)/(6j-1) z^j``."""
    A = series_A(R)
    return RatSeries(tuple(A[j] * Fraction(6 * j + 1, 6 * j - 1) for j in range(R + 1)))


def fz_operator(f: RatSeries, n: int) -> RatSeries:
    """``(12 z^2 d/dz - 4 n z) f`` at the truncation order of f."""
    out = [Fraction(0)]
    for j in range(1, f.order + 1):
        # z^2 f' and z f both contribute through f_{j-1}
        out.append((12 * (j - 1) - 4 * n) * f[j - 1])
    return RatSeries(tuple(out))


def series_C(n: int, R: int) -> RatSeries:
    """``C_0 = log A``, ``C_1 = B / A``, ``C_{m+1} = (12 z^2 d/dz - 4 m z) C_m``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    A = series_A(R)
    if n == 0:
        return A.log()
    C = series_B(R) / A
    for m in range(1, n):
        C = fz_operator(C, m)
    return C


# ---------------------------------------------------------------- tautological expressions

def _set_label(S: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


def kappa(j: int) -> str:
    return f"kappa_{j}"


def psi(S: Iterable[int]) -> str:
    return f"psi_{_set_label(S)}"


def delta(S: Iterable[int]) -> str:
    return f"Delta_{_set_label(S)}"


def _relabel_symbol(sym: str, perm: dict) -> str:
    if sym.startswith(("psi_{", "Delta_{")):
        head, body = sym.split("_", 1)
        inner = body[1:-1]
        S = [perm[int(x)] for x in inner.split(",")] if inner else []
        return f"{head}_{_set_label(S)}"
    return sym


class TautExpr:
    """Formal Q-linear combination of monomials in kappa, psi and Delta symbols.

    A monomial is a sorted tuple of ``(symbol, power)`` pairs; ``()`` is 1.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out: dict = {}
        for mono, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            c = rat(c)
            if c == 0:
                continue
            mono = _normalize(mono)
            out[mono] = out.get(mono, Fraction(0)) + c
            if out[mono] == 0:
                del out[mono]
        self.terms = out

    @classmethod
    def const(cls, c) -> "TautExpr":
        return cls({(): c})

    @classmethod
    def symbol(cls, sym: str, power: int = 1, coeff=1) -> "TautExpr":
        return cls({((sym, power),): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TautExpr") -> "TautExpr":
        return TautExpr(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "TautExpr":
        return TautExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TautExpr") -> "TautExpr":
        return self + (-other)

    def __mul__(self, other) -> "TautExpr":
        if not isinstance(other, TautExpr):
            c = rat(other)
            return TautExpr({m: c * v for m, v in self.terms.items()})
        out = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out.append((m1 + m2, c1 * c2))
        return TautExpr(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, TautExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def relabel(self, perm: dict) -> "TautExpr":
        """Apply a permutation of the marking set to every psi and Delta symbol."""
        return TautExpr({tuple((_relabel_symbol(s, perm), p) for s, p in m): c for m, c in self.terms.items()})

    def to_json(self) -> list[dict]:
        return [{"coeff": format_rat(c), "monomial": [s if p == 1 else f"{s}^{p}" for s, p in m]} for m, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "TautExpr":
        terms = []
        for item in data:
            mono = []
            for tok in item["monomial"]:
                if "^" in tok:
                    s, p = tok.rsplit("^", 1)
                    mono.append((s, int(p)))
                else:
                    mono.append((tok, 1))
            terms.append((tuple(mono), rat(item["coeff"])))
        return cls(terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join(s if p == 1 else f"{s}^{p}" for s, p in m)
            parts.append(format_rat(c) if not mono else (mono if c == 1 else f"{format_rat(c)}*{mono}"))
        return " + ".join(parts)

    __repr__ = __str__


def _normalize(mono) -> tuple:
    powers: dict = {}
    for s, p in mono:
        powers[s] = powers.get(s, 0) + int(p)
    return tuple(sorted((s, p) for s, p in powers.items() if p != 0))


@dataclass(frozen=True)
class TautSeries:
    """Truncated power series with TautExpr coefficients."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def scalar(cls, f: RatSeries) -> "TautSeries":
        return cls(tuple(TautExpr.const(c) for c in f.coeffs))

    def __getitem__(self, j: int) -> TautExpr:
        return self.coeffs[j] if 0 <= j <= self.order else TautExpr()

    def __add__(self, other: "TautSeries") -> "TautSeries":
        R = min(self.order, other.order)
        return TautSeries(tuple(self[j] + other[j] for j in range(R + 1)))

    def __mul__(self, other) -> "TautSeries":
        if not isinstance(other, TautSeries):
            return TautSeries(tuple(c * other for c in self.coeffs))
        R = min(self.order, other.order)
        out = []
        for j in range(R + 1):
            acc = TautExpr()
            for i in range(j + 1):
                if self[i].terms and other[j - i].terms:
                    acc = acc + self[i] * other[j - i]
            out.append(acc)
        return TautSeries(tuple(out))

    def exp(self) -> "TautSeries":
        if not self[0].is_zero():
            raise ValueError("exp needs a zero constant term")
        R = self.order
        out = TautSeries((TautExpr.const(1),) + (TautExpr(),) * R)
        power = out
        for m in range(1, R + 1):
            power = power * self * Fraction(1, m)
            out = out + power
        return out


def bracket_k(f: RatSeries) -> TautSeries:
    """``{f}_kappa = sum_j kappa_j f_j z^j``."""
    return TautSeries(tuple(TautExpr.symbol(kappa(j), 1, c) if c else TautExpr() for j, c in enumerate(f.coeffs)))


def bracket_delta(f: RatSeries, S: Sequence[int]) -> TautSeries:
    """``{f}_{Delta_S} = sum_j (-1)^{|S|-1} Delta_S psi_S^{j-|S|+1} f_j z^j``.

    Terms with ``j < |S| - 1`` have no meaning and are dropped; a warning is
    issued when a dropped coefficient is nonzero.  Delta of a single point is 1.
    """
    S = sorted(set(int(i) for i in S))
    if not S:
        raise ValueError("S must be non-empty")
    k = len(S)
    sign = -1 if (k - 1) % 2 else 1
    out = []
    dropped = []
    for j, c in enumerate(f.coeffs):
        e = j - k + 1
        if e < 0:
            if c:
                dropped.append(j)
            out.append(TautExpr())
            continue
        mono = []
        if k > 1:
            mono.append((delta(S), 1))
        if e:
            mono.append((psi(S), e))
        out.append(TautExpr({tuple(mono): sign * c}) if c else TautExpr())
    if dropped:
        warnings.warn(f"bracket_delta dropped coefficients z^{dropped} below |S| - 1 = {k - 1}", stacklevel=2)
    return TautSeries(tuple(out))


def set_partitions(items: Sequence[int]) -> list[list[list[int]]]:
    """All set partitions, blocks in order of their least element."""
    items = list(items)
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        out.append([[first]] + part)
        for i in range(len(part)):
            out.append(part[:i] + [[first] + part[i]] + part[i + 1:])
    return sorted(out, key=lambda p: (len(p), [sorted(b) for b in p]))


@dataclass
class FZResult:
    relation: TautExpr
    expression: str
    reading: str
    n: int
    r: int
    R: int
    note: str = "formal coefficient only; vanishing in the tautological ring is a theorem and is not checked here"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "R": self.R,
            "reading": self.reading,
            "expression": self.expression,
            "relation": self.relation.to_json(),
            "note": self.note,
        }


def fz_relation(n: int, r: int, R: int | None = None, reading: str = "kappa") -> FZResult:
    """Coefficient of z^r in ``exp(-{log A}) * sum_P prod_{S in P} {C_|S|}_{Delta_S}``.

    ``reading="kappa"`` uses the kappa bracket of log A in the prefactor;
    ``reading="n"`` uses the scalar series ``n log A`` instead.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if R is None:
        R = r + n
    if r > R:
        raise ValueError(f"r = {r} exceeds the truncation order R = {R}")
    logA = series_A(R).log()
    if reading == "kappa":
        pre_arg = bracket_k(logA) * -1
        pre_text = "exp(-{log A}_kappa)"
    elif reading == "n":
        pre_arg = TautSeries.scalar(logA.scale(-n))
        pre_text = f"exp(-{n}*log A)"
    else:
        raise ValueError("reading must be 'kappa' or 'n'")
    prefactor = pre_arg.exp()
    Cs = {k: series_C(k, R) for k in range(1, n + 1)}
    total = TautSeries((TautExpr(),) * (R + 1))
    for P in set_partitions(range(1, n + 1)):
        prod = TautSeries((TautExpr.const(1),) + (TautExpr(),) * R)
        for S in P:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                prod = prod * bracket_delta(Cs[len(S)], S)
        total = total + prod
    rel = (prefactor * total)[r]
    expr = f"[{pre_text} * sum_{{P partition of {{1..{n}}}}} prod_{{S in P}} {{C_|S|}}_Delta_S]_(z^{r}), R = {R}"
    return FZResult(rel, expr, reading, n, r, R)
