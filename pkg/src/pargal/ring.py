"""Exact base fields (Q or F_p) and dense Gaussian elimination over them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch


class ModP:
    """A residue in F_p, kept canonical in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(other, self.p) / self

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class BaseRing:
    """Q when ``p`` is None, otherwise the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, spec: str) -> "BaseRing":
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rationals"):
            return cls()
        if spec.startswith("fp:"):
            return cls(int(spec[3:]))
        raise ValueError(f"unknown ring {spec!r}; use 'q' or 'fp:<p>'")

    def __call__(self, x):
        if self.p is None:
            return Fraction(x.v if isinstance(x, ModP) else x)
        if isinstance(x, Fraction):
            return ModP(x.numerator, self.p) / ModP(x.denominator, self.p)
        if isinstance(x, ModP):
            return ModP(x.v, self.p)
        return ModP(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __str__(self):
        return "q" if self.p is None else f"fp:{self.p}"


QQ = BaseRing()

Matrix = list  # list of rows, each a list of scalars


def _copy(A: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in A]


def rref(A: Sequence[Sequence], ring: BaseRing = QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; pivots chosen as the first nonzero entry in column order."""
    M = [[ring(v) for v in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        lead = M[r][c]
        M[r] = [v / lead for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def _echelon(rows: list[dict], ring: BaseRing) -> dict[int, dict]:
    """Sparse row reduction; returns pivot column -> row normalised to a leading 1."""
    pivots: dict[int, dict] = {}
    for r in rows:
        r = {c: v for c, v in r.items() if v != 0}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                lead = r[c]
                pivots[c] = {k: v / lead for k, v in r.items()}
                break
            f = r[c]
            for k, v in p.items():
                nv = r.get(k, ring.zero) - f * v
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
    return pivots


def _sparse(A: Sequence[Sequence], ring: BaseRing) -> list[dict]:
    return [{c: ring(v) for c, v in enumerate(row) if v != 0} for row in A]


def rank(A: Sequence[Sequence], ring: BaseRing = QQ) -> int:
    if not A:
        return 0
    return len(_echelon(_sparse(A, ring), ring))


def solve(A: Sequence[Sequence], b: Sequence, ring: BaseRing = QQ) -> list | None:
    """Some x with A x = b (free variables set to 0), or None when inconsistent."""
    if len(A) != len(b):
        raise DimensionMismatch(f"{len(A)} rows but right-hand side of length {len(b)}")
    if not A:
        return []
    cols = len(A[0])
    rows = _sparse(A, ring)
    for r, bi in zip(rows, b):
        if bi != 0:
            r[cols] = ring(bi)
    piv = _echelon(rows, ring)
    if cols in piv:
        return None
    x = [ring.zero] * cols
    for c in sorted(piv, reverse=True):
        row = piv[c]
        v = row.get(cols, ring.zero)
        for k, a in row.items():
            if k != c and k != cols:
                v = v - a * x[k]
        x[c] = v
    return x


def kernel_basis(A: Sequence[Sequence], ring: BaseRing = QQ, cols: int | None = None) -> list[list]:
    """Basis of {x : A x = 0}, one vector per free column of the RREF."""
    if cols is None:
        cols = len(A[0]) if A else 0
    if not A:
        return [[ring.one if i == j else ring.zero for i in range(cols)] for j in range(cols)]
    M, pivots = rref(A, ring)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero] * cols
        v[f] = ring.one
        for r, c in enumerate(pivots):
            v[c] = -M[r][f]
        basis.append(v)
    return basis


def is_bijective(A: Sequence[Sequence], ring: BaseRing = QQ) -> bool:
    if not A:
        return True
    n = len(A)
    if any(len(row) != n for row in A):
        return False
    return rank(A, ring) == n


def inverse(A: Sequence[Sequence], ring: BaseRing = QQ) -> list[list] | None:
    n = len(A)
    if any(len(row) != n for row in A):
        raise DimensionMismatch("inverse needs a square matrix")
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    M, pivots = rref(aug, ring)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in M]


def matvec(A: Sequence[Sequence], x: Sequence, ring: BaseRing = QQ) -> list:
    if A and len(A[0]) != len(x):
        raise DimensionMismatch("matrix/vector size mismatch")
    return [sum((a * b for a, b in zip(row, x)), ring.zero) for row in A]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], ring: BaseRing = QQ) -> list[list]:
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), ring.zero) for col in cols] for row in A]
