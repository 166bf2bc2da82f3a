"""Small finite fields GF(q) with table arithmetic.

Prime q is arithmetic mod q.  The prime powers 4, 8 and 9 use a fixed
irreducible polynomial; an element is the integer whose base-p digits are the
polynomial coefficients (lowest degree first).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

# q -> (p, k, monic irreducible of degree k, coefficients low to high)
IRREDUCIBLE = {
    4: (2, 2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),  # x^2 + 1
}

MAX_Q = 9


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True, eq=False)
class GF:
    q: int
    p: int
    k: int

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self._add(a, b) for b in range(self.q)) for a in range(self.q))

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self._mul(a, b) for b in range(self.q)) for a in range(self.q))

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(next(b for b in range(self.q) if self.add_table[a][b] == 0) for a in range(self.q))

    @cached_property
    def inv_table(self) -> tuple[int | None, ...]:
        return tuple(
            None if a == 0 else next(b for b in range(1, self.q) if self.mul_table[a][b] == 1)
            for a in range(self.q)
        )

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _number(self, digits: list[int]) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def _add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._number([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        p, k, poly = IRREDUCIBLE[self.q]
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                prod[i + j] = (prod[i + j] + xi * yj) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i, coeff in enumerate(poly):
                    prod[deg - k + i] = (prod[deg - k + i] - c * coeff) % p
        return self._number(prod[:k])

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        v = self.inv_table[a]
        if v is None:
            raise ZeroDivisionError("zero has no inverse")
        return v

    def power(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def frobenius(self, e: int = 1):
        """The automorphism a -> a^(p^e)."""
        exp = self.p ** e
        return tuple(self.power(a, exp) for a in range(self.q))

    def involutions(self) -> dict[str, tuple[int, ...]]:
        """Field involutions available for sesquilinear forms (identity always)."""
        out = {"identity": tuple(range(self.q))}
        if self.k % 2 == 0:
            out["conjugate"] = self.frobenius(self.k // 2)
        return out


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    if _is_prime(q):
        return GF(q, q, 1)
    if q in IRREDUCIBLE:
        p, k, _ = IRREDUCIBLE[q]
        return GF(q, p, k)
    raise ValueError(f"GF({q}) is not supported; use a prime or one of 4, 8, 9")


# ----------------------------------------------------------- vectors over GF


def normalize(F: GF, v: tuple[int, ...]) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(x for x in v if x)
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def rref(F: GF, rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Reduced row echelon basis of the span of ``rows`` (zero rows dropped)."""
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        pr = next((r for r in range(pivot_row, len(m)) if m[r][col]), None)
        if pr is None:
            continue
        m[pivot_row], m[pr] = m[pr], m[pivot_row]
        inv = F.inv(m[pivot_row][col])
        m[pivot_row] = [F.mul(inv, x) for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col]:
                c = m[r][col]
                m[r] = [F.add(x, F.neg(F.mul(c, y))) for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return [tuple(r) for r in m[:pivot_row]]


def left_kernel_vector(F: GF, M: list[list[int]]) -> tuple[int, ...] | None:
    """A nonzero x with x M = 0, or None when M is non-singular."""
    n = len(M)
    # solve M^T x^T = 0 by elimination on the transpose
    T = [[M[j][i] for j in range(n)] for i in range(n)]
    basis = rref(F, [tuple(r) for r in T])
    if len(basis) == n:
        return None
    pivots = [next(c for c, x in enumerate(r) if x) for r in basis]
    free = next(c for c in range(n) if c not in pivots)
    x = [0] * n
    x[free] = 1
    for r, pc in zip(basis, pivots):
        x[pc] = F.neg(r[free])
    return tuple(x)
