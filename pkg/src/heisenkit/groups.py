"""Concrete groups with canonical hashable elements.

Every group here exposes ``identity``, ``mul``, ``inv`` and stores elements
in a normal form (integer tuples, residue matrices), so the group-algebra
layer never has to rewrite words.
"""

from __future__ import annotations

from math import gcd

HeisElt = tuple[int, int, int]
Heis3Elt = tuple[tuple[int, int, int], tuple[int, int, int], int]
MatElt = tuple[tuple[int, ...], ...]


class Heisenberg:
    """Integral Heisenberg group; (a, b, c) is the upper unitriangular
    3x3 matrix with a, b on the superdiagonal and c in the corner."""

    identity: HeisElt = (0, 0, 0)
    x: HeisElt = (1, 0, 0)
    y: HeisElt = (0, 1, 0)
    z: HeisElt = (0, 0, 1)

    @staticmethod
    def mul(g: HeisElt, h: HeisElt) -> HeisElt:
        a, b, c = g
        a2, b2, c2 = h
        return (a + a2, b + b2, c + c2 + a * b2)

    @staticmethod
    def inv(g: HeisElt) -> HeisElt:
        a, b, c = g
        return (-a, -b, a * b - c)

    @staticmethod
    def pow(g: HeisElt, n: int) -> HeisElt:
        out = Heisenberg.identity
        step = g if n >= 0 else Heisenberg.inv(g)
        for _ in range(abs(n)):
            out = Heisenberg.mul(out, step)
        return out


class Heisenberg3:
    """Rank-3 Heisenberg group: triples (a, b, c) with integer 3-vectors
    a, b and corner c; product adds vectors and shifts c by the dot
    product a . b'.  Satisfies [x_i, y_i] = z and [x_i, y_j] = 1 (i != j)."""

    identity: Heis3Elt = ((0, 0, 0), (0, 0, 0), 0)

    @staticmethod
    def x(i: int) -> Heis3Elt:
        a = tuple(1 if k == i else 0 for k in range(3))
        return (a, (0, 0, 0), 0)

    @staticmethod
    def y(i: int) -> Heis3Elt:
        b = tuple(1 if k == i else 0 for k in range(3))
        return ((0, 0, 0), b, 0)

    z: Heis3Elt = ((0, 0, 0), (0, 0, 0), 1)

    @staticmethod
    def mul(g: Heis3Elt, h: Heis3Elt) -> Heis3Elt:
        a, b, c = g
        a2, b2, c2 = h
        dot = sum(u * v for u, v in zip(a, b2))
        return (tuple(u + v for u, v in zip(a, a2)),
                tuple(u + v for u, v in zip(b, b2)),
                c + c2 + dot)

    @staticmethod
    def inv(g: Heis3Elt) -> Heis3Elt:
        a, b, c = g
        dot = sum(u * v for u, v in zip(a, b))
        return (tuple(-u for u in a), tuple(-u for u in b), dot - c)


def _det(rows: list[list[int]]) -> int:
    """Exact integer determinant by cofactor expansion (small n only)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


class SpecialLinear:
    """SL_n(Z/qZ) elements as n x n residue tuples with determinant 1 mod q."""

    def __init__(self, n: int, q: int):
        if n < 2 or q < 1:
            raise ValueError(f"need n >= 2 and q >= 1, got n={n}, q={q}")
        self.n = n
        self.q = q
        self.identity: MatElt = tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        )

    def elementary(self, i: int, j: int, r: int) -> MatElt:
        """e_{i,j}(r): identity plus r in entry (i, j); 1-based indices."""
        if i == j:
            raise ValueError("elementary matrix needs i != j")
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"indices out of range for n={self.n}")
        m = [list(row) for row in self.identity]
        m[i - 1][j - 1] = r % self.q
        return tuple(tuple(row) for row in m)

    def mul(self, g: MatElt, h: MatElt) -> MatElt:
        n, q = self.n, self.q
        return tuple(
            tuple(sum(g[i][k] * h[k][j] for k in range(n)) % q for j in range(n))
            for i in range(n)
        )

    def inv(self, g: MatElt) -> MatElt:
        """Inverse via the adjugate; valid because det(g) = 1 mod q."""
        n, q = self.n, self.q
        rows = [list(r) for r in g]
        d = _det(rows) % q
        if gcd(d, q) != 1:
            raise ValueError("matrix is not invertible mod q")
        dinv = pow(d, -1, q) if q > 1 else 0
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
                adj[j][i] = (-1) ** (i + j) * _det(minor)
        return tuple(tuple((dinv * adj[i][j]) % q for j in range(n)) for i in range(n))

    def det(self, g: MatElt) -> int:
        return _det([list(r) for r in g]) % self.q

    def commutator(self, g: MatElt, h: MatElt) -> MatElt:
        return self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))
