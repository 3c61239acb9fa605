"""Exact arithmetic in R[H] modulo augmentation powers.

Working in the quotient by I^{N+1}, elements are rational combinations of
normal-ordered monomials xbar^i ybar^j zbar^k (xbar = 1-x, etc.) of degree
i + j + 2k <= N.  The central letter zbar commutes; the single rewrite
    ybar xbar = xbar ybar + zbar - zbar xbar - zbar ybar + zbar ybar xbar
is an exact identity in R[H] and terminates under truncation because the
recursive branch raises degree by two.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement, heis_laplacian, one_minus
from .groups import Heisenberg

MAX_TRUNCATION = 10

Monomial = tuple  # (i, j, k) meaning xbar^i ybar^j zbar^k


def degree(m: Monomial) -> int:
    return m[0] + m[1] + 2 * m[2]


def graded_dimension(n: int) -> int:
    """dim I^n / I^{n+1} = (floor(n/2) + 1)(n - floor(n/2) + 1)."""
    return (n // 2 + 1) * (n - n // 2 + 1)


def basis_monomials(n: int) -> list:
    """All (i, j, k) with i + j + 2k = n, lexicographic."""
    out = []
    for k in range(n // 2 + 1):
        for i in range(n - 2 * k + 1):
            out.append((i, n - 2 * k - i, k))
    return sorted(out)


class GradedElement:
    """Truncated element of R[H] in the normal-ordered monomial basis."""

    __slots__ = ("truncation", "terms")

    def __init__(self, truncation: int, terms: dict | None = None):
        if not 0 <= truncation <= MAX_TRUNCATION:
            raise ValueError(f"truncation must be in 0..{MAX_TRUNCATION}")
        self.truncation = truncation
        self.terms: dict = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c and degree(m) <= truncation:
                    self.terms[m] = c

    @classmethod
    def monomial(cls, truncation: int, m: Monomial, coeff=1) -> "GradedElement":
        return cls(truncation, {tuple(m): coeff})

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return GradedElement(self.truncation, out)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "GradedElement":
        c = Fraction(scalar)
        if not c:
            return GradedElement(self.truncation)
        return GradedElement(self.truncation,
                             {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "GradedElement":
        if not isinstance(other, GradedElement):
            return self.__rmul__(other)
        self._check(other)
        return graded_mul(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedElement)
                and self.truncation == other.truncation
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def lowest_degree(self) -> int | None:
        return min((degree(m) for m in self.terms), default=None)

    def degree_component(self, n: int) -> "GradedElement":
        return GradedElement(self.truncation,
                             {m: c for m, c in self.terms.items() if degree(m) == n})

    def _check(self, other: "GradedElement"):
        if self.truncation != other.truncation:
            raise ValueError("mixed truncations")

    def __repr__(self):
        parts = [f"{c}*x^{m[0]}y^{m[1]}z^{m[2]}" for m, c in sorted(self.terms.items())]
        return f"GradedElement(N={self.truncation}: {' + '.join(parts) or '0'})"


def normal_form(word, zpow: int, truncation: int) -> dict:
    """Normal-order a word over letters 'x', 'y' with an attached central
    zbar power; leftmost 'yx' inversion rewritten first, branches above the
    truncation dropped."""
    out: dict = {}
    stack = [(tuple(word), zpow, Fraction(1))]
    while stack:
        w, k, c = stack.pop()
        if len(w) + 2 * k > truncation:
            continue
        pos = next((t for t in range(len(w) - 1)
                    if w[t] == "y" and w[t + 1] == "x"), None)
        if pos is None:
            key = (w.count("x"), w.count("y"), k)
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
            continue
        pre, post = w[:pos], w[pos + 2:]
        stack.append((pre + ("x", "y") + post, k, c))
        stack.append((pre + post, k + 1, c))
        stack.append((pre + ("x",) + post, k + 1, -c))
        stack.append((pre + ("y",) + post, k + 1, -c))
        stack.append((pre + ("y", "x") + post, k + 1, c))
    return out


def graded_mul(a: GradedElement, b: GradedElement) -> GradedElement:
    n = a.truncation
    out: dict = {}
    for (i1, j1, k1), c1 in a.terms.items():
        for (i2, j2, k2), c2 in b.terms.items():
            if i1 + j1 + i2 + j2 + 2 * (k1 + k2) > n:
                continue
            word = ("x",) * i1 + ("y",) * j1 + ("x",) * i2 + ("y",) * j2
            for key, c in normal_form(word, k1 + k2, n).items():
                s = out.get(key, Fraction(0)) + c1 * c2 * c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return GradedElement(n, out)


def _generator_power(letter: str, exponent: int, truncation: int) -> GradedElement:
    """Graded image of x^a, y^b or z^c; negative powers expand through the
    truncated geometric series (1 - u)^{-1} = sum u^k."""
    unit = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[letter]
    u = GradedElement.monomial(truncation, unit)
    one = GradedElement.monomial(truncation, (0, 0, 0))
    if exponent >= 0:
        base = one - u
        acc = one
        for _ in range(exponent):
            acc = graded_mul(acc, base)
        return acc
    kmax = truncation // degree(unit)
    inv = GradedElement(truncation, {
        tuple(k * c for c in unit): 1 for k in range(kmax + 1)})
    acc = one
    for _ in range(-exponent):
        acc = graded_mul(acc, inv)
    return acc


def to_graded(xi: AlgebraElement, truncation: int) -> GradedElement:
    """Exact image of a group-algebra element in R[H]/I^{N+1}.

    A group element (a, b, c) = x^a y^b z^{c-ab} maps to the product of its
    generator powers, which is already normal-ordered."""
    out = GradedElement(truncation)
    for (a, b, c), coeff in xi.terms.items():
        img = graded_mul(
            graded_mul(_generator_power("x", a, truncation),
                       _generator_power("y", b, truncation)),
            _generator_power("z", c - a * b, truncation))
        out = out + coeff * img
    return out


def graded_star(a: GradedElement) -> GradedElement:
    """Involution computed by the exact round trip through R[H]:
    each basis monomial maps back to a word in the group algebra, is
    starred there, and is re-graded."""
    n = a.truncation
    H = Heisenberg
    xb = one_minus(H, H.x)
    yb = one_minus(H, H.y)
    zb = one_minus(H, H.z)
    out = GradedElement(n)
    for (i, j, k), c in a.terms.items():
        word = AlgebraElement.one(H)
        for _ in range(i):
            word = word * xb
        for _ in range(j):
            word = word * yb
        for _ in range(k):
            word = word * zb
        out = out + c * to_graded(word.star(), n)
    return out


# ---------------------------------------------------------------------------
# the degree-four functional and its consequences

PHI_VALUES = {
    (4, 0, 0): Fraction(1),
    (0, 4, 0): Fraction(1),
    (0, 0, 2): Fraction(-2),
    (2, 2, 0): Fraction(-1),
    (1, 1, 1): Fraction(1),
}


def evaluate_phi(a: GradedElement) -> Fraction:
    """Apply the degree-four functional (zero off degree four)."""
    if a.truncation < 4:
        raise ValueError("element must carry degree-four terms (N >= 4)")
    return sum((PHI_VALUES.get(m, Fraction(0)) * c
                for m, c in a.terms.items() if degree(m) == 4), Fraction(0))


def box_element(truncation: int = 5) -> GradedElement:
    """(1/4) sum_{s,t in S} (1-s)*(1-t)*(1-t)(1-s) for S = {x^±1, y^±1},
    computed exactly in R[H] and then graded."""
    H = Heisenberg
    gens = [H.x, H.inv(H.x), H.y, H.inv(H.y)]
    total = AlgebraElement(H)
    for s in gens:
        for t in gens:
            us, ut = one_minus(H, s), one_minus(H, t)
            total = total + us.star() * ut.star() * ut * us
    return to_graded(Fraction(1, 4) * total, truncation)


def phi_report(truncation: int = 5) -> dict:
    """The headline values: phi(Delta^2) = 0, phi(box) = 4,
    phi(zbar* zbar) = 2, and the uniform non-positivity witness
    phi(R Delta^2 + box/4 - zbar* zbar) = -1 for every R."""
    H = Heisenberg
    delta = heis_laplacian()
    zb = one_minus(H, H.z)
    phi_d2 = evaluate_phi(to_graded(delta * delta, truncation))
    phi_box = evaluate_phi(box_element(truncation))
    phi_zz = evaluate_phi(to_graded(zb.star() * zb, truncation))
    return {
        "phi_delta_sq": phi_d2,
        "phi_box": phi_box,
        "phi_zstar_z": phi_zz,
        "witness_value": phi_d2 + Fraction(1, 4) * phi_box - phi_zz,
        "pass": (phi_d2 == 0 and phi_box == 4 and phi_zz == 2),
    }


GRAM_EXPECTED = ((1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0), (-1, 0, 0, 1))


def gram_matrix_check(truncation: int = 5) -> dict:
    """Bilinear form phi(xi* eta) on the ordered degree-two words
    {xbar xbar, xbar ybar, ybar xbar, ybar ybar}; compares with the
    expected 4x4 and checks positive semidefiniteness."""
    n = truncation
    xb = GradedElement.monomial(n, (1, 0, 0))
    yb = GradedElement.monomial(n, (0, 1, 0))
    basis = [graded_mul(xb, xb), graded_mul(xb, yb),
             graded_mul(yb, xb), graded_mul(yb, yb)]
    gram = [[evaluate_phi(graded_mul(graded_star(bi), bj)) for bj in basis]
            for bi in basis]
    arr = np.array([[float(v) for v in row] for row in gram])
    eigs = np.linalg.eigvalsh(arr)
    return {
        "matrix": [[v for v in row] for row in gram],
        "matches_expected": all(gram[i][j] == GRAM_EXPECTED[i][j]
                                for i in range(4) for j in range(4)),
        "eigenvalues": [float(e) for e in eigs],
        "psd": bool(eigs[0] >= -1e-12),
    }


def rederive_square_swap_lines(truncation: int = 4) -> dict:
    """Re-derive the chain of congruences used for ybar^2 xbar^2 mod I^5:
    each displayed intermediate expression must normal-order to the same
    element; any coefficient mismatch is reported."""
    n = truncation
    mono = lambda m: GradedElement.monomial(n, m)
    yyxx = graded_mul(mono((0, 2, 0)), mono((2, 0, 0)))
    yx = graded_mul(mono((0, 1, 0)), mono((1, 0, 0)))
    line2 = graded_mul(yx, yx) + graded_mul(yx, mono((0, 0, 1)))
    xy = mono((1, 1, 0))
    line3 = graded_mul(xy, xy) + 3 * mono((1, 1, 1)) + 2 * mono((0, 0, 2))
    line4 = mono((2, 2, 0)) + 4 * mono((1, 1, 1)) + 2 * mono((0, 0, 2))
    return {
        "yyxx": yyxx,
        "line2_matches": yyxx == line2,
        "line3_matches": yyxx == line3,
        "line4_matches": yyxx == line4,
        "pass": yyxx == line2 == line3 == line4,
    }


def phi_selfadjoint_check(truncation: int = 5) -> bool:
    """phi(xi*) == phi(xi) on every degree-four basis monomial."""
    for m in basis_monomials(4):
        st = graded_star(GradedElement.monomial(truncation, m))
        if evaluate_phi(st) != PHI_VALUES.get(m, Fraction(0)):
            return False
    return True


def dimension_table(max_degree: int) -> list:
    """Rows (n, closed form, brute-force count) for n <= max_degree."""
    rows = []
    for n in range(max_degree + 1):
        brute = sum(1 for i in range(n + 1) for j in range(n + 1)
                    for k in range(n // 2 + 1) if i + j + 2 * k == n)
        rows.append((n, graded_dimension(n), brute))
    return rows
