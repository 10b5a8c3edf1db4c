"""Independent oracles for the test suite.

Everything here is deliberately written from scratch against different
algorithms than the package: the characteristic polynomial comes from
exact determinant interpolation, eigenvalue sign counts from Sturm chains
(with multiplicities recovered by gcd recursion), rank from plain row
reduction, and box maxima from exhaustive enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


# -- exact determinant and rank (independent row reduction) ---------------


def det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        result *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return sign * result


def row_reduce_rank(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    a = [list(map(Fraction, r)) for r in rows]
    n, m = len(a), len(a[0])
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = Fraction(1) / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for r in range(n):
            if r != rank and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == n:
            break
    return rank


# -- polynomial arithmetic (coefficients low to high) ----------------------


def poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_add(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += b
    return poly_trim(out)


def poly_scale(p: list[Fraction], c: Fraction) -> list[Fraction]:
    return poly_trim([c * a for a in p])


def poly_eval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: list[Fraction]) -> list[Fraction]:
    return poly_trim([Fraction(i) * c for i, c in enumerate(p)][1:])


def poly_divmod(p: list[Fraction], q: list[Fraction]):
    q = poly_trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    while len(poly_trim(rem)) >= len(q):
        rem = poly_trim(rem)
        shift = len(rem) - len(q)
        factor = rem[-1] / q[-1]
        quot[shift] += factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        rem = rem[:-1]
    return poly_trim(quot), poly_trim(rem)


def poly_gcd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    a, b = poly_trim(list(p)), poly_trim(list(q))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def charpoly(rows: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients (low to high) of ``det(x I - M)`` via interpolation at
    ``n + 1`` integer points and Lagrange reconstruction."""
    n = len(rows)
    xs = [Fraction(k) for k in range(n + 1)]
    ys = []
    for x in xs:
        shifted = [
            [x * Fraction(i == j) - rows[i][j] for j in range(n)] for i in range(n)
        ]
        ys.append(det(shifted))
    result: list[Fraction] = []
    for i, xi in enumerate(xs):
        term = [ys[i]]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            term = poly_mul(term, [-xj, Fraction(1)])
            denom *= xi - xj
        result = poly_add(result, poly_scale(term, Fraction(1) / denom))
    return poly_trim(result)


# -- Sturm chains ----------------------------------------------------------


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [poly_trim(list(p)), poly_derivative(p)]
    while chain[-1]:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(poly_scale(r, Fraction(-1)))
    return [c for c in chain if c]


def _variations(signs: list[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a * b < 0)


def _sign_at(p: list[Fraction], x: Fraction) -> int:
    v = poly_eval(p, x)
    return (v > 0) - (v < 0)


def _sign_at_inf(p: list[Fraction], positive: bool) -> int:
    lead = p[-1]
    s = (lead > 0) - (lead < 0)
    if positive:
        return s
    return s if (len(p) - 1) % 2 == 0 else -s


def sturm_distinct_in_halflines(p: list[Fraction]) -> tuple[int, int]:
    """Distinct real roots of ``p`` in (0, inf) and (-inf, 0);
    requires ``p(0) != 0``."""
    chain = _sturm_chain(p)
    at_zero = _variations([_sign_at(c, Fraction(0)) for c in chain])
    at_plus = _variations([_sign_at_inf(c, True) for c in chain])
    at_minus = _variations([_sign_at_inf(c, False) for c in chain])
    return at_zero - at_plus, at_minus - at_zero


def root_sign_counts(p: list[Fraction]) -> tuple[int, int, int]:
    """Counts (positive, negative, zero) of real roots with multiplicity.

    Valid for polynomials with all roots real (characteristic polynomials
    of symmetric matrices).  Multiplicities come from the gcd recursion:
    every root of multiplicity m of p is a root of gcd(p, p') of
    multiplicity m - 1.
    """
    p = poly_trim(list(p))
    zeros = 0
    while p and p[0] == 0:
        zeros += 1
        p = p[1:]
    pos = neg = 0
    q = p
    while len(q) > 1:
        dpos, dneg = sturm_distinct_in_halflines(q)
        pos += dpos
        neg += dneg
        q = poly_gcd(q, poly_derivative(q))
    return pos, neg, zeros


def oracle_signature(rows: list[list[Fraction]]) -> tuple[int, int, int]:
    """Inertia of a symmetric matrix from the characteristic polynomial:
    Sturm root-sign counts with gcd multiplicities."""
    return root_sign_counts(charpoly(rows))


# -- brute force box maximization ------------------------------------------


def box_max(inv_rows: list[list[Fraction]], d: int) -> Fraction:
    """Exhaustive maximum of ``x^T W x`` over integer points of
    ``[0, d]^n``."""
    n = len(inv_rows)
    best = None
    for point in product(range(d + 1), repeat=n):
        val = Fraction(0)
        for i in range(n):
            if point[i] == 0:
                continue
            for j in range(n):
                if point[j]:
                    val += inv_rows[i][j] * point[i] * point[j]
        if best is None or val > best:
            best = val
    return best
