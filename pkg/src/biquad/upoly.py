"""Dense univariate polynomials over an abstract field.

A polynomial is a list of coefficients, constant term first, with no
trailing zeros.  The field object supplies zero, one, add, sub, neg, mul,
inv, is_zero and from_int.
"""

from __future__ import annotations


def trim(field, p: list) -> list:
    while p and field.is_zero(p[-1]):
        p.pop()
    return p


def deg(p: list) -> int:
    return len(p) - 1


def add(field, p: list, q: list) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = field.add(out[i], c)
    return trim(field, out)


def sub(field, p: list, q: list) -> list:
    return add(field, p, [field.neg(c) for c in q])


def scale(field, p: list, c) -> list:
    if field.is_zero(c):
        return []
    return trim(field, [field.mul(x, c) for x in p])


def mul(field, p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if field.is_zero(x):
            continue
        for j, y in enumerate(q):
            if not field.is_zero(y):
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return trim(field, out)


def divmod_(field, p: list, q: list) -> tuple[list, list]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = deg(q)
    inv_lead = field.inv(q[-1])
    if len(r) <= dq:
        return [], r
    quot = [field.zero] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if field.is_zero(c):
            continue
        c = field.mul(c, inv_lead)
        quot[k - dq] = c
        for i, qc in enumerate(q):
            r[k - dq + i] = field.sub(r[k - dq + i], field.mul(c, qc))
    return trim(field, quot), trim(field, r[:dq])


def exact_div(field, p: list, q: list) -> list:
    quot, rem = divmod_(field, p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quot


def monic(field, p: list) -> list:
    if not p:
        return p
    return scale(field, p, field.inv(p[-1]))


def gcd(field, p: list, q: list) -> list:
    p, q = trim(field, list(p)), trim(field, list(q))
    while q:
        p, q = q, divmod_(field, p, q)[1]
    return monic(field, p)


def derivative(field, p: list) -> list:
    return trim(field, [field.mul(field.from_int(i), c) for i, c in enumerate(p)][1:])


def squarefree_part(field, p: list) -> list:
    """p / gcd(p, p'); valid when the characteristic exceeds deg p."""
    if deg(p) <= 0:
        return monic(field, list(p))
    g = gcd(field, p, derivative(field, p))
    return monic(field, exact_div(field, p, g))


def evaluate(field, p: list, x):
    acc = field.zero
    for c in reversed(p):
        acc = field.add(field.mul(acc, x), c)
    return acc


class PolyRing:
    """K[x] presented through the same field-like interface, for determinant work."""

    def __init__(self, field):
        self.field = field
        self.zero: list = []
        self.one = [field.one]

    def is_zero(self, p) -> bool:
        return not p

    def add(self, p, q):
        return add(self.field, p, q)

    def sub(self, p, q):
        return sub(self.field, p, q)

    def neg(self, p):
        return [self.field.neg(c) for c in p]

    def mul(self, p, q):
        return mul(self.field, p, q)

    def exact_div(self, p, q):
        return exact_div(self.field, p, q)


def bareiss_det(ring, matrix: list[list]):
    """Fraction-free determinant over an integral domain with exact division."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return ring.one
    sign = False
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not ring.is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = not sign
                    break
            else:
                return ring.zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = ring.sub(ring.mul(m[i][j], pivot), ring.mul(m[i][k], m[k][j]))
                m[i][j] = ring.exact_div(v, prev)
        prev = pivot
    d = m[n - 1][n - 1]
    return ring.neg(d) if sign else d


def sylvester(ring, f: list, g: list, m: int, n: int) -> list[list]:
    """Sylvester matrix of f, g with formal degrees m, n (coefficients constant-first)."""
    size = m + n
    rows = []
    fr = [f[k] if k < len(f) else ring.zero for k in range(m, -1, -1)]
    gr = [g[k] if k < len(g) else ring.zero for k in range(n, -1, -1)]
    for i in range(n):
        rows.append([ring.zero] * i + fr + [ring.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ring.zero] * i + gr + [ring.zero] * (size - n - 1 - i))
    return rows


def resultant(ring, f: list, g: list, m: int, n: int):
    if m == 0 and n == 0:
        return ring.one
    return bareiss_det(ring, sylvester(ring, f, g, m, n))


def field_det(field, matrix: list[list]):
    """Determinant by Gaussian elimination over a field."""
    m = [list(row) for row in matrix]
    n = len(m)
    det = field.one
    for k in range(n):
        piv = next((i for i in range(k, n) if not field.is_zero(m[i][k])), None)
        if piv is None:
            return field.zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = field.neg(det)
        det = field.mul(det, m[k][k])
        inv = field.inv(m[k][k])
        for i in range(k + 1, n):
            c = m[i][k]
            if field.is_zero(c):
                continue
            c = field.mul(c, inv)
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = field.sub(row_i[j], field.mul(c, row_k[j]))
    return det


def interpolate(field, xs: list, ys: list) -> list:
    """Newton interpolation through the points (xs[i], ys[i])."""
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = field.mul(field.sub(coef[i], coef[i - 1]), field.inv(field.sub(xs[i], xs[i - j])))
    poly: list = []
    for i in range(n - 1, -1, -1):
        poly = add(field, mul(field, poly, [field.neg(xs[i]), field.one]), [coef[i]])
    return poly


def resultant_by_evaluation(field, f: list, g: list, m: int, n: int):
    """Res with formal degrees m, n of f, g in K[x][y], by evaluating x and interpolating.

    Needs a field with more elements than the degree bound.
    """
    if m == 0 and n == 0:
        return [field.one]
    df = max((deg(c) for c in f), default=0)
    dg = max((deg(c) for c in g), default=0)
    bound = n * max(df, 0) + m * max(dg, 0)
    xs = [field.from_int(k) for k in range(1, bound + 2)]
    ys = []
    for x in xs:
        fv = [evaluate(field, c, x) for c in f]
        gv = [evaluate(field, c, x) for c in g]
        ys.append(field_det(field, sylvester(field, fv, gv, m, n)))
    return interpolate(field, xs, ys)
