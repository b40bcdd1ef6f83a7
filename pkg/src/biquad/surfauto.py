"""Automorphisms of P^1 x P^1.

Every automorphism is either [A]x[B] or sigma o ([A]x[B]) where sigma swaps
the two factors.  On points, sigma o ([A]x[B]) sends (P, Q) to (B Q, A P):
the matrix part acts first, then the factors are exchanged.  With this
convention (sigma o ([A]x[B]))^2 = [BA]x[AB].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

from .scalars import ONE, ZERO, CycloScalar, RootOfUnity, as_root_of_unity, divisors, lcm, zeta

Matrix = tuple[CycloScalar, CycloScalar, CycloScalar, CycloScalar]


class NotFiniteOrder(ValueError):
    pass


class NotRepresentable(ValueError):
    """An eigenvector basis does not exist over the available cyclotomic field."""


class IdentityHasNoProperFixedLocus(ValueError):
    pass


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()
Order = Union[int, _Infinite]


# ---------------------------------------------------------------------------
# 2x2 matrices over CycloScalar, row-major


def mat(a, b, c, d) -> Matrix:
    co = CycloScalar.coerce
    return (co(a), co(b), co(c), co(d))


IDENTITY_MATRIX = mat(1, 0, 0, 1)


def diag_matrix(x, y=1) -> Matrix:
    return mat(x, 0, 0, y)


def mat_mul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_det(m: Matrix) -> CycloScalar:
    return m[0] * m[3] - m[1] * m[2]


def mat_adj(m: Matrix) -> Matrix:
    """Adjugate; projectively the inverse."""
    a, b, c, d = m
    return (d, -b, -c, a)


def mat_trace(m: Matrix) -> CycloScalar:
    return m[0] + m[3]


def mat_normalize(m: Matrix) -> Matrix:
    lead = next(x for x in m if not x.is_zero())
    if lead == 1:
        return m
    inv = lead.inverse()
    return tuple(x * inv for x in m)  # type: ignore[return-value]


def mat_is_scalar(m: Matrix) -> bool:
    return m[1].is_zero() and m[2].is_zero() and m[0] == m[3]


def mat_is_diagonal(m: Matrix) -> bool:
    return m[1].is_zero() and m[2].is_zero()


def mat_apply(m: Matrix, v: tuple[CycloScalar, CycloScalar]) -> tuple[CycloScalar, CycloScalar]:
    return (m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1])


def mat_pow(m: Matrix, k: int) -> Matrix:
    if k < 0:
        m, k = mat_adj(m), -k
    result = IDENTITY_MATRIX
    while k:
        if k & 1:
            result = mat_normalize(mat_mul(result, m))
        m = mat_normalize(mat_mul(m, m))
        k >>= 1
    return mat_normalize(result)


def _conductor_of(*scalars: CycloScalar) -> int:
    n = 1
    for s in scalars:
        n = lcm(n, s.conductor)
    return n


def pgl2_order(m: Matrix) -> Order:
    """Order of [m] in PGL_2, or INFINITE."""
    if mat_is_scalar(m):
        return 1
    if mat_is_diagonal(m):
        root = as_root_of_unity(m[0] / m[3])
        return INFINITE if root is None else root.order
    tr = mat_trace(m)
    det = mat_det(m)
    disc = tr * tr - 4 * det
    if disc.is_zero():
        return INFINITE  # non-scalar with a repeated eigenvalue
    n = _conductor_of(*m)
    # a finite order k has zeta_k + zeta_k^-1 in Q(zeta_n), forcing k | lcm(12, 2n)
    bound = lcm(12, 2 * n)
    m = mat_normalize(m)
    for k in divisors(bound):
        if k > 1 and mat_is_scalar(mat_pow(m, k)):
            return k
    return INFINITE


def proj_normalize(v: tuple[CycloScalar, CycloScalar]) -> tuple[CycloScalar, CycloScalar]:
    if not v[0].is_zero():
        inv = v[0].inverse()
        return (ONE, v[1] * inv)
    return (ZERO, ONE)


def format_matrix(m: Matrix) -> str:
    return f"[[{m[0]},{m[1]}],[{m[2]},{m[3]}]]"


# ---------------------------------------------------------------------------
# automorphisms


class SurfaceAut:
    """sigma^swap o ([A] x [B]) with projectively normalized A and B."""

    __slots__ = ("swap", "A", "B")

    def __init__(self, A: Matrix = IDENTITY_MATRIX, B: Matrix = IDENTITY_MATRIX, swap: bool = False):
        A = tuple(CycloScalar.coerce(x) for x in A)  # type: ignore[assignment]
        B = tuple(CycloScalar.coerce(x) for x in B)  # type: ignore[assignment]
        if mat_det(A).is_zero() or mat_det(B).is_zero():
            raise ValueError("automorphism matrices must be invertible")
        object.__setattr__(self, "swap", bool(swap))
        object.__setattr__(self, "A", mat_normalize(A))
        object.__setattr__(self, "B", mat_normalize(B))

    def __setattr__(self, name, value):
        raise AttributeError("SurfaceAut is immutable")

    def __reduce__(self):
        return (SurfaceAut, (self.A, self.B, self.swap))

    def __eq__(self, other) -> bool:
        if isinstance(other, DiagonalAut):
            other = other.to_surface_aut()
        if not isinstance(other, SurfaceAut):
            return NotImplemented
        return self.swap == other.swap and self.A == other.A and self.B == other.B

    def __hash__(self) -> int:
        return hash((self.swap, self.A, self.B))

    def __repr__(self) -> str:
        return f"SurfaceAut({self})"

    def __str__(self) -> str:
        flag = "true" if self.swap else "false"
        return f"mat({format_matrix(self.A)}, {format_matrix(self.B)}, swap={flag})"

    @property
    def conductor(self) -> int:
        return _conductor_of(*self.A, *self.B)

    def is_identity(self) -> bool:
        return not self.swap and mat_is_scalar(self.A) and mat_is_scalar(self.B)

    def is_diagonal(self) -> bool:
        return mat_is_diagonal(self.A) and mat_is_diagonal(self.B)

    def __call__(self, point):
        """Image of a point ((p0, p1), (q0, q1))."""
        p, q = point
        if self.swap:
            return (proj_normalize(mat_apply(self.B, q)), proj_normalize(mat_apply(self.A, p)))
        return (proj_normalize(mat_apply(self.A, p)), proj_normalize(mat_apply(self.B, q)))

    def __matmul__(self, other: "SurfaceAut") -> "SurfaceAut":
        return compose(self, as_surface_aut(other))


def identity() -> SurfaceAut:
    return SurfaceAut()


def swap_aut() -> SurfaceAut:
    return SurfaceAut(swap=True)


@dataclass(frozen=True)
class DiagonalAut:
    """[D(zeta_N^r1, 1)] x [D(zeta_N^r2, 1)] with N the lcm of the factor orders."""

    conductor: int
    r1: int
    r2: int

    def __post_init__(self):
        n = self.conductor
        if n < 1:
            raise ValueError("conductor must be positive")
        r1, r2 = self.r1 % n, self.r2 % n
        g = gcd(gcd(r1, r2), n)
        object.__setattr__(self, "conductor", n // g)
        object.__setattr__(self, "r1", r1 // g)
        object.__setattr__(self, "r2", r2 // g)

    @property
    def lam(self) -> CycloScalar:
        return zeta(self.conductor, self.r1)

    @property
    def mu(self) -> CycloScalar:
        return zeta(self.conductor, self.r2)

    def factor_orders(self) -> tuple[int, int]:
        n = self.conductor
        return n // gcd(self.r1, n), n // gcd(self.r2, n)

    def order(self) -> int:
        return self.conductor

    def is_identity(self) -> bool:
        return self.conductor == 1

    def to_surface_aut(self) -> SurfaceAut:
        return SurfaceAut(diag_matrix(self.lam), diag_matrix(self.mu))

    def power(self, k: int) -> "DiagonalAut":
        return DiagonalAut(self.conductor, self.r1 * k, self.r2 * k)

    def compose(self, other: "DiagonalAut") -> "DiagonalAut":
        n = lcm(self.conductor, other.conductor)
        s, o = n // self.conductor, n // other.conductor
        return DiagonalAut(n, self.r1 * s + other.r1 * o, self.r2 * s + other.r2 * o)

    def at_conductor(self, n: int) -> tuple[int, int]:
        """Exponents (r1, r2) when written over zeta_n for a multiple n of the conductor."""
        if n % self.conductor:
            raise ValueError(f"{self} is not defined over zeta_{n}")
        s = n // self.conductor
        return self.r1 * s, self.r2 * s

    def __str__(self) -> str:
        return f"diag({self.conductor}; {self.r1}, {self.r2})"


@dataclass(frozen=True)
class SwapNormalForm:
    """sigma o ([I] x [D(zeta_N^r, 1)]); its square is [D(zeta_N^r,1)] x [D(zeta_N^r,1)]."""

    conductor: int
    r: int

    def __post_init__(self):
        n = self.conductor
        r = self.r % n
        g = gcd(r, n)
        object.__setattr__(self, "conductor", n // g)
        object.__setattr__(self, "r", r // g)

    def to_surface_aut(self) -> SurfaceAut:
        return SurfaceAut(IDENTITY_MATRIX, diag_matrix(zeta(self.conductor, self.r)), swap=True)

    def order(self) -> int:
        return 2 * self.conductor

    def __str__(self) -> str:
        return f"swapdiag({self.conductor}; {self.r})"


def as_surface_aut(g) -> SurfaceAut:
    if isinstance(g, SurfaceAut):
        return g
    if isinstance(g, (DiagonalAut, SwapNormalForm)):
        return g.to_surface_aut()
    raise TypeError(f"not an automorphism: {g!r}")


def compose(g, h) -> SurfaceAut:
    """g o h: apply h first, then g."""
    g, h = as_surface_aut(g), as_surface_aut(h)
    if not g.swap and not h.swap:
        return SurfaceAut(mat_mul(g.A, h.A), mat_mul(g.B, h.B))
    if g.swap and not h.swap:
        # (P,Q) -> (A_h P, B_h Q) -> (B_g B_h Q, A_g A_h P)
        return SurfaceAut(mat_mul(g.A, h.A), mat_mul(g.B, h.B), swap=True)
    if not g.swap and h.swap:
        # (P,Q) -> (B_h Q, A_h P) -> (A_g B_h Q, B_g A_h P)
        return SurfaceAut(mat_mul(g.B, h.A), mat_mul(g.A, h.B), swap=True)
    # (P,Q) -> (B_h Q, A_h P) -> (B_g A_h P, A_g B_h Q)
    return SurfaceAut(mat_mul(g.B, h.A), mat_mul(g.A, h.B))


def inverse(g) -> SurfaceAut:
    g = as_surface_aut(g)
    if g.swap:
        return SurfaceAut(mat_adj(g.B), mat_adj(g.A), swap=True)
    return SurfaceAut(mat_adj(g.A), mat_adj(g.B))


def power(g, k: int) -> SurfaceAut:
    g = as_surface_aut(g)
    if k < 0:
        g, k = inverse(g), -k
    result = identity()
    base = g
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def conjugate(k, g) -> SurfaceAut:
    """k o g o k^-1."""
    return compose(compose(k, g), inverse(k))


def order(g) -> Order:
    if isinstance(g, (DiagonalAut, SwapNormalForm)):
        return g.order()
    g = as_surface_aut(g)
    if g.swap:
        sq = compose(g, g)
        if sq.is_identity():
            return 2
        inner = order(sq)
        return INFINITE if inner is INFINITE else 2 * inner
    oa, ob = pgl2_order(g.A), pgl2_order(g.B)
    if oa is INFINITE or ob is INFINITE:
        return INFINITE
    return lcm(oa, ob)


def as_diagonal(g) -> DiagonalAut | None:
    """DiagonalAut equal to g when g is a non-swap diagonal map by roots of unity."""
    if isinstance(g, DiagonalAut):
        return g
    g = as_surface_aut(g)
    if g.swap or not g.is_diagonal():
        return None
    roots = []
    for m in (g.A, g.B):
        ratio = m[0] / m[3]
        root = as_root_of_unity(ratio)
        if root is None:
            return None
        roots.append(root)
    n = lcm(roots[0].order, roots[1].order)
    return DiagonalAut(n, roots[0].exponent * (n // roots[0].order), roots[1].exponent * (n // roots[1].order))


def as_swap_diagonal(g) -> tuple[RootOfUnity, RootOfUnity] | None:
    """(lambda, mu) when g = sigma o ([D(lambda,1)] x [D(mu,1)]) with roots of unity."""
    g = as_surface_aut(g)
    if not g.swap or not g.is_diagonal():
        return None
    out = []
    for m in (g.A, g.B):
        root = as_root_of_unity(m[0] / m[3])
        if root is None:
            return None
        out.append(root)
    return out[0], out[1]


# ---------------------------------------------------------------------------
# square roots and eigenvectors


def _sqrt_in_cyclotomic(d: CycloScalar, conductor: int) -> CycloScalar | None:
    """A square root of d lying in Q(zeta_conductor), if one can be found."""
    if d.is_zero():
        return ZERO
    n = lcm(conductor, d.conductor)
    n2 = 2 * n
    # d = q * w with q rational and w a root of unity in Q(zeta_2n)
    for k in range(n2):
        w = zeta(n2, k)
        ratio = d / w
        if ratio.is_rational():
            q = ratio.to_fraction()
            root_q = _sqrt_rational(q)
            if root_q is None:
                return None
            cand = root_q * zeta(2 * n2, k)
            return cand.at_conductor(conductor)
    return None


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _sqrt_rational(q) -> CycloScalar | None:
    from fractions import Fraction

    q = Fraction(q)
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    m = num * den
    square, free = 1, 1
    for p in _factor(m):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            free *= p
    root = CycloScalar.rational(Fraction(square, den)) * _sqrt_squarefree(free)
    if sign < 0:
        root = root * zeta(4)
    return root


def _factor(m: int) -> list[int]:
    from .scalars import prime_factors

    return list(prime_factors(m)) if m > 1 else []


def _sqrt_squarefree(m: int) -> CycloScalar:
    # Gauss sums: sqrt(p*) = sum (a/p) zeta_p^a with p* = (-1)^((p-1)/2) p
    root = ONE
    for p in _factor(m):
        if p == 2:
            root = root * (zeta(8) + zeta(8, 7))
            continue
        g = ZERO
        for a in range(1, p):
            g = g + zeta(p, a) * _legendre(a, p)
        if p % 4 == 3:
            g = g * -zeta(4)  # sqrt(-p) * (-i) = sqrt(p)
        root = root * g
    return root


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _eigen(m: Matrix, conductor: int) -> tuple[Matrix, RootOfUnity]:
    """Columns-as-eigenvectors matrix P and the eigenvalue ratio of [m]."""
    if mat_is_scalar(m):
        return IDENTITY_MATRIX, RootOfUnity(1, 0)
    if mat_is_diagonal(m):
        root = as_root_of_unity(m[0] / m[3])
        if root is None:
            raise NotFiniteOrder(f"matrix {format_matrix(m)} has infinite order")
        return IDENTITY_MATRIX, root
    k = pgl2_order(m)
    if k is INFINITE:
        raise NotFiniteOrder(f"matrix {format_matrix(m)} has infinite order")
    tr, det = mat_trace(m), mat_det(m)
    field_n = lcm(lcm(conductor, _conductor_of(*m)), k)
    if not tr.is_zero():
        # eigenvalue ratio r solves r + 1/r + 2 = tr^2/det; then lam2 = tr/(1+r)
        target = tr * tr / det - 2
        lam1 = lam2 = None
        for e in range(k):
            if gcd(e, k) != 1:
                continue
            r = zeta(k, e)
            if r + r.inverse() == target:
                lam2 = tr / (r + 1)
                lam1 = lam2 * r
                break
        if lam1 is None:
            raise NotFiniteOrder("eigenvalue ratio is not a root of unity")
    else:
        root = _sqrt_in_cyclotomic(-det, field_n)
        if root is None:
            raise NotRepresentable(
                f"eigenvalues of {format_matrix(m)} are not in Q(zeta_{field_n}); supply a larger conductor"
            )
        lam1, lam2 = root, -root
    vecs = []
    for lam in (lam1, lam2):
        if not m[1].is_zero():
            vecs.append((m[1], lam - m[0]))
        else:
            vecs.append((lam - m[3], m[2]))
    P = (vecs[0][0], vecs[1][0], vecs[0][1], vecs[1][1])
    ratio = as_root_of_unity(lam1 / lam2)
    assert ratio is not None
    return P, ratio


def diagonalize(g, conductor: int = 1):
    """(k, normal form) with k o g o k^-1 in normal form.

    Non-swap g gives a DiagonalAut; swap g gives a SwapNormalForm.
    """
    g = as_surface_aut(g)
    if order(g) is INFINITE:
        raise NotFiniteOrder(f"{g} has infinite order")
    base = lcm(conductor, g.conductor)
    if not g.swap:
        if g.is_diagonal():
            diag = as_diagonal(g)
            assert diag is not None
            return identity(), diag
        pa, ra = _eigen(g.A, base)
        pb, rb = _eigen(g.B, base)
        n = lcm(ra.order, rb.order)
        normal = DiagonalAut(n, ra.exponent * (n // ra.order), rb.exponent * (n // rb.order))
        k = SurfaceAut(mat_adj(pa), mat_adj(pb))
        return k, normal
    ba = mat_mul(g.B, g.A)
    p, r = _eigen(ba, base)
    pinv = mat_adj(p)
    k = SurfaceAut(pinv, mat_mul(pinv, mat_adj(g.A)))
    return k, SwapNormalForm(r.order, r.exponent)


# ---------------------------------------------------------------------------
# fixed loci

Point = tuple[tuple[CycloScalar, CycloScalar], tuple[CycloScalar, CycloScalar]]

E0 = (ONE, ZERO)  # [1:0]
E1 = (ZERO, ONE)  # [0:1]


@dataclass(frozen=True)
class FixedLocus:
    """Fixed set of a nontrivial automorphism.

    kind is one of FourCorners, TwoFibers, SwapFinite, SwapCurve.  For
    TwoFibers, axis names the factor acting nontrivially and fiber_points
    the two fixed points on it; the fixed set is those fibers.  For
    SwapCurve the fixed set is {(x, graph x)}.
    """

    kind: str
    points: tuple = ()
    axis: str | None = None
    fiber_points: tuple = ()
    graph: Matrix | None = None

    def describe(self) -> str:
        if self.kind == "SwapCurve":
            return f"SwapCurve: {{(x, Ax)}} with A = {format_matrix(self.graph)}"
        if self.kind == "TwoFibers":
            pts = ", ".join(_fmt_pt(p) for p in self.fiber_points)
            return f"TwoFibers({self.axis}): {{{pts}}}"
        pts = ", ".join(f"({_fmt_pt(p)}, {_fmt_pt(q)})" for p, q in self.points)
        return f"{self.kind}: {{{pts}}}"


def _fmt_pt(p) -> str:
    return f"[{p[0]}:{p[1]}]"


def _factor_fixed_points(m: Matrix) -> tuple:
    p, _ = _eigen(m, 1)
    return (proj_normalize((p[0], p[2])), proj_normalize((p[1], p[3])))


def fixed_locus(g) -> FixedLocus:
    if isinstance(g, DiagonalAut):
        if g.is_identity():
            raise IdentityHasNoProperFixedLocus("the identity fixes every point")
        o1, o2 = g.factor_orders()
        if o1 > 1 and o2 > 1:
            return FixedLocus("FourCorners", points=tuple((p, q) for p in (E0, E1) for q in (E0, E1)))
        return FixedLocus("TwoFibers", axis="first" if o1 > 1 else "second", fiber_points=(E0, E1))
    g = as_surface_aut(g)
    if g.is_identity():
        raise IdentityHasNoProperFixedLocus("the identity fixes every point")
    if order(g) is INFINITE:
        raise NotFiniteOrder(f"{g} has infinite order")
    if not g.swap:
        a_triv, b_triv = mat_is_scalar(g.A), mat_is_scalar(g.B)
        if not a_triv and not b_triv:
            pa, pb = _factor_fixed_points(g.A), _factor_fixed_points(g.B)
            pts = tuple((p, q) for p in pa for q in pb)
            return FixedLocus("FourCorners", points=pts)
        if not a_triv:
            return FixedLocus("TwoFibers", axis="first", fiber_points=_factor_fixed_points(g.A))
        return FixedLocus("TwoFibers", axis="second", fiber_points=_factor_fixed_points(g.B))
    ab = mat_mul(g.A, g.B)
    if mat_is_scalar(ab):
        return FixedLocus("SwapCurve", graph=g.A)
    # fixed points (B Q, Q) for Q an eigenvector of AB
    pts = tuple((proj_normalize(mat_apply(g.B, q)), q) for q in _factor_fixed_points(ab))
    return FixedLocus("SwapFinite", points=pts)


def parse_aut(text: str) -> SurfaceAut | DiagonalAut:
    """Parse `diag(N; r1, r2)` or `mat([[a,b],[c,d]], [[e,f],[g,h]], swap=true|false)`."""
    from .parser import parse_automorphism

    return parse_automorphism(text)
