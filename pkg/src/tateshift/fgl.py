"""Formal group laws: m-series, p^j-series, formal differences, Weierstrass data.

A formal group law is a two-variable truncated series F(x1, x2) over Z/p^K or
F_p satisfying unitality, commutativity and associativity (checked exactly on
all stored coefficients at build time).  The p-series and its iterates drive
everything downstream: Weierstrass preparation turns them into the monic
relations of classifying rings.
"""

from __future__ import annotations

from fractions import Fraction

from . import zmod
from .series import (
    QQ,
    TruncatedSeries,
    ZModDomain,
    inverse as series_inverse,
    rational_to_zmod,
    reversion,
    substitute,
)


class FGLError(Exception):
    name = "FGLError"
    module = "fgl"


class CapTooSmall(FGLError):
    name = "CapTooSmall"


class NotWeierstrassReady(FGLError):
    name = "NotWeierstrassReady"


class NonLocalRing(FGLError):
    name = "NonLocalRing"


class IntegralityFailure(FGLError):
    name = "IntegralityFailure"


class AxiomFailure(FGLError):
    name = "AxiomFailure"


X1, X2 = "x1", "x2"


class FormalGroupLaw:
    """F(x1, x2) plus cached m-series; immutable after construction.

    The caches hold pure functions of the build inputs, so concurrent readers
    see deterministic values; a duplicated fill writes the identical entry.
    """

    def __init__(self, F: TruncatedSeries, p: int, height, kind: str,
                 check: bool = True):
        if F.vars != (X1, X2):
            raise ValueError("F must be a series in (x1, x2)")
        self.F = F
        self.p = p
        self.height = height
        self.kind = kind
        self.domain = F.domain
        self.cap = F.cap
        self._m_cache: dict[int, TruncatedSeries] = {}
        self._formal_inverse = None
        if check:
            self.check_axioms()
        x = TruncatedSeries.variable(self.domain, ("x",), self.cap, "x")
        self._m_cache[0] = TruncatedSeries.zero(self.domain, ("x",), self.cap)
        self._m_cache[1] = x

    # -- axioms ---------------------------------------------------------------

    def check_axioms(self):
        dom, cap = self.F.domain, self.F.cap
        zero = TruncatedSeries.zero(dom, (X1, X2), cap)
        x1 = TruncatedSeries.variable(dom, (X1, X2), cap, X1)
        x2 = TruncatedSeries.variable(dom, (X1, X2), cap, X2)
        if substitute(self.F, {X1: x1, X2: zero}) != x1:
            raise AxiomFailure("F(x, 0) != x")
        if substitute(self.F, {X1: zero, X2: x2}) != x2:
            raise AxiomFailure("F(0, y) != y")
        if substitute(self.F, {X1: x2, X2: x1}) != self.F:
            raise AxiomFailure("F is not commutative")
        v3 = ("x1", "x2", "x3")
        t1 = TruncatedSeries.variable(dom, v3, cap, "x1")
        t2 = TruncatedSeries.variable(dom, v3, cap, "x2")
        t3 = TruncatedSeries.variable(dom, v3, cap, "x3")
        inner12 = substitute(self.F, {X1: t1, X2: t2})
        inner23 = substitute(self.F, {X1: t2, X2: t3})
        left = substitute(self.F, {X1: inner12, X2: t3})
        right = substitute(self.F, {X1: t1, X2: inner23})
        if left != right:
            raise AxiomFailure("F is not associative")

    # -- formal sum / inverse ---------------------------------------------------

    def formal_sum(self, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
        """a +_F b for series with zero constant term over this law's ring."""
        return substitute(self.F, {X1: a, X2: b})

    def formal_inverse(self) -> TruncatedSeries:
        """The series i(x) with F(x, i(x)) = 0, solved degree by degree."""
        if self._formal_inverse is not None:
            return self._formal_inverse
        dom, cap = self.domain, self.cap
        x = TruncatedSeries.variable(dom, ("x",), cap, "x")
        inv = -x
        while True:
            r = self.formal_sum(x, inv)
            if r.is_zero():
                break
            # F(x, inv + d) = F(x, inv) + d*(1 + higher); subtracting the
            # residual kills its lowest degree each round
            inv = inv - r
        self._formal_inverse = inv
        return inv

    # -- m-series ---------------------------------------------------------------

    def m_series(self, m: int) -> TruncatedSeries:
        """[m](x): the m-fold formal sum of x, negatives via the formal inverse."""
        if m in self._m_cache:
            return self._m_cache[m]
        if m < 0:
            pos = self.m_series(-m)
            out = substitute(self.formal_inverse(), {"x": pos})
        else:
            prev = self.m_series(m - 1)
            x = self._m_cache[1]
            out = self.formal_sum(prev, x)
        self._m_cache[m] = out
        return out

    def p_series(self) -> TruncatedSeries:
        return self.m_series(self.p)

    def pj_series(self, j: int) -> TruncatedSeries:
        """[p^j](x) as the j-fold composition of the p-series."""
        if j < 0:
            raise ValueError("j must be >= 0")
        if j == 0:
            return self._m_cache[1]
        if self.height is not None and self.cap < self.p ** (self.height * j):
            raise CapTooSmall(
                f"cap {self.cap} < p^(n*j) = {self.p ** (self.height * j)}"
            )
        out = self.p_series()
        for _ in range(j - 1):
            out = substitute(out, {"x": self.p_series()})
        return out

    def describe(self):
        return {
            "kind": self.kind,
            "p": self.p,
            "height": self.height,
            "modulus": getattr(self.domain, "n", None),
            "cap": self.cap,
        }


# -- constructors --------------------------------------------------------------


def build_multiplicative(p: int, K: int, D: int) -> FormalGroupLaw:
    """F = x1 + x2 + x1*x2 over Z/p^K; [p](x) = (1+x)^p - 1."""
    if D < p:
        raise CapTooSmall("cap must be at least p")
    n = p**K
    dom = ZModDomain(n)
    F = TruncatedSeries(dom, (X1, X2), D, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    law = FormalGroupLaw(F, p, 1, "multiplicative")
    # cache [p](x) via binomials: (1+x)^p - 1
    terms = {(k,): _binomial(p, k) % n for k in range(1, min(p, D) + 1)}
    law._m_cache[p] = TruncatedSeries(dom, ("x",), D, terms)
    return law


def build_additive(n: int, D: int, p: int | None = None) -> FormalGroupLaw:
    """F = x1 + x2 over Z/n (no interesting height; used for comparisons)."""
    dom = ZModDomain(n)
    F = TruncatedSeries(dom, (X1, X2), D, {(1, 0): 1, (0, 1): 1})
    return FormalGroupLaw(F, p if p is not None else 0, None, "additive")


def build_custom(F: TruncatedSeries, p: int, height=None) -> FormalGroupLaw:
    return FormalGroupLaw(F, p, height, "custom")


def build_honda(p: int, n: int, D: int) -> FormalGroupLaw:
    """Height-n law over F_p from the logarithm sum_i x^(p^(n*i)) / p^i.

    The rational law l^-1(l(x1) + l(x2)) is p-integral (a failure signals a
    bug, not bad input); reducing mod p yields [p](x) = x^(p^n) exactly, the
    periodicity generator being specialized to 1.
    """
    if D < p**n:
        raise CapTooSmall("cap must be at least p^n")
    log_terms = {}
    i = 0
    while p ** (n * i) <= D:
        log_terms[(p ** (n * i),)] = Fraction(1, p**i)
        i += 1
    log = TruncatedSeries(QQ, ("x",), D, log_terms)
    exp = reversion(log)
    l1 = TruncatedSeries(QQ, (X1, X2), D, {(e[0], 0): c for e, c in log.terms.items()})
    l2 = TruncatedSeries(QQ, (X1, X2), D, {(0, e[0]): c for e, c in log.terms.items()})
    F_rat = substitute(exp, {"x": l1 + l2})
    for e, c in F_rat.terms.items():
        if c.denominator % p == 0:
            raise IntegralityFailure(
                f"coefficient {c} at {e} has negative p-adic valuation"
            )
    F = rational_to_zmod(F_rat, p)
    law = FormalGroupLaw(F, p, n, "honda")
    pxp = law.p_series()
    expected = TruncatedSeries(ZModDomain(p), ("x",), D, {(p**n,): 1})
    if pxp != expected:
        raise IntegralityFailure("p-series of the height-n law is not x^(p^n)")
    law._m_cache[p] = expected
    return law


def _binomial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# -- formal difference with unit factor -----------------------------------------


def formal_difference_with_unit(law: FormalGroupLaw, a: TruncatedSeries,
                                b: TruncatedSeries):
    """(a -_F b, eps) with a -_F b = (a - b) * eps and eps(0) = 1.

    eps comes from the two-parameter expansion of F(x1, i(x2)): substituting
    x1 = u + x2 makes every term divisible by u (setting u = 0 gives 0), so
    the quotient by u is a genuine series and no ring division is needed.

    The quotient is determined only up to total degree cap - 1 (its degree-cap
    part would need F beyond the cap), so eps carries cap - 1; the identity
    still holds at full cap because a - b has no constant term.
    """
    dom, cap = law.domain, law.cap
    if a.constant_term() != dom.zero or b.constant_term() != dom.zero:
        raise ValueError("formal difference needs zero constant terms")
    diff_series = _difference_series(law)        # F(x1, i(x2)) in (x1, x2)
    eps_series = _difference_unit_series(law)    # with diff = (x1 - x2) * eps
    diff = substitute(diff_series, {X1: a, X2: b})
    eps_cap = min(cap - 1, a.cap, b.cap)
    eps = substitute(eps_series.truncate(eps_cap), {X1: a, X2: b}) + \
        TruncatedSeries.constant(dom, a.vars, eps_cap, dom.one)
    return diff, eps


def difference_identity_product(a: TruncatedSeries, b: TruncatedSeries,
                                eps: TruncatedSeries) -> TruncatedSeries:
    """(a - b) * eps at the cap of a - b.

    Valid one degree above eps's own cap: the missing top coefficients of eps
    only hit degrees beyond the result cap since a - b has valuation >= 1.
    """
    target_cap = min(a.cap, b.cap)
    padded = TruncatedSeries(eps.domain, eps.vars, target_cap, eps.terms)
    return (a - b) * padded


def _difference_series(law: FormalGroupLaw) -> TruncatedSeries:
    if getattr(law, "_diff_series", None) is None:
        inv = law.formal_inverse()
        dom, cap = law.domain, law.cap
        x2 = TruncatedSeries.variable(dom, (X1, X2), cap, X2)
        inv2 = substitute(inv, {"x": x2})
        x1 = TruncatedSeries.variable(dom, (X1, X2), cap, X1)
        law._diff_series = substitute(law.F, {X1: x1, X2: inv2})
    return law._diff_series


def _difference_unit_series(law: FormalGroupLaw) -> TruncatedSeries:
    """eps - 1 as a series in (x1, x2): eps has constant term 1."""
    if getattr(law, "_eps_series", None) is not None:
        return law._eps_series
    dom, cap = law.domain, law.cap
    diff = _difference_series(law)
    # substitute x1 = u + x2 (graded degree-1 assignment: no truncation loss)
    u = TruncatedSeries.variable(dom, ("u", X2), cap, "u")
    x2u = TruncatedSeries.variable(dom, ("u", X2), cap, X2)
    g = substitute(diff, {X1: u + x2u, X2: x2u})
    # every term of g is divisible by u: shift the u-exponent down
    shifted = {}
    for (eu, e2), c in g.terms.items():
        if eu == 0:
            if c != dom.zero:
                raise AxiomFailure("difference series not divisible by x1 - x2")
            continue
        shifted[(eu - 1, e2)] = c
    eps_u = TruncatedSeries(dom, ("u", X2), cap, shifted)
    # back-substitute u = x1 - x2 (again degree-1 graded, exact)
    x1 = TruncatedSeries.variable(dom, (X1, X2), cap, X1)
    x2 = TruncatedSeries.variable(dom, (X1, X2), cap, X2)
    eps = substitute(eps_u, {"u": x1 - x2, X2: x2})
    one = TruncatedSeries.constant(dom, (X1, X2), cap, dom.one)
    law._eps_series = eps - one
    return law._eps_series


# -- Weierstrass division and preparation ----------------------------------------


class WeierstrassFactorization:
    """alpha = unit * g with g monic of degree deg_W(alpha)."""

    __slots__ = ("unit", "poly", "degree")

    def __init__(self, unit: TruncatedSeries, poly: list[int], degree: int):
        self.unit = unit
        self.poly = poly
        self.degree = degree

    def __repr__(self):
        return f"WeierstrassFactorization(degree={self.degree}, poly={self.poly})"


def _local_data(dom):
    """(p, K) for Z/p^K coefficient domains; Weierstrass needs a local base."""
    if not isinstance(dom, ZModDomain):
        raise NonLocalRing("Weierstrass division needs Z/p^K coefficients")
    pk = zmod.prime_power(dom.n)
    if pk is None:
        raise NonLocalRing(f"Z/{dom.n} is not local")
    return pk


def weierstrass_degree(alpha: TruncatedSeries) -> int:
    """Least d with the coefficient of x^d a unit."""
    dom = alpha.domain
    _local_data(dom)
    coeffs = alpha.univariate_coeffs()
    for d, c in enumerate(coeffs):
        if dom.is_unit(c):
            return d
    raise NotWeierstrassReady("no unit coefficient up to the cap")


def weierstrass_divide(f: TruncatedSeries, alpha: TruncatedSeries):
    """Unique (r, q) with f = r + alpha*q and deg r < deg_W(alpha).

    The maximal ideal (p) of Z/p^K is nilpotent with p^K = 0, so the defect
    iteration terminates after exactly K rounds; everything is exact.
    """
    dom = f.domain
    if dom != alpha.domain or f.vars != alpha.vars or len(f.vars) != 1:
        raise ValueError("univariate series over a common ring required")
    p, K = _local_data(dom)
    d = weierstrass_degree(alpha)
    cap = min(f.cap, alpha.cap)
    var = f.vars[0]
    a = alpha.univariate_coeffs()
    low = TruncatedSeries(dom, f.vars, cap, {(i,): a[i] for i in range(d)})
    high_unit = TruncatedSeries(
        dom, f.vars, cap, {(i - d,): a[i] for i in range(d, len(a))}
    )
    high_unit_inv = series_inverse(high_unit)

    def div_xd(g):
        tail = {}
        head = {}
        for (e,), c in g.terms.items():
            if e >= d:
                tail[(e - d,)] = c
            else:
                head[(e,)] = c
        return (
            TruncatedSeries(dom, f.vars, cap, head),
            TruncatedSeries(dom, f.vars, cap, tail),
        )

    r_total = TruncatedSeries.zero(dom, f.vars, cap)
    q_total = TruncatedSeries.zero(dom, f.vars, cap)
    g = f.truncate(cap)
    for _ in range(K):
        r_t, tail = div_xd(g)
        q_t = high_unit_inv * tail
        r_total = r_total + r_t
        q_total = q_total + q_t
        g = -(low * q_t)
        if g.is_zero():
            break
    if not g.is_zero():
        raise AxiomFailure("Weierstrass iteration did not terminate in K rounds")
    r_coeffs = r_total.univariate_coeffs()[:d]
    return TruncatedSeries(dom, f.vars, cap,
                           {(i,): c for i, c in enumerate(r_coeffs)}), q_total


def weierstrass_prepare(alpha: TruncatedSeries) -> WeierstrassFactorization:
    """alpha = eps * g, eps a unit series, g monic of degree deg_W(alpha).

    Divide x^d by alpha: x^d = r + alpha*q; then g = x^d - r and eps = q^-1
    (q has unit constant term because alpha = a_d x^d mod the maximal ideal).
    """
    dom = alpha.domain
    d = weierstrass_degree(alpha)
    cap = alpha.cap
    xd = TruncatedSeries(dom, alpha.vars, cap, {(d,): dom.one})
    r, q = weierstrass_divide(xd, alpha)
    eps = series_inverse(q)
    r_coeffs = r.univariate_coeffs()[:d]
    poly = [dom.neg(c) for c in r_coeffs] + [dom.one]
    return WeierstrassFactorization(eps, poly, d)


def poly_compose(outer: list[int], inner: list[int], n: int) -> list[int]:
    """Coefficients of outer(inner(x)) over Z/n (plain polynomial composition)."""
    acc = [0]
    for c in reversed(outer):
        acc = _poly_mul(acc, inner, n)
        acc = _poly_add(acc, [c], n)
    return _poly_trim(acc)


def poly_compose_iterate(g: list[int], j: int, n: int) -> list[int]:
    """g composed with itself j times; j = 0 gives the identity polynomial."""
    out = [0, 1]
    for _ in range(j):
        out = poly_compose(out, g, n)
    return out


def _poly_mul(a, b, n):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % n
    return out


def _poly_add(a, b, n):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x % n
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % n
    return out


def _poly_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a
