"""Truncated multivariate power series with exact coefficients.

Series are truncated by TOTAL degree (matching ideal-filtration arguments and
keeping composition well defined) and stored sparsely as exponent-vector ->
coefficient maps.  Coefficients live in Z/N (plain ints) or Q (Fraction); the
domain object supplies the arithmetic.  All values are immutable in use:
operations return fresh series.
"""

from __future__ import annotations

from fractions import Fraction

from .ring_core import RingElement, RingMismatch, graded_lex_key
from . import zmod


class SeriesError(Exception):
    name = "SeriesError"
    module = "series"


class NonzeroConstantTerm(SeriesError):
    name = "NonzeroConstantTerm"


class NonUnitLinearTerm(SeriesError):
    name = "NonUnitLinearTerm"


class NonNilpotentArgument(SeriesError):
    name = "NonNilpotentArgument"


class ZModDomain:
    """Coefficient arithmetic in Z/N on plain ints."""

    __slots__ = ("n",)
    kind = "zmod"

    def __init__(self, n: int):
        self.n = n

    def normalize(self, c):
        return c % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def is_unit(self, a):
        return zmod.is_unit_mod(a, self.n)

    def inv(self, a):
        return zmod.inv_mod(a, self.n)

    zero = 0
    one = 1

    def coeff_str(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, ZModDomain) and other.n == self.n

    def __repr__(self):
        return f"Z/{self.n}"


class RationalDomain:
    """Exact rational coefficients (Fraction keeps lowest terms)."""

    kind = "rational"

    def normalize(self, c):
        return Fraction(c)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        return 1 / Fraction(a)

    zero = Fraction(0)
    one = Fraction(1)

    def coeff_str(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __repr__(self):
        return "Q"


QQ = RationalDomain()


class TruncatedSeries:
    """Sparse series in ``vars`` truncated at total degree ``cap``."""

    __slots__ = ("domain", "vars", "cap", "terms")

    def __init__(self, domain, variables, cap: int, terms: dict):
        self.domain = domain
        self.vars = tuple(variables)
        self.cap = cap
        clean = {}
        for e, c in terms.items():
            if sum(e) > cap:
                continue
            c = domain.normalize(c)
            if c != domain.zero:
                clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, domain, variables, cap):
        return cls(domain, variables, cap, {})

    @classmethod
    def constant(cls, domain, variables, cap, c):
        e = tuple([0] * len(variables))
        return cls(domain, variables, cap, {e: c})

    @classmethod
    def variable(cls, domain, variables, cap, name):
        idx = list(variables).index(name)
        e = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(domain, variables, cap, {e: domain.one})

    # -- inspection -----------------------------------------------------------

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), self.domain.zero)

    def constant_term(self):
        return self.coefficient([0] * len(self.vars))

    def is_zero(self):
        return not self.terms

    def valuation(self):
        """Least total degree of a nonzero term (None for the zero series)."""
        return min((sum(e) for e in self.terms), default=None)

    def univariate_coeffs(self):
        """Coefficient list c_0..c_cap for a one-variable series."""
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        out = [self.domain.zero] * (self.cap + 1)
        for e, c in self.terms.items():
            out[e[0]] = c
        return out

    def _compat(self, other):
        if (
            not isinstance(other, TruncatedSeries)
            or other.vars != self.vars
            or other.domain != self.domain
        ):
            raise RingMismatch("series over different rings or variables")
        return min(self.cap, other.cap)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        cap = self._compat(other)
        dom = self.domain
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = dom.add(out.get(e, dom.zero), c)
        return TruncatedSeries(dom, self.vars, cap, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        dom = self.domain
        return TruncatedSeries(
            dom, self.vars, self.cap, {e: dom.neg(c) for e, c in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        cap = self._compat(other)
        dom = self.domain
        out = {}
        b_items = sorted(
            ((sum(e), e, c) for e, c in other.terms.items()), key=lambda t: t[0]
        )
        for ea, ca in self.terms.items():
            da = sum(ea)
            if da > cap:
                continue
            for db, eb, cb in b_items:
                if da + db > cap:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                c = dom.mul(ca, cb)
                prev = out.get(e)
                out[e] = c if prev is None else dom.add(prev, c)
        return TruncatedSeries(dom, self.vars, cap, out)

    def scale(self, c):
        dom = self.domain
        c = dom.normalize(c)
        return TruncatedSeries(
            dom, self.vars, self.cap,
            {e: dom.mul(c, v) for e, v in self.terms.items()},
        )

    def __pow__(self, k: int):
        result = TruncatedSeries.constant(self.domain, self.vars, self.cap,
                                          self.domain.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, cap: int):
        return TruncatedSeries(self.domain, self.vars, min(cap, self.cap),
                               self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and other.vars == self.vars
            and other.domain == self.domain
            and other.cap == self.cap
            and other.terms == self.terms
        )

    def __repr__(self):
        if not self.terms:
            return "<series 0>"
        parts = []
        for e in sorted(self.terms, key=graded_lex_key):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            parts.append(f"{c}" if not mono else (mono if c == self.domain.one else f"{c}*{mono}"))
        return "<series " + " + ".join(parts) + ">"

    def to_json_dict(self):
        items = sorted(self.terms.items(), key=lambda t: graded_lex_key(t[0]))
        return {
            "vars": list(self.vars),
            "cap": self.cap,
            "terms": [
                {"exp": list(e), "coeff": self.domain.coeff_str(c)}
                for e, c in items
            ],
        }


def substitute(f: TruncatedSeries, assignments: dict) -> TruncatedSeries:
    """Formal composition: replace each variable by a series with zero constant term.

    The zero-constant-term requirement guarantees that only finitely many
    terms of f contribute to each output degree.
    """
    if set(assignments) != set(f.vars):
        raise ValueError("assignments must cover exactly the variables of f")
    values = [assignments[v] for v in f.vars]
    first = values[0]
    dom = f.domain
    cap = min([f.cap] + [g.cap for g in values])
    for g in values:
        if g.domain != dom:
            raise RingMismatch("substituted series over a different ring")
        if g.vars != first.vars:
            raise RingMismatch("substituted series must share variables")
        if g.constant_term() != dom.zero:
            raise NonzeroConstantTerm("substituted series has nonzero constant term")
    out_vars = first.vars
    one = TruncatedSeries.constant(dom, out_vars, cap, dom.one)
    # cache powers of each substituted series
    powers = [{0: one} for _ in values]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            half = power(i, k // 2)
            p = half * half
            if k % 2:
                p = p * values[i].truncate(cap)
            cache[k] = p
        return cache[k]

    acc = TruncatedSeries.zero(dom, out_vars, cap)
    for e, c in f.terms.items():
        term = one.scale(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        acc = acc + term
    return acc


def reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse g of a univariate f with f(0)=0, f'(0) a unit."""
    if len(f.vars) != 1:
        raise ValueError("reversion needs a univariate series")
    dom = f.domain
    if f.constant_term() != dom.zero:
        raise NonzeroConstantTerm("reversion needs zero constant term")
    coeffs = f.univariate_coeffs()
    if len(coeffs) < 2 or not dom.is_unit(coeffs[1]):
        raise NonUnitLinearTerm("linear coefficient must be a unit")
    a1_inv = dom.inv(coeffs[1])
    cap = f.cap
    x = TruncatedSeries.variable(dom, f.vars, cap, f.vars[0])
    g = x.scale(a1_inv)
    for k in range(2, cap + 1):
        err = substitute(f, {f.vars[0]: g})
        ck = err.coefficient((k,))
        if ck == dom.zero:
            continue
        correction = TruncatedSeries(
            dom, f.vars, cap, {(k,): dom.neg(dom.mul(a1_inv, ck))}
        )
        g = g + correction
    return g


def inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with unit constant term."""
    dom = f.domain
    c0 = f.constant_term()
    if not dom.is_unit(c0):
        raise NonUnitLinearTerm("constant term must be a unit")
    c0_inv = dom.inv(c0)
    out = TruncatedSeries.constant(dom, f.vars, f.cap, c0_inv)
    # Newton iteration: g <- g*(2 - f*g), doubling correct degrees each round
    two = TruncatedSeries.constant(dom, f.vars, f.cap, dom.add(dom.one, dom.one))
    good = 1
    while good <= f.cap:
        out = out * (two - f * out)
        good *= 2
    return out


def map_coefficients(f: TruncatedSeries, new_domain, fn) -> TruncatedSeries:
    return TruncatedSeries(
        new_domain, f.vars, f.cap, {e: fn(c) for e, c in f.terms.items()}
    )


def rational_to_zmod(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """Reduce a p-integral rational series mod n (denominators inverted)."""
    dom = ZModDomain(n)

    def red(c: Fraction):
        den = c.denominator % n
        return c.numerator % n * zmod.inv_mod(den, n) % n

    return map_coefficients(f, dom, red)


def eval_at(f: TruncatedSeries, args, polynomial: bool = False) -> RingElement:
    """Exact value of f at ring elements.

    Either every argument is nilpotent with the truncation cap covering all
    jointly nonvanishing monomials (so the dropped tail is invisible), or the
    caller asserts f is a polynomial and the finite sum is taken as-is.
    """
    if len(args) != len(f.vars):
        raise ValueError("one argument per variable")
    if not args:
        raise ValueError("need at least one argument")
    alg = args[0].parent
    for a in args:
        if a.parent is not alg:
            raise RingMismatch("arguments from different rings")
    if not isinstance(f.domain, ZModDomain) or f.domain.n != alg.base.n:
        raise RingMismatch("series coefficients do not match the ring base")
    if not polynomial:
        indices = []
        for a in args:
            idx = alg.nilpotency_index(a)
            if idx is None:
                raise NonNilpotentArgument(
                    "argument is not nilpotent; pass polynomial=True for "
                    "polynomial evaluation"
                )
            indices.append(idx)
        if sum(i - 1 for i in indices) > f.cap:
            raise NonNilpotentArgument(
                f"cap {f.cap} does not cover all nonvanishing monomials "
                f"(need {sum(i - 1 for i in indices)})"
            )
    powers = [{0: alg.one(), 1: a} for a in args]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * args[i]
        return cache[k]

    acc = alg.zero()
    for e, c in sorted(f.terms.items(), key=lambda t: graded_lex_key(t[0])):
        term = alg.one() * c
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        acc = acc + term
    return acc


def poly_eval(coeffs, x: RingElement) -> RingElement:
    """Horner evaluation of a scalar-coefficient polynomial at a ring element."""
    alg = x.parent
    acc = alg.zero()
    for c in reversed(list(coeffs)):
        acc = acc * x + alg.from_int(c)
    return acc
