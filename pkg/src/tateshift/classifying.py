"""Classifying rings of finite abelian p-groups over a formal group law.

For A = Z/p^i_1 + ... + Z/p^i_m the ring is the finite free algebra
base[x_1..x_m]/(G_1(x_1),...,G_m(x_m)) where G_k is the monic Weierstrass
polynomial of the p^(i_k)-series.  Euler classes are the iterated formal sums
[w_1](X_1) +_F ... +_F [w_m](X_m); the p^j-torsion of A enumerates exactly
the algebra-homomorphism roots of the p^j-series.

Grading convention: the periodicity generator is specialized to 1, so the
usual even grading of Euler classes is dropped; reports state this.
"""

from __future__ import annotations

import itertools

from . import zmod
from .fgl import (
    CapTooSmall,
    FGLError,
    FormalGroupLaw,
    poly_compose_iterate,
    weierstrass_prepare,
)
from .ring_core import BaseModulus, FiniteAlgebra, RingElement
from .series import eval_at, poly_eval


class ClassifyingError(Exception):
    name = "ClassifyingError"
    module = "classifying"


class InvalidSubgroup(ClassifyingError):
    name = "InvalidSubgroup"


class NotAHomomorphism(ClassifyingError):
    name = "NotAHomomorphism"


class RelationNotKilled(ClassifyingError):
    name = "RelationNotKilled"


class AbelianPGroup:
    """Z/p^i_1 + ... + Z/p^i_m with elements as residue tuples."""

    __slots__ = ("p", "exponents")

    def __init__(self, p: int, exponents):
        exponents = tuple(int(i) for i in exponents)
        if p < 2:
            raise InvalidSubgroup("p must be a prime >= 2")
        if not exponents or any(i < 1 for i in exponents):
            raise InvalidSubgroup("exponents must be positive")
        self.p = p
        self.exponents = exponents

    @property
    def orders(self):
        return tuple(self.p**i for i in self.exponents)

    @property
    def order(self):
        out = 1
        for o in self.orders:
            out *= o
        return out

    def elements(self):
        return itertools.product(*[range(o) for o in self.orders])

    def torsion_elements(self, j: int):
        """V(p^j | A) = { w : p^j w = 0 }, enumerated componentwise."""
        ranges = []
        for i_k, o in zip(self.exponents, self.orders):
            step = self.p ** max(i_k - j, 0)
            ranges.append(range(0, o, step))
        return itertools.product(*ranges)

    def __repr__(self):
        parts = " + ".join(f"Z/{o}" for o in self.orders)
        return f"AbelianPGroup({parts})"


class SubgroupSpec:
    """Exponents (j_1..j_m) of C inside A, embedded by w_k -> p^(i_k-j_k) w_k."""

    __slots__ = ("exponents",)

    def __init__(self, exponents):
        self.exponents = tuple(int(j) for j in exponents)
        if any(j < 0 for j in self.exponents):
            raise InvalidSubgroup("subgroup exponents must be >= 0")

    def validate_in(self, group: AbelianPGroup):
        if len(self.exponents) != len(group.exponents):
            raise InvalidSubgroup("subgroup spec length differs from the group")
        for j, i in zip(self.exponents, group.exponents):
            if j > i:
                raise InvalidSubgroup(f"subgroup exponent {j} exceeds {i}")

    @property
    def rank_p(self) -> int:
        return sum(1 for j in self.exponents if j >= 1)

    def __repr__(self):
        return f"SubgroupSpec{self.exponents}"


def quotient_image_elements(group: AbelianPGroup, sub: SubgroupSpec):
    """im phi(A/C) inside A: the components divisible by p^(j_k).

    phi embeds A/C = + Z/p^(i_k - j_k) by w_k -> p^(j_k) w_k; its image is
    exactly the set of tuples with p^(j_k) | w_k.
    """
    sub.validate_in(group)
    ranges = []
    for j_k, o in zip(sub.exponents, group.orders):
        step = group.p**j_k
        ranges.append(range(0, o, step))
    return itertools.product(*ranges)


def V_count(group: AbelianPGroup, j: int) -> int:
    """|V(p^j|A)| = prod p^min(j, i_k)."""
    if j < 0:
        raise InvalidSubgroup("j must be >= 0")
    out = 1
    for i_k in group.exponents:
        out *= group.p ** min(j, i_k)
    return out


def V_count_image(group: AbelianPGroup, sub: SubgroupSpec, j: int) -> int:
    """|V(p^j | im phi(A/C))| = prod p^min(j, i_k - j_k)."""
    sub.validate_in(group)
    if j < 0:
        raise InvalidSubgroup("j must be >= 0")
    out = 1
    for i_k, j_k in zip(group.exponents, sub.exponents):
        out *= group.p ** min(j, i_k - j_k)
    return out


class EulerClass:
    """Group element w together with its Euler class in the classifying ring."""

    __slots__ = ("element", "value")

    def __init__(self, element, value: RingElement):
        self.element = tuple(element)
        self.value = value

    def __repr__(self):
        return f"EulerClass({self.element})"


class ClassifyingRing:
    """The finite algebra presentation of E*(BA) plus the source data."""

    def __init__(self, law: FormalGroupLaw, group: AbelianPGroup,
                 algebra: FiniteAlgebra, relations):
        self.law = law
        self.group = group
        self.algebra = algebra
        self.relations = relations  # monic coefficient lists, one per factor
        self._euler_cache: dict[tuple, RingElement] = {}
        self._g1 = None

    # -- Euler classes ------------------------------------------------------

    def euler_class(self, w) -> EulerClass:
        """[w_1](X_1) +_F ... +_F [w_m](X_m), folded left to right.

        Commutativity and associativity of F (verified at build) make the
        result order independent; the fixed fold gives byte-stable output.
        """
        w = tuple(int(a) % o for a, o in zip(w, self.group.orders))
        if len(w) != len(self.group.exponents):
            raise InvalidSubgroup("group element length mismatch")
        if w in self._euler_cache:
            return EulerClass(w, self._euler_cache[w])
        alg = self.algebra
        acc = None
        for k, w_k in enumerate(w):
            series_k = self.law.m_series(w_k)
            x_k = alg.gen(k)
            value_k = eval_at(series_k, [x_k])
            if acc is None:
                acc = value_k
            else:
                acc = eval_at(self.law.F, [acc, value_k])
        self._euler_cache[w] = acc
        return EulerClass(w, acc)

    def euler_classes(self, elements):
        return [self.euler_class(w) for w in elements]

    # -- p^j-series data -------------------------------------------------------

    def g1_poly(self):
        if self._g1 is None:
            self._g1 = weierstrass_prepare(self.law.p_series()).poly
        return self._g1

    def gj_poly(self, j: int):
        """Weierstrass polynomial of the p^j-series as the j-fold composite of g_1."""
        return poly_compose_iterate(self.g1_poly(), j, self.algebra.base.n)

    def pj_root_set(self, j: int):
        """Euler classes of the p^j-torsion of A; provably all the
        algebra-homomorphism roots of the p^j-series.

        Each value is checked to kill the p^j Weierstrass polynomial.  The
        enumeration does not search for non-homomorphism roots (arbitrary
        nilpotents can be roots too; they lie outside the torsion bijection).
        """
        if j < 0:
            raise InvalidSubgroup("j must be >= 0")
        gj = self.gj_poly(j)
        out = []
        for w in self.group.torsion_elements(j):
            ec = self.euler_class(w)
            if not poly_eval(gj, ec.value).is_zero():
                raise ClassifyingError(
                    f"euler class of {w} does not kill the p^{j} relation"
                )
            out.append(ec)
        expected = V_count(self.group, j)
        if len(out) != expected:
            raise ClassifyingError(
                f"torsion enumeration produced {len(out)} classes, "
                f"expected {expected}"
            )
        return out

    def __repr__(self):
        return f"ClassifyingRing({self.group!r} over {self.law.kind}, rank={self.algebra.rank})"


def required_cap(p: int, n: int, K: int, exponents) -> int:
    """A cap sufficient for building the ring and evaluating all Euler classes.

    Weierstrass preparation needs p^(n * max i_k); the formal-sum folds need
    the sum of the generator nilpotency bounds (K * p^(n*i_k) each).
    """
    j_max = max(exponents)
    build = p ** (n * j_max) + p
    folds = sum(K * p ** (n * i_k) - 1 for i_k in exponents)
    return max(build, folds if len(exponents) > 1 else 0)


def build_classifying_ring(law: FormalGroupLaw, group: AbelianPGroup) -> ClassifyingRing:
    """base[x_1..x_m] modulo the Weierstrass polynomials of the p^(i_k)-series."""
    if law.p != group.p:
        raise InvalidSubgroup("law and group disagree on p")
    n = law.height
    if n is None:
        raise FGLError("classifying rings need a law of known finite height")
    j_max = max(group.exponents)
    if law.cap < law.p ** (n * j_max):
        raise CapTooSmall(
            f"cap {law.cap} < p^(n*max_i) = {law.p ** (n * j_max)}"
        )
    relations = []
    for i_k in group.exponents:
        fac = weierstrass_prepare(law.pj_series(i_k))
        relations.append(fac.poly)
    base = BaseModulus(law.domain.n)
    variables = [f"x{k + 1}" for k in range(len(group.exponents))]
    algebra = FiniteAlgebra.from_presentation(base, variables, relations)
    expected_rank = 1
    for i_k in group.exponents:
        expected_rank *= law.p ** (i_k * n)
    if algebra.rank != expected_rank:
        raise ClassifyingError(
            f"rank {algebra.rank} differs from p^(n*sum i_k) = {expected_rank}"
        )
    return ClassifyingRing(law, group, algebra, relations)


def certify_root_difference(cr: ClassifyingRing, u, w):
    """Witness that euler(u) - euler(w) is a unit multiple of euler(u - w).

    Solves euler(u-w) * y = euler(u) - euler(w) and exhibits a unit solution
    (one exists by the additivity-up-to-unit identity); the witness makes the
    pairwise non-zero-divisor condition of root tuples explicit relative to
    the set of inverted classes.
    """
    from .ring_core import RingElement, unit_in_affine_coset

    alg = cr.algebra
    target = tuple(
        (a - b) % o for a, b, o in zip(u, w, cr.group.orders)
    )
    d = cr.euler_class(u).value - cr.euler_class(w).value
    s = cr.euler_class(target).value
    mat = alg.mul_matrix(s)
    y0 = zmod.solve(mat, list(d.coords), alg.base.n)
    if y0 is None:
        raise ClassifyingError("difference is not a multiple of euler(u - w)")
    kern = zmod.right_kernel(mat, alg.base.n)
    hit = unit_in_affine_coset(alg, y0, kern)
    if hit is None:
        raise ClassifyingError("no unit cofactor found for the difference")
    unit = RingElement(alg, hit)
    if not (s * unit - d).is_zero():
        raise ClassifyingError("unit cofactor verification failed")
    return {"difference_element": target, "unit": unit}


class AlgebraHom:
    """Algebra homomorphism determined by generator images."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: ClassifyingRing, target: ClassifyingRing, images):
        self.source = source
        self.target = target
        self.images = list(images)

    def apply(self, e: RingElement) -> RingElement:
        """Evaluate by sending each source basis monomial to the image product."""
        src = self.source.algebra
        if e.parent is not src:
            raise InvalidSubgroup("element does not live in the source ring")
        tgt = self.target.algebra
        exps = src.presentation["exponents"]
        acc = tgt.zero()
        for coord, exp in zip(e.coords, exps):
            if not coord:
                continue
            term = tgt.one() * coord
            for k, power in enumerate(exp):
                for _ in range(power):
                    term = term * self.images[k]
            acc = acc + term
        return acc


def induced_map(cr_target: ClassifyingRing, cr_source: ClassifyingRing,
                matrix) -> AlgebraHom:
    """The algebra map E*(B A_2) -> E*(B A_1) of a group homomorphism A_1 -> A_2.

    cr_target is the ring of A_1 (where the map lands), cr_source the ring of
    A_2.  The m x k integer matrix H sends a in A_1 to (sum_s H[s][t] a_s)_t;
    well-definedness needs p^(j_t) | H[s][t] * p^(i_s) for all s, t.  Source
    generator y_t maps to the Euler class of the weight vector
    w^(t)_s = H[s][t] * p^(i_s) / p^(j_t); every source relation must die.
    """
    a1 = cr_target.group
    a2 = cr_source.group
    m, k = len(a1.exponents), len(a2.exponents)
    if len(matrix) != m or any(len(row) != k for row in matrix):
        raise NotAHomomorphism(f"matrix must be {m} x {k}")
    p = a1.p
    images = []
    for t in range(k):
        w = []
        for s in range(m):
            num = matrix[s][t] * p ** a1.exponents[s]
            den = p ** a2.exponents[t]
            if num % den:
                raise NotAHomomorphism(
                    f"entry ({s},{t}) violates the congruence "
                    f"p^{a2.exponents[t]} | H*p^{a1.exponents[s]}"
                )
            w.append((num // den) % p ** a1.exponents[s])
        images.append(cr_target.euler_class(tuple(w)).value)
    hom = AlgebraHom(cr_source, cr_target, images)
    for t in range(k):
        relation = cr_source.relations[t]
        value = poly_eval(relation, images[t])
        if not value.is_zero():
            raise RelationNotKilled(f"relation {t} does not map to zero")
    return hom
