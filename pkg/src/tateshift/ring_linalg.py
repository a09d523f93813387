"""Root-coefficient relations and linear algebra over commutative rings.

The central hypothesis everywhere is the n-tuple condition: a set of ring
elements whose pairwise differences are non-zero-divisors.  Under it the
Vandermonde system has only the zero solution, the generalized Vieta/Cramer
relations between the roots and the coefficients of a polynomial hold, and a
polynomial with "too many" roots forces the ring to vanish.

Elements may be RingElements of a FiniteAlgebra, PolyElements of an
ExactPolyRing, or plain ints (exact Z); the helpers dispatch on type.
"""

from __future__ import annotations

import itertools

from . import zmod
from .ring_core import (
    ExactPolyRing,
    FiniteAlgebra,
    NotDivisible,
    PolyElement,
    RingElement,
    ZeroDivisorDivisor,
    annihilator,
    exact_div as ring_exact_div,
    ideal_contains_one,
    is_unit as ring_is_unit,
)


class LinalgError(Exception):
    name = "LinalgError"
    module = "ring_linalg"


class PivotNotCancellable(LinalgError):
    name = "PivotNotCancellable"


class DivisibilityFailure(LinalgError):
    name = "DivisibilityFailure"


class NotInvertibleTuple(LinalgError):
    name = "NotInvertibleTuple"


class NotATuple(LinalgError):
    name = "NotATuple"


# -- element dispatch ---------------------------------------------------------


def elem_zero(x):
    if isinstance(x, int):
        return 0
    return x.parent.zero()


def elem_one(x):
    if isinstance(x, int):
        return 1
    return x.parent.one()


def elem_is_zero(x):
    return x == 0 if isinstance(x, int) else x.is_zero()


def elem_is_nzd(x):
    """Non-zero-divisor test in the element's ring."""
    if isinstance(x, int):
        return x != 0
    if isinstance(x, RingElement):
        return not x.is_zero() and not annihilator(x)
    if isinstance(x, PolyElement):
        return x.parent.is_nzd(x)
    raise TypeError(f"unsupported element {x!r}")


def elem_is_unit(x):
    if isinstance(x, int):
        return x in (1, -1)
    if isinstance(x, RingElement):
        return ring_is_unit(x)[0]
    if isinstance(x, PolyElement):
        return x.parent.is_unit(x)
    raise TypeError(f"unsupported element {x!r}")


def elem_inv(x):
    if isinstance(x, int):
        if x in (1, -1):
            return x
        raise NotInvertibleTuple(f"{x} is not invertible in Z")
    if isinstance(x, RingElement):
        ok, inv = ring_is_unit(x)
        if not ok:
            raise NotInvertibleTuple(f"{x!r} is not invertible")
        return inv
    if isinstance(x, PolyElement):
        return _poly_ring_inverse(x)
    raise TypeError(f"unsupported element {x!r}")


def _poly_ring_inverse(x: PolyElement) -> PolyElement:
    ring = x.parent
    if not ring.is_unit(x):
        raise NotInvertibleTuple(f"{x!r} is not invertible")
    from .ring_core import rational_solve

    mat = ring.mul_matrix(x)
    rhs = [0] * ring.rank
    rhs[ring.index[tuple([0] * len(ring.variables))]] = 1
    sol = rational_solve(mat, rhs)
    return PolyElement(
        ring, {m: int(c) for m, c in zip(ring.monomials, sol) if c}
    )


def elem_exact_div(a, d):
    if isinstance(a, int):
        if d == 0:
            raise ZeroDivisorDivisor("division by zero in Z")
        if a % d:
            raise NotDivisible(f"{d} does not divide {a} in Z")
        return a // d
    if isinstance(a, RingElement):
        return ring_exact_div(a, d)
    if isinstance(a, PolyElement):
        return a.parent.exact_div(a, d)
    raise TypeError(f"unsupported element {a!r}")


def poly_eval_elems(coeffs, x):
    """Horner evaluation; coefficients and point from the same ring."""
    acc = elem_zero(x)
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


# -- n-tuples -------------------------------------------------------------------


class NTuple:
    """Roots with pairwise non-zero-divisor differences (Def: n-tuple).

    mode "concrete": the differences were checked in the ring itself.
    mode "localized": each difference is certified to become a unit after
    inverting the recorded multiplicative set; conclusions are conditional on
    that localization being the ring under discussion.
    """

    __slots__ = ("elements", "verified", "mode", "witnesses", "f_coeffs")

    def __init__(self, elements, verified, mode="concrete", witnesses=None,
                 f_coeffs=None):
        self.elements = list(elements)
        self.verified = verified
        self.mode = mode
        self.witnesses = witnesses or {}
        self.f_coeffs = f_coeffs

    def __len__(self):
        return len(self.elements)


def is_ntuple(elements, f=None):
    """(ok, offending_pair): pairwise differences non-zero-divisors, roots of f.

    ``f`` is an optional coefficient list a_0..a_m over the same ring; when
    given, every element must be a root.
    """
    elements = list(elements)
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if not elem_is_nzd(elements[i] - elements[j]):
                return False, (i, j)
    if f is not None:
        for i, r in enumerate(elements):
            if not elem_is_zero(poly_eval_elems(f, r)):
                return False, (i, i)
    return True, None


def verify_tuple(elements, f=None) -> NTuple:
    ok, pair = is_ntuple(elements, f)
    if not ok:
        i, j = pair
        if i == j:
            raise NotATuple(f"element {i} is not a root of f")
        raise NotATuple(f"difference of elements {i} and {j} is a zero divisor")
    return NTuple(elements, True, "concrete", f_coeffs=f)


# -- determinants ------------------------------------------------------------------


def vandermonde_det(ts):
    """prod_{j<i} (t_i - t_j); the empty and singleton products are 1."""
    ts = list(ts)
    if not ts:
        return 1
    out = elem_one(ts[0])
    for i in range(len(ts)):
        for j in range(i):
            out = out * (ts[i] - ts[j])
    return out


def vandermonde_matrix(ts, ncols=None):
    ts = list(ts)
    n = len(ts)
    ncols = n if ncols is None else ncols
    rows = []
    for t in ts:
        row = [elem_one(t)]
        for _ in range(ncols - 1):
            row.append(row[-1] * t)
        rows.append(row)
    return rows


def det_division_free(matrix):
    """Determinant without ring division: cofactor to size 5, Berkowitz above."""
    n = len(matrix)
    if n == 0:
        return 1
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix must be square")
    if n <= 5:
        return _det_cofactor(matrix)
    return _det_berkowitz(matrix)


def _det_cofactor(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    out = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_cofactor(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


def _det_berkowitz(m):
    n = len(m)
    zero = elem_zero(m[0][0])
    one = elem_one(m[0][0])
    poly = [one, -m[0][0]]
    for r in range(1, n):
        a = m[r][r]
        row = [m[r][j] for j in range(r)]
        col = [m[i][r] for i in range(r)]
        block = [[m[i][j] for j in range(r)] for i in range(r)]
        ts = [one, -a]
        vec = col
        for _ in range(2, r + 2):
            dot = None
            for x, y in zip(row, vec):
                term = x * y
                dot = term if dot is None else dot + term
            ts.append(-dot)
            vec = [
                _dot_or_zero(block[i], vec, zero) for i in range(r)
            ]
        new_poly = []
        for i in range(r + 2):
            s = zero
            for j in range(len(poly)):
                k = i - j
                if 0 <= k < len(ts):
                    s = s + ts[k] * poly[j]
            new_poly.append(s)
        poly = new_poly
    det = poly[n]
    if n % 2:
        det = -det
    return det


def _dot_or_zero(xs, ys, zero):
    acc = zero
    for x, y in zip(xs, ys):
        acc = acc + x * y
    return acc


# -- elimination with non-zero-divisor cancellation ----------------------------------


class EliminationResult:
    """Outcome of the Vandermonde elimination: solution space is {0}."""

    __slots__ = ("status", "trace")

    def __init__(self, trace):
        self.status = "UNIQUE_ZERO"
        self.trace = trace


def gaussian_nzd_solve(ntuple) -> EliminationResult:
    """Row-reduce the Vandermonde system of the tuple to unit pivots.

    Each stage subtracts the pivot row and cancels the common non-zero-divisor
    factor t_i - t_s from the whole row (cancellation preserves the solution
    set); the final upper triangular matrix with pivots 1 confirms the only
    solution is the zero vector.
    """
    elements = ntuple.elements if isinstance(ntuple, NTuple) else list(ntuple)
    ts = list(elements)
    n = len(ts)
    rows = vandermonde_matrix(ts)
    trace = [[list(r) for r in rows]]
    for stage in range(n - 1):
        pivot = rows[stage]
        for i in range(stage + 1, n):
            diff = [a - b for a, b in zip(rows[i], pivot)]
            factor = ts[i] - ts[stage]
            new_row = []
            for entry in diff:
                if elem_is_zero(entry):
                    new_row.append(entry)
                    continue
                try:
                    new_row.append(elem_exact_div(entry, factor))
                except (NotDivisible, ZeroDivisorDivisor) as exc:
                    raise PivotNotCancellable(
                        f"difference of roots {i} and {stage} cannot be "
                        f"cancelled: {exc}"
                    ) from exc
            rows[i] = new_row
        trace.append([list(r) for r in rows])
    for i in range(n):
        if not elem_is_zero(rows[i][i] - elem_one(ts[0])):
            raise PivotNotCancellable(f"pivot {i} did not normalize to 1")
    return EliminationResult(trace)


# -- root-coefficient relations -------------------------------------------------------


class RootCoeffResult:
    """Case tag, recovered coefficients and determinant witnesses."""

    __slots__ = ("case", "recovered", "witnesses", "factorization")

    def __init__(self, case, recovered, witnesses=None, factorization=None):
        self.case = case
        self.recovered = recovered
        self.witnesses = witnesses or {}
        self.factorization = factorization


def poly_from_roots(roots, leading):
    """Coefficients of leading * prod (x - r_i), constant term first."""
    coeffs = [elem_one(leading)]
    for r in roots:
        new = [elem_zero(leading) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * r
        coeffs = new
    return [c * leading for c in coeffs]


def roots_to_coeffs(f_coeffs, ntuple: NTuple) -> RootCoeffResult:
    """Generalized root-coefficient relations for a verified tuple of f.

    n > m: every coefficient is forced to vanish.  n = m: Vieta recovery and
    the factorization f = a_n prod (x - r_i).  n < m: Cramer recovery
    a_i = det(..beta..) / det V via exact division (divisibility is guaranteed
    for verified tuples; failure means the precondition was violated).
    """
    if not (isinstance(ntuple, NTuple) and ntuple.verified):
        raise NotATuple("roots_to_coeffs needs a verified tuple")
    f_coeffs = list(f_coeffs)
    roots = ntuple.elements
    if ntuple.mode == "concrete":
        for i, r in enumerate(roots):
            if not elem_is_zero(poly_eval_elems(f_coeffs, r)):
                raise NotATuple(f"element {i} is not a root of f")
    n = len(roots)
    m = len(f_coeffs) - 1
    if n > m:
        for i, a in enumerate(f_coeffs):
            if not elem_is_zero(a):
                raise NotATuple(
                    f"coefficient {i} is nonzero although the tuple is larger "
                    "than the degree; the tuple cannot be valid"
                )
        return RootCoeffResult("AllZero", [elem_zero(roots[0])] * (m + 1))
    if n == m:
        lead = f_coeffs[-1]
        expanded = poly_from_roots(roots, lead)
        for got, given in zip(expanded, f_coeffs):
            if not elem_is_zero(got - given):
                raise NotATuple("Vieta relations fail; tuple is not valid for f")
        return RootCoeffResult(
            "Vieta", expanded[:-1], factorization={"leading": lead, "roots": roots}
        )
    # n < m: Cramer with exact division by det V
    det_v = det_division_free(vandermonde_matrix(roots))
    beta = []
    for r in roots:
        acc = elem_zero(r)
        power = r
        for _ in range(n - 1):
            power = power * r
        # power = r^n now; accumulate -sum_{k=n..m} a_k r^k
        for k in range(n, m + 1):
            acc = acc - f_coeffs[k] * power
            power = power * r
        beta.append(acc)
    columns = [[row[i] for row in vandermonde_matrix(roots)] for i in range(n)]
    recovered = []
    col_dets = []
    for i in range(n):
        cols = columns[:i] + [beta] + columns[i + 1:]
        mat = [[cols[c][r] for c in range(n)] for r in range(n)]
        det_i = det_division_free(mat)
        col_dets.append(det_i)
        try:
            recovered.append(elem_exact_div(det_i, det_v))
        except (NotDivisible, ZeroDivisorDivisor) as exc:
            raise DivisibilityFailure(
                f"det column {i} not divisible by det V: {exc}"
            ) from exc
    for i in range(n):
        if not elem_is_zero(recovered[i] - f_coeffs[i]):
            raise DivisibilityFailure(
                f"recovered coefficient {i} disagrees with the input"
            )
    return RootCoeffResult(
        "Cramer", recovered,
        witnesses={"det_vandermonde": det_v, "column_dets": col_dets},
    )


def interpolate(f_coeffs, ntuple: NTuple):
    """Lagrange-style identity for an invertible tuple.

    Builds L(x) = sum_j prod_{i != j} (x - r_i)/(r_j - r_i) * c_j with
    c_j = f(r_j) - sum_{k>=n} a_k r_j^k and reports coefficientwise equality
    of L with the degree < n part of f (for root tuples c_j is just the
    negated high sum).
    """
    roots = ntuple.elements if isinstance(ntuple, NTuple) else list(ntuple)
    f_coeffs = list(f_coeffs)
    n = len(roots)
    m = len(f_coeffs) - 1
    for i in range(n):
        for j in range(i + 1, n):
            if not elem_is_unit(roots[i] - roots[j]):
                raise NotInvertibleTuple(
                    f"difference of roots {i} and {j} is not a unit"
                )
    zero = elem_zero(roots[0])
    one = elem_one(roots[0])
    lagrange = [zero] * n
    for j, rj in enumerate(roots):
        cj = poly_eval_elems(f_coeffs, rj)
        power = one
        for _ in range(n):
            power = power * rj
        # subtract sum_{k=n..m} a_k rj^k
        for k in range(n, m + 1):
            cj = cj - f_coeffs[k] * power
            power = power * rj
        basis = [one]
        denom = one
        for i, ri in enumerate(roots):
            if i == j:
                continue
            new = [zero] * (len(basis) + 1)
            for t, c in enumerate(basis):
                new[t + 1] = new[t + 1] + c
                new[t] = new[t] - c * ri
            basis = new
            denom = denom * (rj - ri)
        scale = elem_inv(denom) * cj
        for t in range(len(basis)):
            lagrange[t] = lagrange[t] + basis[t] * scale
    expected = [f_coeffs[i] if i <= m else zero for i in range(n)]
    matches = all(
        elem_is_zero(a - b) for a, b in zip(lagrange, expected)
    )
    return {
        "lagrange_coeffs": lagrange,
        "matches_low_part": matches,
        "high_part_degrees": list(range(n, m + 1)),
    }


# -- vanishing condition ---------------------------------------------------------------


class VanishingVerdict:
    __slots__ = ("verdict", "details")

    MUST_BE_ZERO = "MustBeZero"
    INCONCLUSIVE = "Inconclusive"

    def __init__(self, verdict, details):
        self.verdict = verdict
        self.details = details

    def __repr__(self):
        return f"VanishingVerdict({self.verdict})"


# One difference generator per recovered coefficient, indexed 0..n-1; the
# reports state the convention so consumers can align their own indexing.
INDEX_CONVENTION_NOTE = (
    "difference generators indexed 0..n-1, one per recovered coefficient"
)


def vanishing_condition(f_coeffs, ntuple: NTuple) -> VanishingVerdict:
    """MustBeZero when the tuple of f forces R = 0, else Inconclusive.

    n > m: R = 0 as soon as 1 lies in the coefficient ideal.  n <= m: R = 0
    when 1 lies in the ideal of differences a_i - (Cramer expression); for
    localized tuples that case is not decidable at finite truncation level
    and reports Inconclusive.
    """
    if not (isinstance(ntuple, NTuple) and ntuple.verified):
        raise NotATuple("vanishing_condition needs a verified tuple")
    f_coeffs = list(f_coeffs)
    roots = ntuple.elements
    if ntuple.mode == "concrete":
        for i, r in enumerate(roots):
            if not elem_is_zero(poly_eval_elems(f_coeffs, r)):
                raise NotATuple(f"element {i} is not a root of f")
    n = len(roots)
    m = len(f_coeffs) - 1
    if n > m:
        contains = _one_in_ideal(f_coeffs)
        verdict = (
            VanishingVerdict.MUST_BE_ZERO if contains
            else VanishingVerdict.INCONCLUSIVE
        )
        return VanishingVerdict(
            verdict,
            {"case": "n>m", "ideal": "coefficients", "n": n, "m": m,
             "note": INDEX_CONVENTION_NOTE},
        )
    if ntuple.mode == "localized":
        return VanishingVerdict(
            VanishingVerdict.INCONCLUSIVE,
            {"case": "n<=m", "reason": "Cramer differences are not computable "
             "in the unlocalized model", "note": INDEX_CONVENTION_NOTE},
        )
    try:
        result = roots_to_coeffs(f_coeffs, ntuple)
    except DivisibilityFailure:
        return VanishingVerdict(
            VanishingVerdict.INCONCLUSIVE,
            {"case": "n<=m", "reason": "divisibility failure",
             "note": INDEX_CONVENTION_NOTE},
        )
    diffs = [a - b for a, b in zip(f_coeffs, result.recovered)]
    contains = _one_in_ideal(diffs) if any(
        not elem_is_zero(d) for d in diffs
    ) else False
    return VanishingVerdict(
        VanishingVerdict.MUST_BE_ZERO if contains
        else VanishingVerdict.INCONCLUSIVE,
        {"case": "n<=m", "ideal": "coefficient differences",
         "note": INDEX_CONVENTION_NOTE},
    )


def _one_in_ideal(gens) -> bool:
    gens = [g for g in gens if not elem_is_zero(g)]
    if not gens:
        return False
    g0 = gens[0]
    if isinstance(g0, int):
        from math import gcd

        acc = 0
        for g in gens:
            acc = gcd(acc, g)
        return acc == 1
    if isinstance(g0, RingElement):
        return ideal_contains_one(gens)
    if isinstance(g0, PolyElement):
        ring = g0.parent
        if any(ring.is_unit(g) for g in gens):
            return True
        return ring.module_contains(gens, ring.one())
    raise TypeError(f"unsupported element {g0!r}")


# -- tuples verified in a localization ---------------------------------------------------


def _bfs_products(gens, max_len):
    """Deterministic breadth-first products of the generators (multisets)."""
    frontier = [(g, i, (i,)) for i, g in enumerate(gens)]
    seen = set()
    out = []
    for value, _, word in frontier:
        key = _value_key(value)
        if key not in seen:
            seen.add(key)
            out.append((value, word))
    length = 1
    current = frontier
    while length < max_len:
        length += 1
        nxt = []
        for value, last, word in current:
            for i in range(last, len(gens)):
                prod = value * gens[i]
                key = _value_key(prod)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((prod, i, word + (i,)))
                out.append((prod, word + (i,)))
        current = nxt
    return out


def _value_key(value):
    if isinstance(value, RingElement):
        return value.coords
    return tuple(sorted(value.terms.items()))


def _unit_multiple_witness(d, s_gens, max_len):
    """(word, unit) with d = unit * prod(word over s_gens), or None.

    Certifies that d becomes a unit in the localization inverting s_gens.
    """
    for value, word in _bfs_products(s_gens, max_len):
        u = _unit_cofactor(value, d)
        if u is not None:
            return list(word), u
    return None


def _unit_cofactor(s, d):
    """A unit u with s*u = d, or None."""
    if isinstance(s, RingElement):
        from .ring_core import unit_in_affine_coset

        alg = s.parent
        mat = alg.mul_matrix(s)
        y0 = zmod.solve(mat, list(d.coords), alg.base.n)
        if y0 is None:
            return None
        kern = zmod.right_kernel(mat, alg.base.n)
        hit = unit_in_affine_coset(alg, y0, kern)
        return RingElement(alg, hit) if hit is not None else None
    if isinstance(s, PolyElement):
        ring = s.parent
        # fast paths: signed monomials, then signed products of (1 + x_k)
        # powers (the unit groups of group-ring style presentations in either
        # coordinate convention)
        for sign in (1, -1):
            for mono in ring.monomials:
                u = PolyElement(ring, {mono: sign})
                if (s * u) == d and ring.is_unit(u):
                    return u
        shifted = [ring.one() + ring.gen(k) for k in range(len(ring.variables))]
        for exps in ring.monomials:
            cand = ring.one()
            for k, e in enumerate(exps):
                for _ in range(e):
                    cand = cand * shifted[k]
            for sign in (1, -1):
                u = cand * sign
                if (s * u) == d and ring.is_unit(u):
                    return u
        # general path: integer solutions of s*y = d, scanned for a unit
        from .ring_core import integer_solve

        mat = ring.mul_matrix(s)
        rhs = [0] * ring.rank
        for e, c in d.terms.items():
            rhs[ring.index[e]] = c
        particular, kernel = integer_solve(mat, rhs)
        if particular is None:
            return None

        def as_elem(vec):
            return PolyElement(
                ring, {m: c for m, c in zip(ring.monomials, vec) if c}
            )

        if ring.is_unit(as_elem(particular)):
            return as_elem(particular)
        box = 3
        for combo in itertools.product(range(-box, box + 1), repeat=len(kernel)):
            if not any(combo):
                continue
            vec = list(particular)
            for c, k in zip(combo, kernel):
                if c:
                    vec = [x + c * y for x, y in zip(vec, k)]
            cand = as_elem(vec)
            if ring.is_unit(cand):
                return cand
        return None
    raise TypeError(f"unsupported element {s!r}")


def _kill_word(t, s_gens, max_len):
    """A word whose product annihilates t (so t dies in the localization)."""
    if elem_is_zero(t):
        return []
    for value, word in _bfs_products(s_gens, max_len):
        if elem_is_zero(value * t):
            return list(word)
    return None


def verify_localized_tuple(s_gens, elements, f=None, max_len=12) -> NTuple:
    """Tuple valid in the localization inverting s_gens, with explicit witnesses.

    Pairwise differences must be unit multiples of products of the inverted
    generators (hence units after localization, hence non-zero-divisors there
    whenever the localization is nonzero); roots of f need only die in the
    localization, i.e. be annihilated by some product.
    """
    elements = list(elements)
    witnesses = {"pairs": {}, "roots": {}, "inverted": s_gens}
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            d = elements[i] - elements[j]
            hit = _unit_multiple_witness(d, s_gens, max_len)
            if hit is None:
                raise NotATuple(
                    f"difference of elements {i} and {j} is not certified "
                    "to become a unit in the localization"
                )
            witnesses["pairs"][(i, j)] = {"word": hit[0], "unit": hit[1]}
    if f is not None:
        for i, r in enumerate(elements):
            value = poly_eval_elems(list(f), r)
            word = _kill_word(value, s_gens, max_len)
            if word is None:
                raise NotATuple(
                    f"f(element {i}) does not die in the localization "
                    f"within products of length {max_len}"
                )
            witnesses["roots"][i] = {"word": word}
    return NTuple(elements, True, "localized", witnesses, f_coeffs=f)
