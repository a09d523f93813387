"""Tate homotopy rings as Euler-class localizations, and blue-shift bounds.

For a subgroup C of A (componentwise exponents j_k <= i_k) the generalized
Tate ring is the classifying ring of A with the Euler classes of A - im phi(A/C)
inverted.  Over a finite base that localization is decided by saturation;
over exact integers only zero-product certificates are searched.  A ZERO
outcome is certified either way; a NONZERO outcome at truncation level K says
nothing about the completed ring and is labeled as such.

The blue-shift number s of the construction satisfies t <= s <= rank_p(C)
with the closed-form lower bound

    t = max_j ceil( (log_p|V(p^j|A)| - log_p|V(p^j|im phi(A/C))|) / j )

computed by scanning j up to log_p|A| (the maximum occurs by then).
"""

from __future__ import annotations

from .classifying import (
    AbelianPGroup,
    InvalidSubgroup,
    SubgroupSpec,
    build_classifying_ring,
    quotient_image_elements,
    required_cap,
)
from .fgl import FormalGroupLaw, build_honda, build_multiplicative
from .ring_core import (
    CertificateNotFound,
    ExactPolyRing,
    ZERO_RING,
    localize_by_saturation,
    zero_product_certificate,
)


class TateRingResult:
    """Localization outcome with reproducible witnesses.

    status ZERO always carries a witness (a zero-product certificate and/or
    the saturation chain); NONZERO holds only at the stated truncation level.
    """

    ZERO = "ZERO"
    NONZERO = "NONZERO"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __init__(self, status, quotient=None, inverted=(), witness=None,
                 level=None, mode="finite"):
        self.status = status
        self.quotient = quotient
        self.inverted = list(inverted)
        self.witness = witness or {}
        self.level = level
        self.mode = mode
        if status == self.ZERO and not self.witness:
            raise ValueError("ZERO status requires a witness")

    def to_dict(self):
        out = {
            "status": self.status,
            "mode": self.mode,
            "inverted_classes": [list(w) for w in self.inverted],
        }
        if self.level is not None:
            out["truncation_level"] = self.level
        if self.quotient is not None and self.quotient != ZERO_RING:
            out["quotient"] = {
                "base": str(self.quotient.base.n),
                "rank": self.quotient.rank,
            }
        wit = {}
        if "certificate" in self.witness:
            cert = self.witness["certificate"]
            wit["certificate"] = {
                "length": len(cert["word"]),
                "generator_indices": cert["word"],
                "generators": [list(w) for w in cert["elements"]],
            }
        if "saturation_chain" in self.witness:
            wit["saturation_chain_length"] = len(self.witness["saturation_chain"])
        if "not_found_max_len" in self.witness:
            wit["not_found_max_len"] = self.witness["not_found_max_len"]
        out["witness"] = wit
        return out


def inverted_element_set(group: AbelianPGroup, sub: SubgroupSpec):
    """A - im phi(A/C), in lexicographic order for byte-stable output."""
    sub.validate_in(group)
    image = set(quotient_image_elements(group, sub))
    return [w for w in group.elements() if w not in image]


def tate_ring(law: FormalGroupLaw, group: AbelianPGroup, sub: SubgroupSpec,
              max_cert_len: int | None = None) -> TateRingResult:
    """Finite-base generalized Tate ring via saturation localization.

    A trivial C inverts nothing and returns the classifying ring unchanged
    (NONZERO at the truncation level).  A ZERO outcome attaches both the
    saturation chain and, when found, a zero-product certificate.
    """
    cr = build_classifying_ring(law, group)
    inverted = inverted_element_set(group, sub)
    level = law.domain.n
    if not inverted:
        return TateRingResult(
            TateRingResult.NONZERO, quotient=cr.algebra, inverted=[],
            witness={}, level=level,
        )
    gens = [cr.euler_class(w).value for w in inverted]
    quotient, _, chain = localize_by_saturation(cr.algebra, gens)
    if quotient == ZERO_RING:
        witness = {"saturation_chain": chain}
        limit = max_cert_len if max_cert_len is not None else cr.algebra.rank + 1
        cert = zero_product_certificate(gens, limit)
        if not isinstance(cert, CertificateNotFound):
            witness["certificate"] = {
                "word": cert,
                "elements": [inverted[i] for i in cert],
            }
        return TateRingResult(
            TateRingResult.ZERO, inverted=inverted, witness=witness, level=level,
        )
    return TateRingResult(
        TateRingResult.NONZERO, quotient=quotient, inverted=inverted,
        witness={"saturation_chain": chain}, level=level,
    )


def multiplicative_exact_ring(p: int, exponents) -> ExactPolyRing:
    """Z[x_1..x_m]/((1+x_k)^(p^i_k) - 1) with monic expanded relations."""
    relations = []
    for i_k in exponents:
        q = p**i_k
        coeffs = [_binom(q, t) for t in range(q + 1)]
        coeffs[0] = 0  # (1+x)^q - 1
        relations.append(coeffs)
    variables = [f"x{k + 1}" for k in range(len(exponents))]
    return ExactPolyRing(variables, relations)


def multiplicative_euler_class_exact(ring: ExactPolyRing, w):
    """prod (1+x_k)^(w_k) - 1: the multiplicative formal sum in closed form."""
    acc = ring.one()
    for k, w_k in enumerate(w):
        base = ring.one() + ring.gen(k)
        for _ in range(int(w_k)):
            acc = acc * base
    return acc - ring.one()


def tate_ring_exact(p: int, exponents, sub_exponents,
                    max_cert_len: int = 8) -> TateRingResult:
    """Exact-integer Tate vanishing for the multiplicative law.

    Saturation needs finiteness, so only the zero-product certificate search
    runs here; an exhausted search is INCONCLUSIVE, never NONZERO.
    """
    group = AbelianPGroup(p, exponents)
    sub = SubgroupSpec(sub_exponents)
    inverted = inverted_element_set(group, sub)
    ring = multiplicative_exact_ring(p, exponents)
    if not inverted:
        return TateRingResult(
            TateRingResult.NONZERO, quotient=None, inverted=[], mode="exact",
        )
    gens = [multiplicative_euler_class_exact(ring, w) for w in inverted]
    cert = zero_product_certificate(gens, max_cert_len)
    if isinstance(cert, CertificateNotFound):
        return TateRingResult(
            TateRingResult.INCONCLUSIVE, inverted=inverted,
            witness={"not_found_max_len": cert.max_len}, mode="exact",
        )
    product = ring.one()
    for idx in cert:
        product = product * gens[idx]
    if not product.is_zero():
        raise RuntimeError("certificate replay failed")  # search invariant
    return TateRingResult(
        TateRingResult.ZERO, inverted=inverted,
        witness={"certificate": {"word": cert,
                                 "elements": [inverted[i] for i in cert]}},
        mode="exact",
    )


# -- blue-shift bounds -----------------------------------------------------------


class BlueShiftReport:
    """Bounds t <= s <= rank_p(C), the witnessing j, and exactness when known."""

    def __init__(self, p, a_exponents, c_exponents, lower_t, upper_rank,
                 argmax_j, exact=None, exact_reason=None, scan=None,
                 certificate=None):
        if not 0 <= lower_t <= upper_rank:
            raise ValueError("bounds out of order")
        self.p = p
        self.a_exponents = tuple(a_exponents)
        self.c_exponents = tuple(c_exponents)
        self.lower_t = lower_t
        self.upper_rank = upper_rank
        self.argmax_j = argmax_j
        self.exact = exact
        self.exact_reason = exact_reason
        self.scan = scan or []
        self.certificate = certificate  # optional vanishing certificate

    def to_dict(self, explain=False):
        out = {
            "p": self.p,
            "A": list(self.a_exponents),
            "C": list(self.c_exponents),
            "lower_t": self.lower_t,
            "upper_rank": self.upper_rank,
            "argmax_j": self.argmax_j,
        }
        if self.exact is not None:
            out["exact"] = self.exact
            out["exact_reason"] = self.exact_reason
        else:
            out["interval"] = [self.lower_t, self.upper_rank]
        if self.certificate is not None:
            out["vanishing_certificate"] = {
                "length": len(self.certificate["word"]),
                "generators": [list(w) for w in self.certificate["elements"]],
            }
        if explain:
            out["j_scan"] = [
                {"j": j, "log_V_A": va, "log_V_image": vi, "term": term}
                for j, va, vi, term in self.scan
            ]
        return out


def blueshift_bounds(p: int, a_exponents, c_exponents) -> BlueShiftReport:
    """Closed-form lower bound t and upper bound rank_p(C).

    Exact value cases: C a direct summand (every j_k in {0, i_k}) gives
    s = rank_p(C); cyclic A with nontrivial C gives s = 1; and t = rank_p(C)
    pins s by squeezing.  The quotient-of-torsion-counts form avoids
    enumerating coset representative sets.
    """
    group = AbelianPGroup(p, a_exponents)
    sub = SubgroupSpec(c_exponents)
    sub.validate_in(group)
    i_exps = group.exponents
    j_exps = sub.exponents
    t = 0
    argmax = 0
    scan = []
    for j in range(1, sum(i_exps) + 1):
        log_va = sum(min(j, i) for i in i_exps)
        log_vi = sum(min(j, i - k) for i, k in zip(i_exps, j_exps))
        term = -((log_vi - log_va) // j)  # ceil((log_va - log_vi)/j)
        scan.append((j, log_va, log_vi, term))
        if term > t:
            t = term
            argmax = j
    upper = sub.rank_p
    exact = reason = None
    if all(j in (0, i) for j, i in zip(j_exps, i_exps)):
        exact, reason = upper, "direct-summand"
    elif len(i_exps) == 1 and j_exps[0] >= 1:
        exact, reason = 1, "cyclic"
    elif t == upper:
        exact, reason = t, "bounds-coincide"
    if exact is not None and not (t <= exact <= upper):
        raise InvalidSubgroup("closed-form value escapes the bounds")
    return BlueShiftReport(p, i_exps, j_exps, t, upper, argmax, exact, reason,
                           scan)


def nonabelian_lower_bound(p: int, abelianization_exponents,
                           image_exponents) -> dict:
    """Group-theoretic lower bound for G nonabelian, from abelianization data.

    Evaluates the same t-formula on (G/G', image of N in G/G').  The bound is
    conditional on the existence of a degree-p unstable Adams operation on BG,
    which is open in general; the output says so.
    """
    group = AbelianPGroup(p, abelianization_exponents)
    sub = SubgroupSpec(image_exponents)
    sub.validate_in(group)
    report = blueshift_bounds(p, abelianization_exponents, image_exponents)
    return {
        "p": p,
        "abelianization": list(group.exponents),
        "image_exponents": list(sub.exponents),
        "lower_t": report.lower_t,
        "argmax_j": report.argmax_j,
        "conditional": True,
        "assumption": (
            "existence of a degree-p unstable Adams operation on the "
            "classifying space"
        ),
    }


GRADING_NOTE = (
    "periodicity generator specialized to 1; the even grading of Euler "
    "classes is dropped"
)


def periodicity_report(law: FormalGroupLaw, group: AbelianPGroup,
                       sub: SubgroupSpec, max_cert_len: int | None = None) -> dict:
    """Combined Tate status and blue-shift bounds with consistency notes."""
    result = tate_ring(law, group, sub, max_cert_len=max_cert_len)
    bounds = blueshift_bounds(group.p, group.exponents, sub.exponents)
    if result.status == TateRingResult.ZERO and "certificate" in result.witness:
        bounds.certificate = result.witness["certificate"]
    out = {
        "tate": result.to_dict(),
        "bounds": bounds.to_dict(),
        "grading_note": GRADING_NOTE,
        "caveats": [],
    }
    base_k = law.domain.n
    # F_p coefficients for a height-n law are exactly finite (the periodicity
    # generator is 1); Z/p^K coefficients stand in for p-complete ones and
    # genuinely truncate.
    truncated_base = law.kind != "honda"
    if result.status == TateRingResult.ZERO:
        if bounds.lower_t >= 1:
            out["consistency"] = (
                "zero at the truncation level: consistent with the quotient "
                "chain vanishing below the blue-shift lower bound"
            )
        else:
            out["consistency"] = "zero at the truncation level"
        if truncated_base:
            out["caveats"].append(
                f"base Z/{base_k} truncates the p-complete coefficients: "
                "classes invisible at this level (e.g. height-0 survival) "
                "are not ruled out"
            )
    elif result.status == TateRingResult.NONZERO:
        out["consistency"] = (
            f"nonzero at truncation level {base_k}; INCONCLUSIVE for the "
            "completed ring"
        )
    else:
        out["consistency"] = "certificate search exhausted; INCONCLUSIVE"
    return out


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def build_law(kind: str, p: int, n: int = 1, modulus_power: int = 1,
              cap: int | None = None, exponents=None) -> FormalGroupLaw:
    """Construct a law with a cap sufficient for the target group if given."""
    if kind == "multiplicative":
        height, K = 1, modulus_power
    elif kind == "honda":
        height, K = n, 1
    else:
        raise ValueError(f"unknown law kind {kind!r}")
    if cap is None:
        if exponents:
            cap = required_cap(p, height, K, exponents)
        else:
            cap = p**height + p
    if kind == "multiplicative":
        return build_multiplicative(p, K, cap)
    return build_honda(p, height, cap)
