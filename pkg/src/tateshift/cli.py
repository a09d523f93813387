"""Command-line front end: JSON jobs in, JSON reports out.

Exit codes: 0 success, 2 validation error, 3 computation error.  Output is
deterministic (sorted keys, decimal-string coefficients, fixed basis order).
Batch mode runs newline-delimited JSON jobs independently and exits with the
maximum of the individual codes.  TATESHIFT_CAP overrides the default series
truncation degree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ring_core, ring_linalg
from .classifying import (
    AbelianPGroup,
    ClassifyingError,
    SubgroupSpec,
    build_classifying_ring,
)
from .fgl import FGLError, weierstrass_prepare
from .ring_core import RingError
from .series import SeriesError
from .tate_blueshift import (
    GRADING_NOTE,
    blueshift_bounds,
    build_law,
    nonabelian_lower_bound,
    tate_ring,
    tate_ring_exact,
)

COMMANDS = ("fgl", "bgroup", "roots", "tate", "blueshift", "vanish-cert")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTE = 3


class ValidationError(Exception):
    pass


def _env_cap():
    raw = os.environ.get("TATESHIFT_CAP")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(f"TATESHIFT_CAP must be an integer: {raw!r}") from exc


# -- parameter schemas ------------------------------------------------------------

_INT = ("int", lambda v: isinstance(v, int) and not isinstance(v, bool))
_BOOL = ("bool", lambda v: isinstance(v, bool))
_STR = ("str", lambda v: isinstance(v, str))
_INTS = ("list of ints", lambda v: isinstance(v, list)
         and all(isinstance(x, int) and not isinstance(x, bool) for x in v))
_LIST = ("list", lambda v: isinstance(v, list))
_DICT = ("object", lambda v: isinstance(v, dict))

SCHEMAS = {
    "fgl": {
        "kind": (_STR, True),
        "p": (_INT, True),
        "n": (_INT, False),
        "modulus_power": (_INT, False),
        "cap": (_INT, False),
        "m": (_INT, False),
        "j": (_INT, False),
        "explain": (_BOOL, False),
    },
    "bgroup": {
        "p": (_INT, True),
        "exponents": (_INTS, True),
        "fgl": (_STR, True),
        "n": (_INT, False),
        "modulus_power": (_INT, False),
        "cap": (_INT, False),
        "euler_classes": (_BOOL, False),
    },
    "roots": {
        "modulus": (_INT, False),
        "ring": (_DICT, False),
        "f": (_LIST, True),
        "tuple": (_LIST, True),
        "explain": (_BOOL, False),
    },
    "tate": {
        "p": (_INT, True),
        "A": (_INTS, True),
        "C": (_INTS, True),
        "fgl": (_STR, False),
        "n": (_INT, False),
        "modulus_power": (_INT, False),
        "cap": (_INT, False),
        "max_cert_len": (_INT, False),
        "exact": (_BOOL, False),
        "explain": (_BOOL, False),
    },
    "blueshift": {
        "p": (_INT, True),
        "A": (_INTS, True),
        "C": (_INTS, True),
        "nonabelian": (_BOOL, False),
        "explain": (_BOOL, False),
    },
    "vanish-cert": {
        "ring": (_DICT, True),
        "gens": (_LIST, True),
        "max_len": (_INT, True),
    },
}


def validate_params(command: str, params: dict) -> dict:
    if command not in SCHEMAS:
        raise ValidationError(f"unknown command {command!r}")
    schema = SCHEMAS[command]
    unknown = sorted(set(params) - set(schema))
    if unknown:
        raise ValidationError(f"unknown fields for {command}: {unknown}")
    for field, ((type_name, check), required) in schema.items():
        if field not in params:
            if required:
                raise ValidationError(f"{command} requires field {field!r}")
            continue
        if not check(params[field]):
            raise ValidationError(f"field {field!r} must be {type_name}")
    return params


# -- command runners -----------------------------------------------------------------


def run_fgl(params: dict) -> dict:
    kind = params["kind"]
    if kind not in ("multiplicative", "honda"):
        raise ValidationError("kind must be multiplicative or honda")
    p = params["p"]
    n = params.get("n", 1)
    K = params.get("modulus_power", 1)
    cap = params.get("cap", _env_cap())
    j = params.get("j")
    if cap is None and j:
        height = n if kind == "honda" else 1
        cap = p ** (height * j) + p
    law = build_law(kind, p, n=n, modulus_power=K, cap=cap)
    report = {"law": law.describe(), "F": law.F.to_json_dict()}
    prep = weierstrass_prepare(law.p_series())
    report["weierstrass"] = {
        "degree": prep.degree,
        "poly": [str(c) for c in prep.poly],
        "unit": prep.unit.to_json_dict(),
    }
    if "m" in params:
        report["m_series"] = {
            "m": params["m"],
            "series": law.m_series(params["m"]).to_json_dict(),
        }
    if j is not None:
        prep_j = weierstrass_prepare(law.pj_series(j))
        report["pj_series"] = {
            "j": j,
            "series": law.pj_series(j).to_json_dict(),
            "weierstrass": {
                "degree": prep_j.degree,
                "poly": [str(c) for c in prep_j.poly],
            },
        }
    return report


def _law_for_group(params: dict, exponents):
    kind = params.get("fgl", "honda")
    if kind not in ("multiplicative", "honda"):
        raise ValidationError("fgl must be multiplicative or honda")
    p = params["p"]
    n = params.get("n", 1)
    K = params.get("modulus_power", 1)
    cap = params.get("cap", _env_cap())
    if cap is not None:
        return build_law(kind, p, n=n, modulus_power=K, cap=cap)
    return build_law(kind, p, n=n, modulus_power=K, exponents=exponents)


def run_bgroup(params: dict) -> dict:
    group = AbelianPGroup(params["p"], params["exponents"])
    law = _law_for_group(params, params["exponents"])
    cr = build_classifying_ring(law, group)
    report = {
        "law": law.describe(),
        "group": {"p": group.p, "exponents": list(group.exponents)},
        "presentation": ring_core.algebra_to_json(cr.algebra),
        "rank": cr.algebra.rank,
        "grading_note": GRADING_NOTE,
    }
    if params.get("euler_classes"):
        classes = []
        for w in group.elements():
            ec = cr.euler_class(w)
            classes.append({
                "element": list(ec.element),
                "value": ring_core.element_to_json(ec.value),
            })
        report["euler_classes"] = classes
    return report


def run_roots(params: dict) -> dict:
    if ("modulus" in params) == ("ring" in params):
        raise ValidationError("roots needs exactly one of 'modulus' or 'ring'")
    if "modulus" in params:
        alg = ring_core.FiniteAlgebra.scalar_ring(
            ring_core.BaseModulus(params["modulus"])
        )
    else:
        alg = ring_core.algebra_from_json(params["ring"])

    def parse_elem(v):
        if isinstance(v, (int, str)):
            return alg.from_int(int(v))
        return ring_core.element_from_json(alg, v)

    f_coeffs = [parse_elem(c) for c in params["f"]]
    elements = [parse_elem(t) for t in params["tuple"]]
    ok, pair = ring_linalg.is_ntuple(elements, f_coeffs)
    if not ok:
        i, j = pair
        reason = (
            f"element {i} is not a root" if i == j
            else f"difference of elements {i} and {j} is a zero divisor"
        )
        return {"tuple_valid": False, "offending_pair": [i, j], "reason": reason}
    tup = ring_linalg.NTuple(elements, True, "concrete", f_coeffs=f_coeffs)
    result = ring_linalg.roots_to_coeffs(f_coeffs, tup)
    report = {
        "tuple_valid": True,
        "case": result.case,
        "recovered": [ring_core.element_to_json(c) for c in result.recovered],
    }
    if result.case == "Cramer":
        report["witnesses"] = {
            "det_vandermonde": ring_core.element_to_json(
                result.witnesses["det_vandermonde"]
            ),
            "column_dets": [
                ring_core.element_to_json(d)
                for d in result.witnesses["column_dets"]
            ],
        }
        report["index_convention"] = ring_linalg.INDEX_CONVENTION_NOTE
    if result.case == "Vieta":
        fac = ring_linalg.poly_from_roots(
            result.factorization["roots"], result.factorization["leading"]
        )
        report["factorization"] = [ring_core.element_to_json(c) for c in fac]
    if params.get("explain"):
        elim = ring_linalg.gaussian_nzd_solve(tup)
        report["elimination_trace"] = [
            [[str(e.coords[0]) if e.parent.rank == 1 else
              ring_core.element_to_json(e) for e in row] for row in mat]
            for mat in elim.trace
        ]
    return report


def run_tate(params: dict) -> dict:
    p = params["p"]
    group = AbelianPGroup(p, params["A"])
    sub = SubgroupSpec(params["C"])
    sub.validate_in(group)
    if params.get("exact"):
        if params.get("fgl", "multiplicative") != "multiplicative":
            raise ValidationError("exact mode supports the multiplicative law")
        result = tate_ring_exact(
            p, params["A"], params["C"],
            max_cert_len=params.get("max_cert_len", 8),
        )
        report = result.to_dict()
    else:
        law = _law_for_group(params, params["A"])
        result = tate_ring(law, group, sub,
                           max_cert_len=params.get("max_cert_len"))
        report = result.to_dict()
        report["law"] = law.describe()
        if params.get("explain") and "saturation_chain" in result.witness:
            report["witness"]["saturation_chain"] = [
                [[str(x) for x in row] for row in step]
                for step in result.witness["saturation_chain"]
            ]
    return report


def run_blueshift(params: dict) -> dict:
    if params.get("nonabelian"):
        return nonabelian_lower_bound(params["p"], params["A"], params["C"])
    report = blueshift_bounds(params["p"], params["A"], params["C"])
    return report.to_dict(explain=params.get("explain", False))


def run_vanish_cert(params: dict) -> dict:
    ring_data = params["ring"]
    if ring_data.get("type") == "exact":
        ring = ring_core.exact_ring_from_json(ring_data)
        gens = [ring_core.poly_element_from_json(ring, g) for g in params["gens"]]
    else:
        alg = ring_core.algebra_from_json(ring_data)
        gens = [ring_core.element_from_json(alg, g) for g in params["gens"]]
    cert = ring_core.zero_product_certificate(gens, params["max_len"])
    if isinstance(cert, ring_core.CertificateNotFound):
        return {"found": False, "max_len": cert.max_len}
    product = gens[cert[0]]
    for idx in cert[1:]:
        product = product * gens[idx]
    return {
        "found": True,
        "certificate": cert,
        "length": len(cert),
        "product_is_zero": product.is_zero(),
    }


RUNNERS = {
    "fgl": run_fgl,
    "bgroup": run_bgroup,
    "roots": run_roots,
    "tate": run_tate,
    "blueshift": run_blueshift,
    "vanish-cert": run_vanish_cert,
}

_DOMAIN_ERRORS = (RingError, SeriesError, FGLError, ClassifyingError,
                  ring_linalg.LinalgError)


def run_job(command: str, params: dict):
    """(exit_code, report) with every error mapped to a stable code."""
    try:
        params = validate_params(command, dict(params))
    except ValidationError as exc:
        return EXIT_VALIDATION, {"error": {"code": "validation", "message": str(exc)}}
    try:
        report = RUNNERS[command](params)
    except ValidationError as exc:
        return EXIT_VALIDATION, {"error": {"code": "validation", "message": str(exc)}}
    except _DOMAIN_ERRORS as exc:
        return EXIT_COMPUTE, {
            "error": {
                "code": "computation",
                "module": exc.module,
                "name": exc.name,
                "message": str(exc),
            }
        }
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        return EXIT_VALIDATION, {
            "error": {"code": "validation", "message": f"{exc}"}
        }
    return EXIT_OK, report


def run_batch(lines) -> tuple[int, dict]:
    """Independent newline-delimited jobs; reports in input order."""
    jobs = []
    worst = EXIT_OK
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        entry = {"line": lineno}
        try:
            spec = json.loads(line)
            if not isinstance(spec, dict):
                raise ValidationError("job spec must be a JSON object")
            extra = sorted(set(spec) - {"command", "params", "out"})
            if extra:
                raise ValidationError(f"unknown job fields: {extra}")
            command = spec.get("command")
            if command not in COMMANDS:
                raise ValidationError(f"unknown command {command!r}")
            code, report = run_job(command, spec.get("params", {}))
            entry.update({"command": command, "exit_code": code, "report": report})
            out_path = spec.get("out")
            if out_path and code == EXIT_OK:
                with open(out_path, "w") as fh:
                    fh.write(dumps(report))
                    fh.write("\n")
        except (json.JSONDecodeError, ValidationError) as exc:
            code = EXIT_VALIDATION
            entry.update({
                "exit_code": code,
                "report": {"error": {"code": "validation", "message": str(exc)}},
            })
        worst = max(worst, code)
        jobs.append(entry)
    return worst, {"jobs": jobs}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ": "))


# -- argument parsing ------------------------------------------------------------------


def _add_json_source(sub):
    sub.add_argument("job", nargs="?", help="inline JSON parameters")
    sub.add_argument("--input", help="file with JSON parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tateshift",
        description="exact formal-group-law arithmetic, Tate vanishing "
                    "certificates and blue-shift bounds",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_fgl = subs.add_parser("fgl", help="build a law; emit series and Weierstrass data")
    p_fgl.add_argument("--kind", required=True)
    p_fgl.add_argument("--p", type=int, required=True)
    p_fgl.add_argument("--n", type=int)
    p_fgl.add_argument("--modulus-power", type=int, dest="modulus_power")
    p_fgl.add_argument("--cap", type=int)
    p_fgl.add_argument("--m", type=int)
    p_fgl.add_argument("--j", type=int)
    p_fgl.add_argument("--explain", action="store_true")

    p_bg = subs.add_parser("bgroup", help="classifying ring of an abelian p-group")
    p_bg.add_argument("--p", type=int, required=True)
    p_bg.add_argument("--exponents", required=True,
                      help="comma separated, e.g. 2,1")
    p_bg.add_argument("--fgl", required=True)
    p_bg.add_argument("--n", type=int)
    p_bg.add_argument("--modulus-power", type=int, dest="modulus_power")
    p_bg.add_argument("--cap", type=int)
    p_bg.add_argument("--euler-classes", action="store_true",
                      dest="euler_classes")

    p_roots = subs.add_parser("roots", help="root-coefficient relations for a tuple")
    _add_json_source(p_roots)
    p_roots.add_argument("--explain", action="store_true")

    p_tate = subs.add_parser("tate", help="generalized Tate ring computation")
    _add_json_source(p_tate)
    p_tate.add_argument("--fgl")
    p_tate.add_argument("--n", type=int)
    p_tate.add_argument("--modulus-power", type=int, dest="modulus_power")
    p_tate.add_argument("--cap", type=int)
    p_tate.add_argument("--max-cert-len", type=int, dest="max_cert_len")
    p_tate.add_argument("--exact", action="store_true")
    p_tate.add_argument("--explain", action="store_true")

    p_blue = subs.add_parser("blueshift", help="blue-shift number bounds")
    _add_json_source(p_blue)
    p_blue.add_argument("--p", type=int)
    p_blue.add_argument("--A", dest="A", help="comma separated exponents")
    p_blue.add_argument("--C", dest="C", help="comma separated exponents")
    p_blue.add_argument("--nonabelian", action="store_true")
    p_blue.add_argument("--explain", action="store_true")

    p_cert = subs.add_parser("vanish-cert", help="zero-product certificate search")
    _add_json_source(p_cert)

    p_batch = subs.add_parser("batch", help="run newline-delimited JSON jobs")
    p_batch.add_argument("file")

    return parser


def _json_params(args) -> dict:
    if args.job and args.input:
        raise ValidationError("give inline JSON or --input, not both")
    raw = None
    if args.job:
        raw = args.job
    elif args.input:
        with open(args.input) as fh:
            raw = fh.read()
    if raw is None:
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON parameters: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError("JSON parameters must be an object")
    return data


def _csv_ints(raw: str):
    try:
        return [int(x) for x in raw.split(",") if x != ""]
    except ValueError as exc:
        raise ValidationError(f"expected comma separated integers: {raw!r}") from exc


def params_from_args(args) -> dict:
    command = args.command
    if command == "fgl":
        params = {"kind": args.kind, "p": args.p}
        for field in ("n", "modulus_power", "cap", "m", "j"):
            value = getattr(args, field)
            if value is not None:
                params[field] = value
        if args.explain:
            params["explain"] = True
        return params
    if command == "bgroup":
        params = {
            "p": args.p,
            "exponents": _csv_ints(args.exponents),
            "fgl": args.fgl,
        }
        for field in ("n", "modulus_power", "cap"):
            value = getattr(args, field)
            if value is not None:
                params[field] = value
        if args.euler_classes:
            params["euler_classes"] = True
        return params
    if command in ("roots", "vanish-cert"):
        params = _json_params(args)
        if command == "roots" and getattr(args, "explain", False):
            params["explain"] = True
        return params
    if command == "tate":
        params = _json_params(args)
        for field in ("fgl", "n", "modulus_power", "cap", "max_cert_len"):
            value = getattr(args, field)
            if value is not None:
                params[field] = value
        if args.exact:
            params["exact"] = True
        if args.explain:
            params["explain"] = True
        return params
    if command == "blueshift":
        params = _json_params(args)
        if args.p is not None:
            params["p"] = args.p
        if args.A is not None:
            params["A"] = _csv_ints(args.A)
        if args.C is not None:
            params["C"] = _csv_ints(args.C)
        if args.nonabelian:
            params["nonabelian"] = True
        if args.explain:
            params["explain"] = True
        return params
    raise ValidationError(f"unknown command {command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "batch":
        try:
            with open(args.file) as fh:
                lines = fh.readlines()
        except OSError as exc:
            print(dumps({"error": {"code": "validation", "message": str(exc)}}))
            return EXIT_VALIDATION
        code, report = run_batch(lines)
        print(dumps(report))
        return code
    try:
        params = params_from_args(args)
    except ValidationError as exc:
        print(dumps({"error": {"code": "validation", "message": str(exc)}}))
        return EXIT_VALIDATION
    code, report = run_job(args.command, params)
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
