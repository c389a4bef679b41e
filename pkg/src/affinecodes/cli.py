"""Command line: code inspection, group-structure classification and oracle checks.

Every command prints one JSON report (``--human`` for an indented text view)
with ``schema_version`` 1.  Exit codes: 0 success, 2 bad input, 3 search
budget exhausted, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .code import AffineInvariantCode, dimension, enumerate_affine_invariant, make_code
from .errors import AffineCodesError, BudgetExceeded
from .finite_field import FieldSpec, make_field, trace_matrix
from .formats import (
    chi_f_from_json,
    code_from_json,
    format_element,
    parse_defining_set,
    parse_element,
    parse_matrix,
    read_field_file,
)
from .oracle import DEFAULT_BUDGET, groups_report, verify_code
from .semilinear import paut_order
from .structures import (
    abelian_partner,
    classify_chi_f,
    decompose_chi_f,
    estr_case,
    estr_descriptor,
    make_chi_f,
    nonabelian_exists,
    nonabelian_witness,
    witness_f,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4

LENGTH4_PARITY_NOTE = (
    "parity check: the two nontrivial length-4 codes {0,1} and {0,2} occur exactly when r is even "
    "and never when r is odd; any statement placing them at odd r disagrees with this enumeration"
)


class VerifyMismatch(Exception):
    pass


class UsageError(Exception):
    pass


# -- argument handling ----------------------------------------------------------------


def _int_csv(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _field_from_args(args) -> FieldSpec:
    if getattr(args, "field_file", None):
        return read_field_file(args.field_file)
    if args.p is None or args.m is None:
        raise UsageError("--p and --m are required (or --field-file)")
    modulus = _int_csv(args.modulus) if args.modulus else None
    return make_field(args.p, args.m, modulus)


def _code_from_args(args) -> AffineInvariantCode:
    if getattr(args, "code_file", None):
        C = code_from_json(Path(args.code_file).read_text())
        if args.modulus:
            C = make_code(C.p, C.m, C.r, C.D, _int_csv(args.modulus))
        return C
    if args.D is None:
        raise UsageError("--D is required (or --code-file)")
    if args.r is None:
        raise UsageError("--r is required (or --code-file)")
    spec = _field_from_args(args)
    return AffineInvariantCode(spec, args.r, parse_defining_set(args.D))


def _add_field_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, help="characteristic")
    p.add_argument("--m", type=int, help="extension degree of the coordinate field")
    p.add_argument("--modulus", help="irreducible modulus, ascending coefficients, e.g. 1,1,0,0,1")
    p.add_argument("--field-file", help="file holding 'p=.. m=.. modulus=..'")


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    _add_field_flags(p)
    p.add_argument("--r", type=int, help="alphabet is GF(p^r)")
    p.add_argument("--D", help="defining set, e.g. 0,1,2,4")
    p.add_argument("--code-file", help='JSON code descriptor {"p":..,"m":..,"r":..,"D":[..]}')


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="human", action="store_false", help="JSON output (default)")
    fmt.add_argument("--human", dest="human", action="store_true", help="indented text output")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identical output)")
    p.set_defaults(human=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affinecodes", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    code = groups.add_parser("code", help="affine-invariant codes").add_subparsers(dest="command", required=True)
    info = code.add_parser("info", help="validate a defining set and report a, b, dimension, |PAut|")
    _add_code_flags(info)
    info.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle")
    info.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_output_flags(info)
    lst = code.add_parser("list", help="enumerate affine-invariant codes for p, m, r")
    _add_field_flags(lst)
    lst.add_argument("--r", type=int, required=True)
    lst.add_argument("--params", action="store_true", help="also report a, b and dimension per code")
    _add_output_flags(lst)

    st = groups.add_parser("structures", help="group code structures").add_subparsers(dest="command", required=True)
    chif = st.add_parser("chi-f", help="validate and classify an admissible (chi, f) pair")
    _add_field_flags(chif)
    chif.add_argument("--a", type=int, help="subfield degree (default: a(C) if a code is given, else 1)")
    chif.add_argument("--r", type=int)
    chif.add_argument("--D")
    chif.add_argument("--code-file")
    chif.add_argument("--chi", help="matrix of chi, rows separated by ';'")
    chif.add_argument("--f", help="matrix of f, rows separated by ';'")
    chif.add_argument("--chi-f-file", help='JSON {"a":..,"chi":[[..]],"f":[[..]]}')
    chif.add_argument("--auto", choices=["trace"], help="chi = x -> Tr(c x) onto GF(p^a)")
    chif.add_argument("--c", default="1", help="scalar c for --auto trace, as a digit string")
    chif.add_argument("--kind", choices=["f1", "f2", "abelian"], default="f1", help="preset f for --auto")
    chif.add_argument("--u", type=int, default=1, help="rank parameter for the f1/f2 presets")
    _add_output_flags(chif)
    wit = st.add_parser("witness", help="materialize a non-abelian structure when 2a < m")
    _add_code_flags(wit)
    _add_output_flags(wit)

    orc = groups.add_parser("oracle", help="brute-force cross-checks").add_subparsers(dest="command", required=True)
    ver = orc.add_parser("verify", help="compare closed forms with scans and enumeration")
    _add_code_flags(ver)
    ver.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_output_flags(ver)
    grp = orc.add_parser("groups", help="left and two-sided regular subgroup types")
    _add_code_flags(grp)
    grp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_output_flags(grp)
    return parser


# -- commands ----------------------------------------------------------------------


def _code_summary(C: AffineInvariantCode) -> dict:
    out = {"D": sorted(C.D), "trivial": C.is_trivial, "dim": dimension(C)}
    if C.is_trivial:
        out.update({"a": None, "b": None, "paut_order": None, "paut": "symmetric group"})
    else:
        a, b, _ = C.params
        out.update({"a": a, "b": b, "paut_order": paut_order(C)})
    return out


def cmd_code_info(args, report: dict) -> int:
    C = _code_from_args(args)
    report["inputs"] = {"code": C.descriptor(), "field": C.field.describe()}
    summary = _code_summary(C)
    report["results"] = summary
    if args.verify:
        checks = verify_code(C, args.budget)
        report["results"]["verify"] = checks
        bad = [k for k, v in checks.items() if v is False]
        if not C.is_trivial:
            for key, want in (("enumerated", "paut_order"), ("scan_order", "paut_order"), ("a_from_scan", "a"), ("b_from_scan", "b")):
                if key in checks and checks[key] != summary[want]:
                    bad.append(key)
        if bad:
            raise VerifyMismatch(f"oracle disagrees on: {', '.join(sorted(set(bad)))}")
    return EXIT_OK


def cmd_code_list(args, report: dict) -> int:
    spec = _field_from_args(args)
    sets = enumerate_affine_invariant(spec.p, spec.m, args.r)
    report["inputs"] = {"p": spec.p, "m": spec.m, "r": args.r, "field": spec.describe()}
    rows = []
    for ds in sets:
        row = {"D": sorted(ds.elements), "trivial": ds.trivial}
        if args.params:
            row.update(_code_summary(AffineInvariantCode(spec, args.r, ds.elements)))
        rows.append(row)
    report["results"] = {
        "count": len(sets),
        "nontrivial": sum(not ds.trivial for ds in sets),
        "codes": rows,
    }
    if spec.p == 2 and spec.m == 2:
        report["warnings"].append({"tag": "Length4Parity", "message": LENGTH4_PARITY_NOTE})
    return EXIT_OK


def _chi_f_from_args(args):
    spec = _field_from_args(args) if not args.code_file and args.D is None else None
    code = None
    if spec is None:
        code = _code_from_args(args)
        spec = code.field
    a = args.a
    if a is None:
        a = code.params.a if code is not None and not code.is_trivial else 1
    if args.chi_f_file:
        obj = json.loads(Path(args.chi_f_file).read_text())
        obj.setdefault("a", a)
        return chi_f_from_json(obj, spec), code
    if args.auto == "trace":
        chi = trace_matrix(spec, a, parse_element(args.c, spec))
        if args.f:
            f = parse_matrix(args.f, spec)
        elif args.kind == "abelian":
            f = abelian_partner(spec, chi, a)
        else:
            f = witness_f(spec, chi, a, args.u, args.kind)
        return make_chi_f(spec, chi, f, a), code
    if args.chi and args.f:
        return make_chi_f(spec, parse_matrix(args.chi, spec), parse_matrix(args.f, spec), a), code
    raise UsageError("give --chi and --f, --chi-f-file, or --auto trace")


def _chi_f_results(cf) -> dict:
    cls = classify_chi_f(cf)
    dec = decompose_chi_f(cf)
    spec = cf.spec
    out = {
        "chi_f": cf.to_dict(),
        "chi_linear": cf.chi_is_linear,
        "rank_f": cf.rank,
        "abelian": cls.abelian,
        "center_order": len(cls.center),
        "center": [format_element(z, spec) for z in cls.center] if not cls.abelian else "all",
        "exponent": cls.exponent,
        "fingerprint": cf.group.fingerprint().to_dict(),
        "decomposition": {
            "dims": dict(zip(["Z", "V", "W", "Wp", "U"], dec.dims)),
            "Z": [format_element(x, spec) for x in dec.Z],
            "V": [format_element(x, spec) for x in dec.V],
            "W": [format_element(x, spec) for x in dec.W],
            "Wp": [format_element(x, spec) for x in dec.Wp],
            "U": [format_element(x, spec) for x in dec.U],
            "isomorphism_verified": True,
        },
    }
    if cf.chi_is_linear:
        desc = estr_descriptor(cf)
        out["case"] = estr_case(cf)
        out["descriptor"] = json.loads(desc.to_json())
        out["structure"] = desc.render()
        out["order"] = desc.order
    else:
        out["case"] = None
    return out


def cmd_chi_f(args, report: dict) -> int:
    cf, code = _chi_f_from_args(args)
    report["inputs"] = {"field": cf.spec.describe(), "a": cf.a}
    if code is not None:
        report["inputs"]["code"] = code.descriptor()
    report["results"] = _chi_f_results(cf)
    return EXIT_OK


def cmd_witness(args, report: dict) -> int:
    C = _code_from_args(args)
    report["inputs"] = {"code": C.descriptor(), "field": C.field.describe()}
    a = C.params.a if not C.is_trivial else None
    exists = nonabelian_exists(C)
    results: dict = {"a": a, "m": C.m, "nonabelian_exists": exists}
    if exists:
        w = nonabelian_witness(C)
        results.update(
            {
                "case": w.case,
                "structure": w.descriptor.render(),
                "descriptor": json.loads(w.descriptor.to_json()),
                "order": w.group.order,
                "chi_f": w.chi_f.to_dict(),
                "fingerprint": w.group.fingerprint().to_dict(),
            }
        )
    report["results"] = results
    return EXIT_OK


def cmd_oracle_verify(args, report: dict) -> int:
    C = _code_from_args(args)
    report["inputs"] = {"code": C.descriptor(), "field": C.field.describe()}
    checks = verify_code(C, args.budget)
    report["results"] = checks
    if any(v is False for v in checks.values()):
        raise VerifyMismatch("oracle and closed form disagree")
    return EXIT_OK


def cmd_oracle_groups(args, report: dict) -> int:
    C = _code_from_args(args)
    report["inputs"] = {"code": C.descriptor(), "field": C.field.describe(), "budget": args.budget}
    res = groups_report(C, args.budget)
    report["results"] = res
    if not res["complete"]:
        report["warnings"].append(
            {"tag": BudgetExceeded.tag, "message": "search budget exhausted; lists are partial"}
        )
        return EXIT_BUDGET
    return EXIT_OK


COMMANDS = {
    ("code", "info"): cmd_code_info,
    ("code", "list"): cmd_code_list,
    ("structures", "chi-f"): cmd_chi_f,
    ("structures", "witness"): cmd_witness,
    ("oracle", "verify"): cmd_oracle_verify,
    ("oracle", "groups"): cmd_oracle_groups,
}


# -- output -----------------------------------------------------------------------------


def render_human(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _is_flat_list(item):
                lines.append(f"{pad}-")
                lines.append(render_human(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _is_flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "command": f"{args.group} {args.command}",
        "inputs": {},
        "results": {},
        "warnings": [],
    }
    started = time.perf_counter()
    code = EXIT_OK
    try:
        code = COMMANDS[(args.group, args.command)](args, report)
    except UsageError as exc:
        parser.error(str(exc))
    except VerifyMismatch as exc:
        report["error"] = {"tag": "VerifyMismatch", "message": str(exc)}
        code = EXIT_VERIFY
    except AffineCodesError as exc:
        report["error"] = {"tag": exc.tag, "message": str(exc)}
        code = EXIT_BUDGET if isinstance(exc, BudgetExceeded) else EXIT_INPUT
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        report["error"] = {"tag": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    text = render_human(report) if args.human else json.dumps(report, indent=2, ensure_ascii=False)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text, file=stdout)
    if "error" in report:
        print(f"error [{report['error']['tag']}]: {report['error']['message']}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
