"""``wdwb`` command line.

Exit codes: 0 pass or decided, 1 input error, 2 NotConjugate where
conjugacy was asserted or a failed verification, 3 Unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .cases import acceptability_scan, build_weidner, verify_weidner, weidner_datum
from .conjugacy import elliptic_period, globally_conjugate, locally_conjugate, z_of_phi
from .errors import WorkbenchError
from .groups import GroupDescriptor
from .linalg import eigenvalues
from .monodromy import (
    artin_l_factor,
    build_gl_block_parameter,
    character,
    genericity,
    monodromy_space,
    semisimplify,
    trivial_character,
)
from .parameters import WDParameter, validate_parameter
from .reps import RepDescriptor, trace_in_rep
from .scalars import parse_scalar, session
from .serialization import dumps, parameter_from_json, parameter_to_json, target_from_json
from .twists import one_dimensional_twists, push_forward, twisted_equivalence_suite
from .weil import WeilDatum

EXIT_OK, EXIT_INPUT, EXIT_FAIL, EXIT_UNKNOWN = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _load(path):
    if path is None:
        raise InputError("this subcommand needs -p/--param")
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def _param(path, want_wd=False):
    return parameter_from_json(_load(path), want_wd=want_wd)


def _semisimple(path):
    p = _param(path)
    return p.phi if isinstance(p, WDParameter) else p


def _verdict_exit(v):
    return {"Conjugate": EXIT_OK, "NotConjugate": EXIT_FAIL}.get(v.status, EXIT_UNKNOWN)


def _rep(args, default="standard"):
    return RepDescriptor.parse(args.rep or default)


# ---------------------------------------------------------------------------
# subcommands: each returns (report, exit code)

def cmd_validate(args):
    report = validate_parameter(_param(args.param))
    return report, EXIT_OK if report["valid"] else EXIT_FAIL


def cmd_polar(args):
    p = _semisimple(args.param)
    z, tempered, levi = z_of_phi(p)
    return {
        "z": z.to_json(),
        "tempered_frobenius_image": tempered.frobenius_image.to_json(),
        "levi_dimension": levi,
    }, EXIT_OK


def cmd_conj_local(args):
    v = locally_conjugate(_semisimple(args.param), _semisimple(args.param2))
    return v.to_json(), _verdict_exit(v)


def cmd_conj_global(args):
    v = globally_conjugate(_semisimple(args.param), _semisimple(args.param2), seed=args.seed, budget=args.budget)
    out = v.to_json()
    out.update(seed=args.seed, budget=args.budget)
    return out, _verdict_exit(v)


def cmd_monodromy(args):
    V = monodromy_space(_semisimple(args.param))
    n = int(len(V.basis[0]) ** 0.5) if V.basis else None
    return {"dimension": V.dim, "basis": [M.to_json() for M in V.matrices(n)] if n else []}, EXIT_OK


def cmd_genericity(args):
    g = genericity(_param(args.param, want_wd=True))
    return {"generic": g.generic, "via_l": g.via_l, "via_orbit": g.via_orbit}, EXIT_OK


def cmd_lfactor(args):
    w = _param(args.param, want_wd=True)
    r = _rep(args)
    L = artin_l_factor(w, r)
    out = L.to_json()
    out["rep"] = r.to_json()
    return out, EXIT_OK


def cmd_semisimplify(args):
    w = _param(args.param, want_wd=True)
    phi = semisimplify(w)
    out = parameter_to_json(phi)
    out["frobenius_eigenvalues"] = [str(m) for m in eigenvalues(phi.frobenius_image)]
    return out, EXIT_OK


def _block_char(datum, spec):
    if spec is None:
        return trivial_character(datum)
    inertia = [parse_scalar(str(x)) for x in spec.get("inertia", ["1"] * len(datum.inertia.generators))]
    return character(datum, inertia, parse_scalar(str(spec.get("frobenius", "1"))))


def cmd_build_blocks(args):
    data = _load(args.param)
    datum = WeilDatum.from_json(data.get("datum", {}))
    try:
        blocks = [(_block_char(datum, b.get("chi")), int(b["r"])) for b in data["blocks"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed block list: {exc}") from None
    w = build_gl_block_parameter(blocks)
    out = parameter_to_json(w)
    out["valid"] = validate_parameter(w)["valid"]
    return out, EXIT_OK


def cmd_twist_suite(args):
    p1, p2 = _semisimple(args.param), _semisimple(args.param2)
    if p1.target.family != "GL":
        r = _rep(args)
        p1, p2 = push_forward(p1, r), push_forward(p2, r)
    twists = one_dimensional_twists(p1.datum)
    report = twisted_equivalence_suite(p1, p2, twists, twist_dim_max=args.twist_dim_max)
    undecided = any(r["status"] == "Unknown" for r in report["results"])
    return report, EXIT_UNKNOWN if undecided else EXIT_OK


def cmd_trace(args):
    p = _semisimple(args.param)
    r = _rep(args)
    K = elliptic_period(p)
    rows = []
    for a in p.datum.inertia.elements:
        for k in range(K):
            x = (a, k)
            rows.append({"element": p.datum.label(x), "trace": str(trace_in_rep(p.target, r, p.image(x)))})
    return {"rep": r.to_json(), "window": K, "traces": rows}, EXIT_OK


def cmd_weidner_build(args):
    p1, p2 = build_weidner(_n(args))
    return {"n": args.n, "phi1": parameter_to_json(p1), "phi2": parameter_to_json(p2)}, EXIT_OK


def cmd_weidner_verify(args):
    report = verify_weidner(_n(args), seed=args.seed, budget=args.budget, timing=args.timing)
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_scan(args):
    if args.param:
        data = _load(args.param)
        datum = WeilDatum.from_json(data["datum"]) if "datum" in data else weidner_datum()
        target = target_from_json(data["target"]) if "target" in data else None
    else:
        datum, target = weidner_datum(), None
    if args.target:
        target = GroupDescriptor.parse(args.target)
    if target is None:
        raise InputError("scan needs a target (--target or a 'target' key in -p)")
    budget = args.budget if args.budget is not None else 500
    start = time.perf_counter()
    res = acceptability_scan(datum, target, budget=budget, seed=args.seed)
    out = res.to_json()
    out.update(target=target.to_json(), datum=datum.to_json(), budget=budget)
    out["elapsed"] = round(time.perf_counter() - start, 3) if args.timing else None
    return out, EXIT_OK


def _n(args):
    if args.n is None:
        raise InputError("this subcommand needs --n")
    return args.n


COMMANDS = {
    "validate": cmd_validate,
    "polar": cmd_polar,
    "conj-local": cmd_conj_local,
    "conj-global": cmd_conj_global,
    "monodromy": cmd_monodromy,
    "genericity": cmd_genericity,
    "lfactor": cmd_lfactor,
    "semisimplify": cmd_semisimplify,
    "build-blocks": cmd_build_blocks,
    "twist-suite": cmd_twist_suite,
    "trace": cmd_trace,
    "weidner-build": cmd_weidner_build,
    "weidner-verify": cmd_weidner_verify,
    "scan": cmd_scan,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wdwb", description="Exact workbench for Weil-Deligne parameters")
    parser.add_argument("--version", action="version", version=f"wdwb {__version__}")
    parser.add_argument("subcommand", choices=sorted(COMMANDS))
    parser.add_argument("-p", "--param", help="parameter (or input) JSON file")
    parser.add_argument("-q", "--param2", help="second parameter JSON file")
    parser.add_argument("--n", type=int, help="size parameter for the SO_2n case")
    parser.add_argument("--rep", help="representation, e.g. standard, ext(2), sym(3), adjoint")
    parser.add_argument("--twist-dim-max", type=int, default=None, help="largest twist dimension")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=None)
    parser.add_argument("--cyclotomic-order", type=int, default=None, help="m for Q(zeta_m)")
    parser.add_argument("--denominator-bound", type=int, default=2, help="allowed denominator of q-exponents")
    parser.add_argument("--target", help="target group for scan, e.g. SO6")
    parser.add_argument("--timing", action="store_true", help="record wall-clock time (breaks byte-identity)")
    parser.add_argument("--out", help="write the report here instead of stdout")
    return parser


def _cyclotomic_order(args) -> int:
    if args.cyclotomic_order is not None:
        return args.cyclotomic_order
    for path in (args.param, args.param2):
        if path:
            data = _load(path)
            if isinstance(data, dict) and "cyclotomic_order" in data:
                return int(data["cyclotomic_order"])
    return 4


def run_command(argv) -> tuple[int, str, str | None]:
    """Run one subcommand; returns (exit code, report text, --out path)."""
    out_path = None
    try:
        args = build_parser().parse_args(argv)
        out_path = args.out
        m = _cyclotomic_order(args)
        with session(m, args.denominator_bound):
            if args.budget is None and args.subcommand != "scan":
                args.budget = 200
            report, code = COMMANDS[args.subcommand](args)
    except InputError as exc:
        return EXIT_INPUT, dumps({"error": "input", "message": str(exc)}), None
    except (WorkbenchError, ValueError, ZeroDivisionError) as exc:
        return EXIT_INPUT, dumps({"error": type(exc).__name__, "message": str(exc)}), None
    report = dict(report)
    report.setdefault("command", args.subcommand)
    report.setdefault("version", __version__)
    return code, dumps(report), out_path


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, text, out_path = run_command(argv)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        (sys.stderr if code == EXIT_INPUT else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
