"""``coarse-lab`` command-line entry point.

Exit codes: 0 all checks PASS, 1 at least one FAIL (the report is still
written), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .action import (
    ThetaAction,
    check_dual_prehom,
    check_freeness,
    check_monoid_structure,
    check_phi,
    coloring_is_valid,
    girth_threshold,
    three_coloring,
)
from .cover import cover_at_infinity
from .errors import CoarseLabError
from .generators import FamilyKind, FamilySpec, WangSpace, wang_from_layout, wang_space
from .graphs import SpaceOfGraphs, dumps_space, graphs_from_dict, load_space
from .orientation import load_labelling, orient_labelling, validate_labelling
from .spectral import (
    GhostVerdict,
    NORMALIZATION,
    certify_expander,
    classify_ghost,
    gaps,
    ghost_projection,
    rectangle_witness,
    wang_projection,
)
from .words import words_up_to

PASS, FAIL, EXPECTED_FAIL = "PASS", "FAIL", "EXPECTED_FAIL"


class UsageError(CoarseLabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def parse_int_list(text: str) -> list:
    """``"5..14"`` (inclusive range) or ``"3,5,7"`` / ``"3:5:7"``."""
    text = text.strip()
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.replace(":", ",").split(",") if x]


def parse_params(text: str) -> dict:
    """``k=v,k=v`` where list values use ``..`` or ``:`` separators."""
    out = {}
    for item in filter(None, (text or "").split(",")):
        if "=" not in item:
            raise UsageError(f"--params: expected key=value, got {item!r}")
        key, val = item.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _digest_file(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _digest_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class Run:
    def __init__(self, subcommand, parameters):
        self.subcommand = subcommand
        self.parameters = parameters
        self.inputs = {}
        self.checks = []
        self.data = {}
        self.started = time.perf_counter()

    def check(self, name, verdict, **detail):
        if verdict == FAIL and not detail.get("witnesses") and not detail.get("witness"):
            detail["witness"] = detail.get("reason", "see details")
        self.checks.append({"name": name, "verdict": verdict, **detail})

    def exit_code(self) -> int:
        return 1 if any(c["verdict"] == FAIL for c in self.checks) else 0

    def report(self, timestamps=True) -> dict:
        rep = {
            "v": 1,
            "tool": "coarse-lab",
            "version": __version__,
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "inputs": self.inputs,
            "checks": self.checks,
            "data": self.data,
        }
        if timestamps:
            rep["wall_time"] = round(time.perf_counter() - self.started, 3)
        return rep


# ---------------------------------------------------------------- check groups


def _ghost_checks(run, X: SpaceOfGraphs, eps: float, Y: WangSpace | None = None):
    p = ghost_projection(X)
    rep = classify_ghost(p, eps)
    expected = tuple(i for i, n in enumerate(X.sizes) if n * eps <= 1 + 1e-12)
    ok = rep.verdict is GhostVerdict.GHOST and rep.offending_blocks == expected
    run.check("ghost_p", PASS if ok else FAIL, report=rep.to_dict())
    if Y is None:
        return
    q = wang_projection(Y)
    eps_q = min(eps, 1.0 / Y.base.sizes[0])
    rq = classify_ghost(q, eps_q)
    rects = []
    for i in range(1, len(Y.base) + 1):
        for j in range(1, Y.columns + 1):
            w = rectangle_witness(Y, i, j, eps_q)
            if w is None:
                rects.append([i, j])
    ok = rq.verdict is GhostVerdict.NOT_GHOST and not rects
    col = rq.witness["blocks"]
    ok = ok and all(abs(q.blocks[c].min() - rq.witness["value"]) < 1e-12 for c in col)
    run.check("ghost_q", PASS if ok else FAIL, report=rq.to_dict(), rectangles_without_witness=rects)


def _spectral_checks(run, X, cmin, expect_fail=False):
    gs = gaps(X)
    run.check("laplacian_kernel_1d", PASS, gaps=[round(g, 12) for g in gs], normalization=NORMALIZATION)
    cert = certify_expander(X, cmin)
    verdict = cert.verdict.value
    if verdict == FAIL and expect_fail:
        verdict = EXPECTED_FAIL
    run.check("expander", verdict, certificate=cert.to_dict(), witness=cert.witness)


def _action_checks(run, action, maxlen, free_len, phi_len, horizon, samples, seed):
    r = check_dual_prehom(action, maxlen)
    run.check(r.name, r.verdict, checked=r.checked, witnesses=r.witnesses[:10])
    r = check_freeness(action, free_len)
    run.check(r.name, r.verdict, checked=r.checked, witnesses=r.witnesses[:10])
    bad, done = [], 0
    for w in words_up_to(action.k, free_len):
        if not len(w):
            continue
        start = girth_threshold(action, len(w))
        if start >= len(action.space):
            continue
        col = three_coloring(action, w, start)
        done += 1
        if not coloring_is_valid(action, w, col):
            bad.append(str(w))
    run.check("three_coloring", PASS if not bad else FAIL, checked=done, witnesses=bad[:10])
    st = check_monoid_structure(action, maxlen, horizon, samples, seed)
    for name, c in st.clauses.items():
        run.check(f"structure_{name}", c.verdict, checked=c.checked, witnesses=c.witnesses[:10], tail=st.tail)
    r = check_phi(action, phi_len, horizon, samples, seed)
    run.check(r.name, r.verdict, **{k: v for k, v in r.to_dict().items() if k not in ("name", "verdict")})


def _cover_check(run, action, R, i0):
    rep = cover_at_infinity(action, R, i0)
    d = rep.to_dict()
    run.check("cover_at_infinity", d.pop("verdict"), **d)


def _orient_check(run, labelling):
    v = validate_labelling(labelling)
    run.check("labelling", v.verdict, witnesses=v.violations[:10], k=labelling.k)


# ---------------------------------------------------------------- subcommands


def _family_spec(args) -> FamilySpec:
    kind = FamilyKind(args.family)
    p = dict(getattr(args, "param_dict", {}) or {})
    for key in ("lengths", "primes", "sizes"):
        if getattr(args, key, None):
            p[key] = args.__dict__[key]
    for key in ("degree", "girth_min", "columns", "base"):
        if getattr(args, key, None) is not None:
            p[key] = getattr(args, key)
    p.setdefault("seed", args.seed)
    conv = {}
    for key, val in p.items():
        if key in ("lengths", "primes", "sizes"):
            conv[key] = parse_int_list(val) if isinstance(val, str) else list(val)
        elif key == "base":
            conv[key] = val
        else:
            conv[key] = int(val)
    if kind is FamilyKind.WANG:
        conv.setdefault("base", "sl2")
        conv.setdefault("columns", 2)
    needed = {"cycles": ["lengths"], "sl2": ["primes"], "random": ["degree", "sizes"]}
    base = conv.get("base") if kind is FamilyKind.WANG else kind.value
    for key in needed.get(base, []):
        if key not in conv:
            raise UsageError(f"family {base} needs parameter {key!r}")
    return FamilySpec(kind, conv)


def cmd_gen(args, run):
    spec = _family_spec(args)
    obj = spec.build()
    if isinstance(obj, WangSpace):
        text = dumps_space(obj.space, obj.layout)
    else:
        text = dumps_space(obj)
    with open(args.out, "w") as fh:
        fh.write(text + "\n")
    run.data["components"] = len(obj.space if isinstance(obj, WangSpace) else obj)
    run.data["digest"] = _digest_text(text)


def _load(run, path):
    run.inputs[path] = _digest_file(path)
    return load_space(path)


def _load_wang(run, path):
    run.inputs[path] = _digest_file(path)
    with open(path) as fh:
        doc = json.load(fh)
    if "layout" not in doc:
        return None
    return wang_from_layout(graphs_from_dict(doc), doc["layout"])


def cmd_spectrum(args, run):
    X = _load(run, args.inp)
    gs = gaps(X)
    run.data["normalization"] = NORMALIZATION
    run.data["gaps"] = [round(g, 12) for g in gs]
    run.check("laplacian_kernel_1d", PASS, components=len(gs))


def cmd_expander(args, run):
    X = _load(run, args.inp)
    cert = certify_expander(X, args.cmin)
    run.check("expander", cert.verdict.value, certificate=cert.to_dict(), witness=cert.witness)


def cmd_ghost(args, run):
    Y = _load_wang(run, args.inp)
    if Y is not None:
        _ghost_checks(run, Y.base, args.eps, Y)
    else:
        _ghost_checks(run, load_space(args.inp), args.eps)


def cmd_orient(args, run):
    X = _load(run, args.inp)
    L = orient_labelling(X, args.k)
    with open(args.out, "w") as fh:
        fh.write(L.dumps() + "\n")
    _orient_check(run, L)


def _load_action(run, args):
    X = _load(run, args.graphs)
    run.inputs[args.labelling] = _digest_file(args.labelling)
    labelling = load_labelling(X, args.labelling)
    _orient_check(run, labelling)
    return ThetaAction(labelling)


def cmd_action(args, run):
    action = _load_action(run, args)
    _action_checks(run, action, args.maxlen, args.free_len, args.phi_len, args.horizon, args.samples, args.seed)


def cmd_cover(args, run):
    action = _load_action(run, args)
    _cover_check(run, action, args.R, args.i0)


def cmd_wang(args, run):
    X = _load(run, args.inp)
    Y = wang_space(X, args.columns)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps_space(Y.space, Y.layout) + "\n")
    run.data["components"] = len(Y.space)
    _ghost_checks(run, X, args.eps, Y)


def cmd_suite(args, run):
    spec = _family_spec(args)
    obj = spec.build()
    Y = obj if isinstance(obj, WangSpace) else None
    X = Y.base if Y is not None else obj
    text = dumps_space(Y.space, Y.layout) if Y is not None else dumps_space(X)
    run.inputs["generated"] = _digest_text(text)
    run.data["sizes"] = list(X.sizes)
    labelling = orient_labelling(X)
    _orient_check(run, labelling)
    action = ThetaAction(labelling)
    _action_checks(run, action, args.maxlen, args.free_len, args.phi_len, args.horizon, args.samples, args.seed)
    _cover_check(run, action, args.R, args.i0)
    base_kind = spec.parameters.get("base") if Y is not None else spec.kind.value
    expect = args.expect_nonexpander or base_kind == FamilyKind.CYCLES.value
    _spectral_checks(run, X, args.cmin, expect)
    _ghost_checks(run, X, args.eps, Y)


def _add_family_args(p):
    p.add_argument("--family", required=True, choices=[k.value for k in FamilyKind])
    p.add_argument("--params", dest="param_dict", type=parse_params, default={})
    p.add_argument("--lengths")
    p.add_argument("--primes")
    p.add_argument("--sizes")
    p.add_argument("--degree", type=int)
    p.add_argument("--girth-min", dest="girth_min", type=int)
    p.add_argument("--columns", type=int)
    p.add_argument("--base", choices=["cycles", "sl2", "random"])
    p.add_argument("--seed", type=int, default=0)


def _add_action_args(p):
    p.add_argument("--maxlen", type=int, default=3)
    p.add_argument("--free-len", dest="free_len", type=int, default=6)
    p.add_argument("--phi-len", dest="phi_len", type=int, default=4)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--samples", type=int, default=60)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coarse-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        p.add_argument("--json", dest="json_out")
        p.add_argument("--no-timestamp", action="store_true")
        return p

    p = add("gen", cmd_gen, "generate a graph family")
    _add_family_args(p)
    p.add_argument("--out", required=True)

    for name, fn, helptext in (("spectrum", cmd_spectrum, "Laplacian spectral gaps"),
                               ("expander", cmd_expander, "certify an expander family"),
                               ("ghost", cmd_ghost, "classify ghost projections")):
        p = add(name, fn, helptext)
        p.add_argument("--in", dest="inp", required=True)
        p.add_argument("--eps", type=float, default=0.25)
        p.add_argument("--cmin", type=float, default=0.05)

    p = add("orient", cmd_orient, "almost-k-orientation of a graph sequence")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=None)

    p = add("action", cmd_action, "checks on the induced partial action")
    p.add_argument("--graphs", required=True)
    p.add_argument("--labelling", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_action_args(p)

    p = add("cover", cmd_cover, "cover Delta_R by theta-diagonals")
    p.add_argument("--graphs", required=True)
    p.add_argument("--labelling", required=True)
    p.add_argument("-R", dest="R", type=int, default=3)
    p.add_argument("--i0", type=int, default=1)

    p = add("wang", cmd_wang, "build the Wang space and classify p and q")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--columns", type=int, default=3)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--out")

    p = add("suite", cmd_suite, "full pipeline on one family")
    _add_family_args(p)
    _add_action_args(p)
    p.add_argument("-R", dest="R", type=int, default=3)
    p.add_argument("--i0", type=int, default=1)
    p.add_argument("--cmin", type=float, default=0.05)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--expect-nonexpander", action="store_true")
    return parser


def _params(args) -> dict:
    skip = {"fn", "json_out", "no_timestamp", "cmd"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k not in skip and v is not None:
            out[k] = v
    return out


def run(argv=None) -> tuple:
    """Run a subcommand; returns ``(exit_code, report_or_None)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), None
    r = Run(args.cmd, _params(args))
    try:
        args.fn(args, r)
    except (CoarseLabError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    report = r.report(timestamps=not args.no_timestamp)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report, fh, indent=1)
            fh.write("\n")
    for c in r.checks:
        print(f"{c['verdict']:<14} {c['name']}")
    return r.exit_code(), report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
