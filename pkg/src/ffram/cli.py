"""Command-line entry point.

Every command prints one JSON report to stdout:

    {"command": [...], "inputs_digest": "...", "outputs": {...},
     "notes": [...], "wall_time": seconds}

Exit codes: 0 success, 1 a verification came out negative, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from fractions import Fraction

from . import acceptance, basechange, grassmann, mgs, polytope, repcomb, satake, weil
from .rootdata import RootDataError, build_root_system, datum_from_json, datum_to_json, weyl_orbit

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- helpers


def _vec(text: str | None, what: str = "vector") -> tuple[int, ...]:
    if text is None:
        raise UsageError(f"missing {what}")
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"malformed {what}: {text!r}") from None


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "is_Number") or type(x).__module__.startswith("sympy"):
        return str(x)
    return x


def _load_json(path: str | None, integer_lines: bool = False):
    """Parse the --json input; with ``integer_lines`` a bare column of integers is a sequence."""
    if path is None:
        return None
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        if integer_lines:
            lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
            if lines and all(re.fullmatch(r"[+-]?\d+", ln) for ln in lines):
                return {"sequence": [int(ln) for ln in lines]}
        raise UsageError(f"malformed JSON in {path} at line {e.lineno} column {e.colno}: {e.msg}") from None


def _unwrap(obj):
    """Accept either a bare payload or a full report (use its outputs)."""
    if isinstance(obj, dict) and "outputs" in obj and "command" in obj:
        return obj["outputs"]
    return obj


def _datum(args, obj=None):
    if obj is not None:
        if not isinstance(obj, dict):
            raise UsageError("expected a JSON object")
        if "datum" in obj and isinstance(obj["datum"], dict):
            obj = obj["datum"]
        if "family" in obj or "cartan_matrix" in obj:
            return datum_from_json(obj)
        if "type" in obj:
            return build_root_system(obj["type"])
    if not args.type:
        raise UsageError("--type is required")
    return build_root_system(args.type)


def _field(obj, key):
    try:
        return obj[key]
    except (KeyError, TypeError):
        raise UsageError(f"JSON input is missing field {key!r}") from None


def _parameter_json(t: satake.SatakeParameter) -> dict:
    out = t.to_json()
    if t.principal:
        out["principal"] = {"q": t.principal[0], "v_exponents": list(t.principal[1])}
    return out


def _parameter(args, obj) -> satake.SatakeParameter:
    if obj is not None:
        obj = _unwrap(obj)
        if isinstance(obj, dict) and "parameter" in obj:
            obj = obj["parameter"]
        datum = build_root_system(_field(obj, "type"))
        if obj.get("principal"):
            return satake.principal_parameter(datum, obj["principal"]["q"])
        return satake.parameter_from_json(datum, obj)
    datum = _datum(args)
    if args.values:
        vals = []
        for item in args.values.split(";"):
            try:
                vals.append(complex(item.replace(" ", "")))
            except ValueError:
                raise UsageError(f"malformed value {item!r}") from None
        return satake.SatakeParameter(datum, tuple(vals))
    if args.q is None:
        raise UsageError("give --values, --q (principal parameter) or --json")
    return satake.principal_parameter(datum, args.q)


# ---------------------------------------------------------------- commands


def cmd_root_build(args, obj):
    return datum_to_json(_datum(args, _unwrap(obj))), True


def cmd_root_orbit(args, obj):
    datum = _datum(args)
    w = _vec(args.weight, "--weight")
    return {"type": datum.name, "weight": list(w), "orbit": sorted(list(x) for x in weyl_orbit(datum, w))}, True


def cmd_rep_dim(args, obj):
    datum = _datum(args)
    lam = _vec(args.weight, "--weight")
    return {"type": datum.name, "weight": list(lam), "dim": repcomb.weyl_dim(datum, lam)}, True


def cmd_rep_mults(args, obj):
    datum = _datum(args)
    return repcomb.mults_to_json(repcomb.weight_multiplicities(datum, _vec(args.weight, "--weight"))), True


def cmd_rep_tensor(args, obj):
    datum = _datum(args)
    a, b = _vec(args.weight, "--weight"), _vec(args.weight2, "--weight2")
    dec = repcomb.tensor_decompose(datum, a, b)
    return {"type": datum.name, "left": list(a), "right": list(b),
            "summands": [{"weight": list(w), "mult": m} for w, m in sorted(dec.items())]}, True


def cmd_rep_minuscule(args, obj):
    datum = _datum(args)
    return {"type": datum.name, "minuscule": [list(w) for w in repcomb.minuscule_representations(datum)]}, True


def cmd_rep_faithful(args, obj):
    datum = _datum(args)
    if args.p is None:
        raise UsageError("--p is required")
    r = repcomb.faithful_low_pairing_rep(datum, args.p)
    return {"type": datum.name, "p": args.p, "ok": r.ok, "reason": r.reason,
            "summands": [list(s) for s in r.rep.summands] if r.rep else None,
            "max_pairing": r.max_pairing, "covered_classes": r.covered_classes,
            "center_order": r.center_order, "spans": r.spans}, r.ok


def _rep_sum(args, datum):
    if not args.weight:
        raise UsageError("--weight is required (use ';' to separate summands)")
    return repcomb.RepSum(datum, tuple(_vec(s, "--weight") for s in args.weight.split(";")))


def cmd_rep_brace_w(args, obj):
    datum = _datum(args)
    rep = _rep_sum(args, datum)
    lam = _vec(args.coweight, "--coweight")
    return {"type": datum.name, "summands": [list(s) for s in rep.summands], "coweight": list(lam),
            "brace_W": _jsonable(repcomb.brace_W(rep, lam))}, True


def cmd_polytope_faces(args, obj):
    datum = _datum(args)
    rep = _rep_sum(args, datum)
    faces = polytope.weight_polytope_faces(rep, up_to_weyl=args.up_to_weyl)
    return {"type": datum.name, "summands": [list(s) for s in rep.summands], "up_to_weyl": args.up_to_weyl,
            "faces": [polytope.face_to_json(rep, f) for f in faces]}, True


def cmd_polytope_parabolic(args, obj):
    datum = _datum(args)
    rep = _rep_sum(args, datum)
    faces = polytope.weight_polytope_faces(rep)
    if not 0 <= args.face < len(faces):
        raise UsageError(f"--face must be in 0..{len(faces) - 1}")
    f = faces[args.face]
    pd = polytope.face_parabolic(rep, f)
    return {"face": polytope.face_to_json(rep, f), "levi_type": pd.levi_type(),
            "chamber": [list(r) for r in pd.chamber],
            "cocharacter": list(polytope.cocharacter_for_parabolic(pd)),
            "levi_action": polytope.check_levi_action(rep, f)}, True


def cmd_gr_qkostant(args, obj):
    datum = _datum(args)
    nu = _vec(args.weight, "--weight (simple-root coordinates)")
    return {"type": datum.name, "nu": list(nu), "coefficients": grassmann.q_kostant(datum, nu).to_json()}, True


def cmd_gr_qanalog(args, obj):
    datum = _datum(args)
    lam = _vec(args.weight, "--weight")
    rows = grassmann.q_analog_table(datum, lam)
    if args.mu:
        mu = list(_vec(args.mu, "--mu"))
        rows = [r for r in rows if r["mu"] == mu] or [{"lambda": list(lam), "mu": mu, "coefficients": []}]
    return {"type": datum.name, "table": rows}, True


def cmd_gr_hl(args, obj):
    datum = _datum(args)
    mu = _vec(args.weight, "--weight")
    hl = grassmann.hall_littlewood(datum, mu)
    return {"type": datum.name, "mu": list(mu), "variable": "t",
            "terms": [{"weight": list(w), "coefficients": c.to_json()} for w, c in sorted(hl.items())]}, True


def cmd_gr_kato(args, obj):
    datum = _datum(args)
    lam = _vec(args.weight, "--weight")
    conv, results = grassmann.calibrate()
    r = grassmann.verify_kato(datum, lam, conv)
    return {"type": datum.name, "lambda": list(lam), "holds": r.holds, "convention": conv.label(),
            "calibration": results}, r.holds


def cmd_gr_dlambda(args, obj):
    datum = _datum(args)
    lam = _vec(args.coweight, "--coweight")
    return {"type": datum.name, "coweight": list(lam), "d_lambda": grassmann.d_lambda(datum, lam)}, True


def cmd_satake_principal(args, obj):
    datum = _datum(args)
    if args.q is None:
        raise UsageError("--q is required")
    return {"parameter": _parameter_json(satake.principal_parameter(datum, args.q))}, True


def cmd_satake_trace(args, obj):
    t = _parameter(args, obj)
    lam = _vec(args.weight, "--weight")
    out = {"type": t.datum.name, "lambda": list(lam), "trace": _jsonable(satake.tr_lambda(t, lam)),
           "dim": repcomb.weyl_dim(t.datum, lam)}
    if t.principal:
        out["polynomial"] = satake.trace_polynomial(t, lam).to_json()
        out["leading_power"] = _jsonable(satake.leading_term(t, lam)[0])
        out["expected_leading_power"] = _jsonable(satake.expected_leading_power(t.datum, lam))
    else:
        v = complex(out["trace"][0], out["trace"][1]) if isinstance(out["trace"], list) else out["trace"]
        out["trace_abs"] = abs(v)
    return out, True


def cmd_satake_tempered(args, obj):
    t = _parameter(args, obj)
    ok = satake.is_tempered(t, args.tol)
    return {"parameter": _parameter_json(t), "tempered": ok, "tol": args.tol}, ok


def cmd_satake_power(args, obj):
    t = _parameter(args, obj)
    return {"n": args.n, "parameter": _parameter_json(satake.base_change(t, args.n))}, True


def cmd_satake_radius(args, obj):
    if obj is not None:
        obj = _unwrap(obj)
        raw = _field(obj, "entries")
        entries = tuple(complex(*e) if isinstance(e, list) else Fraction(str(e)) for e in raw)
        seq = satake.TraceSequence(entries, int(_field(obj, "dim_V")))
    elif args.eigenvalues:
        eig = []
        for item in args.eigenvalues.split(";"):
            try:
                eig.append(Fraction(item) if "j" not in item else complex(item))
            except ValueError:
                raise UsageError(f"malformed eigenvalue {item!r}") from None
        seq = satake.TraceSequence(satake.power_sums(eig, 2 * len(eig)), len(eig))
    else:
        raise UsageError("give --json with {entries, dim_V} or --eigenvalues")
    r = satake.spectral_radius_from_traces(seq, args.tol)
    return {"radius": _jsonable(r.radius), "exact": r.exact, "residual": r.residual,
            "entries": _jsonable(list(seq.entries)), "dim_V": seq.dim_V}, True


def cmd_satake_witness(args, obj):
    t = _parameter(args, obj)
    lam0 = _vec(args.weight, "--weight")
    n_max = args.nmax or 64
    r = satake.temperedness_witness(t, lam0, C=args.C, n_max=n_max, k_max=args.kmax, tol=args.tol)
    return {"verdict": r.verdict, "n": r.n, "k": r.k, "trace_abs": r.trace_abs, "bound": r.bound,
            "searched": r.searched, "box": {"n_max": n_max, "k_max": args.kmax, "C": args.C}}, True


def cmd_weil_verify(args, obj):
    poly = _vec(args.poly, "--poly")
    if args.q is None or args.w is None:
        raise UsageError("--q and --w are required")
    r = weil.verify_weil(weil.WeilNumberClaim(poly, args.q, args.w), args.tol)
    return {"poly": list(poly), "q": args.q, "weight": args.w, "ok": r.ok,
            "roots": [{"root": [c.root.real, c.root.imag], "modulus": c.modulus, "target": c.target, "ok": c.ok}
                      for c in r.roots]}, r.ok


def cmd_weil_recover(args, obj):
    if obj is not None:
        obj = _unwrap(obj)
        seq = [int(x) for x in _field(obj, "sequence")]
        start = int(obj.get("start", 1))
    else:
        seq, start = list(_vec(args.seq, "--seq")), args.start
    r = weil.recover_power_sum(seq, start=start)
    return {"sequence": seq, "start": start, "recovered": r.to_json()}, r.status == "ok"


def cmd_weil_budget(args, obj):
    return weil.budget_report(args.dimG, args.g, args.degD, args.dimH, args.dW1, args.dW2), True


PRESETS = ("epipelagic-sl2", "nonsplit-cartan", "split-cartan")
SUPPORT_CHOICES = {"both": ("topright", "bottomleft"), "topright": ("topright",),
                   "bottomleft": ("bottomleft",), "none": ()}


def _mgs_spec(args, obj):
    if obj is not None:
        obj = _unwrap(obj)
        m = obj.get("model", obj)
        return _field(m, "preset"), int(_field(m, "q")), tuple(m.get("support", ()))
    if not args.preset:
        raise UsageError("--preset is required")
    if args.q is None:
        raise UsageError("--q is required")
    support = SUPPORT_CHOICES[args.support] if args.preset == "epipelagic-sl2" else ()
    return args.preset, args.q, support


def _mgs_datum(preset, q, support):
    if preset == "epipelagic-sl2":
        return mgs.epipelagic_sl2_datum(q, support)
    if preset == "nonsplit-cartan":
        return mgs.nonsplit_cartan_datum(q)
    if preset == "split-cartan":
        return mgs.split_cartan_datum(q)
    raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")


def cmd_mgs_build(args, obj):
    preset, q, support = _mgs_spec(args, obj)
    d = _mgs_datum(preset, q, support)
    return {"model": {"preset": preset, "q": q, "support": list(support)},
            "description": _jsonable(d.description)}, True


def cmd_mgs_check(args, obj):
    preset, q, support = _mgs_spec(args, obj)
    d = _mgs_datum(preset, q, support)
    r = mgs.check_geometric_supercuspidality(d, n_max=args.nmax or 2)
    out = {"model": {"preset": preset, "q": q, "support": list(support)}}
    out.update(_jsonable(r.to_json()))
    return out, r.overall == "PASS"


def cmd_mgs_git(args, obj):
    preset, q, support = _mgs_spec(args, obj)
    d = _mgs_datum(preset, q, support)
    if d.torus_weights is None:
        raise UsageError(f"preset {preset!r} carries no torus action")
    ok = mgs.git_semistable_torus(d.torus_weights)
    return {"model": {"preset": preset, "q": q, "support": list(support)}, "semistable": ok}, True


def cmd_bc_lang(args, obj):
    fm = basechange.FrobeniusModel(args.q or 2, args.L)
    r = basechange.lang_check(fm, args.l)
    a = basechange.additive_lang_check(args.q or 2, args.L, args.l)
    return {"group": {"l": r.l, "surjective": r.surjective, "image_size": r.image_size,
                      "domain_size": r.domain_size, "defect": r.defect, "degenerate": r.degenerate},
            "additive": {"image_size": a.image_size, "domain_size": a.domain_size,
                         "trace_kernel": basechange.trace_kernel_size(args.q or 2, args.L)},
            "caveat": r.caveat}, True


def cmd_bc_solve(args, obj):
    fm = basechange.FrobeniusModel(args.q or 2, args.L)
    gammas = fm.fixed_points(1)
    if not 0 <= args.gamma < len(gammas):
        raise UsageError(f"--gamma must be in 0..{len(gammas) - 1}")
    gamma = gammas[args.gamma]
    r = basechange.solve_kottwitz(fm, gamma, args.l, args.j, args.a, args.b)
    ok = all(basechange.verify_commutator_identity(fm, s) and basechange.verify_norm_fact(fm, s)
             for s in r.solutions)
    return {"gamma": fm.mat.to_json(gamma), "solutions": len(r.solutions), "complete": r.complete,
            "distinct_delta": len({s.delta for s in r.solutions}), "identities_hold": ok,
            "sample": [{"c": fm.mat.to_json(s.c), "delta": fm.mat.to_json(s.delta)} for s in r.solutions[:3]]}, ok


def cmd_bc_verify(args, obj):
    r = basechange.run_experiment(args.q or 2, args.L, args.l, args.j, args.a, args.b, seed=args.seed)
    return _jsonable(r.to_json()), r.ok and r.control_registered


def cmd_suite_acceptance(args, obj):
    only = set(_vec(args.only, "--only")) if args.only else None
    results = acceptance.run_all(seed=args.seed, only=only, echo=lambda s: print(s, file=sys.stderr))
    return {"criteria": [_jsonable(r.to_json()) for r in results]}, all(r.ok for r in results)


# ---------------------------------------------------------------- parser


def _common(p):
    p.add_argument("--type", help="Cartan type, e.g. A2 or G2")
    p.add_argument("--weight", help="comma-separated fundamental coordinates")
    p.add_argument("--coweight", help="comma-separated fundamental coweight coordinates")
    p.add_argument("--q", type=int)
    p.add_argument("--nmax", type=int, help="largest extension degree / power searched")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", help="input JSON file, or - for stdin")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffram", description="Satake, q-analog and finite-model computations")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, fn, **extra):
        p = subs[group].add_parser(name)
        _common(p)
        for flag, kw in extra.items():
            p.add_argument("--" + flag.replace("_", "-"), dest=flag, **kw)
        p.set_defaults(fn=fn)
        return p

    subs = {}
    for g in ("root", "rep", "polytope", "gr", "satake", "weil", "mgs", "bc", "suite"):
        subs[g] = groups.add_parser(g).add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    sub("root", "build", cmd_root_build)
    sub("root", "orbit", cmd_root_orbit)
    sub("rep", "dim", cmd_rep_dim)
    sub("rep", "mults", cmd_rep_mults)
    sub("rep", "tensor", cmd_rep_tensor, weight2={})
    sub("rep", "minuscule", cmd_rep_minuscule)
    sub("rep", "faithful", cmd_rep_faithful, p={"type": int})
    sub("rep", "brace-w", cmd_rep_brace_w)
    sub("polytope", "faces", cmd_polytope_faces, up_to_weyl={"action": "store_true"})
    sub("polytope", "parabolic", cmd_polytope_parabolic, face={"type": int, "default": 0})
    sub("gr", "qkostant", cmd_gr_qkostant)
    sub("gr", "qanalog", cmd_gr_qanalog, mu={})
    sub("gr", "hl", cmd_gr_hl)
    sub("gr", "kato", cmd_gr_kato)
    sub("gr", "dlambda", cmd_gr_dlambda)
    sub("satake", "principal", cmd_satake_principal)
    sub("satake", "trace", cmd_satake_trace, values={})
    sub("satake", "tempered", cmd_satake_tempered, values={})
    sub("satake", "power", cmd_satake_power, values={}, n={"type": int, "default": 2})
    sub("satake", "radius", cmd_satake_radius, eigenvalues={})
    sub("satake", "witness", cmd_satake_witness, values={}, C={"type": float, "default": 10.0},
        kmax={"type": int, "default": 8})
    sub("weil", "verify", cmd_weil_verify, poly={}, w={"type": int})
    sub("weil", "recover", cmd_weil_recover, seq={}, start={"type": int, "default": 1})
    sub("weil", "budget", cmd_weil_budget, dimG={"type": int, "required": True},
        g={"type": int, "required": True}, degD={"type": int, "required": True},
        dimH={"type": int, "default": 0}, dW1={"type": int, "default": 0}, dW2={"type": int, "default": 0})
    for name, fn in (("build", cmd_mgs_build), ("check", cmd_mgs_check), ("git", cmd_mgs_git)):
        sub("mgs", name, fn, preset={"choices": PRESETS},
            support={"choices": tuple(SUPPORT_CHOICES), "default": "both"})
    bc = dict(L={"type": int, "default": 4}, l={"type": int, "default": 2})
    kott = dict(j={"type": int, "default": 1}, a={"type": int, "default": 1}, b={"type": int, "default": 1})
    sub("bc", "lang", cmd_bc_lang, **bc)
    sub("bc", "solve", cmd_bc_solve, gamma={"type": int, "default": 0}, **bc, **kott)
    sub("bc", "verify", cmd_bc_verify, **bc, **kott)
    sub("suite", "acceptance", cmd_suite_acceptance, only={})
    return parser


def _digest(args, obj) -> str:
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("fn", "json")}
    inputs["json_input"] = obj
    blob = json.dumps(inputs, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


NOTES = {
    "gr": ["Kato identity convention is calibrated on small cases, not read off the source"],
    "mgs": ["verdicts are evidence up to n_max, not a proof"],
    "bc": ["finite model only: enumerated points of one truncated group"],
    "satake": ["an exhausted witness search only certifies the searched box"],
}


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        obj = _load_json(args.json, integer_lines=args.fn is cmd_weil_recover)
        outputs, ok = args.fn(args, obj)
    except UsageError as e:
        print(f"ffram: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (RootDataError, repcomb.RepresentationError, polytope.PolytopeError, grassmann.GrassmannError,
            satake.SatakeError, weil.WeilError, mgs.MGSError, basechange.BaseChangeError,
            ValueError, TypeError, KeyError) as e:
        print(f"ffram: input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": argv,
        "inputs_digest": _digest(args, obj),
        "outputs": outputs,
        "notes": NOTES.get(args.group, []),
        "wall_time": round(time.perf_counter() - t0, 4),
    }
    sys.stdout.write(json.dumps(report, sort_keys=True, ensure_ascii=False) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
