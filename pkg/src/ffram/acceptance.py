"""The acceptance suite: ten executable criteria with their time limits.

Each ``criterion_N`` returns a ``CriterionResult``; ``run_all`` runs them in
order.  Randomized criteria take a seed so runs are reproducible.
"""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import basechange, grassmann, mgs, polytope, repcomb, satake, weil
from .rootdata import build_root_system


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0
    limit: float | None = None

    @property
    def within_limit(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lim = f" (limit {self.limit:.0f}s)" if self.limit else ""
        return f"criterion {self.number:2d} {status}  {self.title}  [{self.seconds:.2f}s{lim}]"

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.ok,
                "checks_passed": self.passed, "seconds": round(self.seconds, 3),
                "limit": self.limit, "detail": self.detail}


def _timed(number, title, limit):
    def deco(fn):
        def run(seed: int = 0) -> CriterionResult:
            t0 = time.perf_counter()
            passed, detail = fn(seed)
            return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0, limit)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return deco


SMALL_TYPES = ("A1", "A2", "B2", "C2", "G2")


def short_roots(datum) -> set:
    """Roots of squared length 2 (the short ones), in weight coordinates."""
    pos = datum.positive_roots_weights
    roots = set(pos) | {tuple(-x for x in r) for r in pos}
    return {r for r in roots if datum.inner(r, r) == 2}


# ---------------------------------------------------------------- 1


@_timed(1, "root/rep sanity", 5)
def criterion_1(seed):
    g2 = build_root_system("G2")
    rep = repcomb.weight_multiplicities(g2, (1, 0))
    short = short_roots(g2)
    table_ok = (set(rep.mult) == short | {(0, 0)}
                and len(short) == 6 and set(rep.mult.values()) == {1})
    dim_ok = repcomb.weyl_dim(g2, (1, 0)) == 7
    bad, count = [], 0
    for name in SMALL_TYPES:
        datum = build_root_system(name)
        for lam in grassmann.dims_up_to(datum, 300):
            count += 1
            if sum(repcomb.weight_multiplicities(datum, lam).mult.values()) != repcomb.weyl_dim(datum, lam):
                bad.append((name, lam))
    return dim_ok and table_ok and not bad, {
        "g2_dim": repcomb.weyl_dim(g2, (1, 0)), "g2_table_ok": table_ok,
        "weights_checked": count, "mismatches": bad}


# ---------------------------------------------------------------- 2


@_timed(2, "faithful representation lemma", 5)
def criterion_2(seed):
    rows, ok = [], True
    for name in SMALL_TYPES:
        datum = build_root_system(name)
        for p in (3, 5):
            r = repcomb.faithful_low_pairing_rep(datum, p)
            good = (r.ok and r.rep is not None and r.max_pairing <= 2 and r.spans
                    and r.covered_classes == r.center_order)
            ok &= good
            rows.append({"type": name, "p": p, "ok": good,
                         "summands": [list(s) for s in r.rep.summands] if r.rep else None})
    g2 = repcomb.faithful_low_pairing_rep(build_root_system("G2"), 2)
    rows.append({"type": "G2", "p": 2, "ok": g2.ok, "reason": g2.reason})
    return ok and not g2.ok, {"cases": rows}


# ---------------------------------------------------------------- 3


def sp_standard_case(w):
    """(datum, rep, coweight) for Sp_{2n} standard and exponents w_1 >= ... >= w_n >= 0."""
    n = len(w)
    if n == 1:
        datum = build_root_system("A1")
        return datum, repcomb.RepSum(datum, ((1,),)), (2 * w[0],)
    datum = build_root_system(f"C{n}")
    lam = tuple(w[i] - w[i + 1] for i in range(n - 1)) + (2 * w[-1],)
    return datum, repcomb.RepSum(datum, ((1,) + (0,) * (n - 1),)), lam


def sl_adjoint_case(w):
    """(datum, rep, coweight) for SL_n adjoint and exponents w_1 >= ... >= w_n."""
    n = len(w)
    datum = build_root_system(f"A{n - 1}")
    top = (2,) if n == 2 else (1,) + (0,) * (n - 3) + (1,)
    lam = tuple(w[i] - w[i + 1] for i in range(n - 1))
    return datum, repcomb.RepSum(datum, (top,)), lam


def _random_exponents(rng, n, nonneg):
    lo = 0 if nonneg else -6
    return tuple(sorted((rng.randint(lo, 9) for _ in range(n)), reverse=True))


@_timed(3, "{W} bookkeeping", None)
def criterion_3(seed):
    rng = random.Random(seed)
    bad = []
    for _ in range(20):
        w = _random_exponents(rng, rng.randint(1, 4), True)
        _, rep, lam = sp_standard_case(w)
        if repcomb.brace_W(rep, lam) != w[0]:
            bad.append(("Sp", w))
    for _ in range(20):
        w = _random_exponents(rng, rng.randint(2, 4), False)
        _, rep, lam = sl_adjoint_case(w)
        if repcomb.brace_W(rep, lam) != w[0] - w[-1]:
            bad.append(("SL", w))
    return not bad, {"samples": 40, "mismatches": bad}


# ---------------------------------------------------------------- 4


def expected_faces(name: str, rep: repcomb.RepSum):
    """Face weight sets predicted by the worked examples, built without any polytope code."""
    support = set()
    for s in rep.summands:
        support |= set(repcomb.weight_multiplicities(rep.datum, s).mult)
    nonzero = sorted(w for w in support if any(w))
    out = set()
    if name.startswith("SL"):
        for mask in range(1, 2 ** len(nonzero) - 1):
            out.add(frozenset(w for i, w in enumerate(nonzero) if mask >> i & 1))
    elif name == "Sp4":
        for mask in range(1, 2 ** len(nonzero)):
            s = {w for i, w in enumerate(nonzero) if mask >> i & 1}
            if not any(tuple(-x for x in w) in s for w in s):
                out.add(frozenset(s))
    elif name == "G2":
        # hexagon: vertices and pairs of adjacent vertices (adjacent = difference is a short root)
        short = short_roots(rep.datum)
        for v in nonzero:
            out.add(frozenset([v]))
            for u in nonzero:
                if tuple(a - b for a, b in zip(u, v)) in short:
                    out.add(frozenset([u, v]))
    return out


POLYTOPE_CASES = (("SL2", "A1", (1,)), ("SL3", "A2", (1, 0)), ("Sp4", "C2", (1, 0)), ("G2", "G2", (1, 0)))


@_timed(4, "weight-polytope lemmas", 30)
def criterion_4(seed):
    rows, ok = [], True
    for name, typ, hw in POLYTOPE_CASES:
        datum = build_root_system(typ)
        rep = repcomb.RepSum(datum, (hw,))
        faces = polytope.weight_polytope_faces(rep)
        got = {frozenset(f.face_weights) for f in faces}
        match = got == expected_faces(name, rep)
        parab = levi = True
        for f in faces:
            try:
                polytope.face_parabolic(rep, f)
            except polytope.PolytopeError:
                parab = False
            levi &= polytope.check_levi_action(rep, f)
        ok &= match and parab and levi
        rows.append({"group": name, "faces": len(faces), "matches_example": match,
                     "parabolic": parab, "levi_action": levi})
    return ok, {"cases": rows}


# ---------------------------------------------------------------- 5


@_timed(5, "geometric Satake shadow", 120)
def criterion_5(seed):
    pairs, bad = 0, []
    for name in ("A1", "A2", "B2", "G2"):
        datum = build_root_system(name)
        for lam in grassmann.dims_up_to(datum, 300):
            mults = repcomb.weight_multiplicities(datum, lam).mult
            for mu in grassmann.dominant_below(datum, lam):
                pairs += 1
                m = grassmann.lusztig_q_analog(datum, lam, mu)
                if m.at_one() != mults.get(mu, 0):
                    bad.append((name, lam, mu, "value at 1"))
                if any(c < 0 for c in m.coefficients.values()):
                    bad.append((name, lam, mu, "negative coefficient"))
                if mu == lam and m != grassmann.QPolynomial.constant(1):
                    bad.append((name, lam, mu, "diagonal"))
    conv = grassmann.calibrated_convention()
    kato = 0
    for name in ("A1", "A2", "B2"):
        datum = build_root_system(name)
        for lam in grassmann.dims_up_to(datum, 120):
            kato += 1
            if not grassmann.verify_kato(datum, lam, conv).holds:
                bad.append((name, lam, None, "kato"))
    return not bad, {"pairs": pairs, "kato_cases": kato, "convention": conv.label(), "failures": bad[:20]}


# ---------------------------------------------------------------- 6


def _random_parameter(rng, datum, tempered):
    vals = []
    for _ in range(datum.rank):
        r = 1.0 if tempered else rng.uniform(0.5, 2.0)
        vals.append(cmath.rect(r, rng.uniform(-cmath.pi, cmath.pi)))
    if not tempered and all(abs(abs(v) - 1) < 0.05 for v in vals):
        vals[0] *= 1.5
    return satake.SatakeParameter(datum, tuple(vals))


def _close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


LEADING_TERM_CASES = (
    ("A1", (1,)), ("A1", (2,)), ("A1", (3,)), ("A2", (1, 0)), ("A2", (1, 1)), ("A2", (2, 1)),
    ("B2", (1, 0)), ("B2", (0, 1)), ("C2", (1, 1)), ("G2", (1, 0)),
)


@_timed(6, "Satake and temperedness", None)
def criterion_6(seed):
    rng = random.Random(seed)
    lead_bad, triples = [], 0
    for name, lam in LEADING_TERM_CASES:
        datum = build_root_system(name)
        for q in (2, 3, 5):
            triples += 1
            t = satake.principal_parameter(datum, q)
            power, coeff = satake.leading_term(t, lam)
            expected = satake.expected_leading_power(datum, lam)
            value = satake.tr_lambda(t, lam)
            top = Fraction(q) ** expected if expected.denominator == 1 else None
            if power != expected or coeff != 1 or (top is not None and not value >= top):
                lead_bad.append((name, lam, q))
    ident_bad = 0
    for _ in range(100):
        name = rng.choice(SMALL_TYPES)
        datum = build_root_system(name)
        t = _random_parameter(rng, datum, rng.random() < 0.5)
        lam = tuple(rng.randint(0, 2) for _ in range(datum.rank))
        w, _ = rng.choice(datum.weyl_group)
        base = satake.tr_lambda(t, lam)
        if not _close(satake.tr_lambda(satake.weyl_act(t, w), lam), base):
            ident_bad += 1
        if not _close(satake.tr_lambda(t.inverse(), lam), satake.tr_lambda(t, satake.dual_weight(datum, lam))):
            ident_bad += 1
    bc_bad = 0
    for i in range(100):
        datum = build_root_system(rng.choice(SMALL_TYPES))
        tempered = i % 2 == 0
        t = _random_parameter(rng, datum, tempered)
        n = rng.randint(1, 6)
        if satake.is_tempered(t) != tempered or satake.is_tempered(satake.base_change(t, n)) != tempered:
            bc_bad += 1
    return not (lead_bad or ident_bad or bc_bad), {
        "leading_term_triples": triples, "leading_term_failures": lead_bad,
        "identity_failures": ident_bad, "base_change_failures": bc_bad}


# ---------------------------------------------------------------- 7


def _witness_parameter(rng, datum, tempered):
    vals = [cmath.rect(1.0, rng.uniform(-cmath.pi, cmath.pi)) for _ in range(datum.rank)]
    if not tempered:
        i = rng.randrange(datum.rank)
        r = rng.uniform(1.05, 1.5)
        vals[i] *= r if rng.random() < 0.5 else 1 / r
    return satake.SatakeParameter(datum, tuple(vals))


@_timed(7, "amplification", 60)
def criterion_7(seed):
    rng = random.Random(seed)
    exact_bad = float_bad = 0
    worst = 0.0
    for _ in range(50):
        k = rng.randint(1, 8)
        eq = [Fraction(rng.randint(-40, 40), rng.randint(1, 12)) for _ in range(k)]
        seq = satake.TraceSequence(satake.power_sums(eq, 2 * k), k)
        rep = satake.spectral_radius_from_traces(seq)
        if not rep.exact or rep.radius != max(abs(e) for e in eq):
            exact_bad += 1
        ef = [cmath.rect(rng.uniform(0.1, 3.0), rng.uniform(-cmath.pi, cmath.pi)) for _ in range(k)]
        seq = satake.TraceSequence(satake.power_sums(ef, 2 * k), k)
        rep = satake.spectral_radius_from_traces(seq)
        true = max(abs(e) for e in ef)
        err = abs(rep.radius - true) / true
        worst = max(worst, err)
        if err > 1e-9:
            float_bad += 1
    wit_bad = []
    for i in range(24):
        name = ("A1", "A2", "B2")[i % 3]
        datum = build_root_system(name)
        tempered = i >= 16
        t = _witness_parameter(rng, datum, tempered)
        C = rng.uniform(1.0, 10.0)
        lam0 = (1,) * datum.rank
        res = satake.temperedness_witness(t, lam0, C=C, n_max=64, k_max=4)
        if res.found == tempered:
            wit_bad.append((name, [abs(v) for v in t.values], C))
    return not (exact_bad or float_bad or wit_bad), {
        "exact_failures": exact_bad, "float_failures": float_bad, "worst_float_rel_error": worst,
        "witness_failures": wit_bad}


# ---------------------------------------------------------------- 8


BUDGET_SPOTS = (
    ("dim_bun", (3, 0, 2), 3),
    ("dim_bun", (8, 1, 0), 0),
    ("dim_bun", (8, 2, 1), 16),
    ("dim_hecke", (3, 0, 2, 5), 8),
    ("avg_bound_exponent", (3, 0, 2, 4), -1),
    ("avg_bound_exponent", (8, 2, 1, 3), 13),
    ("weil_weight_cap", (3, 0, 2, 4, 0, 0), -1),
    ("weil_weight_cap", (8, 2, 1, 0, 2, 2), 18),
)


@_timed(8, "Weil module", None)
def criterion_8(seed):
    rng = random.Random(seed)
    rec_bad = 0
    for _ in range(100):
        terms = {}
        for _ in range(rng.randint(1, 5)):
            r = rng.choice([x for x in range(-7, 8) if x])
            terms[r] = terms.get(r, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
        terms = {r: c for r, c in terms.items() if c}
        seq = weil.forward_power_sum(terms, 24)
        got = weil.recover_power_sum(seq)
        if got.status != "ok" or got.as_integer_dict() != terms:
            rec_bad += 1
    weil_ok = weil.verify_weil(weil.WeilNumberClaim((1, 1, 2), 2, 1)).ok
    rejects = [not weil.verify_weil(weil.WeilNumberClaim((1, -(q + 1)), q, 2)).ok for q in (2, 3, 4, 5, 7)]
    budget_bad = []
    for fn, args, want in BUDGET_SPOTS:
        got = getattr(weil, fn)(*args)
        if got != want:
            budget_bad.append((fn, args, str(got), want))
    a1 = build_root_system("A1")
    if weil.d_of_W(a1, [(1, (1,)), (2, (3,))]) != 7:
        budget_bad.append(("d_of_W", "A1", None, 7))
    return not rec_bad and weil_ok and all(rejects) and not budget_bad, {
        "recovery_failures": rec_bad, "x2+x+2": weil_ok, "rejects_q+1": all(rejects),
        "budget_failures": budget_bad}


# ---------------------------------------------------------------- 9


SUPPORTS = {"both": ("topright", "bottomleft"), "topright": ("topright",),
            "bottomleft": ("bottomleft",), "none": ()}


@_timed(9, "mgs brute force", 180)
def criterion_9(seed):
    detail, ok = {}, True
    both = mgs.check_geometric_supercuspidality(mgs.epipelagic_sl2_datum(3, SUPPORTS["both"]), n_max=2)
    labels = [v.label for v in both.verdicts]
    ok &= labels == ["PASS(1)", "PASS(2)"]
    detail["both"] = labels
    for key, sup in SUPPORTS.items():
        d = mgs.epipelagic_sl2_datum(3, sup)
        git = mgs.git_semistable_torus(d.torus_weights)
        rep = both if key == "both" else mgs.check_geometric_supercuspidality(d, n_max=1)
        brute = rep.verdicts[0].passed
        agree = git == brute
        ok &= agree
        if key in ("topright", "bottomleft"):
            ok &= rep.verdicts[0].label == "FAIL(1)"
        detail[key] = {"git": git, "brute_n1": rep.verdicts[0].label, "agree": agree}
    ns = mgs.check_geometric_supercuspidality(mgs.nonsplit_cartan_datum(3), n_max=2)
    ns_labels = [v.label for v in ns.verdicts]
    wit = ns.verdict(2).witness
    ok &= ns_labels == ["PASS(1)", "FAIL(2)"] and wit is not None
    detail["nonsplit"] = {"verdicts": ns_labels, "witness_parabolic": wit.parabolic if wit else None,
                          "field": ns.verdict(2).field_label}
    return ok, detail


# ---------------------------------------------------------------- 10


@_timed(10, "base-change identities", 120)
def criterion_10(seed):
    rep = basechange.run_experiment(2, 4, 2, 1, 1, 1, control_trials=200, seed=seed)
    return rep.ok and rep.control_registered, {
        k: v for k, v in rep.to_json().items() if k not in ("params", "notes")}


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all(seed: int = 0, only=None, echo=None) -> list[CriterionResult]:
    out = []
    for i, crit in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        res = crit(seed)
        if echo:
            echo(res.line())
        out.append(res)
    return out
