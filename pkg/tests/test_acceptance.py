"""Acceptance checks, one recorded line per criterion.

Every numeric comparison is exact rational equality. The lines are printed
in the terminal summary of the pytest run.
"""

import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from nba import cga, geo
from nba.breefs import Proved, ReducedTo, check_equivalence_symmetry, eliminate, known_rule, prove, settle
from nba.cli import BUNDLED, GOLDEN_COUNTS, TABLE_NOTE, main, table_rows
from nba.constructions import sample_instance
from nba.core import ANG, SQ, Bracket, Evaluator, Poly, parse_poly, render_poly, wedge_dual

from conftest import SYMS, bundled_config, bundled_proof

SAMPLES = 20
RESULTS = {}
README = Path(__file__).resolve().parents[1] / "README.md"


def sort_key(key):
    num, _, sub = key.partition(".")
    return int(num), sub


def record(key, label, ok, detail=""):
    line = f"[{key:>4}] {'PASS' if ok else 'FAIL'}  {label}"
    RESULTS[key] = line + (f"  ({detail})" if detail else "")
    return ok


# -- numeric oracles, written directly against the multivector layer


def env(seed, random_e=False):
    """Random null vectors for 1..8, 1', 2', 3' and e."""
    rng = random.Random(seed)
    out = {n: cga.random_null_vector(rng) for n in ["1", "2", "3", "4", "5", "6", "7", "8", "1'", "2'", "3'"]}
    out["e"] = cga.random_null_vector(rng) if random_e else cga.EINF
    return out


def chain(v, names):
    return cga.chain_product([v[n] for n in names.split()])


def sq(v, names):
    return cga.bracket(chain(v, names))


def ang(v, names):
    return chain(v, names).scalar_part()


def dot(v, a, b):
    return cga.inner_product(v[a], v[b])


def rmeet(v, p, a, b, c, d):
    """Reduced meet (a^b) v_p (c^d) as a vector."""
    return sq(v, f"{p} {a} {c} {d}") * v[b] - sq(v, f"{p} {b} {c} {d}") * v[a]


def wedge(v, names):
    return cga.wedge(*(v[n] for n in names.split()))


def on_all(check, count=SAMPLES, random_e=False):
    return all(check(env(seed, random_e)) for seed in range(count))


# -- criterion 1: rule soundness


def _null_symmetry(v):
    a = chain(v, "1 2 3 1")
    return a == -chain(v, "1 3 2 1") and a == v["1"] * wedge(v, "2 3") * v["1"] and v["1"] * v["1"] == 0


def _shift_reversion(v):
    ok = True
    for names in ("1 2 3 4", "1 2 3 4 5 6", "1 2 3 4 5 6 7 8"):
        s = names.split()
        shifted = " ".join(s[1:] + s[:1])
        back = " ".join(s[-1:] + s[:-1])
        rev = " ".join(reversed(s))
        ok &= sq(v, names) == -sq(v, shifted) == -sq(v, back)
        ok &= ang(v, names) == ang(v, shifted) == ang(v, back)
        ok &= sq(v, names) == sq(v, rev) and ang(v, names) == ang(v, rev)
    return ok


def _dual_symmetry(v):
    rng = random.Random(repr(v["1"]))
    t = wedge(v, "1 2 3")
    ok = v["1"] * cga.dual(t) == -(cga.dual(t) * v["1"])
    a = cga.random_multivector(rng)
    ok &= cga.dual(a).scalar_part() == cga.bracket(a)
    ok &= cga.bracket(cga.dual(a)) == -a.scalar_part()
    for r, b in ((1, v["4"]), (2, wedge(v, "4 5")), (3, wedge(v, "4 5 6"))):
        ok &= cga.dual(a) * b == cga.dual(a * b) * (-1) ** r
    ok &= cga.dual(cga.dual(a)) == -a
    return ok


def _incidence(v):
    rng = random.Random(repr(v["2"]))
    r = lambda: cga.random_rational(rng, 20, 7)
    p, q, t = (r(), r()), (r(), r()), r()
    collinear = [cga.EINF] + [cga.embed_point(*xy).mv for xy in (p, q, (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))]
    cx, cy, rad = r(), r(), r() or Fraction(1)
    circle = []
    for _ in range(4):
        s = r()
        circle.append(cga.embed_point(cx + rad * (1 - s * s) / (1 + s * s), cy + rad * 2 * s / (1 + s * s)).mv)
    d, k = (r(), r()), r() or Fraction(2)
    a2 = (r(), r())
    par = [cga.EINF, cga.embed_point(*p).mv, cga.embed_point(p[0] + d[0], p[1] + d[1]).mv,
           cga.EINF, cga.embed_point(*a2).mv, cga.embed_point(a2[0] + k * d[0], a2[1] + k * d[1]).mv]
    perp = par[:4] + [par[4], cga.embed_point(a2[0] - k * d[1], a2[1] + k * d[0]).mv]
    return (cga.square_bracket_num(collinear) == 0 and cga.square_bracket_num(circle) == 0
            and cga.square_bracket_num(par) == 0 and cga.angular_bracket_num(perp) == 0)


def _gp_syzygy(v):
    lhs = (sq(v, "1 2 3 4") * sq(v, "5 1' 2' 3'") - sq(v, "1 2 3 5") * sq(v, "4 1' 2' 3'")
           + sq(v, "1 2 4 5") * sq(v, "3 1' 2' 3'"))
    return lhs == sq(v, "1 3 4 5") * sq(v, "2 1' 2' 3'") - sq(v, "2 3 4 5") * sq(v, "1 1' 2' 3'")


def _ib_syzygy(v):
    lhs = (dot(v, "1'", "1") * sq(v, "2 3 4 5") - dot(v, "1'", "2") * sq(v, "1 3 4 5")
           + dot(v, "1'", "3") * sq(v, "1 2 4 5"))
    return lhs == dot(v, "1'", "4") * sq(v, "1 2 3 5") - dot(v, "1'", "5") * sq(v, "1 2 3 4")


def _null_expansion(v):
    ok = chain(v, "1 2 1") == v["1"] * (2 * dot(v, "1", "2"))
    return ok and chain(v, "1 2 3 1") == chain(v, "3 1") * (2 * dot(v, "1", "2")) - chain(v, "2 1") * (2 * dot(v, "1", "3"))


def _quartet(v):
    ok = True
    for tail in ("5 6", "5 6 7 8"):
        full = f"1 2 3 4 1 {tail}"
        ok &= sq(v, full) / 2 == ang(v, "1 2 3 4") * sq(v, f"1 {tail}") + sq(v, "1 2 3 4") * ang(v, f"1 {tail}")
        ok &= ang(v, full) / 2 == ang(v, "1 2 3 4") * ang(v, f"1 {tail}") - sq(v, "1 2 3 4") * sq(v, f"1 {tail}")
    return ok


def _sextet(v):
    ok = True
    for tail in ("6 7", "6 7 8 2'"):
        full = f"1 2 3 1 4 5 1 {tail}"
        h = "1 2 3 1 4 5"
        ok &= sq(v, full) / 2 == sq(v, h) * ang(v, f"1 {tail}") + ang(v, h) * sq(v, f"1 {tail}")
        ok &= ang(v, full) / 2 == ang(v, h) * ang(v, f"1 {tail}") - sq(v, h) * sq(v, f"1 {tail}")
    return ok


def _rational_sextet(v):
    d = sq(v, "2 3 5 6")
    ok = -sq(v, "1 2 3 4 5 6") * d / 2 == (dot(v, "2", "3") * sq(v, "1 2 5 6") * sq(v, "3 4 5 6")
                                           + dot(v, "5", "6") * sq(v, "1 2 3 6") * sq(v, "2 3 4 5"))
    # angular line in its corrected form
    ok &= -ang(v, "1 2 3 4 5 6") * d / 2 == (dot(v, "2", "3") * ang(v, "1 2 5 6") * sq(v, "3 4 5 6")
                                             + dot(v, "5", "6") * ang(v, "1 2 3 6") * sq(v, "2 3 4 5"))
    return ok


def _rational_sextet_printed_angular(v):
    d = sq(v, "2 3 5 6")
    return -ang(v, "1 2 3 4 5 6") * d / 2 == (dot(v, "2", "3") * sq(v, "1 2 5 6") * ang(v, "3 4 5 6")
                                              - dot(v, "5", "6") * ang(v, "1 2 3 6") * sq(v, "2 3 4 5"))


def _rational_octet(v):
    d = sq(v, "1 2 3 5")
    ok = sq(v, "1 2 3 4 1 2 5 6") * d / 2 == (dot(v, "2", "3") * sq(v, "1 2 5 6") * sq(v, "1 2 5 1 3 4")
                                              - dot(v, "2", "5") * sq(v, "1 2 3 4") * sq(v, "1 2 3 1 5 6"))
    ok &= ang(v, "1 2 3 4 1 2 5 6") * d / 2 == (dot(v, "2", "3") * ang(v, "1 2 5 6") * sq(v, "1 2 5 1 3 4")
                                                - dot(v, "2", "5") * sq(v, "1 2 3 4") * ang(v, "1 2 3 1 5 6"))
    # third and fourth lines in their corrected form
    d = sq(v, "1 3 2 5")
    a, b = dot(v, "1", "5") * dot(v, "2", "5"), dot(v, "1", "3") * dot(v, "2", "3")
    ok &= sq(v, "1 3 2 4 1 5 2 6") * d / 2 == 2 * (a * sq(v, "1 3 2 4") * sq(v, "1 3 2 6") - b * sq(v, "1 5 2 4") * sq(v, "1 5 2 6"))
    ok &= ang(v, "1 3 2 4 1 5 2 6") * d / 2 == 2 * (a * sq(v, "1 3 2 4") * ang(v, "1 3 2 6") - b * sq(v, "1 5 2 4") * ang(v, "1 5 2 6"))
    return ok


def _rational_octet_printed(v):
    d = sq(v, "1 3 2 5")
    a, b = dot(v, "1", "5") * dot(v, "2", "5"), dot(v, "1", "3") * dot(v, "2", "3")
    return sq(v, "1 3 2 4 1 5 2 6") * d / 2 == a * sq(v, "1 3 2 4") * sq(v, "1 3 2 6") + b * sq(v, "1 5 2 4") * sq(v, "1 5 2 6")


RULE_IDENTITIES = {
    "null symmetry": _null_symmetry,
    "shift and reversion": _shift_reversion,
    "dual symmetry": _dual_symmetry,
    "incidence brackets": _incidence,
    "Grassmann-Pluecker syzygy": _gp_syzygy,
    "inner-product bracket syzygy": _ib_syzygy,
    "null expansion": _null_expansion,
    "trigonometric quartet": _quartet,
    "trigonometric sextet": _sextet,
    "rational sextet": _rational_sextet,
    "rational octet": _rational_octet,
}


CORRECTED = {
    "rational sextet": "angular line in corrected form",
    "rational octet": "third and fourth lines in corrected form",
}


@pytest.mark.parametrize("name", list(RULE_IDENTITIES))
def test_c01_rule_identity(name):
    ok = on_all(RULE_IDENTITIES[name])
    record(f"1.{list(RULE_IDENTITIES).index(name):02d}", f"rule identity: {name}, {SAMPLES} samples", ok,
           CORRECTED.get(name, ""))
    assert ok


def test_c01_engine_rules_agree_with_oracles():
    # the symbolic rewrites evaluated through the same samples
    s = SYMS
    atoms = {
        "quartet": (geo.quartet_expand, "[1 2 3 4 1 5 6 7]", 0),
        "sextet": (geo.sextet_expand, "[1 2 3 1 4 5 1 6]", 0),
        "null-expand": (geo.null_expand, "[1 2 3 1 4 5]", 0),
        "null-symmetry": (geo.null_swap, "[1 2 3 1 4 5]", 1),
    }
    evs = [Evaluator({**{s[k]: val for k, val in env(seed).items() if k != "e"}}) for seed in range(SAMPLES)]
    ok = True
    for rule, (fn, text, at) in atoms.items():
        a = Bracket(SQ, [s[n] for n in text.strip("[]").split()])
        out = fn(a, at)
        ok &= out is not None and all(ev.poly(Poly.atom(a)) == ev.poly(out) for ev in evs)
    for text in ("[1 2 3 4 5 6]", "<1 2 3 4 5 6>"):
        a = parse_poly(text, s).lead()[1][0]
        num, den = geo.rational_sextet(a)
        ok &= all(ev.poly(Poly.atom(a)) * ev.poly(Poly.atom(den)) == ev.poly(num) for ev in evs)
    for text in ("[1 2 3 4 1 2 5 6]", "<1 2 3 4 1 2 5 6>", "[1 3 2 4 1 5 2 6]", "<1 3 2 4 1 5 2 6>"):
        a = Bracket(SQ if text[0] == "[" else ANG, [s[n] for n in text[1:-1].split()])
        num, den, _ = geo.rational_octet(a)
        ok &= all(ev.poly(Poly.atom(a)) * ev.poly(Poly.atom(den)) == ev.poly(num) for ev in evs)
    record("1.90", "engine rewrites agree with the oracles", ok)
    assert ok


@pytest.mark.xfail(strict=True, reason="printed angular rational-sextet line is false; corrected form is checked")
def test_c01_printed_rational_sextet_angular():
    ok = on_all(_rational_sextet_printed_angular)
    record("1.91", "printed angular rational-sextet line (expected to fail)", ok, "corrected form passes")
    assert ok


@pytest.mark.xfail(strict=True, reason="printed third rational-octet line is false; corrected form is checked")
def test_c01_printed_rational_octet_pattern3():
    ok = on_all(_rational_octet_printed)
    record("1.92", "printed third rational-octet line (expected to fail)", ok, "corrected form passes")
    assert ok


# -- criterion 2: null duality


def _duality_sides(v):
    x = v["1'"]
    lhs = x * cga.dual(wedge(v, "1 2 3")) * cga.dual(wedge(v, "1 2' 3'")) * x
    rhs = x * v["1"] * cga.dual(rmeet(v, "1", "2", "3", "2'", "3'")) * x
    return lhs, rhs


@pytest.mark.xfail(strict=True, reason="literal statement differs by a factor -1 under X~ = X I^-1")
def test_c02_null_duality_literal():
    ok = on_all(lambda v: _duality_sides(v)[0] == _duality_sides(v)[1])
    record("2.a", "null duality as printed (expected to fail)", ok, "sides differ by exactly -1")
    assert ok


def test_c02_null_duality_corrected():
    ok = on_all(lambda v: _duality_sides(v)[0] == -_duality_sides(v)[1])
    s = SYMS
    b = Bracket(SQ, (s["1'"], wedge_dual(s["1"], s["2"], s["3"]), wedge_dual(s["1"], s["2'"], s["3'"]), s["1'"], s["4"], s["5"]))
    r = geo.null_duality(b, 0)
    evs = [Evaluator({s[k]: val for k, val in env(seed).items() if k != "e"}) for seed in range(SAMPLES)]
    ok &= r is not None and all(ev.poly(Poly.atom(b)) == ev.poly(r) for ev in evs)
    record("2.b", "null duality with corrected sign, and the engine rule", ok)
    assert ok


# -- helpers for the worked examples


def config_evaluators(name, count=SAMPLES, seed=11):
    cfg = bundled_config(name)
    rng = random.Random(seed)
    return [Evaluator(sample_instance(cfg, rng)) for _ in range(count)]


def cp(name, text):
    return parse_poly(text, bundled_config(name).symbols)


def numeric_identity(name):
    cfg, t = bundled_config(name), bundled_proof(name)
    return all(ev.poly(cfg.conclusion) == ev.poly(t.ledger_product()) * ev.poly(t.residual)
               for ev in config_evaluators(name))


# -- criterion 3


def test_c03_three_circles():
    t, cfg = bundled_proof("three-circles"), bundled_config("three-circles")
    expected = Fraction(1, 8) * -1 * cp("three-circles", "-2(e.0)[0 1 2 3][0 1 2 3]") * cp(
        "three-circles", "4(e.0)(0.1)(0.2)(0.3)")
    checks = {
        "proved": isinstance(t.outcome, Proved),
        "single term": t.max_terms == 1,
        "residual [e123]": t.residual in (cp("three-circles", "[e 1 2 3]"), -cp("three-circles", "[e 1 2 3]")),
        "ledger product (sign corrected)": t.ledger_product() == expected,
        "numeric identity": numeric_identity("three-circles"),
        "removed hypothesis": t.residual in cfg.removed or -t.residual in cfg.removed,
        "ledger nonzero": all(ev.poly(t.ledger_product()) != 0 for ev in config_evaluators("three-circles", 5)),
    }
    ok = all(checks.values())
    record("3", "three circles: [0456] reduces to ledger x [e123], one term throughout", ok,
           ", ".join(k for k, v in checks.items() if not v))
    assert ok


# -- criterion 4


def test_c04_secants():
    t = bundled_proof("secants")
    expected = cp("secants", "1/2[e 1 3 1'][e 3 1' 2']") * cp("secants", "2(e.2')") * cp("secants", "[2' 2 e 3 1 1']")
    atom = cp("secants", "[e 3 1 1' 2' 2]").lead()[1][0]
    num, den = geo.rational_sextet(atom)
    sign = Fraction(cp("secants", "[e 3 1 1' 2' 2]").lead()[0])
    # 1/2 [e311'2'2] = N / [1232'] with the displayed numerator N
    shown = cp("secants", "(1.3)[e 2 3 2'][1 2 1' 2'] - (2.2')[e 1 2 3][1 3 1' 2']")
    shown_den = cp("secants", "[1 2 3 2']")
    follow = num * shown_den * sign == 2 * shown * Poly.atom(den)
    evs = config_evaluators("secants")
    follow &= all(ev.poly(cp("secants", "[e 3 1 1' 2' 2]")) * ev.poly(shown_den) == 2 * ev.poly(shown) for ev in evs)
    checks = {
        "reduced, target matched": isinstance(t.outcome, ReducedTo) and t.target_matched,
        "single term": t.max_terms == 1,
        "ledger x residual": t.ledger_product() * t.residual == expected,
        "numeric identity": numeric_identity("secants"),
        "rational-sextet follow-up": follow,
    }
    ok = all(checks.values())
    record("4", "secants: ledger 1/2[e131'][e31'2'] 2(e.2') with residual [2'2e311']", ok,
           ", ".join(k for k, v in checks.items() if not v))
    assert ok


# -- criterion 5


def test_c05_triangle_circles():
    t, cfg = bundled_proof("triangle-circles"), bundled_config("triangle-circles")
    s = cfg.symbols
    residual = cp("triangle-circles", "[1' 2 3' 1 2' 3]")
    expected = cp("triangle-circles", "1/2[1 1' 2' 3'][2 1' 2' 3']") * residual
    swap = {s["1"]: s["1'"], s["1'"]: s["1"], s["2"]: s["2'"], s["2'"]: s["2"], s["3"]: s["3'"], s["3'"]: s["3"]}
    checks = {
        "single term": t.max_terms == 1,
        "residual": t.residual in (residual, -residual),
        "ledger x residual": t.ledger_product() * t.residual == expected,
        "numeric identity": numeric_identity("triangle-circles"),
        "prime swap gives -1": check_equivalence_symmetry(t.residual, t.residual, swap) == (True, -1),
        "swapped form": check_equivalence_symmetry(residual, cp("triangle-circles", "[1 2' 3 1' 2 3']"), swap)[0],
    }
    ok = all(checks.values())
    record("5", "triangle circles: residual [1'23'12'3], ledger 1/2[11'2'3'][21'2'3'], swap sign -1", ok,
           ", ".join(k for k, v in checks.items() if not v))
    assert ok


# -- criterion 6


def test_c06_miquel4():
    t = bundled_proof("miquel4")
    expected = cp("miquel4", "1/4[1 2 5 6][1 4 5 6][2 3 5 6][3 4 5 6]") * cp("miquel4", "-4(1.5)(3.6)")
    checks = {
        "proved": isinstance(t.outcome, Proved),
        "single term": t.max_terms == 1,
        "residual [1234]": t.residual in (cp("miquel4", "[1 2 3 4]"), -cp("miquel4", "[1 2 3 4]")),
        "ledger product": t.ledger_product() == expected,
        "numeric identity": numeric_identity("miquel4"),
    }
    ok = all(checks.values())
    record("6", "four circles: [5678] = 2^-2[1256][1456][2356][3456] (-2^2)(1.5)(3.6) [1234]", ok,
           ", ".join(k for k, v in checks.items() if not v))
    assert ok


# -- criterion 7


def _index(steps, pred, start=0):
    for s in steps[start:]:
        if pred(s):
            return s.index
    return None


def test_c07_miquel5():
    cfg = bundled_config("miquel5")
    start = time.perf_counter()
    t = prove(cfg)
    elapsed = time.perf_counter() - start
    steps = t.steps
    heads = ["[1 2 {", "[1 2 3 {", "[1 2 3 4 {"]
    # meet pairs collapse one after another, each leaving its cofactor in the ledger
    collapses, at = [], 0
    for head in heads:
        i = _index(steps, lambda s, h=head: s.rule == "factor-extract" and render_poly(s.after).startswith(h), at)
        collapses.append(i)
        at = (i or 0) + 1
    h = _index(steps, lambda s: s.rule.startswith("meet-expand") and s.after_terms == 3, at)
    two = _index(steps, lambda s: s.rule == "clifford-factor" and s.after_terms == 2
                 and "[1 2 3 4 3' 1']" in render_poly(s.after), (h or 0) + 1)
    quartet = _index(steps, lambda s: s.rule == "quartet", (two or 0) + 1)
    final = steps[-1]
    evs = config_evaluators("miquel5", count=3)
    checks = {
        "proved": isinstance(t.outcome, Proved),
        "max terms 3": t.max_terms == 3,
        "pair collapses (1,2),(2,3),(3,4)": None not in collapses and collapses == sorted(collapses),
        "3-term h": h is not None,
        "2-term form with [12343'1']": two is not None,
        "quartet finish": quartet is not None and final.rule == "substitute" and final.after.is_zero(),
        "numeric zero": all(ev.poly(cfg.conclusion) == 0 for ev in evs),
        "under a minute": elapsed < 60,
        "known rules": all(known_rule(s.rule) for s in steps),
    }
    ok = all(checks.values())
    record("7", f"Miquel five circles: proved, 3 terms, {len(steps)} steps in {elapsed:.1f}s", ok,
           ", ".join(k for k, v in checks.items() if not v))
    assert ok


# -- criterion 8


def test_c08_closing_identity():
    numeric = on_all(lambda v: sq(v, "1 2 3 4 5 e 2 3 e 5") == -2 * dot(v, "2", "3") * sq(v, "e 5 4 3 e 5 1 2"),
                     random_e=True)
    out, rules = settle(parse_poly("[1 2 3 4 5 e 2 3 e 5]", SYMS))
    derived = out == parse_poly("-2(2.3)[e 5 4 3 e 5 1 2]", SYMS) and "quartet" in rules
    ok = numeric and derived
    record("8", "[12345e23e5] = -2(2.3)[e543e512] with random null e, and derived by the simplifier", ok)
    assert ok


# -- criterion 9


def test_c09_double_line():
    def check(v):
        m1 = rmeet(v, "e", "2", "3", "4", "5")
        m2 = rmeet(v, "e", "2", "3", "1", "5")
        lhs = v["e"] * m1 * m2 * v["e"]
        rhs = chain(v, "e 2 3 e") * (-sq(v, "e 1 4 5") * sq(v, "e 2 3 5"))
        return lhs == rhs
    ok = on_all(check) and on_all(check, random_e=True)
    record("9", "double-line meet identity as multivectors", ok)
    assert ok


# -- criterion 10


@pytest.mark.parametrize("name", ["secants", "triangle-circles", "miquel4"])
def test_c10_expand_all_cross_check(name):
    cfg, t = bundled_config(name), bundled_proof(name)
    w = eliminate(cfg, [s for s, _ in cfg.constructed], cfg.conclusion)
    full = w.substitute(geo.expand_all)
    ok = all(ev.poly(full) == ev.poly(t.ledger_product()) * ev.poly(t.residual) for ev in config_evaluators(name))
    record(f"10.{name}", f"brute-force expansion agrees with the strategy result: {name}", ok)
    assert ok


# -- criterion 11


def test_c11_full_angle():
    rng = random.Random(2024)
    done = ok = 0
    while done < 50:
        pts = [cga.random_point(rng) for _ in range(3)]
        if len({(p.x, p.y) for p in pts}) < 3:
            continue
        p1, p2, p3 = pts
        ux, uy, vx, vy = p1.x - p2.x, p1.y - p2.y, p3.x - p2.x, p3.y - p2.y
        d = ux * vx + uy * vy
        expect = cga.INFINITY if d == 0 else (ux * vy - uy * vx) / d
        ok += cga.full_angle_tan(p1, p2, p3) == expect
        done += 1
    record("11", "full-angle tangent equals the coordinate tangent on 50 triples", ok == 50, f"{ok}/50")
    assert ok == 50


# -- criterion 12


def test_c12_table(capsys):
    rows = table_rows(list(BUNDLED))
    counts = {r[0]: (r[1], r[2]) for r in rows}
    code = main(["table", *BUNDLED])
    out = capsys.readouterr().out
    documented = README.is_file() and "not reproducible" in README.read_text()
    checks = {
        "bundled counts": counts == GOLDEN_COUNTS,
        "all rows ok": all(r[4] == "ok" for r in rows),
        "exit 0": code == 0,
        "table prints the limitation": TABLE_NOTE in out,
        "README states the limitation": documented,
    }
    ok = all(checks.values())
    record("12", "published comparison table not reproducible; bundled term counts reproduced", ok,
           ", ".join(k for k, v in checks.items() if not v))
    assert ok


# -- criterion 13 (stretch)


G12 = "-2(1.2)[1 5 1' 5'][2 3 1' 2'] + 2(2.1')[1 2 3 2'][1 5 1' 5'] - 2(1.1')[1 2 5 5'][2 3 1' 2']"
AREA = "(e.1)(e.4)[e 2 3 5] - (e.1)(e.5)[e 2 3 4] + (e.2)(e.5)[e 1 3 4]"


def _closed_form(power):
    head = "-2(1.2)(1.5)(2.3)" + "[e 1 2 3]" * power + "[e 1 2 5][e 1 2 5][e 1 2 5][e 1 4 5][e 2 3 4][e 3 4 5]"
    return cp("miquel5", head) * cp("miquel5", AREA)


def _g12_entry():
    t = bundled_proof("miquel5")
    g12 = cp("miquel5", G12)
    evs = config_evaluators("miquel5", count=5)
    for e in t.ledger.entries:
        if e.factor.term_count() > 1 and all(ev.poly(e.factor) == ev.poly(g12) for ev in evs):
            return e.factor, evs
    return None, evs


@pytest.mark.xfail(strict=True, reason="printed closed form is one [e123] factor short")
def test_c13_g12_closed_form_printed():
    entry, evs = _g12_entry()
    ok = entry is not None and all(ev.poly(entry) == ev.poly(_closed_form(2)) for ev in evs)
    record("13.a", "stretch: g12 equals the printed pentagon-area closed form (expected to fail)", ok,
           "off by a factor [e123]")
    assert ok


def test_c13_g12_closed_form_corrected():
    entry, evs = _g12_entry()
    ok = entry is not None and all(ev.poly(entry) == ev.poly(_closed_form(3)) for ev in evs)
    record("13.b", "stretch: engine ledger entry equals g12 and the closed form with [e123]^3", ok)
    assert ok
