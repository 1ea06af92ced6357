"""Proof strategy: elimination, neighbour-driven expansion and factor bookkeeping.

A proof keeps one working polynomial. Constructed points are replaced by
their nullified meet or centre chains, meets are expanded by the split that
collapses against the neighbours in the chain, and common factors are moved
into a ledger. Every step is checked by exact evaluation at random
instantiations of the configuration.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import geo
from .constructions import FACTOR_GOAL, REDUCE_GOAL, ZERO_GOAL, Configuration, sample_instance
from .core import (
    ANG, DUAL, MEET, NULLIFY, ONE, SQ, WEDGE, ZERO, Atom, Bracket, Evaluator, FactorLedger, Inner, Poly, Sym,
    common_factor, dual, meet, nullify, render_atom, render_poly,
    render_sym, wedge,
)

EXTRA_RULES = ("eliminate", "rearrange", "substitute", "wedge-expand", "factor-extract")
DEFAULT_SEED = 20240611
MAX_STEPS = 400


def known_rule(rule: str) -> bool:
    if rule in geo.RULE_IDS or rule in EXTRA_RULES:
        return True
    head, _, tail = rule.rpartition("-")
    return head == "meet-expand" and bool(tail) and set(tail) <= {"L", "R"}


class VerificationError(RuntimeError):
    """A trace step failed its exact numeric check."""

    def __init__(self, step: "Step", sample: int):
        super().__init__(f"step {step.index} ({step.rule}) fails at sample {sample}")
        self.step = step
        self.sample = sample


# ---------------------------------------------------------------- outcomes


@dataclass(frozen=True)
class Proved:
    name = "proved"


@dataclass(frozen=True)
class ReducedTo:
    poly: Poly
    name = "reduced"


@dataclass(frozen=True)
class Stuck:
    poly: Poly
    name = "stuck"


# ---------------------------------------------------------------- trace


@dataclass
class Step:
    rule: str
    locus: str
    stage: str
    before: Poly
    after: Poly
    delta: Poly = ONE
    note: str = ""
    after_text: str = ""
    index: int = -1
    check: str = "pending"

    @property
    def before_terms(self) -> int:
        return self.before.term_count()

    @property
    def after_terms(self) -> int:
        return self.after.term_count()

    def render_after(self) -> str:
        return self.after_text or render_poly(self.after)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "rule": self.rule,
            "locus": self.locus,
            "stage": self.stage,
            "before_terms": self.before_terms,
            "after_terms": self.after_terms,
            "ledger_delta": render_poly(self.delta),
            "before": render_poly(self.before),
            "after": self.render_after(),
            "note": self.note,
            "check": self.check,
        }


@dataclass
class ProofTrace:
    config: str
    steps: List[Step]
    outcome: object
    residual: Poly
    ledger: FactorLedger
    conclusion: Poly
    goal: str = ZERO_GOAL
    target_matched: Optional[bool] = None
    samples: int = 0
    seed: object = DEFAULT_SEED
    elapsed: float = 0.0

    @property
    def max_terms(self) -> int:
        counts = [s.after_terms for s in self.steps]
        return max(counts) if counts else self.conclusion.term_count()

    @property
    def conclusion_terms(self) -> int:
        return self.conclusion.term_count()

    def ledger_product(self) -> Poly:
        return self.ledger.product()

    @property
    def success(self) -> bool:
        if isinstance(self.outcome, Proved):
            return True
        if isinstance(self.outcome, ReducedTo):
            return self.goal == REDUCE_GOAL or bool(self.target_matched)
        return False

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "goal": self.goal,
            "conclusion": render_poly(self.conclusion),
            "outcome": self.outcome.name,
            "residual": render_poly(self.residual),
            "target_matched": self.target_matched,
            "max_terms": self.max_terms,
            "samples": self.samples,
            "seed": self.seed,
            "ledger": [{"factor": render_poly(e.factor), "step": e.step, "note": e.note} for e in self.ledger.entries],
            "steps": [s.to_dict() for s in self.steps],
        }


@dataclass
class _Log:
    steps: List[Step] = field(default_factory=list)
    ledger: FactorLedger = field(default_factory=FactorLedger)

    def add(self, step: Step) -> Step:
        self.steps.append(step)
        return step

    def max_terms(self) -> int:
        return max((s.after_terms for s in self.steps), default=0)

    def ledger_product(self) -> Poly:
        return self.ledger.product()


# ---------------------------------------------------------------- helpers


def _brackets(p: Poly) -> List[Bracket]:
    return [a for a in p.atoms() if isinstance(a, Bracket)]


def _long_length(p: Poly) -> int:
    return sum(len(a.seq) for _, m in p for a in m if isinstance(a, Bracket) and len(a.seq) > 4)


def _bracket_length(p: Poly) -> int:
    return max((len(a.seq) for _, m in p for a in m if isinstance(a, Bracket)), default=0)


def _total_length(p: Poly) -> int:
    return sum(len(a.seq) for _, m in p for a in m)


_meet_of = geo._meet_of


def _has_composite(a: Atom) -> bool:
    return any(s.composite for s in a.seq)


def rename_sym(s: Sym, table: Mapping[Sym, Sym]) -> Sym:
    if not s.composite:
        return table.get(s, s)
    args = [rename_sym(a, table) for a in s.args]
    if s.kind == MEET:
        return meet(*args)
    if s.kind == WEDGE:
        return wedge(*args)
    if s.kind == DUAL:
        return dual(*args)
    if s.kind == NULLIFY:
        return nullify(*args)
    raise ValueError(s.kind)


def rename(p: Poly, table: Mapping[Sym, Sym]) -> Poly:
    def fn(a: Atom) -> Poly:
        if isinstance(a, Inner):
            return Poly.inner(rename_sym(a.a, table), rename_sym(a.b, table))
        return Poly.atom(Bracket(a.kind, tuple(rename_sym(s, table) for s in a.seq)))
    return p.substitute(fn)


# ---------------------------------------------------------------- monomial simplifier


def _size(p: Poly):
    return (p.term_count(), _total_length(p), render_poly(p))


@lru_cache(maxsize=None)
def simplify_atom(atom: Atom, macros: bool = True) -> Tuple[Poly, Tuple[str, ...]]:
    """Shortest form of an atom reachable by single-term rewrites.

    Searches the atom's symmetry orbit for x a x with x a plain null vector
    (null expansion, one term). When none exists and the chain is made of
    plain vectors, a trigonometric quartet expansion is tried and kept only
    if Clifford factorization brings it back to a shorter single term.
    """
    if isinstance(atom, Inner):
        return Poly.atom(atom), ()
    n = len(atom.seq)
    if n < 4 or (atom.kind == SQ and n == 4):
        return Poly.atom(atom), ()
    best = None
    tried = set()
    for seq, sign in geo.orbit_members(atom):
        b = Bracket(atom.kind, seq)
        for i in range(n):
            x, a = seq[i], seq[(i + 1) % n]
            if x.composite or not x.null or seq[(i + 2) % n] != x or a.composite or a.grade != 1:
                continue
            r = geo.null_expand(b, i)
            if r is None:
                continue
            r = r * sign
            if r in tried:
                continue
            tried.add(r)
            out, rules = settle(r, macros)
            cand = (_size(out), out, ("null-expand",) + rules)
            if best is None or cand[0] < best[0]:
                best = cand
    if macros and best is None and n >= 6 and all(not s.composite and s.grade == 1 for s in atom.seq):
        for seq, sign in geo.orbit_members(atom):
            b = Bracket(atom.kind, seq)
            for i in range(n):
                x = seq[i]
                if not x.null or seq[(i + 4) % n] != x:
                    continue
                q = geo.quartet_expand(b, i)
                if q is None:
                    continue
                q = q * sign
                if q in tried:
                    continue
                tried.add(q)
                q2, rules = settle(q)
                f = q2
                if q2.term_count() == 2:
                    cf = geo.clifford_factor(q2)
                    if cf is not None:
                        f = cf[0]
                if f.term_count() == 1 and _bracket_length(f) < n:
                    cand = (_size(f), f, ("quartet",) + rules)
                    if best is None or cand[0] < best[0]:
                        best = cand
    if best is None:
        return Poly.atom(atom), ()
    return best[1], best[2]


def settle(p: Poly, macros: bool = True) -> Tuple[Poly, Tuple[str, ...]]:
    """Simplify every bracket of ``p``; ``macros`` enables the quartet route."""
    rules: List[str] = []

    def fn(a: Atom) -> Optional[Poly]:
        if isinstance(a, Inner):
            return None
        out, r = simplify_atom(a, macros)
        rules.extend(r)
        return out
    out = p.substitute(fn)
    return out, tuple(dict.fromkeys(rules))


# ---------------------------------------------------------------- splits


@dataclass(frozen=True)
class ExpansionPlan:
    target: int
    split: str
    rank_evidence: Tuple[Tuple[str, int, str], ...]


def rank_splits(c: Bracket, pos: int) -> List[ExpansionPlan]:
    """Candidate splits for the meet at ``pos``, best first.

    A split ranks higher when a neighbour at smaller cyclic distance belongs
    to the pair it separates (the term with that vector collapses), then when
    a neighbouring meet shares the separated pair, then Left before Right.
    """
    seq, n = c.seq, len(c.seq)
    m = _meet_of(seq[pos])
    if m is None:
        raise ValueError(f"no meet at position {pos}")
    plans = []
    for split in (geo.LEFT, geo.RIGHT):
        if split == geo.RIGHT and not geo.right_split_allowed(seq, pos):
            continue
        pair = geo.separated(m, split)
        evidence = []
        hit = None
        shared = False
        for d in range(1, n // 2 + 1):
            for nb in (seq[(pos - d) % n], seq[(pos + d) % n]):
                nm = _meet_of(nb)
                if nm is not None and nm != m:
                    if d == 1 and set(geo.separated(nm, split)) == set(pair):
                        shared = True
                        evidence.append((render_sym(nb), d, "shared-pair"))
                    continue
                if nb in pair:
                    evidence.append((render_sym(nb), d, "separated"))
                    if hit is None:
                        hit = d
        key = (hit if hit is not None else n, 0 if shared else 1, 0 if split == geo.LEFT else 1)
        plans.append((key, ExpansionPlan(pos, split, tuple(sorted(evidence, key=lambda e: e[1])))))
    plans.sort(key=lambda kv: kv[0])
    return [p for _, p in plans]


def meet_runs(seq: Sequence[Sym]) -> List[List[int]]:
    """Maximal runs of cyclically adjacent meet items."""
    n = len(seq)
    flags = [_meet_of(s) is not None for s in seq]
    if not any(flags):
        return []
    if all(flags):
        return [list(range(n))]
    runs = []
    for i in range(n):
        if flags[i] and not flags[i - 1]:
            run = [i]
            j = (i + 1) % n
            while flags[j]:
                run.append(j)
                j = (j + 1) % n
            runs.append(run)
    return runs


def expand_positions(kind: str, seq: Sequence[Sym], positions: Sequence[int], splits: Sequence[str]) -> Poly:
    """Expand the meets at ``positions`` simultaneously with the given splits."""
    for pos, sp in zip(positions, splits):
        if sp == geo.RIGHT and not geo.right_split_allowed(seq, pos):
            raise geo.ContextError(f"right split at {pos} needs the base as a neighbour")
    items = [(ONE, list(seq))]
    for pos, sp in zip(positions, splits):
        item = seq[pos]
        m = _meet_of(item)
        nxt = []
        for c, s in items:
            for coef, v in geo.meet_split(m, sp):
                t = list(s)
                t[pos] = dual(v) if item.kind == DUAL else v
                nxt.append((c * coef, t))
        items = nxt
    out = ZERO
    for c, t in items:
        out = out + c * Poly.atom(Bracket(kind, t))
    return out


# ---------------------------------------------------------------- neighbours and elimination


def _relevance(cfg: Configuration) -> Dict[Sym, frozenset]:
    return {s: frozenset(c.relevant()) for s, c in cfg.constructed}


def _kendall(seq: Sequence[Sym], ref: Sequence[Sym]) -> int:
    pool: Dict[Sym, List[int]] = {}
    for i, s in enumerate(ref):
        pool.setdefault(s, []).append(i)
    idx = [pool[s].pop(0) for s in seq]
    return sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])


def neighbour_score(seq: Sequence[Sym], relevant: Mapping[Sym, frozenset]) -> int:
    n, total = len(seq), 0
    for i, s in enumerate(seq):
        rel = relevant.get(s)
        if rel:
            total += (seq[i - 1] in rel) + (seq[(i + 1) % n] in rel)
    return total


def neighbour_arrangements(atom: Bracket, cfg: Configuration) -> List[Tuple[int, Tuple[Sym, ...]]]:
    """All symmetric rearrangements with the best neighbour score, nearest
    to the given order first. Each is (sign, seq) with atom = sign * [seq]."""
    rel = _relevance(cfg)
    if not any(s in rel for s in atom.seq):
        return [(1, atom.seq)]
    ranked = sorted(
        ((-neighbour_score(seq, rel), _kendall(seq, atom.seq)), i, sign, seq)
        for i, (seq, sign) in enumerate(geo.orbit_members(atom)))
    top = ranked[0][0][0]
    return [(sign, seq) for key, _, sign, seq in ranked if key[0] == top]


def rearrange_neighbors(atom: Bracket, cfg: Configuration) -> Tuple[int, Tuple[Sym, ...]]:
    """Symmetric rearrangement placing constructed points next to the points
    they are built from. Returns (sign, seq) with atom = sign * [seq]."""
    return neighbour_arrangements(atom, cfg)[0]


def eliminate_seq(cfg: Configuration, names: Iterable[Sym], kind: str, seq: Sequence[Sym]) -> Poly:
    """Replace each occurrence of the named points by x base x / 2."""
    names = set(names)
    out: List[Sym] = []
    coef = Fraction(1)
    for s in seq:
        con = cfg.constructor(s) if s in names else None
        if con is None:
            out.append(s)
            continue
        x, base = con.expr().args
        out.extend((x, base, x))
        coef /= 2
    return Poly.atom(Bracket(kind, out), coef)


def eliminate(cfg: Configuration, names: Iterable[Sym], w: Poly) -> Poly:
    names = set(names)
    for s in names:
        if not cfg.is_constructed(s):
            raise ValueError(f"{render_sym(s)} is not a constructed point")

    def fn(a: Atom) -> Optional[Poly]:
        if not any(s in names for s in a.seq):
            return None
        kind = ANG if isinstance(a, Inner) else a.kind
        return eliminate_seq(cfg, names, kind, a.seq)
    return w.substitute(fn)


# ---------------------------------------------------------------- pseudodivision


def pseudodivide(dividend: Bracket, leading: Sym, divisors: Sequence[Bracket]):
    """Quotients of a six-vector bracket by 4-brackets linear in ``leading``.

    The leading vector is written by Cramer's rule over the four chain
    vectors other than itself and its antipode, which gives
    ``pc * dividend = sum(q_d * d)`` with pseudocoefficient pc the bracket of
    that basis. Returns (quotients by divisor, pc).
    """
    seq = dividend.seq
    if len(seq) != 6 or seq.count(leading) != 1:
        raise ValueError("dividend must be a six-vector bracket containing the leading vector once")
    divs = []
    for d in divisors:
        if not (d.kind == SQ and len(d.seq) == 4 and d.seq.count(leading) == 1):
            raise ValueError(f"divisor {render_atom(d)} is not linear in {render_sym(leading)}")
        sign, c = Poly.atom(d).lead()
        divs.append((c[0], sign))
    k = seq.index(leading)
    antipode = seq[(k + 3) % 6]
    basis = [v for v in seq if v not in (leading, antipode)]
    pc = Poly.sq(*basis)
    total = ZERO
    for i, b in enumerate(basis):
        coef = Poly.sq(*(leading if j == i else basis[j] for j in range(4)))
        t = list(seq)
        t[k] = b
        total = total + coef * Poly.atom(Bracket(dividend.kind, t))
    total, _ = settle(total)
    quotients: Dict[Bracket, Poly] = {}
    for c, m in total:
        for d, dsign in divs:
            if d in m:
                rest = list(m)
                rest.remove(d)
                quotients[d] = quotients.get(d, ZERO) + Poly.monomial(c * dsign, rest)
                break
        else:
            raise ValueError("a remainder term contains none of the divisors")
    return {Bracket(SQ, d.seq): q for d, q in quotients.items()}, pc


# ---------------------------------------------------------------- symmetry check


def check_equivalence_symmetry(a: Poly, b: Poly, swap: Mapping[Sym, Sym]) -> Tuple[bool, int]:
    """Whether renaming ``a`` by ``swap`` gives +b or -b."""
    r = rename(a, swap)
    if r == b:
        return True, 1
    if r == -b:
        return True, -1
    return False, 0


# ---------------------------------------------------------------- the engine


class Engine:
    def __init__(self, cfg: Configuration, evaluators: Sequence[Evaluator]):
        self.cfg = cfg
        self.evs = list(evaluators)
        self.rel = _relevance(cfg)
        self.order = {s: i for i, (s, _) in enumerate(cfg.constructed)}
        self.removed = {m[0] for r in cfg.removed for _, m in r if len(m) == 1}

    # numeric guards

    def nonzero(self, p: Poly) -> bool:
        return all(ev.poly(p) != 0 for ev in self.evs)

    def verify(self, step: Step) -> None:
        for k, ev in enumerate(self.evs):
            if ev.poly(step.before) != ev.poly(step.delta) * ev.poly(step.after):
                step.check = "fail"
                raise VerificationError(step, k)
        step.check = "pass"

    # queries

    def pending(self, a: Atom) -> bool:
        return any(s in self.order for s in a.seq)

    def _working(self, mono) -> Atom:
        def key(a):
            length = len(a.seq) if isinstance(a, Bracket) else 0
            return (a in self.removed, length, _has_composite(a) or self.pending(a), a.key)
        return max(mono, key=key)

    # extraction

    def split_factor(self, p: Poly) -> Tuple[Poly, Poly]:
        """(factor, rest) with p == factor * rest."""
        terms = list(p)
        if len(terms) == 1:
            c, m = terms[0]
            if not m:
                return (Poly.const(c), ONE) if c != 1 else (ONE, p)
            w = self._working(m)
            rest = list(m)
            rest.remove(w)
            return Poly.monomial(c, rest), Poly.atom(w)
        ws = [self._working(m) for _, m in terms]
        w = ws[0]
        if isinstance(w, Bracket) and len(w.seq) > 4 and all(x == w and m.count(w) == 1 for x, (_, m) in zip(ws, terms)):
            cof = p.divide_monomial(1, (w,))
            return cof, Poly.atom(w)
        g, shared = common_factor(p)
        return Poly.monomial(g, shared), p.divide_monomial(g, shared)

    def compress(self, p: Poly) -> Tuple[Poly, List[str]]:
        """Shorten a polynomial with factorizations and syzygies."""
        notes = []
        while p.term_count() > 1:
            r = self.contract(p)
            if r is None:
                break
            rule, note, p = r
            notes.append(note)
        return p, notes

    def contract(self, p: Poly):
        terms = list(p)
        for (c1, m1), (c2, m2) in itertools.combinations(terms, 2):
            sub = Poly({m1: c1, m2: c2})
            r = geo.clifford_factor(sub)
            if r is not None:
                new = p - sub + r[0]
                if new.term_count() < p.term_count():
                    return "clifford-factor", r[2], new
        if p.term_count() >= 2:
            for rule, fn in (("gp-contract", geo.gp_contract), ("ib-contract", geo.inner_bracket_contract)):
                r = fn(p)
                if r is not None and r.term_count() < p.term_count():
                    return rule, rule, r
        return None

    def extract(self, p: Poly, log: _Log, stage: str) -> Poly:
        if p.is_zero():
            return p
        factor, rest = self.split_factor(p)
        if factor == ONE:
            return p
        notes: List[str] = []
        if factor.term_count() > 1:
            factor, notes = self.compress(factor)
        if not self.nonzero(factor):
            return p
        step = log.add(Step("factor-extract", render_poly(factor), stage, p, rest, delta=factor,
                            note=", ".join(notes)))
        log.ledger.add(factor, len(log.steps) - 1, step.note)
        return rest

    # moves

    def _prop1(self, p: Poly):
        for atom in _brackets(p):
            if not any(s.kind == DUAL for s in atom.seq):
                continue
            for seq, sign in geo.orbit_members(atom):
                b = Bracket(atom.kind, seq)
                plain = set(seq)
                for i in range(len(seq)):
                    pivots = geo.duality_pivots(b, i)
                    if not pivots:
                        continue
                    pivots.sort(key=lambda v: (v not in plain, v.key))
                    r = geo.null_duality(b, i, pivots[0])
                    if r is not None:
                        locus = f"{render_atom(atom)} pivot {render_sym(pivots[0])}"
                        return "null-duality", locus, p.replace_atom(atom, sign * r), ""
        return None

    def _meet_candidates(self, p: Poly):
        for atom in _brackets(p):
            seq = atom.seq
            for run in meet_runs(seq):
                options = []
                for pos in run:
                    options.append([pl.split for pl in rank_splits(atom, pos)])
                for combo in itertools.product(*[range(len(o)) for o in options]):
                    splits = [options[k][j] for k, j in enumerate(combo)]
                    raw = expand_positions(atom.kind, seq, run, splits)
                    new, _ = settle(p.replace_atom(atom, raw))
                    plain, rules = settle(p.replace_atom(atom, raw), macros=False)
                    bases = tuple(sorted(_meet_of(seq[i]).args[0].key for i in run))
                    yield atom, run, splits, combo, bases, new, plain, rules

    def _extracted_terms(self, p: Poly) -> int:
        if p.is_zero():
            return 0
        _, rest = self.split_factor(p)
        return rest.term_count()

    def _meets(self, p: Poly):
        best = None
        for atom, run, splits, combo, bases, new, plain, rules in self._meet_candidates(p):
            key = (self._extracted_terms(new), new.term_count(), _long_length(new), bases, run[0], combo)
            if best is None or key < best[0]:
                best = (key, atom, run, splits, plain, rules)
        if best is None:
            return None
        _, atom, run, splits, new, rules = best
        locus = " ".join(f"{render_sym(_meet_of(atom.seq[i]))}:{s}" for i, s in zip(run, splits))
        return "meet-expand-" + "".join(splits), f"{locus} in {render_atom(atom)}", new, ", ".join(rules)

    def _duals(self, p: Poly):
        for atom in _brackets(p):
            if any(_meet_of(s) for s in atom.seq):
                continue
            r = geo.strip_duals(atom)
            if r is not None:
                return "dual-symmetry", render_atom(atom), p.replace_atom(atom, r), ""
        return None

    def _wedges(self, p: Poly):
        best = None
        for atom in _brackets(p):
            for i, s in enumerate(atom.seq):
                if s.kind != WEDGE:
                    continue
                r = geo.wedge_expand(atom, i)
                new = p.replace_atom(atom, r)
                key = (settle(new)[0].term_count(), new.term_count(), _total_length(new), atom.key, i)
                if best is None or key < best[0]:
                    best = (key, atom, i, new)
        if best is None:
            return None
        _, atom, i, new = best
        return "wedge-expand", f"{render_sym(atom.seq[i])} in {render_atom(atom)}", new, ""

    def _contractions(self, p: Poly):
        if p.term_count() < 2:
            return None
        r = self.contract(p)
        if r is None:
            return None
        rule, note, new = r
        return rule, note, new, note

    def next_move(self, p: Poly):
        for fn in (self._contractions, self._prop1, self._meets, self._duals, self._wedges):
            mv = fn(p)
            if mv is not None:
                return mv
        return None

    def settle_steps(self, p: Poly, log: _Log, stage: str) -> Poly:
        for atom in _brackets(p):
            out, rules = simplify_atom(atom)
            if rules:
                new = p.replace_atom(atom, out)
                rule = rules[0]
                log.add(Step(rule, render_atom(atom), stage, p, new, note=", ".join(rules)))
                p = new
        return p

    def reduce(self, p: Poly, log: _Log, stage: str) -> Poly:
        p = self.settle_steps(p, log, stage)
        for _ in range(MAX_STEPS):
            p = self.extract(p, log, stage)
            if p.is_zero():
                return p
            mv = self.next_move(p)
            if mv is None:
                return p
            rule, locus, new, note = mv
            log.add(Step(rule, locus, stage, p, new, note=note))
            p = self.settle_steps(new, log, stage)
        return p

    # elimination rounds

    def eliminate_atom(self, atom: Atom, names, log: _Log, stage: str, arrangement=None) -> Poly:
        """Rearrange ``atom`` by neighbour relevance, then substitute ``names``."""
        p = Poly.atom(atom)
        if isinstance(atom, Inner):
            sign, seq, kind = 1, atom.seq, ANG
        else:
            sign, seq = arrangement or rearrange_neighbors(atom, self.cfg)
            kind = atom.kind
            if seq != atom.seq:
                text = ("-" if sign < 0 else "") + render_atom(Bracket(kind, seq))
                log.add(Step("rearrange", render_atom(atom), stage, p, p, after_text=text))
        new = sign * eliminate_seq(self.cfg, names, kind, seq)
        locus = " ".join(render_sym(s) for s in sorted(names, key=lambda s: -self.order[s]))
        log.add(Step("eliminate", locus, stage, p, new))
        return new

    def subderive(self, atom: Atom, names, stage: str, arrangement=None) -> Tuple[Poly, _Log]:
        log = _Log()
        p = self.eliminate_atom(atom, names, log, stage, arrangement)
        p = self.reduce(p, log, stage)
        return log.ledger_product() * p, log

    def choices(self, atom: Atom):
        pts = sorted({s for s in atom.seq if s in self.order}, key=lambda s: -self.order[s])
        out = [(s,) for s in pts]
        if len(pts) > 1:
            out.append(tuple(pts))
        return out

    def pending_count(self, p: Poly) -> int:
        return sum(1 for _, m in p for a in m for s in a.seq if s in self.order)

    def round2(self, main: Poly, log: _Log, stage: str = "round2") -> Poly:
        for _ in range(MAX_STEPS):
            if main.is_zero():
                return main
            targets = [a for a in main.atoms() if self.pending(a)]
            if not targets:
                return main
            atom = min(targets, key=lambda a: (len(a.seq), a.key))
            sub_stage = f"{stage} {render_atom(atom)}"
            best = None
            arrangements = [None] if isinstance(atom, Inner) else neighbour_arrangements(atom, self.cfg)
            options = itertools.product(self.choices(atom), arrangements)
            for rank, (names, arr) in enumerate(options):
                value, sub = self.subderive(atom, names, sub_stage, arr)
                key = (sub.max_terms(), value.term_count(), self.pending_count(value), _total_length(value), rank)
                if best is None or key < best[0]:
                    best = (key, value, sub)
            _, value, sub = best
            log.steps.extend(sub.steps)
            new = main.replace_atom(atom, value)
            log.add(Step("substitute", render_atom(atom), stage, main, new))
            main = self.reduce(new, log, stage)
        return main

    def round1(self, log: _Log) -> Poly:
        main = self.cfg.conclusion
        stage = "round1"
        atoms = [a for a in main.atoms() if self.pending(a)]
        if main.term_count() == 1 and len(atoms) == 1 and list(main)[0] == (1, (atoms[0],)):
            atom = atoms[0]
            names = [s for s in atom.seq if s in self.order]
            main = self.eliminate_atom(atom, names, log, stage)
        else:
            for atom in atoms:
                names = [s for s in atom.seq if s in self.order]
                sub = _Log()
                value = self.eliminate_atom(atom, names, sub, stage)
                log.steps.extend(sub.steps)
                new = main.replace_atom(atom, value)
                log.add(Step("substitute", render_atom(atom), stage, main, new))
                main = new
        return self.reduce(main, log, stage)


def _matches(residual: Poly, target: Poly) -> bool:
    if residual.is_zero() or target.is_zero():
        return False
    tatoms = [a for _, m in target for a in m]
    if target.term_count() != 1 or not tatoms:
        return residual == target or residual == -target
    return all(any(a in m for _, m in residual) for a in tatoms) and residual.term_count() == 1


def prove(cfg: Configuration, samples: int = 3, seed=DEFAULT_SEED) -> ProofTrace:
    """Run the elimination strategy on ``cfg`` with exact checks at ``samples`` points."""
    if samples < 1:
        raise ValueError("at least one verification sample is required")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    evs = [Evaluator(sample_instance(cfg, rng)) for _ in range(samples)]
    eng = Engine(cfg, evs)
    log = _Log()
    main = eng.round1(log)
    main = eng.round2(main, log)
    for i, step in enumerate(log.steps):
        step.index = i
        eng.verify(step)
    outcome: object
    matched = None
    if main.is_zero():
        outcome = Proved()
    elif cfg.goal == ZERO_GOAL:
        removed = any(main == r or main == -r for r in cfg.removed)
        outcome = Proved() if removed else Stuck(main)
    else:
        outcome = ReducedTo(main)
        if cfg.goal == FACTOR_GOAL:
            matched = _matches(main, cfg.target)
    return ProofTrace(
        config=cfg.name, steps=log.steps, outcome=outcome, residual=main, ledger=log.ledger,
        conclusion=cfg.conclusion, goal=cfg.goal, target_matched=matched, samples=samples,
        seed=seed, elapsed=time.perf_counter() - t0,
    )
