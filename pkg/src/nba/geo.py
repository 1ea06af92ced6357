"""Rewrite rules on long geometric products inside brackets.

Every rule takes a bracket atom (a cyclic chain of vectors under an angular
or square bracket) plus a position and returns an equal polynomial, or None
when the pattern is not present. Positions are cyclic indices into the
atom's sequence as given; callers that search an atom's whole symmetry orbit
use :func:`orbit_members`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .core import (
    ANG, DUAL, MEET, NULLIFY, SQ, WEDGE, ZERO, Atom, Bracket, Inner, Poly, Sym,
    common_factor, dihedral_orbit, dual, meet, render_atom, _perm_sign,
)

HALF = Fraction(1, 2)

RULE_IDS = (
    "null-symmetry", "null-expand", "quartet", "sextet", "rational-sextet",
    "rational-octet", "clifford-factor", "gp-contract", "ib-contract",
    "null-duality", "meet-expand-L", "meet-expand-R", "dual-symmetry",
)

LEFT, RIGHT = "L", "R"


class ContextError(ValueError):
    """A meet split was requested where its base ambiguity is not annihilated."""


def _bracket(kind: str, seq: Sequence[Sym]) -> Poly:
    return Poly.atom(Bracket(kind, tuple(seq)))


def rotate(kind: str, seq: Tuple[Sym, ...], k: int) -> Tuple[Tuple[Sym, ...], int]:
    """Shift left by ``k`` with the sign of the bracket kind."""
    n = len(seq)
    k %= n
    sign = -1 if (kind == SQ and k % 2) else 1
    return seq[k:] + seq[:k], sign


@lru_cache(maxsize=50000)
def orbit_members(atom: Bracket) -> Tuple[Tuple[Tuple[Sym, ...], int], ...]:
    """Sorted symmetry variants ``(seq, sign)`` with ``atom = sign * [seq]``.

    Square brackets of four vectors are fully antisymmetric, so all 24
    orderings are listed for them.
    """
    seq = atom.seq
    if atom.kind == SQ and len(seq) == 4 and all(s.grade == 1 for s in seq):
        out = {}
        for perm in permutations(range(4)):
            out[tuple(seq[i] for i in perm)] = _perm_sign(perm)
    else:
        out = dihedral_orbit(atom.kind, seq) or {}
    return tuple(sorted(out.items(), key=lambda kv: tuple(s.key for s in kv[0])))


# ---------------------------------------------------------------- null rules


def null_swap(atom: Bracket, at: int) -> Optional[Poly]:
    """x a b x -> -x b a x, with x null at positions at-1 and at+2."""
    seq, n = atom.seq, len(atom.seq)
    if n < 4:
        return None
    x = seq[(at - 1) % n]
    if not (x.null and x.grade == 1 and seq[(at + 2) % n] == x):
        return None
    i, j = at % n, (at + 1) % n
    t = list(seq)
    t[i], t[j] = seq[j], seq[i]
    return -_bracket(atom.kind, t)


def null_expand(atom: Bracket, at: int) -> Optional[Poly]:
    """x a x -> 2(x.a) x and x a b x -> 2(x.a) b x - 2(x.b) a x at position ``at``."""
    seq, n = atom.seq, len(atom.seq)
    x = seq[at % n]
    if not (x.null and x.grade == 1):
        return None
    s, sign = rotate(atom.kind, seq, at)
    if n >= 4 and s[2] == x and s[1].grade == 1:
        # x a x R -> 2(x.a) x R
        return sign * 2 * Poly.inner(x, s[1]) * _bracket(atom.kind, (x,) + s[3:])
    if n >= 6 and s[3] == x and s[1].grade == 1 and s[2].grade == 1:
        a, b, rest = s[1], s[2], s[4:]
        return sign * 2 * (Poly.inner(x, a) * _bracket(atom.kind, (b, x) + rest)
                           - Poly.inner(x, b) * _bracket(atom.kind, (a, x) + rest))
    return None


def quartet_expand(atom: Bracket, at: int) -> Optional[Poly]:
    """x a b c x R -> 2(<xabc>[xR] + [xabc]<xR>) (square) or the angular analogue."""
    seq, n = atom.seq, len(atom.seq)
    if n < 6:
        return None
    s, sign = rotate(atom.kind, seq, at)
    x = s[0]
    if not (x.null and x.grade == 1 and s[4] == x) or any(v.grade != 1 for v in s):
        return None
    head, tail = s[:4], (x,) + s[5:]
    if atom.kind == SQ:
        out = _bracket(ANG, head) * _bracket(SQ, tail) + _bracket(SQ, head) * _bracket(ANG, tail)
    else:
        out = _bracket(ANG, head) * _bracket(ANG, tail) - _bracket(SQ, head) * _bracket(SQ, tail)
    return sign * 2 * out


def sextet_expand(atom: Bracket, at: int) -> Optional[Poly]:
    """x a b x c d x R -> 2([xabxcd]<xR> + <xabxcd>[xR]) or the angular analogue."""
    seq, n = atom.seq, len(atom.seq)
    if n < 8:
        return None
    s, sign = rotate(atom.kind, seq, at)
    x = s[0]
    if not (x.null and x.grade == 1 and s[3] == x and s[6] == x) or any(v.grade != 1 for v in s):
        return None
    head, tail = s[:6], (x,) + s[7:]
    if atom.kind == SQ:
        out = _bracket(SQ, head) * _bracket(ANG, tail) + _bracket(ANG, head) * _bracket(SQ, tail)
    else:
        out = _bracket(ANG, head) * _bracket(ANG, tail) - _bracket(SQ, head) * _bracket(SQ, tail)
    return sign * 2 * out


def rational_sextet(atom: Bracket) -> Optional[Tuple[Poly, Bracket]]:
    """[123456] = numerator / [2356] for 2, 3, 5, 6 null (angular likewise).

    -1/2 [123456][2356] = (2.3)[1256][3456] + (5.6)[1236][2345]
    -1/2 <123456>[2356] = (2.3)<1256>[3456] + (5.6)<1236>[2345]
    """
    s = atom.seq
    if len(s) != 6 or any(v.grade != 1 for v in s):
        return None
    v1, v2, v3, v4, v5, v6 = s
    if not all(v.null for v in (v2, v3, v5, v6)):
        return None
    k = atom.kind
    num = (Poly.inner(v2, v3) * _bracket(k, (v1, v2, v5, v6)) * Poly.sq(v3, v4, v5, v6)
           + Poly.inner(v5, v6) * _bracket(k, (v1, v2, v3, v6)) * Poly.sq(v2, v3, v4, v5))
    return -2 * num, Bracket(SQ, (v2, v3, v5, v6))


def rational_octet(atom: Bracket) -> Optional[Tuple[Poly, Bracket, int]]:
    """Rational expansion of an eight-vector chain; returns (numerator, denominator, pattern).

    Patterns (1, 2, 3, 5 null):
      1/2 [12341256][1235] = (2.3)[1256][125134] - (2.5)[1234][123156]
      1/2 <12341256>[1235] = (2.3)<1256>[125134] - (2.5)[1234]<123156>
      1/2 [13241526][1325] = 2(1.5)(2.5)[1324][1326] - 2(1.3)(2.3)[1524][1526]
      1/2 <13241526>[1325] = 2(1.5)(2.5)[1324]<1326> - 2(1.3)(2.3)[1524]<1526>
    """
    s = atom.seq
    if len(s) != 8 or any(v.grade != 1 for v in s):
        return None
    k = atom.kind
    a = s
    if a[0] == a[4] and a[1] == a[5]:
        v1, v2, v3, v4, _, _, v5, v6 = a
        if all(v.null for v in (v1, v2, v3, v5)):
            num = (Poly.inner(v2, v3) * _bracket(k, (v1, v2, v5, v6)) * Poly.sq(v1, v2, v5, v1, v3, v4)
                   - Poly.inner(v2, v5) * Poly.sq(v1, v2, v3, v4) * _bracket(k, (v1, v2, v3, v1, v5, v6)))
            return 2 * num, Bracket(SQ, (v1, v2, v3, v5)), 1 if k == SQ else 2
    if a[0] == a[4] and a[2] == a[6]:
        v1, v3, v2, v4, _, v5, _, v6 = a
        if all(v.null for v in (v1, v2, v3, v5)):
            num = 2 * (Poly.inner(v1, v5) * Poly.inner(v2, v5) * Poly.sq(v1, v3, v2, v4) * _bracket(k, (v1, v3, v2, v6))
                       - Poly.inner(v1, v3) * Poly.inner(v2, v3) * Poly.sq(v1, v5, v2, v4) * _bracket(k, (v1, v5, v2, v6)))
            return 2 * num, Bracket(SQ, (v1, v3, v2, v5)), 3 if k == SQ else 4
    return None


# ---------------------------------------------------------------- composites


def meet_split(m: Sym, split: str) -> List[Tuple[Poly, Sym]]:
    """Expansion of (a^b) v_p (c^d) as weighted vectors.

    Left:  [p a c d] b - [p b c d] a   (exact; the meet's numeric value)
    Right: [p a b d] c - [p a b c] d   (equal modulo a multiple of p)
    """
    if m.kind != MEET:
        raise ValueError("not a meet")
    p, a, b, c, d = m.args
    if split == LEFT:
        out = [(Poly.sq(p, a, c, d), b), (-Poly.sq(p, b, c, d), a)]
    elif split == RIGHT:
        out = [(Poly.sq(p, a, b, d), c), (-Poly.sq(p, a, b, c), d)]
    else:
        raise ValueError(f"unknown split {split!r}")
    return [(c_, v) for c_, v in out if not c_.is_zero()]


def separated(m: Sym, split: str) -> Tuple[Sym, Sym]:
    """The pair of vectors a split leaves in the chain."""
    p, a, b, c, d = m.args
    return (a, b) if split == LEFT else (c, d)


def _meet_of(item: Sym) -> Optional[Sym]:
    if item.kind == MEET:
        return item
    if item.kind == DUAL and item.args[0].kind == MEET:
        return item.args[0]
    return None


def right_split_allowed(seq: Sequence[Sym], pos: int) -> bool:
    """The base ambiguity is annihilated when the meet touches its base."""
    n = len(seq)
    m = _meet_of(seq[pos])
    base = m.args[0]
    return base.null and (seq[(pos - 1) % n] == base or seq[(pos + 1) % n] == base)


def expand_meet(atom: Bracket, pos: int, split: str) -> Poly:
    """Substitute one split of the meet at ``pos`` (possibly under a dual)."""
    seq = atom.seq
    item = seq[pos]
    m = _meet_of(item)
    if m is None:
        raise ValueError(f"no meet at position {pos} of {render_atom(atom)}")
    if split == RIGHT and not right_split_allowed(seq, pos):
        raise ContextError(f"right split of {m.name} needs its base as a neighbour")
    out = ZERO
    for coef, v in meet_split(m, split):
        if item.kind == DUAL:
            v = dual(v)
        out = out + coef * _bracket(atom.kind, seq[:pos] + (v,) + seq[pos + 1:])
    return out


def unfold_nullify(atom: Bracket, pos: int) -> Poly:
    """N_p(x) -> x p x / 2 at ``pos``."""
    seq = atom.seq
    item = seq[pos]
    if item.kind != NULLIFY:
        raise ValueError("no nullification at this position")
    x, base = item.args
    return HALF * _bracket(atom.kind, seq[:pos] + (x, base, x) + seq[pos + 1:])


def wedge_expand(atom: Bracket, pos: int) -> Optional[Poly]:
    """a^b^c -> (abc - cba)/2 at ``pos``."""
    seq = atom.seq
    item = seq[pos]
    if item.kind != WEDGE:
        return None
    a, b, c = item.args
    pre, post = seq[:pos], seq[pos + 1:]
    return HALF * (_bracket(atom.kind, pre + (a, b, c) + post) - _bracket(atom.kind, pre + (c, b, a) + post))


def strip_duals(atom: Bracket) -> Optional[Poly]:
    """Remove every dual from a bracket.

    Each ``X~ = X I^-1``; moving ``I^-1`` to the right end passes one odd item
    per step. With k duals the product carries ``I^-k``: for even k this is
    ``(-1)^(k/2)``, for odd k one ``I^-1`` remains and swaps the bracket kind
    (``<A~> = [A]`` and ``[A~] = -<A>``).
    """
    seq, n = atom.seq, len(atom.seq)
    idx = [i for i, s in enumerate(seq) if s.kind == DUAL]
    if not idx:
        return None
    sign = 1
    for i in idx:
        if (n - 1 - i) % 2:
            sign = -sign
    k = len(idx)
    plain = tuple(s.args[0] if s.kind == DUAL else s for s in seq)
    if k % 2 == 0:
        if (k // 2) % 2:
            sign = -sign
        return sign * _bracket(atom.kind, plain)
    if ((k - 1) // 2) % 2:
        sign = -sign
    if atom.kind == ANG:
        return sign * _bracket(SQ, plain)
    return -sign * _bracket(ANG, plain)


def duality_pivots(atom: Bracket, at: int) -> List[Sym]:
    """Vectors shared by the two dualized wedges following position ``at``."""
    seq, n = atom.seq, len(atom.seq)
    if n < 4:
        return []
    s, _ = rotate(atom.kind, seq, at)
    x, d1, d2 = s[0], s[1], s[2]
    if not (x.null and x.grade == 1 and s[3] == x):
        return []
    if not (d1.kind == DUAL and d2.kind == DUAL and d1.args[0].kind == WEDGE and d2.args[0].kind == WEDGE):
        return []
    w2 = d2.args[0].args
    return [v for v in d1.args[0].args if v in w2]


def null_duality(atom: Bracket, at: int, pivot: Optional[Sym] = None) -> Optional[Poly]:
    """x (p^a^b)~ (p^c^d)~ x -> -x p {(a^b) v_p (c^d)}~ x for null x.

    The sign is relative to the fixed right dual X~ = X I^-1. When the wedges
    share two vectors, ``pivot`` picks the one playing the role of p.
    """
    seq, n = atom.seq, len(atom.seq)
    if n < 4:
        return None
    s, sign = rotate(atom.kind, seq, at)
    x, d1, d2 = s[0], s[1], s[2]
    if not (x.null and x.grade == 1 and s[3] == x):
        return None
    if not (d1.kind == DUAL and d2.kind == DUAL and d1.args[0].kind == WEDGE and d2.args[0].kind == WEDGE):
        return None
    w1, w2 = d1.args[0].args, d2.args[0].args
    common = [v for v in w1 if v in w2]
    if pivot is None:
        if len(common) != 1:
            return None
        p = common[0]
    elif pivot in common and len(common) < 3:
        p = pivot
    else:
        return None
    i1, i2 = w1.index(p), w2.index(p)
    r1 = [v for v in w1 if v != p]
    r2 = [v for v in w2 if v != p]
    # moving p to the front of a^b^c costs one transposition per step
    sign *= (-1) ** i1 * (-1) ** i2
    m = dual(meet(p, r1[0], r1[1], r2[0], r2[1]))
    return -sign * _bracket(atom.kind, (x, p, m, x) + s[4:])


# ---------------------------------------------------------------- brute force


def _wick_terms(n: int, keep: int):
    """Partial matchings of range(n) leaving ``keep`` indices unmatched, with signs."""
    out = []

    def rec(rest, pairs, free):
        if not rest:
            if len(free) == keep:
                order = [i for pr in pairs for i in pr] + free
                out.append((_perm_sign(order), tuple(pairs), tuple(free)))
            return
        i, tail = rest[0], rest[1:]
        if len(free) < keep:
            rec(tail, pairs, free + [i])
        for j in tail:
            rec([t for t in tail if t != j], pairs + [(i, j)], free)

    rec(list(range(n)), [], [])
    return out


@lru_cache(maxsize=None)
def _wick_table(n: int, keep: int):
    return _wick_terms(n, keep)


def expand_vectors(kind: str, seq: Sequence[Sym]) -> Poly:
    """Bracket of a product of plain vectors as inner products and 4-brackets."""
    n = len(seq)
    keep = 0 if kind == ANG else 4
    if n < keep:
        return ZERO
    out = ZERO
    for sign, pairs, free in _wick_table(n, keep):
        t = Poly.const(sign)
        for i, j in pairs:
            t = t * Poly.inner(seq[i], seq[j])
            if t.is_zero():
                break
        if t.is_zero():
            continue
        if free:
            t = t * Poly.sq(*(seq[i] for i in free))
        out = out + t
    return out


def expand_all(atom: Atom) -> Poly:
    """Multilinear expansion of every composite, then full reduction of each
    bracket to inner products and 4-brackets. Slow; used as a cross-check."""
    if isinstance(atom, Inner):
        if not atom.a.composite and not atom.b.composite:
            return Poly.atom(atom)
        atom = Bracket(ANG, (atom.a, atom.b))
    work = Poly.atom(atom)
    while True:
        changed = False

        def step(a: Atom) -> Optional[Poly]:
            nonlocal changed
            if isinstance(a, Inner):
                if a.a.composite or a.b.composite:
                    changed = True
                    return Poly.atom(Bracket(ANG, (a.a, a.b)))
                return None
            for i, s in enumerate(a.seq):
                if s.kind == NULLIFY:
                    changed = True
                    return unfold_nullify(a, i)
            for i, s in enumerate(a.seq):
                if _meet_of(s) is not None:
                    changed = True
                    return expand_meet(a, i, LEFT)
            r = strip_duals(a)
            if r is not None:
                changed = True
                return r
            for i, s in enumerate(a.seq):
                if s.kind == WEDGE:
                    changed = True
                    return wedge_expand(a, i)
            if len(a.seq) > 4 or (a.kind == ANG and len(a.seq) > 2):
                changed = True
                return expand_vectors(a.kind, a.seq)
            return None

        work = work.substitute(step)
        if not changed:
            return work


# ---------------------------------------------------------------- factorization templates

# A template atom is (kind, vars) with kind in {"i", SQ, ANG}; a var starting
# with "*" is a tail that binds a (possibly empty) run of symbols.


class Template:
    def __init__(self, name: str, rule: str, nulls: str, lhs, rhs):
        self.name = name
        self.rule = rule
        self.nulls = set(nulls.split())
        self.lhs = lhs
        self.rhs = rhs


def _pat(text: str):
    """Tiny notation: 'i:2 3' inner, 's:1 2 5 6' square, 'a:1 2 5 6' angular."""
    kind, body = text.split(":")
    return ({"i": "i", "s": SQ, "a": ANG}[kind], tuple(body.split()))


def _term(coef, *atoms):
    return (Fraction(coef), tuple(_pat(a) for a in atoms))


TEMPLATES = [
    Template("quartet", "quartet", "x",
             _term(HALF, "s:x a b c x *R"),
             [_term(1, "a:x a b c", "s:x *R"), _term(1, "s:x a b c", "a:x *R")]),
    Template("quartet-angular", "quartet", "x",
             _term(HALF, "a:x a b c x *R"),
             [_term(1, "a:x a b c", "a:x *R"), _term(-1, "s:x a b c", "s:x *R")]),
    Template("sextet", "sextet", "x",
             _term(HALF, "s:x a b x c d x *R"),
             [_term(1, "s:x a b x c d", "a:x *R"), _term(1, "a:x a b x c d", "s:x *R")]),
    Template("sextet-angular", "sextet", "x",
             _term(HALF, "a:x a b x c d x *R"),
             [_term(1, "a:x a b x c d", "a:x *R"), _term(-1, "s:x a b x c d", "s:x *R")]),
    Template("null-expand", "null-expand", "x",
             _term(HALF, "s:x a b x *R"),
             [_term(1, "i:x a", "s:b x *R"), _term(-1, "i:x b", "s:a x *R")]),
    Template("null-expand-angular", "null-expand", "x",
             _term(HALF, "a:x a b x *R"),
             [_term(1, "i:x a", "a:b x *R"), _term(-1, "i:x b", "a:a x *R")]),
    Template("rational-sextet", "rational-sextet", "2 3 5 6",
             _term(-HALF, "s:1 2 3 4 5 6", "s:2 3 5 6"),
             [_term(1, "i:2 3", "s:1 2 5 6", "s:3 4 5 6"), _term(1, "i:5 6", "s:1 2 3 6", "s:2 3 4 5")]),
    Template("rational-sextet-angular", "rational-sextet", "2 3 5 6",
             _term(-HALF, "a:1 2 3 4 5 6", "s:2 3 5 6"),
             [_term(1, "i:2 3", "a:1 2 5 6", "s:3 4 5 6"), _term(1, "i:5 6", "a:1 2 3 6", "s:2 3 4 5")]),
    Template("rational-octet-1", "rational-octet", "1 2 3 5",
             _term(HALF, "s:1 2 3 4 1 2 5 6", "s:1 2 3 5"),
             [_term(1, "i:2 3", "s:1 2 5 6", "s:1 2 5 1 3 4"), _term(-1, "i:2 5", "s:1 2 3 4", "s:1 2 3 1 5 6")]),
    Template("rational-octet-2", "rational-octet", "1 2 3 5",
             _term(HALF, "a:1 2 3 4 1 2 5 6", "s:1 2 3 5"),
             [_term(1, "i:2 3", "a:1 2 5 6", "s:1 2 5 1 3 4"), _term(-1, "i:2 5", "s:1 2 3 4", "a:1 2 3 1 5 6")]),
    Template("rational-octet-3", "rational-octet", "1 2 3 5",
             _term(HALF, "s:1 3 2 4 1 5 2 6", "s:1 3 2 5"),
             [_term(2, "i:1 5", "i:2 5", "s:1 3 2 4", "s:1 3 2 6"), _term(-2, "i:1 3", "i:2 3", "s:1 5 2 4", "s:1 5 2 6")]),
    Template("rational-octet-4", "rational-octet", "1 2 3 5",
             _term(HALF, "a:1 3 2 4 1 5 2 6", "s:1 3 2 5"),
             [_term(2, "i:1 5", "i:2 5", "s:1 3 2 4", "a:1 3 2 6"), _term(-2, "i:1 3", "i:2 3", "s:1 5 2 4", "a:1 5 2 6")]),
]


def _atom_variants(atom: Atom, kind: str):
    """(seq, sign) views of a concrete atom compatible with a pattern kind."""
    if kind == "i":
        if isinstance(atom, Inner):
            yield (atom.a, atom.b), 1
            if atom.a != atom.b:
                yield (atom.b, atom.a), 1
        return
    if isinstance(atom, Inner):
        if kind == ANG:
            yield (atom.a, atom.b), 1
            yield (atom.b, atom.a), 1
        return
    if atom.kind != kind:
        return
    yield from orbit_members(atom)


def _unify(vars_: Tuple[str, ...], seq: Tuple[Sym, ...], binding: Dict[str, object]) -> Optional[Dict[str, object]]:
    tail = vars_[-1] if vars_ and vars_[-1].startswith("*") else None
    fixed = vars_[:-1] if tail else vars_
    if tail is None and len(fixed) != len(seq):
        return None
    if tail is not None and len(seq) < len(fixed):
        return None
    b = dict(binding)
    for v, s in zip(fixed, seq):
        old = b.get(v)
        if old is None:
            b[v] = s
        elif old != s:
            return None
    if tail is not None:
        rest = tuple(seq[len(fixed):])
        old = b.get(tail)
        if old is None:
            b[tail] = rest
        elif old != rest:
            return None
    return b


def _consistent(binding: Dict[str, object], nulls) -> bool:
    singles = [(k, v) for k, v in binding.items() if not k.startswith("*")]
    if len({v for _, v in singles}) != len(singles):
        return False
    return all(binding[k].null for k in nulls if k in binding)


def match_monomial(pattern, mono: Tuple[Atom, ...], nulls=()) -> Iterator[Tuple[Dict[str, object], int]]:
    """Bindings (with the sign of the atom views used) of a pattern monomial."""
    pats = list(pattern)
    atoms = list(mono)
    if len(pats) != len(atoms):
        return

    def rec(k, used, binding, sign):
        if k == len(pats):
            yield binding, sign
            return
        kind, vars_ = pats[k]
        for j, a in enumerate(atoms):
            if j in used:
                continue
            for seq, sg in _atom_variants(a, kind):
                b = _unify(vars_, seq, binding)
                if b is not None and _consistent(b, nulls):
                    yield from rec(k + 1, used | {j}, b, sign * sg)

    yield from rec(0, frozenset(), {}, 1)


def instantiate_term(term, binding) -> Poly:
    coef, atoms = term
    out = Poly.const(coef)
    for kind, vars_ in atoms:
        seq = []
        for v in vars_:
            val = binding[v]
            if v.startswith("*"):
                seq.extend(val)
            else:
                seq.append(val)
        if kind == "i":
            out = out * Poly.inner(seq[0], seq[1])
        else:
            out = out * _bracket(kind, seq)
        if out.is_zero():
            return out
    return out


def _ratio(p: Poly, q: Poly) -> Optional[Fraction]:
    """mu with p == mu * q, when it exists."""
    if p.is_zero() or q.is_zero() or set(p.terms) != set(q.terms):
        return None
    mu = None
    for m, c in p.terms.items():
        r = c / q.terms[m]
        if mu is None:
            mu = r
        elif r != mu:
            return None
    return mu


def clifford_factor(p: Poly) -> Optional[Tuple[Poly, str, str]]:
    """Factor a 2-term polynomial as one (long-bracket) term.

    Returns (factored polynomial, rule id, template name) or None. The common
    monomial factor of the two terms is taken out before matching and put
    back afterwards.
    """
    if p.term_count() != 2:
        return None
    g, shared = common_factor(p)
    q = p.divide_monomial(g, shared)
    outside = Poly.monomial(g, shared)
    for tpl in TEMPLATES:
        for _, mono in q:
            for binding, _ in match_monomial(tpl.rhs[0][1], mono, tpl.nulls):
                rhs = instantiate_term(tpl.rhs[0], binding) + instantiate_term(tpl.rhs[1], binding)
                if rhs.term_count() != 2:
                    continue
                mu = _ratio(q, rhs)
                if mu is None:
                    continue
                lhs = instantiate_term(tpl.lhs, binding)
                if lhs.term_count() != 1:
                    continue
                return outside * mu * lhs, tpl.rule, tpl.name
    return None


# ---------------------------------------------------------------- contractions


def _gp_identity(xs: Sequence[Sym], ys: Sequence[Sym]) -> Poly:
    """sum_i (-1)^i [X without x_i][x_i Y] over five x's; identically zero."""
    out = ZERO
    for i in range(5):
        rest = tuple(xs[:i]) + tuple(xs[i + 1:])
        out = out + (-1) ** i * Poly.sq(*rest) * Poly.sq(xs[i], *ys)
    return out


def _ib_identity(y: Sym, xs: Sequence[Sym]) -> Poly:
    """sum_i (-1)^i (y.x_i)[X without x_i] over five x's; identically zero."""
    out = ZERO
    for i in range(5):
        rest = tuple(xs[:i]) + tuple(xs[i + 1:])
        out = out + (-1) ** i * Poly.inner(y, xs[i]) * Poly.sq(*rest)
    return out


def _four_brackets(m) -> List[Bracket]:
    return [a for a in m if isinstance(a, Bracket) and a.kind == SQ and len(a.seq) == 4]


def _contract_with(p: Poly, identities) -> Optional[Poly]:
    """Best use of a zero identity: subtract a multiple that shortens ``p``."""
    best = None
    for ident, mono in identities:
        if ident.is_zero():
            continue
        for im, ic in ident.terms.items():
            # scale the identity so that term ``im`` matches a term of p
            for pm, pc in p.terms.items():
                extra = _divides(im, pm)
                if extra is None:
                    continue
                scaled = ident * Poly.monomial(pc / ic, extra)
                cand = p - scaled
                if cand.term_count() < p.term_count() and (best is None or cand.term_count() < best.term_count()):
                    best = cand
    return best


def _divides(small, big) -> Optional[Tuple[Atom, ...]]:
    from collections import Counter

    need, have = Counter(small), Counter(big)
    if need - have:
        return None
    return tuple((have - need).elements())


def gp_contract(p: Poly) -> Optional[Poly]:
    """Shorten ``p`` with a Grassmann-Pluecker syzygy built from its own brackets."""
    idents = []
    seen = set()
    for _, m in p:
        bs = _four_brackets(m)
        for b1, b2 in permutations(bs, 2):
            for xi in b2.seq:
                if xi in b1.seq:
                    continue
                xs = tuple(b1.seq) + (xi,)
                ys = tuple(v for v in b2.seq if v != xi)
                key = (frozenset(xs), frozenset(ys))
                if key in seen:
                    continue
                seen.add(key)
                idents.append((_gp_identity(xs, ys), None))
    return _contract_with(p, idents)


def inner_bracket_contract(p: Poly) -> Optional[Poly]:
    """Shorten ``p`` with an inner-product bracket syzygy built from its atoms."""
    idents = []
    seen = set()
    for _, m in p:
        inners = [a for a in m if isinstance(a, Inner)]
        for b in _four_brackets(m):
            for a in inners:
                for y, x in ((a.a, a.b), (a.b, a.a)):
                    if x in b.seq:
                        continue
                    xs = tuple(b.seq) + (x,)
                    key = (y, frozenset(xs))
                    if key in seen:
                        continue
                    seen.add(key)
                    idents.append((_ib_identity(y, xs), None))
    return _contract_with(p, idents)
