"""Symbols, atoms and polynomials of null bracket algebra.

A polynomial is a sum of rational multiples of monomials; a monomial is a
sorted tuple of atoms. Atoms are inner products ``(a.b)`` and angular or
square brackets over a cyclic sequence of symbols. Every atom is stored in a
canonical form and the sign picked up on the way is pushed into the
coefficient, so equal atoms merge.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import cga

POINT = "point"
INF = "inf"
MEET = "meet"
WEDGE = "wedge"
DUAL = "dual"
NULLIFY = "nullify"

SQ = "sq"
ANG = "ang"

Number = Union[int, Fraction]


class Sym:
    """A symbolic vector (grade 1) or, transiently, a trivector (grade 3).

    Points and ``e`` are null. Composites are built from other symbols:
    ``meet`` is the reduced meet (a^b) v_base (c^d), ``wedge`` is a^b^c,
    ``dual`` is right multiplication by the inverse pseudoscalar and
    ``nullify`` is N_base(x) = x base x / 2.
    """

    __slots__ = ("name", "kind", "args", "null", "order", "grade", "key", "_hash")

    def __init__(self, name: str, kind: str = POINT, args: Tuple["Sym", ...] = (),
                 null: bool = True, order: int = 0):
        self.name = name
        self.kind = kind
        self.args = tuple(args)
        self.null = null
        self.order = order
        if kind == WEDGE or (kind == DUAL and self.args[0].grade == 1):
            self.grade = 3
        else:
            self.grade = 1
        if kind == POINT:
            self.key = (1, order, name)
        elif kind == INF:
            self.key = (0, 0, "e")
        else:
            self.key = (2, kind, tuple(a.key for a in self.args))
        self._hash = hash(self.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, Sym) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Sym") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"Sym({render_sym(self)})"

    @property
    def composite(self) -> bool:
        return self.kind not in (POINT, INF)

    def symbols(self) -> Iterator["Sym"]:
        """Base symbols (points and e) this symbol is built from."""
        if not self.composite:
            yield self
        for a in self.args:
            yield from a.symbols()


E = Sym("e", INF, null=True)


def point(name: str, order: int = 0) -> Sym:
    if name == "e":
        return E
    return Sym(name, POINT, order=order)


def meet(base: Sym, a: Sym, b: Sym, c: Sym, d: Sym) -> Sym:
    """Reduced meet (a^b) v_base (c^d); a vector, not null in general."""
    s = Sym("", MEET, (base, a, b, c, d), null=False)
    s.name = render_sym(s)
    return s


def wedge(a: Sym, b: Sym, c: Sym) -> Sym:
    s = Sym("", WEDGE, (a, b, c), null=False)
    s.name = render_sym(s)
    return s


def dual(x: Sym) -> Sym:
    s = Sym("", DUAL, (x,), null=False)
    s.name = render_sym(s)
    return s


def wedge_dual(a: Sym, b: Sym, c: Sym) -> Sym:
    return dual(wedge(a, b, c))


def nullify(x: Sym, base: Sym) -> Sym:
    s = Sym("", NULLIFY, (x, base), null=True)
    s.name = render_sym(s)
    return s


def render_sym(s: Sym) -> str:
    if s.kind == POINT:
        return s.name
    if s.kind == INF:
        return "e"
    r = [render_sym(a) for a in s.args]
    if s.kind == MEET:
        return "{(%s %s)v_%s(%s %s)}" % (r[1], r[2], r[0], r[3], r[4])
    if s.kind == WEDGE:
        return "(%s^%s^%s)" % tuple(r)
    if s.kind == DUAL:
        return r[0] + "~"
    if s.kind == NULLIFY:
        return "N_%s(%s)" % (r[1], r[0])
    raise ValueError(s.kind)


# ---------------------------------------------------------------- atoms


class Inner:
    __slots__ = ("a", "b", "key", "_hash")

    def __init__(self, a: Sym, b: Sym):
        if b.key < a.key:
            a, b = b, a
        self.a, self.b = a, b
        self.key = (0, 2, (a.key, b.key))
        self._hash = hash(self.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, Inner) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    @property
    def seq(self) -> Tuple[Sym, Sym]:
        return (self.a, self.b)

    def __repr__(self) -> str:
        return render_atom(self)


class Bracket:
    """Angular (``ang``) or square (``sq``) bracket of a symbol sequence."""

    __slots__ = ("kind", "seq", "key", "_hash")

    def __init__(self, kind: str, seq: Sequence[Sym]):
        if kind not in (SQ, ANG):
            raise ValueError(f"unknown bracket kind {kind!r}")
        seq = tuple(seq)
        if len(seq) % 2:
            raise ValueError(f"odd-length bracket: {render_seq(seq)}")
        self.kind = kind
        self.seq = seq
        self.key = (1 if kind == ANG else 2, len(seq), tuple(s.key for s in seq))
        self._hash = hash(self.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, Bracket) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return render_atom(self)


Atom = Union[Inner, Bracket]


def render_seq(seq: Iterable[Sym]) -> str:
    return " ".join(render_sym(s) for s in seq)


def render_atom(a: Atom) -> str:
    if isinstance(a, Inner):
        return f"({render_sym(a.a)}.{render_sym(a.b)})"
    if a.kind == SQ:
        return f"[{render_seq(a.seq)}]"
    return f"<{render_seq(a.seq)}>"


def atom_symbols(a: Atom) -> Iterator[Sym]:
    for s in a.seq:
        yield from s.symbols()


def atom_has_composite(a: Atom) -> bool:
    return any(s.composite for s in a.seq)


def _seq_key(seq: Sequence[Sym]) -> tuple:
    return tuple(s.key for s in seq)


def _adjacent_null(seq: Sequence[Sym]) -> bool:
    n = len(seq)
    for i in range(n):
        a = seq[i]
        if a.null and a.grade == 1 and a == seq[(i + 1) % n]:
            return True
    return False


def _perm_sign(keys: Sequence) -> int:
    sign = 1
    ks = list(keys)
    for i in range(len(ks)):
        for j in range(i + 1, len(ks)):
            if ks[j] < ks[i]:
                sign = -sign
    return sign


def dihedral_orbit(kind: str, seq: Tuple[Sym, ...], null_swaps: bool = True) -> Optional[Dict[tuple, int]]:
    """All variants reachable by shifts, reversal and (optionally) null swaps.

    Returns a map variant -> sign relative to ``seq``, or None when the same
    variant is reached with both signs (the bracket is identically zero).
    """
    n = len(seq)
    sq = kind == SQ
    rev_sign = -1 if sum(s.grade == 3 for s in seq) % 2 else 1
    seen = {seq: 1}
    stack = [seq]
    while stack:
        s = stack.pop()
        sg = seen[s]
        nbrs = [(s[1:] + s[:1], -sg if sq else sg), (s[::-1], sg * rev_sign)]
        if null_swaps and n >= 6:
            for i in range(n):
                x = s[i]
                if x.null and x.grade == 1 and s[(i + 3) % n] == x:
                    i1, i2 = (i + 1) % n, (i + 2) % n
                    if s[i1].grade == 1 and s[i2].grade == 1:
                        t = list(s)
                        t[i1], t[i2] = s[i2], s[i1]
                        nbrs.append((tuple(t), -sg))
        for t, tg in nbrs:
            old = seen.get(t)
            if old is None:
                seen[t] = tg
                stack.append(t)
            elif old != tg:
                return None
    return seen


@lru_cache(maxsize=200000)
def _canon_bracket(kind: str, seq: Tuple[Sym, ...], null_swaps: bool) -> Tuple[int, object]:
    n = len(seq)
    all_vec = all(s.grade == 1 for s in seq)
    if n == 0:
        return (1, None) if kind == ANG else (0, None)
    if _adjacent_null(seq):
        return (0, None)
    if n == 2:
        a, b = seq
        if a.grade == b.grade:
            if kind == SQ:
                return (0, None)
            if all_vec:
                return (1, Inner(a, b))
    if kind == SQ and n == 4 and all_vec:
        keys = [s.key for s in seq]
        if len(set(keys)) < 4:
            return (0, None)
        return (_perm_sign(keys), Bracket(SQ, sorted(seq, key=lambda s: s.key)))
    orbit = dihedral_orbit(kind, seq, null_swaps)
    if orbit is None:
        return (0, None)
    best = min(orbit, key=_seq_key)
    return (orbit[best], Bracket(kind, best))


def canonicalize(atom: Atom, null_swaps: bool = True) -> Tuple[int, Optional[Atom]]:
    """Canonical representative of an atom with the accumulated sign.

    Returns ``(sign, atom)``; sign 0 means the atom vanishes identically and
    ``atom is None`` with nonzero sign means the atom is the constant ``sign``.
    With ``null_swaps=False`` only shifts and reversal are used.
    """
    if isinstance(atom, Inner):
        if atom.a == atom.b and atom.a.null:
            return (0, None)
        return (1, atom)
    return _canon_bracket(atom.kind, atom.seq, null_swaps)


# ---------------------------------------------------------------- polynomials

Monomial = Tuple[Atom, ...]


def _atom_key(a: Atom) -> tuple:
    return a.key


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, key=_atom_key))


class Poly:
    """Immutable sparse polynomial over atoms with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] = ()):
        t = {}
        for m, c in dict(terms).items():
            if c:
                t[m] = Fraction(c)
        self.terms: Dict[Monomial, Fraction] = t
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls({(): c})

    @classmethod
    def atom(cls, atom: Atom, coef: Number = 1) -> "Poly":
        sign, a = canonicalize(atom)
        if sign == 0:
            return ZERO
        if a is None:
            return cls({(): sign * Fraction(coef)})
        return cls({(a,): sign * Fraction(coef)})

    @classmethod
    def sq(cls, *seq: Sym) -> "Poly":
        return cls.atom(Bracket(SQ, seq))

    @classmethod
    def ang(cls, *seq: Sym) -> "Poly":
        return cls.atom(Bracket(ANG, seq))

    @classmethod
    def inner(cls, a: Sym, b: Sym) -> "Poly":
        return cls.atom(Inner(a, b))

    @classmethod
    def monomial(cls, coef: Number, atoms: Iterable[Atom]) -> "Poly":
        out = cls.const(coef)
        for a in atoms:
            out = out * cls.atom(a)
        return out

    # queries
    def __iter__(self) -> Iterator[Tuple[Fraction, Monomial]]:
        for m in sorted(self.terms, key=lambda m: tuple(a.key for a in m)):
            yield self.terms[m], m

    def term_count(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or list(self.terms) == [()]

    def const_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def atoms(self) -> List[Atom]:
        seen = {}
        for m in self.terms:
            for a in m:
                seen[a] = None
        return sorted(seen, key=_atom_key)

    def lead(self) -> Tuple[Fraction, Monomial]:
        return next(iter(self))

    # ring operations
    def __add__(self, other: "Poly | Number") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Poly(t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly | Number") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other: Number) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other: "Poly | Number") -> "Poly":
        if not isinstance(other, Poly):
            return Poly({m: c * other for m, c in self.terms.items()})
        t: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                t[m] = t.get(m, 0) + ca * cb
        return Poly(t)

    def __rmul__(self, other: Number) -> "Poly":
        return self * other

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({render_poly(self)})"

    # structure
    def substitute(self, fn: Callable[[Atom], Optional["Poly"]]) -> "Poly":
        """Replace every atom ``a`` with ``fn(a)`` unless it returns None."""
        cache: Dict[Atom, Poly] = {}
        out = ZERO
        for m, c in self.terms.items():
            term = Poly.const(c)
            for a in m:
                if a not in cache:
                    r = fn(a)
                    cache[a] = Poly({(a,): 1}) if r is None else r
                term = term * cache[a]
            out = out + term
        return out

    def replace_atom(self, atom: Atom, value: "Poly") -> "Poly":
        return self.substitute(lambda a: value if a == atom else None)

    def divide_monomial(self, coef: Number, atoms: Sequence[Atom]) -> "Poly":
        """Exact division by ``coef * prod(atoms)``; every term must contain the atoms."""
        need = Counter(atoms)
        t = {}
        for m, c in self.terms.items():
            have = Counter(m)
            if need - have:
                raise ValueError("monomial does not divide the polynomial")
            rest = tuple(sorted((have - need).elements(), key=_atom_key))
            t[rest] = t.get(rest, 0) + c / Fraction(coef)
        return Poly(t)


ZERO = Poly()
ONE = Poly.const(1)


def _frac_gcd(values: Sequence[Fraction]) -> Fraction:
    num = 0
    den = 1
    for v in values:
        num = gcd(num, v.numerator)
        den = den * v.denominator // gcd(den, v.denominator)
    return Fraction(num, den)


def common_factor(p: Poly, keep: Optional[Callable[[Atom], bool]] = None) -> Tuple[Fraction, Tuple[Atom, ...]]:
    """Rational content and the multiset of atoms shared by all terms.

    The rational part takes the sign of the leading term so the cofactor's
    leading coefficient is positive. Atoms for which ``keep`` is true are
    never reported as common.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no common factor")
    terms = list(p)
    shared = None
    for _, m in terms:
        cm = Counter(a for a in m if not (keep and keep(a)))
        shared = cm if shared is None else shared & cm
    g = _frac_gcd([c for c, _ in terms])
    if terms[0][0] < 0:
        g = -g
    return g, tuple(sorted(shared.elements(), key=_atom_key))


# ---------------------------------------------------------------- ledger


@dataclass
class LedgerEntry:
    factor: Poly
    step: int
    note: str = ""


@dataclass
class FactorLedger:
    entries: List[LedgerEntry] = field(default_factory=list)

    def add(self, factor: Poly, step: int = -1, note: str = "") -> None:
        if factor.is_zero():
            raise ValueError("a ledger factor cannot be zero")
        if factor == ONE:
            return
        self.entries.append(LedgerEntry(factor, step, note))

    def product(self) -> Poly:
        out = ONE
        for e in self.entries:
            out = out * e.factor
        return out

    def __len__(self) -> int:
        return len(self.entries)

    def render(self) -> List[str]:
        return [render_poly(e.factor) for e in self.entries]


def extract_common_factor(p: Poly, ledger: FactorLedger, step: int = -1, note: str = "",
                          keep: Optional[Callable[[Atom], bool]] = None) -> Poly:
    """Move the common rational and atom factor of ``p`` into ``ledger``."""
    g, shared = common_factor(p, keep)
    if g == 1 and not shared:
        return p
    ledger.add(Poly.monomial(g, shared), step, note)
    return p.divide_monomial(g, shared)


def term_count(p: Poly) -> int:
    return p.term_count()


# ---------------------------------------------------------------- rendering


def render_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_term(c: Fraction, m: Monomial) -> str:
    body = "".join(render_atom(a) for a in m)
    if not body:
        return render_coef(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return render_coef(c) + body


def render_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for c, m in p:
        if not out:
            out.append(render_term(c, m))
        elif c < 0:
            out.append(" - " + render_term(-c, m))
        else:
            out.append(" + " + render_term(c, m))
    return "".join(out)


# ---------------------------------------------------------------- evaluation


class UnassignedSymbol(KeyError):
    pass


class Evaluator:
    """Exact evaluation of symbols, atoms and polynomials at one assignment.

    Composite symbols are resolved from their arguments; a meet takes the
    value of its left split [base a c d] b - [base b c d] a.
    """

    def __init__(self, assignment: Mapping[Sym, cga.Multivector]):
        self.values: Dict[Sym, cga.Multivector] = {E: cga.EINF}
        self.values.update(assignment)
        self._atoms: Dict[Atom, Fraction] = {}

    def value(self, s: Sym) -> cga.Multivector:
        v = self.values.get(s)
        if v is not None:
            return v
        if not s.composite:
            raise UnassignedSymbol(render_sym(s))
        a = [self.value(x) for x in s.args]
        if s.kind == MEET:
            base, p, q, r, t = a
            v = cga.square_bracket_num([base, p, r, t]) * q - cga.square_bracket_num([base, q, r, t]) * p
        elif s.kind == WEDGE:
            v = cga.wedge(*a)
        elif s.kind == DUAL:
            v = cga.dual(a[0])
        elif s.kind == NULLIFY:
            x, base = a
            v = cga.chain_product([x, base, x]) * Fraction(1, 2)
        else:
            raise ValueError(s.kind)
        self.values[s] = v
        return v

    def atom(self, a: Atom) -> Fraction:
        r = self._atoms.get(a)
        if r is None:
            if isinstance(a, Inner):
                r = cga.inner_product(self.value(a.a), self.value(a.b))
            else:
                prod = cga.chain_product([self.value(s) for s in a.seq])
                r = prod.scalar_part() if a.kind == ANG else cga.bracket(prod)
            self._atoms[a] = r
        return r

    def poly(self, p: Poly) -> Fraction:
        total = Fraction(0)
        for m, c in p.terms.items():
            t = c
            for a in m:
                if not t:
                    break
                t *= self.atom(a)
            total += t
        return total


def evaluate(p: Poly, assignment: Mapping[Sym, cga.Multivector]) -> Fraction:
    return Evaluator(assignment).poly(p)


# ---------------------------------------------------------------- parsing


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int = 0, line: int = 0):
        self.msg, self.pos, self.line = msg, pos, line
        super().__init__(f"{msg} (column {pos + 1})" if not line else f"line {line}, column {pos + 1}: {msg}")


_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")


class _Reader:
    def __init__(self, text: str, symbols: Mapping[str, Sym]):
        self.text = text
        self.i = 0
        self.symbols = symbols

    def ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i] in " \t":
            self.i += 1

    def peek(self, k: int = 1) -> str:
        self.ws()
        return self.text[self.i:self.i + k]

    def expect(self, s: str) -> None:
        if self.peek(len(s)) != s:
            raise ParseError(f"expected {s!r}", self.i)
        self.i += len(s)

    def at_end(self) -> bool:
        self.ws()
        return self.i >= len(self.text)

    def name(self) -> str:
        self.ws()
        j = self.i
        while j < len(self.text) and self.text[j] in _NAME_CHARS:
            j += 1
        while j < len(self.text) and self.text[j] == "'":
            j += 1
        if j == self.i:
            raise ParseError("expected a symbol name", self.i)
        out = self.text[self.i:j]
        self.i = j
        return out

    def item(self) -> Sym:
        c = self.peek()
        if c == "{":
            self.i += 1
            self.expect("(")
            a, b = self.item(), self.item()
            self.expect(")")
            self.expect("v_")
            base = self.item()
            self.expect("(")
            c1, d1 = self.item(), self.item()
            self.expect(")")
            self.expect("}")
            s = meet(base, a, b, c1, d1)
        elif c == "(":
            self.i += 1
            a = self.item()
            self.expect("^")
            b = self.item()
            self.expect("^")
            c2 = self.item()
            self.expect(")")
            s = wedge(a, b, c2)
        elif self.peek(2) == "N_":
            self.i += 2
            base = self.item()
            self.expect("(")
            x = self.item()
            self.expect(")")
            s = nullify(x, base)
        else:
            start = self.i
            nm = self.name()
            if nm == "e":
                s = E
            elif nm in self.symbols:
                s = self.symbols[nm]
            else:
                raise ParseError(f"unknown symbol {nm!r}", start)
        while self.text[self.i:self.i + 1] == "~":
            self.i += 1
            s = dual(s)
        return s

    def seq(self, close: str) -> Tuple[Sym, ...]:
        out = []
        while self.peek() != close:
            if self.at_end():
                raise ParseError(f"unterminated bracket, expected {close!r}", self.i)
            out.append(self.item())
        self.i += 1
        return tuple(out)

    def atom(self) -> Poly:
        c = self.peek()
        start = self.i
        if c == "[":
            self.i += 1
            seq = self.seq("]")
            try:
                return Poly.sq(*seq)
            except ValueError as exc:
                raise ParseError(str(exc), start) from None
        if c == "<":
            self.i += 1
            seq = self.seq(">")
            try:
                return Poly.ang(*seq)
            except ValueError as exc:
                raise ParseError(str(exc), start) from None
        if c == "(":
            self.i += 1
            a = self.item()
            self.expect(".")
            b = self.item()
            self.expect(")")
            return Poly.inner(a, b)
        raise ParseError("expected an atom", self.i)

    def number(self) -> Optional[Fraction]:
        self.ws()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            return None
        num = int(self.text[self.i:j])
        self.i = j
        if self.text[self.i:self.i + 1] == "/":
            self.i += 1
            k = self.i
            while k < len(self.text) and self.text[k].isdigit():
                k += 1
            if k == self.i:
                raise ParseError("expected a denominator", self.i)
            den = int(self.text[self.i:k])
            self.i = k
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> Poly:
        coef = self.number()
        out = Poly.const(1 if coef is None else coef)
        got = coef is not None
        while self.peek() in ("[", "<", "("):
            out = out * self.atom()
            got = True
        if not got:
            raise ParseError("expected a term", self.i)
        return out

    def poly(self) -> Poly:
        sign = 1
        if self.peek() == "-":
            self.i += 1
            sign = -1
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = 1 if self.peek() == "+" else -1
            self.i += 1
            out = out + self.term() * sign
        return out


def parse_poly(text: str, symbols: Mapping[str, Sym]) -> Poly:
    """Parse the rendering produced by :func:`render_poly`."""
    r = _Reader(text, symbols)
    p = r.poly()
    if not r.at_end():
        raise ParseError("trailing input", r.i)
    return p


def parse_item(text: str, symbols: Mapping[str, Sym]) -> Sym:
    r = _Reader(text, symbols)
    s = r.item()
    if not r.at_end():
        raise ParseError("trailing input", r.i)
    return s
