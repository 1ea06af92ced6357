"""Configurations: free points, constructed points and a conclusion.

File format (one statement per line, ``#`` starts a comment)::

    free 1 2 3 4 5
    point 1' = linemeet (2 3) (5 1)
    point 1'' = circlemeet 1 : (1' 2) (5 5')
    point 4 = center (0 1 2)
    removed [e 1 2 3]
    conclude [1'' 2'' 3'' 4''] = 0

``conclude X = 0`` asks for a proof that X vanishes (or, with ``removed``
brackets, that X equals a ledger product times a removed bracket).
``conclude X factor-of B`` asks for a reduction of X whose residual contains
the bracket B. A bare ``conclude X`` just reduces X.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from . import cga
from .core import (
    E, ParseError, Poly, Sym, meet, nullify, parse_poly, point, render_poly,
    render_sym, wedge_dual, Evaluator,
)

ZERO_GOAL = "zero"
FACTOR_GOAL = "factor"
REDUCE_GOAL = "reduce"


class ConfigError(ParseError):
    pass


class DegenerateSample(ValueError):
    """A random sample made some construction undefined; draw another."""


def center_expr(a: Sym, b: Sym, c: Sym) -> Sym:
    """Centre of circle abc as N_e((a^b^c)~)."""
    if len({a, b, c}) < 3:
        raise ValueError("center needs three distinct points")
    return nullify(wedge_dual(a, b, c), E)


def circle_meet_expr(p: Sym, a: Sym, b: Sym, c: Sym, d: Sym) -> Sym:
    """Second intersection of circles pab and pcd as N_p((a^b) v_p (c^d)).

    With p = e the circles are the lines ab and cd.
    """
    if a == b or c == d:
        raise ValueError("circlemeet needs two distinct points on each circle")
    if p in (a, b, c, d):
        raise ValueError("the shared point cannot repeat inside a pair")
    return nullify(meet(p, a, b, c, d), p)


@dataclass(frozen=True)
class Constructor:
    kind: str  # "center" | "circlemeet" | "linemeet"
    args: Tuple[Sym, ...]

    @property
    def base(self) -> Sym:
        if self.kind == "circlemeet":
            return self.args[0]
        return E

    def expr(self) -> Sym:
        if self.kind == "center":
            return center_expr(*self.args)
        if self.kind == "linemeet":
            return circle_meet_expr(E, *self.args)
        return circle_meet_expr(*self.args)

    def relevant(self) -> Tuple[Sym, ...]:
        """Symbols the constructed point is built from, base included."""
        if self.kind == "circlemeet":
            return self.args
        return (E,) + self.args

    def render(self) -> str:
        r = [render_sym(s) for s in self.args]
        if self.kind == "center":
            return "center (%s %s %s)" % tuple(r)
        if self.kind == "linemeet":
            return "linemeet (%s %s) (%s %s)" % tuple(r)
        return "circlemeet %s : (%s %s) (%s %s)" % tuple(r)


@dataclass
class Configuration:
    name: str = ""
    free: List[Sym] = field(default_factory=list)
    constructed: List[Tuple[Sym, Constructor]] = field(default_factory=list)
    conclusion: Optional[Poly] = None
    goal: str = ZERO_GOAL
    target: Optional[Poly] = None
    removed: List[Poly] = field(default_factory=list)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return (self.free, self.constructed, self.conclusion, self.goal, self.target, self.removed) == (
            other.free, other.constructed, other.conclusion, other.goal, other.target, other.removed)

    @property
    def symbols(self) -> Dict[str, Sym]:
        out = {s.name: s for s in self.free}
        out.update((s.name, s) for s, _ in self.constructed)
        return out

    def constructor(self, s: Sym) -> Optional[Constructor]:
        for t, c in self.constructed:
            if t == s:
                return c
        return None

    def construction_index(self, s: Sym) -> int:
        for i, (t, _) in enumerate(self.constructed):
            if t == s:
                return i
        return -1

    def is_constructed(self, s: Sym) -> bool:
        return self.construction_index(s) >= 0


def _split_args(text: str) -> List[List[str]]:
    groups, cur, depth = [], None, 0
    for tok in text.replace("(", " ( ").replace(")", " ) ").split():
        if tok == "(":
            depth += 1
            cur = []
        elif tok == ")":
            depth -= 1
            groups.append(cur)
            cur = None
        elif cur is not None:
            cur.append(tok)
        else:
            raise ValueError(f"unexpected {tok!r}")
    if depth:
        raise ValueError("unbalanced parentheses")
    return groups


def parse_config(text: str, name: str = "") -> Configuration:
    cfg = Configuration(name=name)
    syms: Dict[str, Sym] = {}
    order = 0

    def declare(nm: str, lineno: int, col: int) -> Sym:
        nonlocal order
        if nm == "e":
            raise ConfigError("'e' is reserved", col, lineno)
        if nm in syms:
            raise ConfigError(f"redeclaration of {nm!r}", col, lineno)
        if not nm.rstrip("'").isalnum():
            raise ConfigError(f"bad point name {nm!r}", col, lineno)
        order += 1
        s = point(nm, order)
        syms[nm] = s
        return s

    def lookup(nm: str, lineno: int, col: int) -> Sym:
        if nm == "e":
            return E
        if nm not in syms:
            raise ConfigError(f"unknown symbol {nm!r}", col, lineno)
        return syms[nm]

    def poly(src: str, lineno: int, col: int) -> Poly:
        try:
            return parse_poly(src, syms)
        except ParseError as exc:
            raise ConfigError(exc.msg, col + exc.pos, lineno) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        head, _, rest = line.strip().partition(" ")
        rest_col = indent + len(head) + 1
        if head == "free":
            for nm in rest.split():
                cfg.free.append(declare(nm, lineno, rest_col + rest.find(nm)))
        elif head == "point":
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise ConfigError("expected '='", rest_col, lineno)
            nm = lhs.strip()
            rcol = rest_col + len(lhs) + 1
            kind, _, args = rhs.strip().partition(" ")
            try:
                if kind == "circlemeet":
                    basepart, colon, pairs = args.partition(":")
                    if not colon:
                        raise ValueError("expected ':' after the shared point")
                    groups = _split_args(pairs)
                    if len(groups) != 2 or any(len(g) != 2 for g in groups):
                        raise ValueError("circlemeet needs two pairs")
                    names = [basepart.strip()] + groups[0] + groups[1]
                elif kind == "linemeet":
                    groups = _split_args(args)
                    if len(groups) != 2 or any(len(g) != 2 for g in groups):
                        raise ValueError("linemeet needs two pairs")
                    names = groups[0] + groups[1]
                elif kind == "center":
                    groups = _split_args(args)
                    if len(groups) != 1 or len(groups[0]) != 3:
                        raise ValueError("center needs three points")
                    names = groups[0]
                else:
                    raise ValueError(f"unknown constructor {kind!r}")
            except ValueError as exc:
                raise ConfigError(str(exc), rcol, lineno) from None
            argsyms = tuple(lookup(a, lineno, rcol) for a in names)
            con = Constructor(kind, argsyms)
            try:
                con.expr()
            except ValueError as exc:
                raise ConfigError(str(exc), rcol, lineno) from None
            s = declare(nm, lineno, rest_col)
            cfg.constructed.append((s, con))
        elif head == "removed":
            cfg.removed.append(poly(rest, lineno, rest_col))
        elif head == "conclude":
            if cfg.conclusion is not None:
                raise ConfigError("more than one conclusion", indent, lineno)
            body = rest.strip()
            if not body:
                raise ConfigError("empty conclusion", rest_col, lineno)
            if "factor-of" in body:
                expr, _, tgt = body.partition("factor-of")
                if not expr.strip() or not tgt.strip():
                    raise ConfigError("malformed factor-of conclusion", rest_col, lineno)
                cfg.conclusion = poly(expr, lineno, rest_col)
                cfg.target = poly(tgt, lineno, rest_col + body.find("factor-of") + 9)
                cfg.goal = FACTOR_GOAL
            elif body.endswith("= 0") or body.endswith("=0"):
                cfg.conclusion = poly(body[:body.rfind("=")], lineno, rest_col)
                cfg.goal = ZERO_GOAL
            else:
                cfg.conclusion = poly(body, lineno, rest_col)
                cfg.goal = REDUCE_GOAL
            if cfg.conclusion.is_zero():
                raise ConfigError("conclusion is identically zero", rest_col, lineno)
        else:
            raise ConfigError(f"unknown statement {head!r}", indent, lineno)
    if cfg.conclusion is None:
        raise ConfigError("missing conclusion", 0, max(1, len(text.splitlines())))
    return cfg


def render_config(cfg: Configuration) -> str:
    lines = []
    if cfg.free:
        lines.append("free " + " ".join(s.name for s in cfg.free))
    for s, con in cfg.constructed:
        lines.append(f"point {s.name} = {con.render()}")
    for r in cfg.removed:
        lines.append("removed " + render_poly(r))
    c = render_poly(cfg.conclusion)
    if cfg.goal == ZERO_GOAL:
        lines.append(f"conclude {c} = 0")
    elif cfg.goal == FACTOR_GOAL:
        lines.append(f"conclude {c} factor-of {render_poly(cfg.target)}")
    else:
        lines.append(f"conclude {c}")
    return "\n".join(lines) + "\n"


def _proportional(u: cga.Multivector, v: cga.Multivector) -> bool:
    return cga.outer_product(u, v).is_zero()


def instantiate(cfg: Configuration, sample: Mapping[Sym, Tuple[Fraction, Fraction]]) -> Dict[Sym, cga.Multivector]:
    """Exact values for every point of the configuration.

    Free points are embedded from their coordinates; constructed points are
    evaluated from their constructors without renormalization.
    """
    out: Dict[Sym, cga.Multivector] = {E: cga.EINF}
    coords = set()
    for s in cfg.free:
        if s not in sample:
            raise KeyError(f"no coordinates for free point {s.name}")
        x, y = sample[s]
        if (x, y) in coords:
            raise DegenerateSample(f"free point {s.name} repeats another point")
        coords.add((x, y))
        out[s] = cga.embed_point(x, y).mv
    ev = Evaluator(out)
    for s, con in cfg.constructed:
        v = ev.value(con.expr())
        if v.is_zero() or cga.inner_product(v, v) != 0:
            raise DegenerateSample(f"construction of {s.name} degenerates")
        for t, w in out.items():
            if _proportional(v, w):
                raise DegenerateSample(f"{s.name} coincides with {render_sym(t)}")
        out[s] = v
        ev.values[s] = v
    return out


def random_sample(cfg: Configuration, rng: random.Random, bound: int = 50, max_den: int = 20):
    return {s: (cga.random_rational(rng, bound, max_den), cga.random_rational(rng, bound, max_den)) for s in cfg.free}


def sample_instance(cfg: Configuration, rng: random.Random, tries: int = 100) -> Dict[Sym, cga.Multivector]:
    """Random non-degenerate instantiation, resampling on degeneracy."""
    for _ in range(tries):
        try:
            return instantiate(cfg, random_sample(cfg, rng))
        except DegenerateSample:
            continue
    raise DegenerateSample(f"no non-degenerate sample after {tries} tries")
