import random
import sys
from functools import lru_cache

import pytest

from nba import cga
from nba.breefs import prove
from nba.cli import read_config
from nba.core import E, Evaluator, parse_poly, point

NAMES = ["0", "1", "2", "3", "4", "5", "6", "7", "8", "1'", "2'", "3'"]
SYMS = {nm: point(nm, i + 1) for i, nm in enumerate(NAMES)}


def P(text):
    return parse_poly(text, SYMS)


def null_assignment(rng, names=NAMES):
    """Random scaled points for the test symbols plus e."""
    out = {SYMS[n]: cga.random_null_vector(rng) for n in names}
    out[E] = cga.EINF
    return out


def evaluators(seed, count=20):
    rng = random.Random(seed)
    return [Evaluator(null_assignment(rng)) for _ in range(count)]


def holds(lhs, rhs, seed=0, count=20):
    """Exact equality of two polynomials on random null assignments."""
    return all(ev.poly(lhs) == ev.poly(rhs) for ev in evaluators(seed, count))


@lru_cache(maxsize=None)
def bundled_config(name):
    return read_config(name)


@lru_cache(maxsize=None)
def bundled_proof(name):
    return prove(bundled_config(name))


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=mod.sort_key):
        terminalreporter.write_line(mod.RESULTS[key])
