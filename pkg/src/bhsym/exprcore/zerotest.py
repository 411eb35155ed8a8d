"""Hybrid zero testing: a symbolic normal-form attempt, then random sampling
at high precision."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import Mapping

import mpmath

from .calculus import expand, numerator_over_lcd, rewrite_even_powers, rewrite_hyperbolic_quotients
from .evaluate import compile_expr
from .expr import CONST, DomainError, Expr

ZERO = "zero"
NONZERO = "nonzero"
INCONCLUSIVE = "inconclusive"

SYMBOLIC = "symbolic-normal-form"
SAMPLING = "probabilistic-sampling"

DEFAULT_HINT = (-2.0, 2.0)
# symbolic attempt is skipped above this tree size; sampling decides instead
SYMBOLIC_SIZE_LIMIT = 4000
SYMBOLIC_TERM_LIMIT = 4000


@dataclass(frozen=True)
class ZeroCertificate:
    verdict: str
    method: str
    samples: int = 0
    digits: int = 0
    max_magnitude: float = 0.0
    threshold: float = 0.0
    note: str = ""

    @property
    def is_zero(self) -> bool:
        return self.verdict == ZERO

    @property
    def is_nonzero(self) -> bool:
        return self.verdict == NONZERO

    def to_dict(self) -> dict:
        return asdict(self)


def symbolic_reduce(e: Expr) -> Expr:
    """Best-effort canonical form used by the symbolic half of ``is_zero``.

    Rewrites tanh/coth through sinh/cosh, expands, clears denominators and
    applies the Pythagorean rewrites.  A constant result is exact.
    """
    r = rewrite_hyperbolic_quotients(e)
    r = expand(r, SYMBOLIC_TERM_LIMIT)
    if r.kind == CONST:
        return r
    r = numerator_over_lcd(r)
    r = expand(rewrite_even_powers(r), SYMBOLIC_TERM_LIMIT)
    return r


def _hint_for(name: str, hints: Mapping) -> tuple:
    h = hints.get(name)
    if h is None:
        return DEFAULT_HINT
    lo, hi = h
    return float(lo), float(hi)


def is_zero(
    e: Expr,
    domain_hints: Mapping | None = None,
    samples: int = 32,
    digits: int = 60,
    seed: int = 0,
    rel_threshold: float = 1e-40,
    symbolic: bool = True,
    escalate: bool = True,
) -> ZeroCertificate:
    """Decide whether ``e`` vanishes identically on the hinted box.

    ``domain_hints`` maps symbol names to ``(lo, hi)`` sampling intervals;
    symbols without a hint are drawn from [-2, 2].  Zero by sampling means
    every sample satisfies ``|value| <= rel_threshold * scale`` where scale is
    the largest intermediate magnitude met while evaluating; one sample above
    ten times that bound gives ``nonzero``.  An inconclusive run is retried
    once at twice the precision when ``escalate`` is set.
    """
    hints = dict(domain_hints or {})
    if e.kind == CONST:
        verdict = ZERO if e.value == 0 else NONZERO
        return ZeroCertificate(verdict, SYMBOLIC, max_magnitude=float(abs(e.value)))
    if symbolic and e.size <= SYMBOLIC_SIZE_LIMIT:
        try:
            r = symbolic_reduce(e)
        except (OverflowError, DomainError):
            r = None
        if r is not None and r.kind == CONST:
            verdict = ZERO if r.value == 0 else NONZERO
            return ZeroCertificate(verdict, SYMBOLIC, max_magnitude=float(abs(r.value)))
    cert = _sample(e, hints, samples, digits, seed, rel_threshold)
    if cert.verdict == INCONCLUSIVE and escalate:
        cert = _sample(e, hints, samples, max(2 * digits, 120), seed + 1, rel_threshold)
    return cert


def _sample(e, hints, samples, digits, seed, rel_threshold) -> ZeroCertificate:
    names = sorted(e.free_symbols)
    fn = compile_expr(e, names, "mpmath", track=True)
    rng = random.Random(seed)
    boxes = [_hint_for(n, hints) for n in names]
    good = 0
    attempts = 0
    max_ratio = mpmath.mpf(0)
    max_val = mpmath.mpf(0)
    nonzero = False
    with mpmath.workdps(digits):
        tiny = mpmath.mpf(rel_threshold)
        while good < samples and attempts < 20 * samples:
            attempts += 1
            pt = [mpmath.mpf(rng.uniform(lo, hi)) for lo, hi in boxes]
            try:
                val, scale = fn(*pt)
            except (DomainError, ZeroDivisionError, ValueError, OverflowError):
                continue
            if isinstance(val, mpmath.mpc) or not mpmath.isfinite(val) or not mpmath.isfinite(scale):
                continue
            good += 1
            scale = max(scale, mpmath.mpf(1))
            ratio = abs(val) / scale
            max_val = max(max_val, abs(val))
            max_ratio = max(max_ratio, ratio)
            if ratio > 10 * tiny:
                nonzero = True
                break
    if nonzero:
        verdict = NONZERO
    elif good < samples:
        verdict = INCONCLUSIVE
    elif max_ratio <= tiny:
        verdict = ZERO
    else:
        verdict = INCONCLUSIVE
    note = "" if good >= samples or nonzero else f"only {good} of {samples} samples avoided singularities"
    return ZeroCertificate(
        verdict, SAMPLING, samples=good, digits=digits,
        max_magnitude=float(max_val), threshold=rel_threshold, note=note,
    )
