"""Arc pullbacks and the one-sided obstruction search.

A test curve substitutes one univariate arc per ring variable, every
arc vanishing at the origin.  Pulling a polynomial back along a curve
gives a univariate polynomial whose order of vanishing is exact and
cheap to read off.  If some element of an ideal's closure candidate
vanishes along a curve to *strictly lower* order than every generator
of the ideal, the curve is a witness that the element cannot lie in the
relevant closure.  Finding no witness proves nothing; the search is
one-sided by design and reports itself as such.

Two pullback routes are kept deliberately separate: :func:`pullback`
takes a fast path for monomial arcs, while :func:`pullback_dense`
recomputes everything by plain repeated multiplication so witnesses can
be replayed through code that shares nothing with the search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .groebner import Ideal
from .rings import (
    ParseError,
    Polynomial,
    RingContext,
    RingError,
    UnivariatePoly,
    format_univariate,
    parse_univariate,
    primed,
)

__all__ = [
    "CurveSearchConfig",
    "PullbackSummary",
    "SearchReport",
    "TestCurve",
    "Witness",
    "closure_test",
    "curve_obstruction",
    "enumerate_test_curves",
    "format_curve",
    "parse_curve",
    "pullback",
    "pullback_dense",
    "pullback_ideal",
]


@dataclass(frozen=True)
class TestCurve:
    """One arc per ring variable, all vanishing at the origin."""

    ring: RingContext
    components: tuple[UnivariatePoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.ring.arity:
            raise RingError(
                f"curve has {len(self.components)} components for "
                f"{self.ring.arity} variables"
            )
        for name, comp in zip(self.ring.variables, self.components):
            if not comp.is_zero and comp.coeffs[0]:
                raise RingError(
                    f"component for {name!r} does not vanish at the origin"
                )

    def __str__(self) -> str:
        return format_curve(self)


def parse_curve(text: str, ring: RingContext, parameter: str = "s") -> TestCurve:
    """Parse comma-separated arcs, e.g. ``"s,2s^2,2s,s,s^2,s"``."""
    cells = text.split(",")
    if len(cells) != ring.arity:
        raise ParseError(
            f"expected {ring.arity} comma-separated arcs, got {len(cells)}"
        )
    return TestCurve(ring, tuple(parse_univariate(c, parameter) for c in cells))


def format_curve(curve: TestCurve, parameter: str = "s") -> str:
    return ", ".join(format_univariate(c, parameter) for c in curve.components)


def pullback(p: Polynomial, curve: TestCurve) -> UnivariatePoly:
    """Substitute the curve's arcs into ``p``.

    Monomial arcs take a fast path that never forms intermediate
    products: each term contributes one coefficient at one degree.
    """
    if p.ring != curve.ring:
        raise RingError("polynomial and curve live in different rings")
    comps = curve.components
    profile: list[tuple[int, Fraction] | None] = []
    monomial_arcs = True
    for comp in comps:
        nonzero = [(i, c) for i, c in enumerate(comp.coeffs) if c]
        if not nonzero:
            profile.append(None)
        elif len(nonzero) == 1:
            profile.append(nonzero[0])
        else:
            monomial_arcs = False
            break
    if monomial_arcs:
        acc: dict[int, Fraction] = {}
        for exps, coeff in p.terms:
            degree = 0
            value = coeff
            dead = False
            for e, slot in zip(exps, profile):
                if not e:
                    continue
                if slot is None:
                    dead = True
                    break
                degree += slot[0] * e
                value *= slot[1] ** e
            if dead:
                continue
            acc[degree] = acc.get(degree, Fraction(0)) + value
        if not acc:
            return UnivariatePoly.zero()
        top = max(acc)
        return UnivariatePoly([acc.get(i, 0) for i in range(top + 1)])

    powers: list[list[UnivariatePoly]] = [
        [UnivariatePoly.constant(1), comp] for comp in comps
    ]
    total = UnivariatePoly.zero()
    for exps, coeff in p.terms:
        factor = UnivariatePoly.constant(coeff)
        for i, e in enumerate(exps):
            if not e:
                continue
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * cache[1])
            factor = factor * cache[e]
        total = total + factor
    return total


def pullback_dense(p: Polynomial, curve: TestCurve) -> UnivariatePoly:
    """Replay route: plain repeated multiplication, no shortcuts.

    Shares no code path with :func:`pullback` beyond the univariate
    arithmetic itself, so agreement between the two is meaningful.
    """
    if p.ring != curve.ring:
        raise RingError("polynomial and curve live in different rings")
    total = UnivariatePoly.zero()
    for exps, coeff in p.terms:
        factor = UnivariatePoly.constant(coeff)
        for comp, e in zip(curve.components, exps):
            for _ in range(e):
                factor = factor * comp
        total = total + factor
    return total


@dataclass(frozen=True)
class PullbackSummary:
    """Orders of vanishing of an ideal's generators along one curve."""

    curve: TestCurve
    generator_pullbacks: tuple[UnivariatePoly, ...]
    generator_orders: tuple

    @property
    def ideal_order(self):
        """Smallest generator order; ``math.inf`` when nothing survives."""
        finite = [o for o in self.generator_orders if o is not math.inf]
        if not self.generator_orders:
            return math.inf
        return min(self.generator_orders) if finite else math.inf


def pullback_ideal(curve: TestCurve, ideal: Ideal) -> PullbackSummary:
    pulls = tuple(pullback(g, curve) for g in ideal.generators)
    return PullbackSummary(curve, pulls, tuple(u.order_of_vanishing() for u in pulls))


@dataclass(frozen=True)
class Witness:
    """A curve along which ``element`` drops below the ideal's order.

    Strictness is enforced at construction: ``element_order`` must be
    finite and strictly smaller than ``ideal_order``.
    """

    curve: TestCurve
    element: Polynomial
    element_order: int
    ideal_order: object  # int or math.inf

    def __post_init__(self) -> None:
        if self.element_order is math.inf or not self.element_order < self.ideal_order:
            raise RingError(
                f"not a witness: element order {self.element_order} does not "
                f"drop below ideal order {self.ideal_order}"
            )

    @property
    def margin(self):
        if self.ideal_order is math.inf:
            return math.inf
        return self.ideal_order - self.element_order


def curve_obstruction(
    curve: TestCurve, element: Polynomial, ideal: Ideal
) -> Witness | None:
    """Test one curve. ``None`` means this curve shows nothing."""
    ideal_order = pullback_ideal(curve, ideal).ideal_order
    element_order = pullback(element, curve).order_of_vanishing()
    if element_order < ideal_order:
        return Witness(curve, element, element_order, ideal_order)
    return None


@dataclass(frozen=True)
class CurveSearchConfig:
    """Shape of the enumerated curve family.

    Arcs are monomials ``c * s^e`` with ``1 <= e <= max_exponent`` and
    ``c`` drawn from ``coefficients``.  When ``parameter`` names a
    doubled variable and ``share_parameter`` is set, the primed copy of
    the parameter is forced onto the same arc as the original and the
    pair counts twice toward the enumeration degree.
    """

    max_exponent: int
    coefficients: tuple = (1, 2)
    share_parameter: bool = True
    parameter: str | None = None

    def __post_init__(self) -> None:
        if self.max_exponent < 1:
            raise ValueError("max_exponent must be at least 1")
        if not self.coefficients:
            raise ValueError("need at least one coefficient choice")
        object.__setattr__(self, "coefficients", tuple(self.coefficients))


def _weighted_compositions(
    weights: Sequence[int], total: int, cap: int
) -> Iterator[tuple[int, ...]]:
    """Exponent tuples with entries in [1, cap] and given weighted sum,
    in ascending lexicographic order."""

    def rec(idx: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if idx == len(weights):
            if remaining == 0:
                yield ()
            return
        tail_min = sum(weights[idx + 1 :])
        tail_max = cap * tail_min
        w = weights[idx]
        for e in range(1, cap + 1):
            used = w * e
            if used > remaining - tail_min:
                break
            if remaining - used > tail_max:
                continue
            for rest in rec(idx + 1, remaining - used):
                yield (e,) + rest

    yield from rec(0, total)


def enumerate_test_curves(
    ring: RingContext, config: CurveSearchConfig
) -> Iterator[TestCurve]:
    """Lazy stream of monomial curves, cheapest first.

    Curves are ordered by total weighted degree, then by exponent tuple,
    then by coefficient pattern, so the stream is deterministic and the
    small witnesses that tend to exist come out early.
    """
    import itertools

    names = ring.variables
    tied_source = tied_mirror = None
    if config.share_parameter and config.parameter is not None:
        if config.parameter not in names:
            raise RingError(f"parameter {config.parameter!r} not in ring")
        mirror = primed(config.parameter)
        if mirror in names:
            tied_source = ring.index(config.parameter)
            tied_mirror = ring.index(mirror)
    free = [i for i in range(len(names)) if i != tied_mirror]
    weights = [2 if i == tied_source else 1 for i in free]
    low = sum(weights)
    high = config.max_exponent * sum(weights)
    for total in range(low, high + 1):
        for exps in _weighted_compositions(weights, total, config.max_exponent):
            for pattern in itertools.product(config.coefficients, repeat=len(free)):
                components: list[UnivariatePoly | None] = [None] * len(names)
                for pos, e, c in zip(free, exps, pattern):
                    components[pos] = UnivariatePoly.monomial(c, e)
                if tied_mirror is not None:
                    components[tied_mirror] = components[tied_source]
                yield TestCurve(ring, tuple(components))


@dataclass(frozen=True)
class SearchReport:
    """Outcome of an exhausted or truncated witness search."""

    curves_tried: int
    budget_exhausted: bool
    config: CurveSearchConfig | None
    best_gap: int | None  # smallest finite (element order - ideal order) seen


def closure_test(
    element: Polynomial,
    ideal: Ideal,
    curves: Iterable[TestCurve] | None = None,
    budget: int = 1000,
    config: CurveSearchConfig | None = None,
):
    """Search for a :class:`Witness` against ``element``.

    Returns the first witness in enumeration order, or a
    :class:`SearchReport` when the stream or the budget runs out.  A
    report is not a membership proof; it only says this family of
    curves showed nothing.
    """
    if element.ring != ideal.ring:
        raise RingError("element and ideal live in different rings")
    if element.is_zero:
        return SearchReport(0, False, config, None)
    if curves is None:
        if config is None:
            config = CurveSearchConfig(max_exponent=max(4, element.degree() + 2))
        curves = enumerate_test_curves(ideal.ring, config)
    tried = 0
    best_gap: int | None = None
    exhausted = False
    for curve in curves:
        if tried >= budget:
            exhausted = True
            break
        tried += 1
        ideal_order = pullback_ideal(curve, ideal).ideal_order
        element_order = pullback(element, curve).order_of_vanishing()
        if element_order < ideal_order:
            return Witness(curve, element, element_order, ideal_order)
        if element_order is not math.inf and ideal_order is not math.inf:
            gap = element_order - ideal_order
            if best_gap is None or gap < best_gap:
                best_gap = gap
    return SearchReport(tried, exhausted, config, best_gap)
