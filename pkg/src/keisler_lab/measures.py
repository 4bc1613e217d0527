"""Finitely supported measures on tuple spaces over a finite structure.

Weights are exact rationals summing to one.  Averages over a vertex
sequence, products on the tuple grid, powers, localization and the
sup-error scan against a named 0/1 type rule all stay in exact
arithmetic; no floats enter any comparison.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .logic import (And, Eq, Formula, Not, ObjectVar, ParamVar, PhiPartition,
                    Rel, analyze_phi, evaluate, make_assignment, parse_formula,
                    residual_holds, variables)
from .structures import BipartiteGraph, Hypergraph

Host = Union[Hypergraph, BipartiteGraph]
Point = tuple[int, ...]


class ZeroMassError(ValueError):
    """Localization on a set the measure does not charge."""


class SizeCapError(RuntimeError):
    """A product support would exceed the configured cap."""


def _as_point(p, arity: Optional[int] = None) -> Point:
    point = (int(p),) if isinstance(p, int) else tuple(int(v) for v in p)
    if arity is not None and len(point) != arity:
        raise ValueError(f"point {point} does not have arity {arity}")
    return point


@dataclass(frozen=True)
class FiniteMeasure:
    """A probability measure with finite support on host^arity."""

    host: Host
    arity: int
    support: tuple[tuple[Point, Fraction], ...]

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("tuple arity must be at least 1")
        total = Fraction(0)
        seen = set()
        for point, weight in self.support:
            if len(point) != self.arity:
                raise ValueError(f"support point {point} has wrong arity")
            if any(not 0 <= v < self.host.n for v in point):
                raise ValueError(f"support point {point} out of range")
            if point in seen:
                raise ValueError(f"duplicate support point {point}")
            if weight <= 0:
                raise ValueError(f"weight of {point} must be positive")
            seen.add(point)
            total += weight
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")
        if list(self.support) != sorted(self.support, key=lambda kv: kv[0]):
            raise ValueError("support must be sorted by point")

    def weight(self, point) -> Fraction:
        point = _as_point(point, self.arity)
        for p, w in self.support:
            if p == point:
                return w
        return Fraction(0)


def make_measure(host: Host, arity: int,
                 items: Iterable[tuple[Point, Fraction]]) -> FiniteMeasure:
    """Build a measure from (point, weight) pairs, merging duplicates and
    dropping zero weights.  The weights must sum to exactly one."""
    acc: dict[Point, Fraction] = {}
    for point, weight in items:
        point = _as_point(point, arity)
        acc[point] = acc.get(point, Fraction(0)) + Fraction(weight)
    support = tuple(sorted((p, w) for p, w in acc.items() if w != 0))
    return FiniteMeasure(host, arity, support)


def make_average(host: Host, points: Sequence) -> FiniteMeasure:
    """The empirical average measure of a nonempty point sequence."""
    pts = [_as_point(p) for p in points]
    if not pts:
        raise ValueError("average of an empty sequence")
    arity = len(pts[0])
    share = Fraction(1, len(pts))
    return make_measure(host, arity, ((p, share) for p in pts))


def dirac(host: Host, point) -> FiniteMeasure:
    """Point mass at a single tuple."""
    return make_average(host, [point])


def mix(components: Sequence[tuple[Fraction, FiniteMeasure]]) -> FiniteMeasure:
    """Convex combination of measures on the same host and arity."""
    if not components:
        raise ValueError("empty combination")
    host = components[0][1].host
    arity = components[0][1].arity
    items: list[tuple[Point, Fraction]] = []
    for coeff, m in components:
        coeff = Fraction(coeff)
        if coeff < 0:
            raise ValueError("mixture coefficients must be nonnegative")
        if m.host != host or m.arity != arity:
            raise ValueError("mixture components must share host and arity")
        items.extend((p, coeff * w) for p, w in m.support)
    return make_measure(host, arity, items)


def _unwrap_phi(phi: Union[Formula, PhiPartition, str],
                arity: int, params: Sequence[int]) -> Formula:
    if isinstance(phi, str):
        phi = parse_formula(phi)
    if isinstance(phi, PhiPartition):
        if phi.object_arity != arity:
            raise ValueError(
                f"formula wants {phi.object_arity} object variables, "
                f"measure tuples have {arity}")
        if phi.param_arity > len(params):
            raise ValueError(
                f"formula wants {phi.param_arity} parameters, got {len(params)}")
        return phi.formula
    objs, pars = variables(phi)
    if objs and max(objs) > arity:
        raise ValueError(
            f"object variable x{max(objs)} exceeds tuple arity {arity}")
    if pars and max(pars) > len(params):
        raise ValueError(
            f"parameter variable y{max(pars)} has no value")
    return phi


def mu_eval(measure: FiniteMeasure, phi: Union[Formula, PhiPartition, str],
            params: Sequence[int] = ()) -> Fraction:
    """Measure of the set defined by phi at the given parameters."""
    params = tuple(int(v) for v in params)
    formula = _unwrap_phi(phi, measure.arity, params)
    total = Fraction(0)
    for point, weight in measure.support:
        if evaluate(measure.host, formula, make_assignment(point, params)):
            total += weight
    return total


def product(mu: FiniteMeasure, nu: FiniteMeasure) -> FiniteMeasure:
    """Product on the concatenated tuple grid (mu's coordinates first).

    For finitely supported measures the integral of the fibre averages
    collapses to the weight-product grid, which makes the construction
    associative on the nose; it is not commutative.
    """
    if mu.host != nu.host:
        raise ValueError("product factors must share a host")
    support = tuple(sorted(
        ((p + q, wp * wq)
         for p, wp in mu.support for q, wq in nu.support)))
    return FiniteMeasure(mu.host, mu.arity + nu.arity, support)


def power(measure: FiniteMeasure, exponent: int,
          max_support: int = 10 ** 6) -> FiniteMeasure:
    """Iterated product measure; support size is capped before expansion."""
    if exponent < 1:
        raise ValueError("exponent must be at least 1")
    if len(measure.support) ** exponent > max_support:
        raise SizeCapError(
            f"support of size {len(measure.support)}^{exponent} exceeds "
            f"{max_support}")
    out = measure
    for _ in range(exponent - 1):
        out = product(out, measure)
    return out


def localize(measure: FiniteMeasure,
             predicate: Callable[[Point], bool]) -> FiniteMeasure:
    """Conditional measure on the points satisfying the predicate."""
    kept = [(p, w) for p, w in measure.support if predicate(p)]
    mass = sum((w for _, w in kept), Fraction(0))
    if mass == 0:
        raise ZeroMassError("localizing set has measure zero")
    return FiniteMeasure(measure.host, measure.arity,
                         tuple((p, w / mass) for p, w in kept))


# ---------------------------------------------------------------------------
# Type rules
# ---------------------------------------------------------------------------

class IsolatedVertexOracle:
    """Membership rule for the type of a fresh vertex over a graph: no edges
    to any parameter and distinct from all of them.

    A formula holds at such a vertex iff some DNF disjunct places no
    positive edge or equality demand on the object variable and its
    parameter-only residual is true.
    """

    name = "isolated-vertex"

    def __init__(self):
        self._cache: dict[PhiPartition, object] = {}

    def value(self, phi: PhiPartition, host: Host,
              params: Sequence[int]) -> int:
        analysis = self._cache.get(phi)
        if analysis is None:
            analysis = analyze_phi(phi)
            self._cache[phi] = analysis
        for t in analysis.generic_indices:
            if residual_holds(host, analysis.profiles[t], params):
                return 1
        return 0


def _generic_tuple_eval(host: Host, f: Formula,
                        params: Sequence[int]) -> bool:
    # object variables denote fresh pairwise distinct vertices carrying no
    # edges, so relation atoms touching them are false and equalities to
    # parameters fail
    assignment = make_assignment((), params)
    if isinstance(f, Rel):
        if any(isinstance(a, ObjectVar) for a in f.args):
            return False
        return evaluate(host, f, assignment)
    if isinstance(f, Eq):
        left_obj = isinstance(f.left, ObjectVar)
        right_obj = isinstance(f.right, ObjectVar)
        if left_obj and right_obj:
            return f.left.index == f.right.index
        if left_obj or right_obj:
            return False
        return evaluate(host, f, assignment)
    if isinstance(f, Not):
        return not _generic_tuple_eval(host, f.body, params)
    if isinstance(f, And):
        return all(_generic_tuple_eval(host, p, params) for p in f.parts)
    return any(_generic_tuple_eval(host, p, params) for p in f.parts)


class IsolatedTupleOracle:
    """Membership rule for the type of a fresh distinct tuple over an
    r-graph that meets no edge at all; in particular it always accepts
    the no-edge formula !R(x...,y) & distinct."""

    name = "isolated-tuple"

    def value(self, phi: PhiPartition, host: Host,
              params: Sequence[int]) -> int:
        return 1 if _generic_tuple_eval(host, phi.formula, params) else 0


TypeOracle = Union[IsolatedVertexOracle, IsolatedTupleOracle]


# ---------------------------------------------------------------------------
# Approximation error scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproxReport:
    """Result of a sup-error scan over a parameter domain."""

    sup_error: Fraction
    argmax_params: tuple[int, ...]
    samples_scanned: int
    exhaustive: bool
    epsilon_target: Optional[Fraction] = None
    certified_bound: Optional[Fraction] = None

    def __post_init__(self):
        if (self.exhaustive and self.certified_bound is not None
                and self.sup_error > self.certified_bound):
            raise ValueError(
                f"scanned error {self.sup_error} exceeds the certified "
                f"bound {self.certified_bound}")

    def to_json_dict(self) -> dict:
        from .serialize import rational_to_json
        return {
            "sup_error": rational_to_json(self.sup_error),
            "argmax_params": list(self.argmax_params),
            "samples_scanned": self.samples_scanned,
            "exhaustive": self.exhaustive,
            "epsilon_target": (None if self.epsilon_target is None
                               else rational_to_json(self.epsilon_target)),
            "certified_bound": (None if self.certified_bound is None
                                else rational_to_json(self.certified_bound)),
        }


def sup_error(oracle: TypeOracle, host: Host, points: Sequence,
              phi: PhiPartition,
              domain: Optional[Sequence[Sequence[int]]] = None,
              sample: Optional[int] = None, seed: Optional[int] = None,
              epsilon: Optional[Fraction] = None,
              certified_bound: Optional[Fraction] = None) -> ApproxReport:
    """Largest deviation between the type rule and the point average.

    The domain defaults to every parameter tuple of the host.  With
    sample=None the scan is exhaustive; otherwise `sample` tuples are
    drawn with replacement using the seed.  Ties on the maximum resolve
    to the lexicographically least parameter tuple.
    """
    average = make_average(host, points)
    if average.arity != phi.object_arity:
        raise ValueError(
            f"points have arity {average.arity}, formula wants "
            f"{phi.object_arity}")
    m = phi.param_arity

    if sample is None:
        if domain is None:
            candidates = itertools.product(range(host.n), repeat=m)
        else:
            candidates = (tuple(int(v) for v in b) for b in domain)
        exhaustive = True
    else:
        if sample < 1:
            raise ValueError("sample count must be positive")
        rng = random.Random(seed)
        if domain is None:
            if host.n == 0 and m > 0:
                raise ValueError("cannot sample parameters from an empty host")
            candidates = (tuple(rng.randrange(host.n) for _ in range(m))
                          for _ in range(sample))
        else:
            pool = [tuple(int(v) for v in b) for b in domain]
            if not pool:
                raise ValueError("cannot sample from an empty domain")
            candidates = (pool[rng.randrange(len(pool))]
                          for _ in range(sample))
        exhaustive = False

    best: Optional[Fraction] = None
    argmax: Optional[tuple[int, ...]] = None
    scanned = 0
    for b in candidates:
        scanned += 1
        predicted = Fraction(oracle.value(phi, host, b))
        observed = mu_eval(average, phi, b)
        err = abs(predicted - observed)
        if best is None or err > best or (err == best and b < argmax):
            best, argmax = err, b
    if best is None:
        raise ValueError("empty parameter domain")
    return ApproxReport(best, argmax, scanned, exhaustive,
                        epsilon_target=epsilon,
                        certified_bound=certified_bound)


# ---------------------------------------------------------------------------
# Seeded self-test of the measure algebra
# ---------------------------------------------------------------------------

SELFTEST_CHECKS = ("normalization", "grid-identity", "associativity",
                   "localization")

_SELFTEST_FORMULAS = (
    "E(x1,x2)",
    "E(x1,x2) & x1 != x2",
    "!E(x1,x2) | E(x1,y1)",
    "E(x1,y1) | x2 = y1",
)


@dataclass(frozen=True)
class SelfTestOutcome:
    seed: int
    cases: int
    passed: dict


def _random_host(rng: random.Random) -> Hypergraph:
    n = rng.randint(3, 6)
    edges = [e for e in itertools.combinations(range(n), 2)
             if rng.random() < 0.5]
    return Hypergraph(2, n, frozenset(edges))


def _random_measure(rng: random.Random, host: Hypergraph) -> FiniteMeasure:
    k = rng.randint(1, 4)
    points = [(rng.randrange(host.n),) for _ in range(k)]
    raw = [rng.randint(1, 9) for _ in range(k)]
    total = sum(raw)
    return make_measure(host, 1,
                        ((p, Fraction(w, total)) for p, w in zip(points, raw)))


def measure_algebra_selftest(seed: int, cases: int = 20) -> SelfTestOutcome:
    """Exercise normalization, the product grid identity, associativity and
    localization on seeded random measures; every check is exact."""
    if cases < 1:
        raise ValueError("case count must be positive")
    rng = random.Random(seed)
    passed = {name: 0 for name in SELFTEST_CHECKS}
    for case in range(cases):
        host = _random_host(rng)
        mu = _random_measure(rng, host)
        nu = _random_measure(rng, host)
        lam = _random_measure(rng, host)

        ok = all(sum((w for _, w in m.support), Fraction(0)) == 1
                 for m in (mu, nu, lam, product(mu, nu)))
        passed["normalization"] += ok

        formula = parse_formula(_SELFTEST_FORMULAS[case % len(_SELFTEST_FORMULAS)])
        _, param_vars = variables(formula)
        params = tuple(rng.randrange(host.n) for _ in range(max(param_vars, default=0)))
        left = mu_eval(product(mu, nu), formula, params)
        right = Fraction(0)
        for q, wq in nu.support:
            inner = Fraction(0)
            for p, wp in mu.support:
                if evaluate(host, formula, make_assignment(p + q, params)):
                    inner += wp
            right += wq * inner
        passed["grid-identity"] += (left == right)

        passed["associativity"] += (
            product(product(mu, nu), lam) == product(mu, product(nu, lam)))

        pred = lambda point: point[0] % 2 == 0
        mass = sum((w for p, w in mu.support if pred(p)), Fraction(0))
        if mass == 0:
            try:
                localize(mu, pred)
                ok = False
            except ZeroMassError:
                ok = True
        else:
            loc = localize(mu, pred)
            ok = (sum((w for _, w in loc.support), Fraction(0)) == 1
                  and all(loc.weight(p) == w / mass
                          for p, w in mu.support if pred(p)))
        passed["localization"] += ok
    return SelfTestOutcome(seed, cases, passed)
