"""Lefebvre's choice model: ensembles, the readiness function and the three-state choice walk.

An ensemble characteristic ``p[k]`` gives the share of agents with boolean
triple ``(n1, n2, n3)``, ``k = 4*n1 + 2*n2 + n3``. Each agent's readiness
is ``(n3 -> n2) -> n1``; averaging gives the marginals ``x1, x2, x3`` and
the ensemble readiness ``z``.

The real-valued readiness implemented here is
``X1 = x1 + (1 - x1) * (1 - x2) * x3``, the multilinear extension of the
boolean rule. A frequently quoted variant, ``x1 + (1 - x1 - x2 + x2*x3)*x3``,
is available as :func:`bracket_variant_readiness` for comparison; it agrees
at (0.4, 0.4, 0.4) but gives 1.0 instead of 0.75 at (0.5, 0.5, 1) and breaks
the credulity axiom.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .connectives import chain_primal
from .decompose import FactorChain, fold
from .errors import InvalidCharacteristic, RangeError
from .poset import EvalMap, build_poset

NORMALIZATION_TOL = 1e-12
SAMPLE_CHUNK = 1 << 16

# agents' internal order: past < present < future
STATES = build_poset(["x1", "x2", "x3"], [("x1", "x2"), ("x2", "x3")])
_NONIMPLICATION = chain_primal(2)


def _bits(k: int) -> tuple[int, int, int]:
    return (k >> 2 & 1, k >> 1 & 1, k & 1)


def boolean_readiness(b1, b2, b3) -> int:
    """``(b3 -> b2) -> b1``."""
    b1, b2, b3 = bool(b1), bool(b2), bool(b3)
    return int(b1 or (b3 and not b2))


@dataclass(frozen=True)
class EnsembleCharacteristic:
    p: tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(v) for v in self.p)
        object.__setattr__(self, "p", p)
        if len(p) != 8:
            raise InvalidCharacteristic(f"a characteristic has 8 entries, got {len(p)}")
        for k, v in enumerate(p):
            if not 0.0 <= v <= 1.0:
                raise InvalidCharacteristic(f"p{k} = {v} is not a probability")
        total = math.fsum(p)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidCharacteristic(f"probabilities sum to {total!r}, not 1")

    @classmethod
    def parse(cls, text: str) -> EnsembleCharacteristic:
        try:
            return cls(tuple(float(v) for v in text.split(",")))
        except ValueError as exc:
            if isinstance(exc, InvalidCharacteristic):
                raise
            raise InvalidCharacteristic(f"cannot parse characteristic {text!r}") from None

    def support(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(_bits(k) for k, v in enumerate(self.p) if v > 0)

    def __str__(self):
        return ",".join(f"{v:.15g}" for v in self.p)


@dataclass(frozen=True)
class LefebvrePoint:
    x1: float
    x2: float
    x3: float
    z: float
    X1: float

    @property
    def gap(self) -> float:
        """``X1 - z``: how far the model readiness is from the ensemble average."""
        return self.X1 - self.z


def _check_unit(**xs):
    for name, v in xs.items():
        if not 0.0 <= v <= 1.0:
            raise RangeError(f"{name} = {v} is outside [0, 1]")


def readiness_f(x1: float, x2: float, x3: float) -> float:
    _check_unit(x1=x1, x2=x2, x3=x3)
    return x1 + (1.0 - x1) * (1.0 - x2) * x3


def bracket_variant_readiness(x1: float, x2: float, x3: float) -> float:
    """``x1 + (1 - x1 - x2 + x2*x3) * x3`` (see module docstring)."""
    return x1 + (1.0 - x1 - x2 + x2 * x3) * x3


def marginals(P: EnsembleCharacteristic) -> LefebvrePoint:
    p = P.p
    x1 = p[4] + p[5] + p[6] + p[7]
    x2 = p[2] + p[3] + p[6] + p[7]
    x3 = p[1] + p[3] + p[5] + p[7]
    z = p[1] + p[4] + p[5] + p[6] + p[7]
    # rounding can push a sum a hair past 1
    x1, x2, x3, z = (min(max(v, 0.0), 1.0) for v in (x1, x2, x3, z))
    return LefebvrePoint(x1, x2, x3, z, readiness_f(x1, x2, x3))


def pure_ensemble(x1: float, x2: float, x3: float) -> EnsembleCharacteristic:
    """Characteristic of three independent bits with means ``x1, x2, x3``."""
    _check_unit(x1=x1, x2=x2, x3=x3)
    xs = (x1, x2, x3)
    p = []
    for k in range(8):
        prod = 1.0
        for bit, x in zip(_bits(k), xs):
            prod *= x if bit else 1.0 - x
        p.append(prod)
    return EnsembleCharacteristic(tuple(p))


def realist_area() -> frozenset[tuple[int, int, int]]:
    """Triples whose readiness equals their intention bit ``n3``."""
    return frozenset(b for b in map(_bits, range(8)) if boolean_readiness(*b) == b[2])


def golden_root() -> float:
    """Root of ``x**3 - 2*x + 1`` in (0, 1), i.e. ``(sqrt(5) - 1) / 2``."""
    # x^3 - 2x + 1 = (x - 1)(x^2 + x - 1); this form avoids cancellation
    return 2.0 / (1.0 + math.sqrt(5.0))


def realist_characteristic(x3: float) -> EnsembleCharacteristic:
    """Realist ensemble: ``n1, n2`` independent with mean ``1 - x3``; ``n3`` fixed by them.

    ``n3 = 1`` when ``n1 = 1``, ``n3 = 0`` when ``(n1, n2) = (0, 1)``, and for
    ``(0, 0)`` it is 1 with probability ``x3``. The ``n3`` marginal is
    ``x3**3 - x3 + 1``, which equals ``x3`` exactly at the golden root.
    """
    if not 0.0 < x3 < 1.0:
        raise RangeError(f"x3 = {x3} must lie strictly between 0 and 1")
    q = 1.0 - x3  # P(n1 = 1) = P(n2 = 1)
    p = [0.0] * 8
    p[0b000] = x3 * x3 * (1.0 - x3)
    p[0b001] = x3 * x3 * x3
    p[0b010] = x3 * q
    p[0b101] = q * x3
    p[0b111] = q * q
    return EnsembleCharacteristic(tuple(p))


@dataclass(frozen=True)
class SampleResult:
    z_hat: float
    stderr: float
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.counts)

    def fraction(self, predicate: Callable[[int, int, int], bool]) -> float:
        hit = sum(c for k, c in enumerate(self.counts) if predicate(*_bits(k)))
        return hit / self.n


def sample_ensemble(P: EnsembleCharacteristic, n: int, seed: int) -> SampleResult:
    """Draw ``n`` agents from ``P``; ``z_hat`` is the share whose readiness is 1.

    Draws are made in fixed-size chunks, each from its own PCG64 stream
    spawned off ``numpy.random.SeedSequence(seed)``, so the counts depend
    only on ``(P, n, seed)``.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    p = np.array(P.p)
    p = p / p.sum()
    nchunks = -(-n // SAMPLE_CHUNK)
    counts = np.zeros(8, dtype=np.int64)
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(nchunks)):
        size = min(SAMPLE_CHUNK, n - i * SAMPLE_CHUNK)
        counts += np.random.Generator(np.random.PCG64(child)).multinomial(size, p)
    ready = sum(int(counts[k]) for k in range(8) if boolean_readiness(*_bits(k)))
    z_hat = ready / n
    return SampleResult(z_hat, math.sqrt(z_hat * (1.0 - z_hat) / n), tuple(int(c) for c in counts))


# -- axioms of the readiness function -------------------------------------------


@dataclass
class LAxiomReport:
    results: dict = field(default_factory=dict)  # axiom -> (passed, witness or None)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    def __str__(self):
        return "\n".join(f"{ax}={'pass' if ok else 'fail'}" + ("" if w is None else f" witness={w}")
                         for ax, (ok, w) in self.results.items())


def verify_L_axioms(f: Callable[[float, float, float], float], grid: int = 21,
                    tol: float = 1e-9) -> LAxiomReport:
    """Check free choice, credulity, non-evil-inclinations and per-argument affinity on a grid."""
    ts = [i / (grid - 1) for i in range(grid)]
    rep = LAxiomReport()

    def first_bad(cases):
        for args, want in cases:
            got = f(*args)
            if abs(got - want) > tol:
                return (args, got, want)
        return None

    checks = {
        "L1": [((0.0, 0.0, t), t) for t in ts],
        "L2": [((0.0, 1.0, t), 0.0) for t in ts],
        "L3": [((1.0, a, b), 1.0) for a in ts for b in ts],
    }
    for ax, cases in checks.items():
        w = first_bad(cases)
        rep.results[ax] = (w is None, w)

    # affine in each argument: second differences along that argument vanish
    witness = None
    for axis in range(3):
        for a in ts:
            for b in ts:
                vals = []
                for t in ts:
                    args = [a, b]
                    args.insert(axis, t)
                    vals.append(f(*args))
                d2 = np.diff(vals, 2)
                if np.abs(d2).max() > tol:
                    witness = (axis + 1, a, b)
                    break
            if witness:
                break
        if witness:
            break
    rep.results["L4"] = (witness is None, witness)
    return rep


# -- theta impulses and the choice walk -----------------------------------------


@dataclass(frozen=True)
class ThetaImpulse:
    index: int
    bit: int

    @property
    def values(self) -> tuple[int, int, int]:
        """Value at ``x1, x2, x3``: 1 past the index, ``bit`` at it, 0 before it."""
        return tuple(1 if self.index < k else (self.bit if self.index == k else 0) for k in (1, 2, 3))

    def as_map(self) -> EvalMap:
        return EvalMap(STATES, _NONIMPLICATION.codomain, list(self.values))


def theta_impulse(i: int, b: int) -> ThetaImpulse:
    if i not in (1, 2, 3):
        raise IndexError(f"impulse index must be 1, 2 or 3, got {i}")
    if b not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {b}")
    return ThetaImpulse(i, int(b))


def build_psi(b1, b2, b3) -> EvalMap:
    """``theta_1 -/-> (theta_2 -/-> theta_3)`` over the three states; equals ``(b1, not b2, b3)``."""
    maps = tuple(theta_impulse(i, int(b)).as_map() for i, b in zip((1, 2, 3), (b1, b2, b3)))
    return fold(FactorChain(maps, _NONIMPLICATION, "primal"))


@dataclass(frozen=True)
class ChoiceTrace:
    bits: tuple[int, int, int]
    stages: tuple[tuple[str, ...], ...]
    final: str
    output: int

    def __str__(self):
        lines = [f"bits={''.join(map(str, self.bits))}"]
        lines += [f"stage{i}={'->'.join(path)}" for i, path in enumerate(self.stages, 1)]
        lines += [f"final={self.final}", f"output={self.output}"]
        return "\n".join(lines)


def _climb(values, start: int) -> list[int]:
    # strict ascent to the nearest local maximum; equal neighbours block the walk
    path = [start]
    while True:
        pos = path[-1]
        better = [j for j in (pos - 1, pos + 1) if 0 <= j < len(values) and values[j] > values[pos]]
        if not better:
            return path
        path.append(max(better, key=lambda j: (values[j], -j)))


def choose(b1, b2, b3) -> ChoiceTrace:
    """Three-stage local walk on ``x1 < x2 < x3``; the output is the bit at the final state.

    Stage 1 climbs ``theta_1``, stage 2 climbs the negation of ``theta_2``,
    stage 3 climbs ``theta_3``; the walk starts at ``x1``.
    """
    bits = tuple(int(bool(b)) for b in (b1, b2, b3))
    t1, t2, t3 = (theta_impulse(i, b).values for i, b in zip((1, 2, 3), bits))
    names = STATES.elements
    pos = 0
    stages = []
    for vals in (t1, tuple(1 - v for v in t2), t3):
        path = _climb(vals, pos)
        stages.append(tuple(names[j] for j in path))
        pos = path[-1]
    return ChoiceTrace(bits, tuple(stages), names[pos], bits[pos])
