"""Implicative normal forms of boolean functions.

Every boolean function of ``n`` arguments is a left-nested implication
``((P_k -> P_{k-1}) -> ...) -> P_1`` of monotone functions with at most
``n`` implications. :func:`inf_synthesize` gets one from the dual
decomposition engine over ``B^n``; :func:`minimal_inf_length` is a
brute-force search over monotone factors that does not touch the engine.

Truth tables list rows in binary counting order with the first argument as
the most significant bit, so ``"0001"`` is AND and ``"0110"`` is XOR.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .connectives import boolean_dual
from .decompose import decompose_dual
from .errors import ApproxError, ArityMismatch, SizeLimit
from .poset import EvalMap, boolean_cube

MAX_SYNTH_ARITY = 10
MAX_ORACLE_ARITY = 3


@dataclass(frozen=True)
class TruthTable:
    n: int
    bits: tuple[bool, ...]

    def __post_init__(self):
        bits = tuple(bool(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        if self.n < 0 or len(bits) != 2**self.n:
            raise ApproxError(f"a truth table of arity {self.n} needs {2**self.n} rows, got {len(bits)}")

    @classmethod
    def from_string(cls, s: str) -> TruthTable:
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise ApproxError(f"truth table must be a 0/1 string, got {s!r}")
        n = len(s).bit_length() - 1
        if 2**n != len(s):
            raise ApproxError(f"truth table length {len(s)} is not a power of two")
        return cls(n, tuple(c == "1" for c in s))

    @classmethod
    def constant(cls, n: int, value: bool) -> TruthTable:
        return cls(n, (value,) * 2**n)

    @classmethod
    def projection(cls, n: int, i: int) -> TruthTable:
        """The ``i``-th argument (1-based, ``i = 1`` most significant)."""
        return cls(n, tuple(bool(k >> (n - i) & 1) for k in range(2**n)))

    def __str__(self):
        return "".join("1" if b else "0" for b in self.bits)

    def __call__(self, *args) -> bool:
        k = 0
        for a in args:
            k = 2 * k + int(bool(a))
        return self.bits[k]

    def as_int(self) -> int:
        return int(str(self)[::-1], 2) if self.bits else 0


@dataclass(frozen=True)
class InfChain:
    """Factors ``[P_k, ..., P_1]``; the value is ``((P_k -> P_{k-1}) -> ...) -> P_1``."""

    factors: tuple[TruthTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ApproxError("an implicative chain needs at least one factor")

    @property
    def implications(self) -> int:
        return len(self.factors) - 1

    def __str__(self):
        return " -> ".join(str(f) for f in self.factors)


def is_monotone_tt(t: TruthTable) -> bool:
    """True iff raising any single input bit never lowers the output."""
    bits = t.bits
    for k in range(2**t.n):
        for i in range(t.n):
            up = k | (1 << i)
            if up != k and bits[k] and not bits[up]:
                return False
    return True


def inf_eval(c: InfChain) -> TruthTable:
    n = c.factors[0].n
    if any(f.n != n for f in c.factors):
        raise ArityMismatch(f"factors have arities {[f.n for f in c.factors]}")
    acc = np.array(c.factors[0].bits)
    for f in c.factors[1:]:
        acc = ~acc | np.array(f.bits)
    return TruthTable(n, tuple(acc))


def inf_synthesize(t: TruthTable) -> InfChain:
    """Implicative normal form from the dual engine on ``B^n`` with material implication."""
    if not 1 <= t.n <= MAX_SYNTH_ARITY:
        raise SizeLimit(f"synthesis supports 1 <= n <= {MAX_SYNTH_ARITY}, got {t.n}")
    algebra = boolean_dual()
    cube = boolean_cube(t.n)
    psi = EvalMap(cube, algebra.codomain, np.array(t.bits, dtype=np.int64))
    chain = decompose_dual(psi, algebra)
    return InfChain(tuple(TruthTable(t.n, tuple(f.indices.astype(bool))) for f in chain.factors))


@lru_cache(maxsize=None)
def monotone_functions(n: int) -> tuple[TruthTable, ...]:
    """All monotone boolean functions of arity ``n`` (Dedekind number many), by filtering."""
    if n > MAX_ORACLE_ARITY:
        raise SizeLimit(f"enumeration of monotone functions is limited to n <= {MAX_ORACLE_ARITY}")
    rows = 2**n
    out = []
    for code in range(2**rows):
        t = TruthTable(n, tuple(bool(code >> r & 1) for r in range(rows)))
        if is_monotone_tt(t):
            out.append(t)
    return tuple(out)


@lru_cache(maxsize=None)
def _reachable_layers(n: int) -> tuple[frozenset, ...]:
    # layers[k-1]: tables expressible with exactly k monotone factors, as row-bitmasks
    mono = [sum(1 << r for r, b in enumerate(t.bits) if b) for t in monotone_functions(n)]
    full = (1 << 2**n) - 1
    layers = [frozenset(mono)]
    seen = set(mono)
    while True:
        nxt = frozenset((~r & full) | p for r in layers[-1] for p in mono)
        layers.append(nxt)
        if nxt <= seen:
            return tuple(layers)
        seen |= nxt


def minimal_inf_length(t: TruthTable) -> int:
    """Fewest monotone factors of any left-nested implication chain equal to ``t``."""
    if t.n > MAX_ORACLE_ARITY:
        raise SizeLimit(f"exhaustive minimality search is limited to n <= {MAX_ORACLE_ARITY}")
    code = sum(1 << r for r, b in enumerate(t.bits) if b)
    for k, layer in enumerate(_reachable_layers(t.n), start=1):
        if code in layer:
            return k
    raise ApproxError(f"{t} is not expressible by monotone implication chains")


def expressible_functions(n: int) -> frozenset[TruthTable]:
    """Every table some monotone implication chain of arity ``n`` evaluates to."""
    rows = 2**n
    codes = frozenset().union(*_reachable_layers(n))
    return frozenset(TruthTable(n, tuple(bool(c >> r & 1) for r in range(rows))) for c in codes)
