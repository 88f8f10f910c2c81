"""Finite posets, maps between them and monotonicity diagnostics.

A :class:`Poset` keeps its carrier as a tuple of string identifiers and the
order as a dense, reflexive-transitively closed boolean matrix, so that
``leq`` queries are constant time. Covers (the Hasse diagram) are the
exchange format: ``{"elements": [...], "covers": [[a, b], ...]}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CycleDetected, DuplicateElement, SizeLimit, UnknownElement

MAX_CARRIER = 4096
MAX_CUBE_DIM = 16


def _closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated boolean squaring."""
    n = adj.shape[0]
    reach = adj | np.eye(n, dtype=bool)
    while True:
        m = reach.astype(np.float32)
        nxt = (m @ m) > 0
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


class Poset:
    """A finite partially ordered set.

    Use :func:`build_poset` or :func:`boolean_cube` rather than calling the
    constructor, which takes an already closed order matrix.
    """

    __slots__ = ("_elements", "_index", "_leq", "_ranks")

    def __init__(self, elements: Sequence[str], leq: np.ndarray, *, check: bool = True):
        elements = tuple(str(e) for e in elements)
        index = {}
        for i, e in enumerate(elements):
            if e in index:
                raise DuplicateElement(f"duplicate element {e!r}")
            index[e] = i
        leq = np.array(leq, dtype=bool)
        if leq.shape != (len(elements), len(elements)):
            raise ValueError("order matrix does not match carrier size")
        if check:
            _validate(elements, leq)
        leq.setflags(write=False)
        self._elements = elements
        self._index = index
        self._leq = leq
        self._ranks = None

    # -- basic access ---------------------------------------------------

    @property
    def elements(self) -> tuple[str, ...]:
        return self._elements

    @property
    def matrix(self) -> np.ndarray:
        """Read-only closed order matrix, ``matrix[i, j]`` iff ``e_i <= e_j``."""
        return self._leq

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, x):
        return str(x) in self._index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self._elements == other._elements and np.array_equal(self._leq, other._leq)

    def __hash__(self):
        return hash((self._elements, self._leq.tobytes()))

    def __repr__(self):
        return f"Poset({len(self)} elements, D={self.max_chain_length()})"

    def index(self, x) -> int:
        try:
            return self._index[str(x)]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}") from None

    def leq(self, a, b) -> bool:
        return bool(self._leq[self.index(a), self.index(b)])

    def lt(self, a, b) -> bool:
        i, j = self.index(a), self.index(b)
        return i != j and bool(self._leq[i, j])

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def _mask(self, s: Iterable) -> np.ndarray:
        mask = np.zeros(len(self), dtype=bool)
        for x in s:
            mask[self.index(x)] = True
        return mask

    def _pick(self, mask: np.ndarray) -> frozenset[str]:
        return frozenset(self._elements[i] for i in np.flatnonzero(mask))

    # -- order-theoretic queries ------------------------------------------

    def down_set(self, x) -> frozenset[str]:
        return self._pick(self._leq[:, self.index(x)])

    def up_set(self, x) -> frozenset[str]:
        return self._pick(self._leq[self.index(x), :])

    def minimal_of(self, s: Iterable) -> frozenset[str]:
        """Elements of ``s`` with no strictly smaller element in ``s``."""
        mask = self._mask(s)
        return self._pick(_minimal_mask(self._leq, mask))

    def maximal_of(self, s: Iterable) -> frozenset[str]:
        mask = self._mask(s)
        return self._pick(_minimal_mask(self._leq.T, mask))

    def _rank_indices(self) -> np.ndarray:
        # rank[i] = block number of element i in the minimal-element peeling
        if self._ranks is None:
            n = len(self)
            ranks = np.full(n, -1, dtype=np.int64)
            remaining = np.ones(n, dtype=bool)
            level = 0
            while remaining.any():
                block = _minimal_mask(self._leq, remaining)
                ranks[block] = level
                remaining &= ~block
                level += 1
            ranks.setflags(write=False)
            self._ranks = ranks
        return self._ranks

    def rank_partition(self) -> list[frozenset[str]]:
        """Peel minimal elements repeatedly; block ``i`` holds the rank-``i`` layer."""
        ranks = self._rank_indices()
        if len(ranks) == 0:
            return []
        return [self._pick(ranks == r) for r in range(int(ranks.max()) + 1)]

    def max_chain_length(self) -> int:
        """Number of covering steps on the longest strictly increasing chain."""
        ranks = self._rank_indices()
        return int(ranks.max()) if len(ranks) else 0

    def dual(self) -> Poset:
        return Poset(self._elements, self._leq.T, check=False)

    def covers(self) -> list[tuple[str, str]]:
        """Hasse diagram edges, sorted lexicographically."""
        strict = self._leq & ~np.eye(len(self), dtype=bool)
        s = strict.astype(np.float32)
        cover = strict & ~((s @ s) > 0)
        els = self._elements
        return sorted((els[i], els[j]) for i, j in zip(*np.nonzero(cover)))

    def subposet(self, s: Iterable) -> Poset:
        idx = sorted(self.index(x) for x in s)
        return Poset([self._elements[i] for i in idx], self._leq[np.ix_(idx, idx)], check=False)

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        return {"elements": list(self._elements), "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_dict(cls, data: Mapping, max_size: int = MAX_CARRIER) -> Poset:
        return build_poset(data["elements"], [tuple(c) for c in data.get("covers", [])], max_size=max_size)


def _minimal_mask(leq: np.ndarray, mask: np.ndarray) -> np.ndarray:
    sub = leq & mask[:, None] & mask[None, :]
    np.fill_diagonal(sub, False)
    # j is minimal in mask iff no i != j in mask with i <= j
    return mask & ~sub.any(axis=0)


def _validate(elements, leq):
    n = len(elements)
    if not leq.diagonal().all():
        raise ValueError("order relation is not reflexive")
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = np.argwhere(both)[0]
        raise CycleDetected(f"{elements[i]!r} and {elements[j]!r} are mutually below each other")
    m = leq.astype(np.float32)
    if ((m @ m > 0) & ~leq).any():
        raise ValueError("order relation is not transitive")
    if n > 0 and leq.shape != (n, n):
        raise ValueError("bad order matrix shape")


def build_poset(elements: Iterable, covers: Iterable = (), *, max_size: int = MAX_CARRIER) -> Poset:
    """Poset on ``elements`` whose order is the reflexive-transitive closure of ``covers``.

    Raises DuplicateElement, UnknownElement, CycleDetected or SizeLimit.
    """
    elements = [str(e) for e in elements]
    if len(elements) > max_size:
        raise SizeLimit(f"carrier of {len(elements)} elements exceeds limit {max_size}")
    index = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElement(f"duplicate element {e!r}")
        index[e] = i
    adj = np.zeros((len(elements), len(elements)), dtype=bool)
    for a, b in covers:
        try:
            adj[index[str(a)], index[str(b)]] = True
        except KeyError as exc:
            raise UnknownElement(f"cover ({a!r}, {b!r}) names unknown element {exc.args[0]!r}") from None
    return Poset(elements, _closure(adj))


def chain(n: int, prefix: str = "") -> Poset:
    """The chain ``0 < 1 < ... < n-1`` (element names optionally prefixed)."""
    els = [f"{prefix}{i}" for i in range(n)]
    return Poset(els, np.triu(np.ones((n, n), dtype=bool)), check=False)


def antichain(elements: Iterable) -> Poset:
    els = [str(e) for e in elements]
    return Poset(els, np.eye(len(els), dtype=bool))


def boolean_cube(n: int, *, max_size: int = MAX_CARRIER) -> Poset:
    """``B^n`` under the componentwise order; element ``k`` is ``k`` in binary, first bit most significant."""
    if not 1 <= n <= MAX_CUBE_DIM:
        raise SizeLimit(f"cube dimension must be in 1..{MAX_CUBE_DIM}, got {n}")
    if 2**n > max_size:
        raise SizeLimit(f"B^{n} has {2**n} elements, over the carrier limit {max_size}")
    k = np.arange(2**n)
    leq = (k[:, None] & k[None, :]) == k[:, None]
    return Poset([format(i, f"0{n}b") for i in range(2**n)], leq, check=False)


def induced_order(base: Sequence, rank_map: Mapping, m_poset: Poset) -> Poset:
    """Order on ``base`` given by ``s <= t`` iff ``s == t`` or ``rank_map[s] < rank_map[t]`` in ``m_poset``."""
    base = [str(s) for s in base]
    try:
        ranks = np.array([m_poset.index(rank_map[s]) for s in base], dtype=np.int64)
    except KeyError as exc:
        raise UnknownElement(f"rank_map has no value for {exc.args[0]!r}") from None
    strict = m_poset.matrix[np.ix_(ranks, ranks)] & (ranks[:, None] != ranks[None, :])
    return Poset(base, strict | np.eye(len(base), dtype=bool))


# -- maps -------------------------------------------------------------------


class EvalMap:
    """A total map from the carrier of ``domain`` into the carrier of ``codomain``."""

    __slots__ = ("domain", "codomain", "_idx")

    def __init__(self, domain: Poset, codomain: Poset, values):
        self.domain = domain
        self.codomain = codomain
        if isinstance(values, np.ndarray) and values.dtype.kind == "i":
            idx = values.astype(np.int64, copy=True)
            if idx.shape != (len(domain),) or ((idx < 0) | (idx >= len(codomain))).any():
                raise ValueError("index vector does not fit domain/codomain")
        else:
            if isinstance(values, Mapping):
                extra = set(map(str, values)) - set(domain.elements)
                if extra:
                    raise UnknownElement(f"map assigns unknown domain element(s) {sorted(extra)}")
                vals = {str(k): v for k, v in values.items()}
                missing = [x for x in domain.elements if x not in vals]
                if missing:
                    raise ValueError(f"map is not total: no value for {missing}")
                seq = [vals[x] for x in domain.elements]
            else:
                seq = list(values)
                if len(seq) != len(domain):
                    raise ValueError(f"expected {len(domain)} values, got {len(seq)}")
            idx = np.array([codomain.index(v) for v in seq], dtype=np.int64)
        idx.setflags(write=False)
        self._idx = idx

    @property
    def indices(self) -> np.ndarray:
        return self._idx

    @property
    def values(self) -> dict[str, str]:
        els = self.codomain.elements
        return {x: els[i] for x, i in zip(self.domain.elements, self._idx)}

    def as_tuple(self) -> tuple[str, ...]:
        els = self.codomain.elements
        return tuple(els[i] for i in self._idx)

    def __call__(self, x) -> str:
        return self.codomain.elements[self._idx[self.domain.index(x)]]

    def __eq__(self, other):
        if not isinstance(other, EvalMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and np.array_equal(self._idx, other._idx))

    def __hash__(self):
        return hash(self._idx.tobytes())

    def __repr__(self):
        return f"EvalMap({', '.join(self.as_tuple())})"

    def with_posets(self, domain: Poset, codomain: Poset) -> EvalMap:
        """Same assignment, reinterpreted over posets with the same carriers (e.g. the duals)."""
        if domain.elements != self.domain.elements or codomain.elements != self.codomain.elements:
            raise ValueError("carriers differ")
        return EvalMap(domain, codomain, self._idx)

    def to_dict(self) -> dict:
        return {"values": self.values}

    @classmethod
    def from_dict(cls, data: Mapping, domain: Poset, codomain: Poset) -> EvalMap:
        return cls(domain, codomain, data["values"])


@dataclass(frozen=True)
class NonMonotonicityReport:
    """Comparable pairs ``(m, m')`` with ``m <= m'`` whose images are not ordered."""

    pairs: tuple[tuple[str, str], ...]

    def __bool__(self):
        return bool(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def is_monotone(self) -> bool:
        return not self.pairs


def nonmonotone_matrix(domain: Poset, codomain: Poset, idx: np.ndarray) -> np.ndarray:
    """``out[i, j]`` iff ``e_i <= e_j`` and ``v(e_i) </= v(e_j)``."""
    return domain.matrix & ~codomain.matrix[np.ix_(idx, idx)]


def check_monotone(f: EvalMap) -> NonMonotonicityReport:
    bad = nonmonotone_matrix(f.domain, f.codomain, f.indices)
    els = f.domain.elements
    return NonMonotonicityReport(tuple(sorted((els[i], els[j]) for i, j in zip(*np.nonzero(bad)))))


def is_monotone(f: EvalMap) -> bool:
    return not nonmonotone_matrix(f.domain, f.codomain, f.indices).any()


def all_maps(domain: Poset, codomain: Poset):
    """Every map ``domain -> codomain`` (``|L|**|M|`` of them), in lexicographic index order."""
    for combo in product(range(len(codomain)), repeat=len(domain)):
        yield EvalMap(domain, codomain, np.array(combo, dtype=np.int64))


down_set = Poset.down_set
up_set = Poset.up_set
minimal_of = Poset.minimal_of
maximal_of = Poset.maximal_of
max_chain_length = Poset.max_chain_length
rank_partition = Poset.rank_partition
order_dual = Poset.dual
