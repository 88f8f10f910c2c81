"""Decomposition engine: monotone factor chains, folding, padding and theta factors.

:func:`decompose` rewrites an arbitrary map ``psi: M -> L`` as
``boxminus(phi_1, boxminus(phi_2, ... phi_k))`` with every ``phi_i``
monotone. Each round finds the non-monotonicity domain of the current
residual, lifts the residual to its ``boxplus`` over down-sets on the
affected up-closed region, and solves for the next residual with the least
axiom-4 witness. :func:`decompose_dual` runs the same engine on the order
duals and reads the result back as a left-nested chain of ``boxminus*``.

Factors are stored in the order they are written: ``[phi_1, ..., phi_k]``
for primal chains and ``[phi_k, ..., phi_1]`` for dual chains, where the
dual form is ``boxminus*(...boxminus*(phi_k, phi_{k-1})..., phi_1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .connectives import ConnectiveSet, codomain_report, least_witness_table
from .errors import (
    ApproxError,
    AxiomFailure,
    InvariantViolation,
    NoGreatestElement,
    NonConstantCirc,
    ShrinkRequested,
    WitnessNotFound,
)
from .poset import EvalMap, Poset, nonmonotone_matrix


@dataclass(frozen=True)
class FactorChain:
    factors: tuple[EvalMap, ...]
    algebra: ConnectiveSet
    orientation: str = "primal"
    # up-closed regions M_1 > M_2 > ... visited by the engine (empty if built by hand)
    stages: tuple[frozenset, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ApproxError("a factor chain needs at least one factor")
        if self.orientation not in ("primal", "dual"):
            raise ApproxError(f"bad orientation {self.orientation!r}")
        first = self.factors[0]
        for f in self.factors:
            if f.domain != first.domain or f.codomain != first.codomain:
                raise ApproxError("factors do not share domain and codomain")
            if nonmonotone_matrix(f.domain, f.codomain, f.indices).any():
                raise ApproxError(f"factor {f} is not monotone")
        if first.codomain != self.algebra.codomain:
            raise ApproxError("factor codomain differs from the algebra's codomain")

    @property
    def domain(self) -> Poset:
        return self.factors[0].domain

    @property
    def codomain(self) -> Poset:
        return self.factors[0].codomain

    @property
    def boxminus_count(self) -> int:
        return len(self.factors) - 1

    def __len__(self):
        return len(self.factors)


@dataclass(frozen=True)
class ThetaFunction:
    map: EvalMap
    rank: int

    def shape_ok(self, algebra: ConnectiveSet) -> bool:
        """Floor below rank block, maximal above it, monotone overall."""
        f = self.map
        ranks = f.domain._rank_indices()
        floor = f.codomain.index(algebra.floor)
        L = f.codomain.matrix
        maximal = ~(L & ~np.eye(len(L), dtype=bool)).any(axis=1)
        below = ranks < self.rank - 1
        above = ranks > self.rank - 1
        return bool((f.indices[below] == floor).all()
                    and maximal[f.indices[above]].all()
                    and not nonmonotone_matrix(f.domain, f.codomain, f.indices).any())


def _fold_indices(tables, orientation, factors):
    if orientation == "primal":
        acc = factors[-1]
        for phi in reversed(factors[:-1]):
            acc = tables[phi, acc]
    else:
        acc = factors[0]
        for phi in factors[1:]:
            acc = tables[acc, phi]
    return acc


def fold(chain: FactorChain) -> EvalMap:
    """Evaluate the approximating form pointwise."""
    idx = _fold_indices(chain.algebra.minus_table, chain.orientation, [f.indices for f in chain.factors])
    return EvalMap(chain.domain, chain.codomain, idx)


def _aggregate(algebra: ConnectiveSet, leq: np.ndarray, cur: np.ndarray, x: int, how: str) -> int:
    down = np.flatnonzero(leq[:, x])
    if how == "boxplus":
        return algebra.boxplus_idx(frozenset(int(v) for v in cur[down]))
    return algebra.uplus_fold_idx(int(v) for v in cur[down])


def decompose(psi: EvalMap, algebra: ConnectiveSet, *, aggregate: str | None = None,
              check: bool = True) -> FactorChain:
    """Monotone factor chain whose primal fold is ``psi``.

    ``aggregate`` picks ``"boxplus"`` (system A) or ``"uplus"`` (system B,
    folding ``uplus`` over each down-set); by default boxplus is used when
    the algebra has it. With ``check`` the codomain axioms are verified
    first and AxiomFailure is raised if they fail.
    """
    if algebra.orientation != "primal":
        raise ApproxError("decompose needs a primal algebra; use decompose_dual")
    if psi.codomain != algebra.codomain:
        raise ApproxError("psi's codomain is not the algebra's codomain")
    how = aggregate or ("boxplus" if algebra.has_boxplus else "uplus")
    if how == "uplus" and algebra.uplus_table is None:
        raise ApproxError(f"{algebra.name} has neither boxplus nor uplus")
    if check:
        report = codomain_report(algebra, "A" if how == "boxplus" else "B")
        if not report.passed:
            raise AxiomFailure(f"{algebra.name} violates {report.system}: {report.violations[:3]}", report)

    M, L = psi.domain, psi.codomain
    leq = M.matrix
    circ = algebra.circ_table
    minus = algebra.minus_table
    W = least_witness_table(algebra)
    D = M.max_chain_length()

    cur = psi.indices.copy()
    factors: list[np.ndarray] = []
    stages: list[np.ndarray] = []
    for _ in range(len(M) + 1):
        bad = nonmonotone_matrix(M, L, cur)
        if not bad.any():
            factors.append(cur)
            break
        heads = bad.any(axis=0)
        region = leq[heads, :].any(axis=0)
        if stages and ((region & ~stages[-1]).any() or np.array_equal(region, stages[-1])):
            raise InvariantViolation("non-monotone region did not shrink strictly")
        stages.append(region)

        phi = cur.copy()
        for x in np.flatnonzero(region):
            phi[x] = _aggregate(algebra, leq, cur, x, how)
        nxt = circ[cur].copy()
        changed = np.flatnonzero(phi != cur)
        for x in changed:
            z = W[cur[x], phi[x]]
            if z < 0:
                raise WitnessNotFound(
                    f"no z with boxminus({L.elements[phi[x]]}, z) = {L.elements[cur[x]]} "
                    f"and circ({L.elements[phi[x]]}) <= z")
            nxt[x] = z
        if not np.array_equal(minus[phi, nxt], cur):
            raise InvariantViolation("boxminus(phi, residual) does not reproduce the previous residual")
        if nonmonotone_matrix(M, L, phi).any():
            raise AxiomFailure(f"lifted factor is not monotone; {algebra.name} is invalid for these posets")
        factors.append(phi)
        cur = nxt
    else:
        raise InvariantViolation("decomposition did not terminate")

    if len(factors) - 1 > D:
        raise InvariantViolation(f"{len(factors) - 1} boxminus applications exceed D={D}")
    els = M.elements
    return FactorChain(
        tuple(EvalMap(M, L, f) for f in factors), algebra, "primal",
        tuple(frozenset(els[i] for i in np.flatnonzero(s)) for s in stages),
    )


def decompose_dual(psi: EvalMap, algebra: ConnectiveSet, *, aggregate: str | None = None,
                   check: bool = True) -> FactorChain:
    """Left-nested ``boxminus*`` chain of monotone factors folding to ``psi``."""
    if algebra.orientation != "dual":
        raise ApproxError("decompose_dual needs a dual algebra")
    if psi.codomain != algebra.codomain:
        raise ApproxError("psi's codomain is not the algebra's codomain")
    mirrored = mirror_of(algebra)
    flipped = psi.with_posets(psi.domain.dual(), mirrored.codomain)
    primal = decompose(flipped, mirrored, aggregate=aggregate, check=check)
    factors = [f.with_posets(psi.domain, psi.codomain) for f in reversed(primal.factors)]
    return FactorChain(tuple(factors), algebra, "dual", primal.stages)


_MIRRORS: dict[int, ConnectiveSet] = {}


def mirror_of(algebra: ConnectiveSet) -> ConnectiveSet:
    # memoized so codomain_report's cache hits across calls
    key = id(algebra)
    hit = _MIRRORS.get(key)
    if hit is None or hit[0] is not algebra:
        hit = (algebra, algebra.mirror())
        _MIRRORS[key] = hit
    return hit[1]


def pad_to(chain: FactorChain, target_factor_count: int) -> FactorChain:
    """Lengthen ``chain`` by composing ``circ`` onto the innermost factor; the fold is unchanged."""
    n = len(chain.factors)
    if target_factor_count < n:
        raise ShrinkRequested(f"chain has {n} factors, cannot pad to {target_factor_count}")
    circ = chain.algebra.circ_table
    factors = list(chain.factors)
    for _ in range(target_factor_count - n):
        if chain.orientation == "primal":
            inner = factors[-1]
            factors.append(EvalMap(inner.domain, inner.codomain, circ[inner.indices]))
        else:
            inner = factors[0]
            factors.insert(0, EvalMap(inner.domain, inner.codomain, circ[inner.indices]))
    return FactorChain(tuple(factors), chain.algebra, chain.orientation, chain.stages)


def _floor_index(algebra: ConnectiveSet) -> int:
    floor = algebra.floor
    if floor is None:
        raise NonConstantCirc(f"{algebra.name}: circ is not constant, so there is no floor value")
    return algebra.codomain.index(floor)


def theta_decompose(psi: EvalMap, algebra: ConnectiveSet) -> list[ThetaFunction]:
    """One theta-function per rank block; their primal fold is ``psi``.

    ``theta_i`` is the floor on blocks below ``i``, the current residual on
    block ``i`` and the greatest element above it; the next residual is the
    floor up to block ``i`` and the least ``z`` with
    ``boxminus(greatest, z) = residual`` beyond it.
    """
    if algebra.orientation != "primal":
        raise ApproxError("theta_decompose needs a primal algebra")
    if psi.codomain != algebra.codomain:
        raise ApproxError("psi's codomain is not the algebra's codomain")
    floor = _floor_index(algebra)
    if algebra.greatest is None:
        raise NoGreatestElement(f"{algebra.name} designates no greatest element")
    top = algebra.codomain.index(algebra.greatest)
    W = least_witness_table(algebra)
    M = psi.domain
    ranks = M._rank_indices()
    nblocks = int(ranks.max()) + 1 if len(ranks) else 0

    cur = psi.indices.copy()
    thetas = []
    for i in range(nblocks):
        th = np.where(ranks < i, floor, np.where(ranks == i, cur, top))
        thetas.append(ThetaFunction(EvalMap(M, psi.codomain, th), i + 1))
        nxt = np.full_like(cur, floor)
        later = np.flatnonzero(ranks > i)
        for x in later:
            z = W[cur[x], top]
            if z < 0:
                raise WitnessNotFound(f"no z with boxminus(greatest, z) = {psi.codomain.elements[cur[x]]}")
            nxt[x] = z
        cur = nxt

    got = _fold_indices(algebra.minus_table, "primal", [t.map.indices for t in thetas])
    if not np.array_equal(got, psi.indices):
        raise InvariantViolation("theta chain does not fold back to psi")
    return thetas


def theta_chain(thetas: list[ThetaFunction], algebra: ConnectiveSet) -> FactorChain:
    return FactorChain(tuple(t.map for t in thetas), algebra, "primal")


def support(phi: EvalMap, algebra: ConnectiveSet) -> frozenset[str]:
    """Elements where ``phi`` lies strictly above the floor value."""
    floor = _floor_index(algebra)
    L = phi.codomain.matrix
    above = L[floor, phi.indices] & (phi.indices != floor)
    return frozenset(phi.domain.elements[i] for i in np.flatnonzero(above))


# -- chain files ----------------------------------------------------------------


def chain_to_dict(chain: FactorChain, target: EvalMap | None = None) -> dict:
    out = {
        "orientation": chain.orientation,
        "algebra": chain.algebra.name,
        "factors": [f.to_dict() for f in chain.factors],
    }
    folded = fold(chain)
    out["verification"] = {
        "fold-equal": bool(target is not None and folded == target),
        "boxminus-count": chain.boxminus_count,
        "D": chain.domain.max_chain_length(),
    }
    if target is None:
        del out["verification"]["fold-equal"]
    return out


def chain_from_dict(data: dict, domain: Poset, algebra: ConnectiveSet) -> FactorChain:
    factors = tuple(EvalMap.from_dict(f, domain, algebra.codomain) for f in data["factors"])
    orientation = data.get("orientation", algebra.orientation)
    if orientation != algebra.orientation:
        raise ApproxError(f"chain orientation {orientation!r} does not match algebra {algebra.name}")
    return FactorChain(factors, algebra, orientation)
