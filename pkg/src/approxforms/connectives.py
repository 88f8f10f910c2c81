"""Connective sets over a codomain poset and a brute-force axiom checker.

A :class:`ConnectiveSet` bundles the difference-like ``boxminus``, the
upper-bound aggregator ``boxplus`` (on finite nonempty subsets), the floor
companion ``circ`` and optionally a binary join-like ``uplus``. Primal sets
are checked against systems ``A``/``B``; dual sets against ``A*``/``B*``,
where the order is reversed and ``boxminus`` takes its arguments the other
way round.

The verifier evaluates every quantifier instance. Subset quantifiers over
the codomain are exhaustive up to :data:`FULL_SUBSET_LIMIT` elements; above
that only the subsets that the decomposition engine can actually feed to
``boxplus`` (images of down-sets) are examined, and the report says so.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import ApproxError, Intractable, NoGreatestElement, SizeLimit, UnknownElement
from .poset import Poset, build_poset, chain

FULL_SUBSET_LIMIT = 16
MAX_TABULATED = 64
DEFAULT_BUDGET = 2**20
MAX_VIOLATIONS = 100

SYSTEMS = ("A", "B", "A*", "B*")
_SYSTEM_ALIASES = {"𝒜": "A", "ℬ": "B", "𝒜*": "A*", "ℬ*": "B*", "A_star": "A*", "B_star": "B*"}


class ConnectiveSet:
    """Concrete connectives over ``codomain``.

    ``boxminus``, ``circ`` and ``uplus`` are tabulated at construction (which
    doubles as the totality check); ``boxplus`` is kept as a callable on
    frozensets of codomain elements and memoized.
    """

    def __init__(
        self,
        codomain: Poset,
        boxminus: Callable[[str, str], str],
        circ: Callable[[str], str],
        boxplus: Callable[[frozenset], str] | None = None,
        uplus: Callable[[str, str], str] | None = None,
        orientation: str = "primal",
        greatest: str | None = None,
        name: str | None = None,
    ):
        if orientation not in ("primal", "dual"):
            raise ApproxError(f"orientation must be 'primal' or 'dual', got {orientation!r}")
        n = len(codomain)
        if n == 0:
            raise ApproxError("codomain must be nonempty")
        if n > MAX_TABULATED:
            raise SizeLimit(f"codomain of {n} elements exceeds {MAX_TABULATED}")
        els = codomain.elements
        self.codomain = codomain
        self.orientation = orientation
        self.name = name or "custom"
        self._boxplus = boxplus
        self._bp_cache: dict[frozenset, int] = {}

        def tab2(op, what):
            t = np.empty((n, n), dtype=np.int64)
            for i, a in enumerate(els):
                for j, b in enumerate(els):
                    t[i, j] = self._result(op(a, b), what, (a, b))
            t.setflags(write=False)
            return t

        self.minus_table = tab2(boxminus, "boxminus")
        circ_t = np.array([self._result(circ(a), "circ", (a,)) for a in els], dtype=np.int64)
        circ_t.setflags(write=False)
        self.circ_table = circ_t
        self.uplus_table = tab2(uplus, "uplus") if uplus is not None else None
        if greatest is not None:
            g = codomain.index(greatest)
            if not codomain.matrix[:, g].all():
                raise NoGreatestElement(f"{greatest!r} does not dominate every codomain element")
            self.greatest = els[g]
        else:
            self.greatest = None

    def _result(self, value, what, args):
        try:
            return self.codomain.index(value)
        except UnknownElement:
            raise UnknownElement(f"{what}{args} = {value!r} is outside the codomain") from None

    def __repr__(self):
        return f"ConnectiveSet({self.name}, {self.orientation}, |L|={len(self.codomain)})"

    # -- element-level operations --------------------------------------------

    def boxminus(self, a, b) -> str:
        c = self.codomain
        return c.elements[self.minus_table[c.index(a), c.index(b)]]

    def circ(self, a) -> str:
        c = self.codomain
        return c.elements[self.circ_table[c.index(a)]]

    def uplus(self, a, b) -> str:
        if self.uplus_table is None:
            raise ApproxError(f"{self.name} has no uplus")
        c = self.codomain
        return c.elements[self.uplus_table[c.index(a), c.index(b)]]

    def boxplus(self, subset: Iterable) -> str:
        return self.codomain.elements[self.boxplus_idx(frozenset(self.codomain.index(x) for x in subset))]

    @property
    def has_boxplus(self) -> bool:
        return self._boxplus is not None

    def boxplus_idx(self, subset: frozenset) -> int:
        if not subset:
            raise ApproxError("boxplus is undefined on the empty set")
        if self._boxplus is None:
            raise ApproxError(f"{self.name} has no boxplus")
        try:
            return self._bp_cache[subset]
        except KeyError:
            pass
        els = self.codomain.elements
        arg = frozenset(els[i] for i in subset)
        r = self._result(self._boxplus(arg), "boxplus", (sorted(arg),))
        self._bp_cache[subset] = r
        return r

    def uplus_fold_idx(self, items: Iterable[int]) -> int:
        """``uplus(v1, uplus(v2, ...))`` over the given codomain indices in order."""
        items = list(items)
        if not items:
            raise ApproxError("cannot fold uplus over nothing")
        acc = items[-1]
        for v in reversed(items[:-1]):
            acc = int(self.uplus_table[v, acc])
        return acc

    @property
    def floor(self) -> str | None:
        """The value of ``circ`` when it is a constant map, else None."""
        t = self.circ_table
        return self.codomain.elements[t[0]] if (t == t[0]).all() else None

    def mirror(self) -> ConnectiveSet:
        """Same operations read over the order dual, with ``boxminus`` arguments swapped.

        A primal set satisfying ``A`` mirrors to a dual set satisfying ``A*``
        and back; ``mirror(mirror(cs))`` reproduces ``cs``.
        """
        c = self.codomain
        d = c.dual()
        tops = [i for i in range(len(d)) if d.matrix[:, i].all()]
        return ConnectiveSet(
            d,
            boxminus=lambda a, b: self.boxminus(b, a),
            circ=self.circ,
            boxplus=self._boxplus,
            uplus=(lambda a, b: self.uplus(a, b)) if self.uplus_table is not None else None,
            orientation="dual" if self.orientation == "primal" else "primal",
            greatest=d.elements[tops[0]] if tops else None,
            name=f"mirror({self.name})",
        )


def chain_primal(m: int) -> ConnectiveSet:
    """Truncated subtraction on the chain ``0 < ... < m-1`` with zero floor and max as join.

    For ``m = 2`` boxminus is nonimplication ``a and not b``.
    """
    if not 2 <= m <= MAX_TABULATED:
        raise SizeLimit(f"chain-primal needs 2 <= m <= {MAX_TABULATED}, got {m}")
    return ConnectiveSet(
        chain(m),
        boxminus=lambda a, b: str(max(int(a) - int(b), 0)),
        circ=lambda a: "0",
        boxplus=lambda s: str(max(int(x) for x in s)),
        uplus=lambda a, b: str(max(int(a), int(b))),
        orientation="primal",
        greatest=str(m - 1),
        name=f"chain-primal:{m}",
    )


def boolean_dual() -> ConnectiveSet:
    """Material implication on ``{0 < 1}``, constant-1 companion, conjunction as aggregator."""
    return ConnectiveSet(
        chain(2),
        boxminus=lambda a, b: "1" if a == "0" or b == "1" else "0",
        circ=lambda a: "1",
        boxplus=lambda s: "1" if all(x == "1" for x in s) else "0",
        uplus=lambda a, b: "1" if a == b == "1" else "0",
        orientation="dual",
        greatest="1",
        name="boolean-dual",
    )


def load_algebra(data: Mapping) -> ConnectiveSet:
    """Build a custom set from its table form (see README for the schema)."""
    codomain = Poset.from_dict(data["codomain"])
    minus = data["boxminus"]
    circ = data["circ"]
    plus = None
    if "boxplus" in data:
        listed = {frozenset(map(str, row["subset"])): str(row["value"]) for row in data["boxplus"]}

        def plus(s):
            try:
                return listed[frozenset(s)]
            except KeyError:
                raise ApproxError(f"boxplus table has no entry for {sorted(s)}") from None

    uplus = data.get("uplus")

    def lookup2(table, what):
        def op(a, b):
            try:
                return str(table[a][b])
            except KeyError:
                raise ApproxError(f"{what} table has no entry for ({a}, {b})") from None
        return op

    def circ_op(a):
        try:
            return str(circ[a])
        except KeyError:
            raise ApproxError(f"circ table has no entry for {a}") from None

    return ConnectiveSet(
        codomain,
        boxminus=lookup2(minus, "boxminus"),
        circ=circ_op,
        boxplus=plus,
        uplus=lookup2(uplus, "uplus") if uplus is not None else None,
        orientation=data.get("orientation", "primal"),
        greatest=data.get("greatest"),
        name=data.get("name", "custom"),
    )


def dump_algebra(cs: ConnectiveSet, subsets: Iterable[Iterable[str]] | None = None) -> dict:
    """Table form of ``cs``; ``boxplus`` is listed on ``subsets`` (default: all nonempty ones)."""
    els = cs.codomain.elements
    out = {
        "name": cs.name,
        "orientation": cs.orientation,
        "codomain": cs.codomain.to_dict(),
        "boxminus": {a: {b: cs.boxminus(a, b) for b in els} for a in els},
        "circ": {a: cs.circ(a) for a in els},
    }
    if cs.has_boxplus:
        if subsets is None:
            subsets = [c for r in range(1, len(els) + 1) for c in combinations(els, r)]
        out["boxplus"] = [{"subset": sorted(s), "value": cs.boxplus(s)} for s in subsets]
    if cs.uplus_table is not None:
        out["uplus"] = {a: {b: cs.uplus(a, b) for b in els} for a in els}
    if cs.greatest is not None:
        out["greatest"] = cs.greatest
    return out


def parse_algebra(selector: str) -> ConnectiveSet:
    """``chain-primal:<m>``, ``boolean-dual`` or a path to a table file."""
    if selector == "boolean-dual":
        return boolean_dual()
    if selector.startswith("chain-primal:"):
        try:
            m = int(selector.split(":", 1)[1])
        except ValueError:
            raise ApproxError(f"bad algebra selector {selector!r}") from None
        return chain_primal(m)
    try:
        with open(selector) as fh:
            return load_algebra(json.load(fh))
    except FileNotFoundError:
        raise ApproxError(f"unknown algebra {selector!r} (not a selector or readable file)") from None


# -- verification ---------------------------------------------------------


@dataclass
class AxiomReport:
    system: str
    passed: bool
    violations: list = field(default_factory=list)
    subset_scope: str = "all nonempty subsets"
    checked: int = 0
    least_witnesses: dict = field(default_factory=dict)

    def __str__(self):
        lines = [f"system={self.system}", f"passed={str(self.passed).lower()}",
                 f"instances={self.checked}", f"subset_scope={self.subset_scope}",
                 f"violations={len(self.violations)}"]
        lines += [f"violation {ax} {w}" for ax, w in self.violations]
        return "\n".join(lines)


def normalize_system(system: str) -> str:
    system = _SYSTEM_ALIASES.get(system, system)
    if system not in SYSTEMS:
        raise ApproxError(f"unknown axiom system {system!r}; expected one of {SYSTEMS}")
    return system


class _Ctx:
    """Index-level view of a connective set under a chosen reading of the order."""

    def __init__(self, cs: ConnectiveSet, dual: bool):
        self.cs = cs
        self.dual = dual
        L = cs.codomain.matrix
        # le(a, b): "a <=_l b" for primal systems, "a >=_l b" for the starred ones
        self.le = L.T if dual else L
        self.els = cs.codomain.elements
        self.n = len(self.els)

    def minus(self, first, second):
        # starred axioms write boxminus* with the "argument" on the left
        return int(self.cs.minus_table[first, second])


def _name(ctx, i):
    return ctx.els[i]


def _subset_names(ctx, mask_or_set):
    if isinstance(mask_or_set, int):
        return tuple(ctx.els[i] for i in range(ctx.n) if mask_or_set >> i & 1)
    return tuple(sorted(ctx.els[i] for i in mask_or_set))


def _check_a1(m_poset: Poset, dual: bool, budget: int, out: list, tag: str) -> int:
    n = len(m_poset)
    if 2**n > budget:
        raise Intractable(f"{tag}1 needs 2^{n} subsets of M, over budget {budget}")
    leq = m_poset.matrix.T if dual else m_poset.matrix
    strict = leq & ~np.eye(n, dtype=bool)
    els = m_poset.elements
    for mask in range(1, 2**n):
        members = np.array([mask >> i & 1 for i in range(n)], dtype=bool)
        if not _a1_holds(leq, strict, members):
            out.append((f"{tag}1", (tuple(sorted(els[i] for i in np.flatnonzero(members))),)))
    return 2**n - 1


def _a1_holds(leq, strict, members):
    # candidate: members with no strictly smaller member (under the chosen reading)
    below = strict & members[:, None] & members[None, :]
    cand = members & ~below.any(axis=0)
    anti = not (strict & cand[:, None] & cand[None, :]).any()
    covered = (leq & cand[:, None])[:, members].any(axis=0).all()
    return anti and bool(covered)


def _subset_family(ctx, m_poset, psi):
    n = ctx.n
    if n <= FULL_SUBSET_LIMIT:
        return None, "all nonempty subsets"
    fam = set()
    if psi is not None:
        downs = psi.domain.matrix
        for x in range(len(psi.domain)):
            fam.add(frozenset(int(v) for v in psi.indices[downs[:, x]]))
        return sorted(fam, key=sorted), "down-set images psi(x^) only"
    L = ctx.cs.codomain.matrix
    for l in range(n):
        fam.add(frozenset(np.flatnonzero(L[:, l]).tolist()))
        fam.add(frozenset(np.flatnonzero(L[l, :]).tolist()))
    return sorted(fam, key=sorted), "principal down-sets and up-sets only"


def _check_a2(ctx, family, out, tag):
    cs = ctx.cs
    if not cs.has_boxplus:
        out.append((f"{tag}2", ("undefined", cs.name)))
        return 1
    le = ctx.le
    count = 0
    if family is None:
        n = ctx.n
        bp = np.full(2**n, -1, dtype=np.int64)
        for mask in range(1, 2**n):
            bp[mask] = cs.boxplus_idx(frozenset(i for i in range(n) if mask >> i & 1))
        masks = np.arange(1, 2**n)
        for i in range(n):
            has = masks[(masks >> i) & 1 == 1]
            bad = has[~le[i, bp[has]]]
            for m in bad:
                out.append((f"{tag}2", ("bound", _subset_names(ctx, int(m)), ctx.els[i])))
            lacks = masks[(masks >> i) & 1 == 0]
            ext = lacks | (1 << i)
            badm = lacks[~le[bp[lacks], bp[ext]]]
            for m in badm:
                out.append((f"{tag}2", ("mono", _subset_names(ctx, int(m)), _subset_names(ctx, int(m) | (1 << i)))))
            count += len(has) + len(lacks)
        return count
    vals = [cs.boxplus_idx(s) for s in family]
    for s, v in zip(family, vals):
        for x in sorted(s):
            count += 1
            if not le[x, v]:
                out.append((f"{tag}2", ("bound", _subset_names(ctx, s), ctx.els[x])))
    for (s, v), (t, w) in ((a, b) for a in zip(family, vals) for b in zip(family, vals)):
        if s < t:
            count += 1
            if not le[v, w]:
                out.append((f"{tag}2", ("mono", _subset_names(ctx, s), _subset_names(ctx, t))))
    return count


def _check_b2(ctx, out, tag):
    cs = ctx.cs
    if cs.uplus_table is None:
        out.append((f"{tag}2", ("undefined", cs.name)))
        return 1
    le = ctx.le
    for x in range(ctx.n):
        for y in range(ctx.n):
            u = cs.uplus_table[x, y]
            if not (le[x, u] and le[y, u]):
                out.append((f"{tag}2", (ctx.els[x], ctx.els[y])))
    return ctx.n**2


def _check_a3(ctx, out, tag):
    cs = ctx.cs
    circ = cs.circ_table
    for l in range(ctx.n):
        # primal: boxminus(l, circ(l)) = l; starred: boxminus*(circ*(l), l) = l
        v = ctx.minus(circ[l], l) if ctx.dual else ctx.minus(l, circ[l])
        if v != l:
            out.append((f"{tag}3", ("identity", ctx.els[l])))
    for l in range(ctx.n):
        for l2 in range(ctx.n):
            if ctx.le[l, l2] and not ctx.le[circ[l], circ[l2]]:
                out.append((f"{tag}3", ("mono", ctx.els[l], ctx.els[l2])))
    return ctx.n + ctx.n**2


def _a4_witnesses(ctx, l, l2):
    circ = ctx.cs.circ_table
    for w in range(ctx.n):
        v = ctx.minus(w, l2) if ctx.dual else ctx.minus(l2, w)
        if v == l and ctx.le[circ[l2], w]:
            yield w


def _check_a4(ctx, out, tag, least):
    count = 0
    for l in range(ctx.n):
        for l2 in range(ctx.n):
            if not ctx.le[l, l2]:
                continue
            count += 1
            w = next(_a4_witnesses(ctx, l, l2), None)
            if w is None:
                out.append((f"{tag}4", (ctx.els[l], ctx.els[l2])))
            else:
                least[(ctx.els[l], ctx.els[l2])] = ctx.els[w]
    return count


def verify_axioms(cs: ConnectiveSet, m_poset: Poset, system: str = "A", *,
                  psi=None, budget: int = DEFAULT_BUDGET) -> AxiomReport:
    """Exhaustively check ``system`` for ``cs`` with internal poset ``m_poset``.

    At most :data:`MAX_VIOLATIONS` violations are kept. ``psi`` only matters
    for codomains above :data:`FULL_SUBSET_LIMIT` elements, where it narrows
    the subset quantifier to down-set images.
    """
    system = normalize_system(system)
    dual = system.endswith("*")
    tag = system
    ctx = _Ctx(cs, dual)
    viol: list = []
    checked = _check_a1(m_poset, dual, budget, viol, tag)
    least: dict = {}
    scope = "n/a (uplus)"
    if system[0] == "A":
        family, scope = _subset_family(ctx, m_poset, psi)
        if family is None and 2**ctx.n * ctx.n > budget:
            raise Intractable("boxplus subset space over budget")
        checked += _check_a2(ctx, family, viol, tag)
    else:
        checked += _check_b2(ctx, viol, tag)
    checked += _check_a3(ctx, viol, tag)
    checked += _check_a4(ctx, viol, tag, least)
    return AxiomReport(system, not viol, viol[:MAX_VIOLATIONS], scope, checked, least)


@lru_cache(maxsize=64)
def codomain_report(cs: ConnectiveSet, system: str) -> AxiomReport:
    """The codomain-only axioms (2-4) of ``system``; A1 holds on every finite poset."""
    system = normalize_system(system)
    ctx = _Ctx(cs, system.endswith("*"))
    viol: list = []
    least: dict = {}
    if system[0] == "A":
        family, scope = _subset_family(ctx, None, None)
        n = _check_a2(ctx, family, viol, system)
    else:
        scope = "n/a (uplus)"
        n = _check_b2(ctx, viol, system)
    n += _check_a3(ctx, viol, system) + _check_a4(ctx, viol, system, least)
    return AxiomReport(system, not viol, viol[:MAX_VIOLATIONS], scope, n, least)


def least_witness_table(cs: ConnectiveSet) -> np.ndarray:
    """``W[l, l']`` = least ``l''`` (codomain index order) with ``boxminus(l', l'') = l`` and ``circ(l') <= l''``; -1 if none.

    Read with the primal convention regardless of ``cs.orientation``.
    """
    ctx = _Ctx(cs, dual=False)
    W = np.full((ctx.n, ctx.n), -1, dtype=np.int64)
    for l in range(ctx.n):
        for l2 in range(ctx.n):
            w = next(_a4_witnesses(ctx, l, l2), None)
            if w is not None:
                W[l, l2] = w
    W.setflags(write=False)
    return W


def witness_violates(cs: ConnectiveSet, m_poset: Poset, system: str, axiom: str, witness: tuple) -> bool:
    """Re-evaluate a single reported violation; True iff it really violates ``axiom``."""
    system = normalize_system(system)
    dual = system.endswith("*")
    ctx = _Ctx(cs, dual)
    idx = cs.codomain.index
    num = axiom[-1]
    if num == "1":
        (subset,) = witness
        leq = m_poset.matrix.T if dual else m_poset.matrix
        strict = leq & ~np.eye(len(m_poset), dtype=bool)
        members = np.zeros(len(m_poset), dtype=bool)
        for x in subset:
            members[m_poset.index(x)] = True
        return not _a1_holds(leq, strict, members)
    if num == "2" and system[0] == "A":
        kind = witness[0]
        if kind == "undefined":
            return not cs.has_boxplus
        if kind == "bound":
            s = frozenset(idx(x) for x in witness[1])
            return not ctx.le[idx(witness[2]), cs.boxplus_idx(s)]
        s = frozenset(idx(x) for x in witness[1])
        t = frozenset(idx(x) for x in witness[2])
        return s <= t and not ctx.le[cs.boxplus_idx(s), cs.boxplus_idx(t)]
    if num == "2":
        if witness[0] == "undefined":
            return cs.uplus_table is None
        x, y = idx(witness[0]), idx(witness[1])
        u = cs.uplus_table[x, y]
        return not (ctx.le[x, u] and ctx.le[y, u])
    if num == "3":
        circ = cs.circ_table
        if witness[0] == "identity":
            l = idx(witness[1])
            v = ctx.minus(circ[l], l) if dual else ctx.minus(l, circ[l])
            return v != l
        l, l2 = idx(witness[1]), idx(witness[2])
        return bool(ctx.le[l, l2] and not ctx.le[circ[l], circ[l2]])
    if num == "4":
        l, l2 = idx(witness[0]), idx(witness[1])
        return bool(ctx.le[l, l2]) and next(_a4_witnesses(ctx, l, l2), None) is None
    raise ApproxError(f"unknown axiom id {axiom!r}")
