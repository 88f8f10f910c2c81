"""Brute-force reference computations, deliberately free of numpy and of the package internals."""
from itertools import permutations, product


def naive_order(elements, covers):
    """Set of pairs (a, b) with a <= b: reflexive-transitive closure by fixpoint."""
    rel = {(e, e) for e in elements} | set(covers)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def longest_chain(elements, rel):
    """Edges on the longest strictly increasing chain, by exhaustive DFS."""
    strict = {(a, b) for a, b in rel if a != b}

    def depth(x):
        return max((1 + depth(y) for (a, y) in strict if a == x), default=0)

    return max((depth(x) for x in elements), default=0)


def nonmonotone_pairs(elements, rel, values, crel):
    return {(a, b) for (a, b) in rel if (values[a], values[b]) not in crel}


def truncated_minus(a, b):
    return max(a - b, 0)


def fold_primal(factor_values, minus=truncated_minus):
    """Right-nested fold of equal-length integer sequences."""
    acc = list(factor_values[-1])
    for phi in reversed(factor_values[:-1]):
        acc = [minus(p, r) for p, r in zip(phi, acc)]
    return acc


def implies(a, b):
    return int((not a) or b)


def left_implication(tables):
    """((t[0] -> t[1]) -> t[2]) -> ... row by row over 0/1 strings."""
    acc = [int(c) for c in tables[0]]
    for t in tables[1:]:
        acc = [implies(a, int(c)) for a, c in zip(acc, t)]
    return "".join(map(str, acc))


def monotone_tables(n):
    """All monotone truth tables of arity n, checked against every comparable pair of rows."""
    rows = range(2**n)
    out = []
    for bits in product("01", repeat=2**n):
        if all(bits[u] <= bits[v] for u in rows for v in rows if u & v == u):
            out.append("".join(bits))
    return out


def all_posets_up_to_iso(n):
    """One representative (as a frozenset of strict pairs over range(n)) per isomorphism class."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    reps = []
    for mask in range(2 ** len(pairs)):
        covers = [p for k, p in enumerate(pairs) if mask >> k & 1]
        rel = naive_order(range(n), covers)
        strict = frozenset((a, b) for a, b in rel if a != b)
        canon = min(tuple(sorted((perm[a], perm[b]) for a, b in strict)) for perm in permutations(range(n)))
        if canon not in seen:
            seen.add(canon)
            reps.append(strict)
    return reps
