"""Brute-force reference implementations.

Nothing here imports from snarkdefect: every result is recomputed from a
plain edge list, so the package's pruned searches have something
genuinely independent to disagree with.  All of it is slow on purpose —
keep inputs small.
"""

import itertools


def edge_pairs(g):
    """CubicGraph -> plain [(a, b)] endpoint list for feeding the oracles."""
    return [tuple(g.endpoints(e)) for e in range(g.edge_count)]


def perfect_matchings(n, edges):
    """All perfect matchings as sorted edge-index tuples, in lex order."""
    if n % 2:
        return []
    out = []
    for combo in itertools.combinations(range(len(edges)), n // 2):
        seen = set()
        for i in combo:
            a, b = edges[i]
            if a == b or a in seen or b in seen:
                break
            seen.add(a)
            seen.add(b)
        else:
            out.append(combo)
    return out


def count_perfect_matchings(n, edges):
    """Memoised count over vertex bitmasks (branch on the lowest vertex)."""
    if n % 2:
        return 0
    incident = [[] for _ in range(n)]
    for i, (a, b) in enumerate(edges):
        if a != b:  # a loop never sits in a matching
            incident[a].append((i, b))
            incident[b].append((i, a))
    memo = {0: 1}

    def count(mask):
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length() - 1
        total = 0
        for i, u in incident[v]:
            if u != v and (mask >> u) & 1:
                total += count(mask & ~((1 << v) | (1 << u)))
        memo[mask] = total
        return total

    return count((1 << n) - 1)


def naive_defect(n, edges, regular=False):
    """Triple loop over all matchings; no pruning, no early exit.

    Returns (value, witness) where witness is the first optimal triple in
    scan order i <= j <= k over the lex matching list — the same triple a
    correct lex-least search must report.
    """
    pms = perfect_matchings(n, edges)
    best, wit = None, None
    for x in range(len(pms)):
        for y in range(x, len(pms)):
            for z in range(y, len(pms)):
                cnt = [0] * len(edges)
                for m in (pms[x], pms[y], pms[z]):
                    for e in m:
                        cnt[e] += 1
                if regular and 3 in cnt:
                    continue
                miss = cnt.count(0)
                if best is None or miss < best:
                    best, wit = miss, (pms[x], pms[y], pms[z])
    return best, wit


def proper_three_colourable(n, edges):
    """Proper 3-edge-colourability of a plain graph, by backtracking.

    Edges sharing an endpoint must differ.  A loop conflicts with itself,
    so any loop kills colourability outright.
    """
    m = len(edges)
    for a, b in edges:
        if a == b:
            return False
    clash = [set() for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if set(edges[i]) & set(edges[j]):
                clash[i].add(j)
                clash[j].add(i)
    colour = [0] * m

    def go(i):
        if i == m:
            return True
        used = {colour[j] for j in clash[i]}
        for c in (1, 2, 3):
            if c not in used:
                colour[i] = c
                if go(i + 1):
                    return True
        colour[i] = 0
        return False

    return go(0)


def all_colourings(ends):
    """Every edge->colour map with three distinct colours at each vertex.

    `ends` is a multipole endpoint list, (a, b) with None for free ends.
    3^m product scan — tiny fragments only.
    """
    m = len(ends)
    out = []
    for assign in itertools.product((1, 2, 3), repeat=m):
        slots = {}
        for e, (a, b) in enumerate(ends):
            for v in (a, b):
                if v is not None:
                    slots.setdefault(v, []).append(assign[e])
        if all(len(cols) == len(set(cols)) for cols in slots.values()):
            out.append(dict(enumerate(assign)))
    return out


def fano_line_triples():
    """The 7 Fano lines as frozensets of nonzero GF(2)^3 points (as ints)."""
    return {
        frozenset(t)
        for t in itertools.combinations(range(1, 8), 3)
        if t[0] ^ t[1] ^ t[2] == 0
    }
