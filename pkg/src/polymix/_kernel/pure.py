"""Pure-Python kernels: coset enumeration, stabilizer chains, flag labelling.

The compiled extension (_speedups) implements the same functions with the
same deterministic tie-breaking; results must be bit-for-bit identical.

Conventions shared by both implementations:
  * permutations are sequences of images over 0..degree-1 acting on the
    right: (g*h)[x] = h[g[x]], i.e. apply g first, then h;
  * words are flat lists of letters, letter 2*g for generator g and
    2*g + 1 for its inverse (so xor 1 inverts a letter);
  * coset tables index cosets from 0, the subgroup coset is 0.
"""

from __future__ import annotations

from polymix.errors import BudgetExceeded

IMPLEMENTATION = "pure"


class _Overflow(Exception):
    """Internal: a define() hit the live-coset budget; try lookahead."""


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration (HLT with coincidence merging + lookahead)
# ---------------------------------------------------------------------------


def coset_enumerate(ngens, relators, subgens, budget):
    """Enumerate cosets of <subgens> in <generators | relators>.

    relators and subgens are encoded words. Returns (ncosets, cols) where
    cols[g][c] is the coset reached from c by generator g, numbered in
    first-definition order. Raises BudgetExceeded if more than `budget`
    live cosets are ever needed at once.
    """
    if ngens == 0:
        return 1, []
    ncols = 2 * ngens
    table = [[-1] * ncols]
    p = [0]  # union-find over cosets, representative is the minimum
    nlive = 1

    def rep(k):
        l = k
        while p[l] != l:
            l = p[l]
        m = k
        while p[m] != l:
            p[m], m = l, p[m]
        return l

    def define(a, x):
        nonlocal nlive
        if nlive >= budget:
            raise _Overflow
        b = len(table)
        table.append([-1] * ncols)
        p.append(b)
        nlive += 1
        table[a][x] = b
        table[b][x ^ 1] = a
        return b

    def merge(k, l, queue):
        nonlocal nlive
        k = rep(k)
        l = rep(l)
        if k != l:
            if k > l:
                k, l = l, k
            p[l] = k
            nlive -= 1
            queue.append(l)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            row = table[gamma]
            for x in range(ncols):
                delta = row[x]
                if delta < 0:
                    continue
                table[delta][x ^ 1] = -1
                mu = rep(gamma)
                nu = rep(delta)
                if table[mu][x] >= 0:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] >= 0:
                    merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan(a, word, fill):
        # trace word at coset a; fill=True defines missing cosets
        f = a
        i = 0
        b = a
        j = len(word) - 1
        while True:
            while i <= j and table[f][word[i]] >= 0:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] >= 0:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            define(f, word[i])

    def lookahead():
        # collapse-only pass: trace everything, define nothing
        for a in range(len(table)):
            if p[a] != a:
                continue
            for w in relators:
                scan(a, w, False)
                if p[a] != a:
                    break

    def scan_fill_rescued(a, word):
        while True:
            try:
                scan(a, word, True)
                return
            except _Overflow:
                before = nlive
                lookahead()
                if nlive >= budget or nlive >= before:
                    raise BudgetExceeded(
                        f"coset enumeration needs more than {budget} live cosets"
                    ) from None

    for w in subgens:
        scan_fill_rescued(0, w)
    a = 0
    while a < len(table):
        if p[a] == a:
            for w in relators:
                scan_fill_rescued(a, w)
                if p[a] != a:
                    break
        a += 1

    live = [k for k in range(len(table)) if p[k] == k]
    newidx = {old: i for i, old in enumerate(live)}
    cols = []
    for g in range(ngens):
        col = []
        for old in live:
            image = table[old][2 * g]
            if image < 0:
                raise AssertionError("incomplete coset table after enumeration")
            col.append(newidx[rep(image)])
        if len(set(col)) != len(live):
            raise AssertionError("coset table column is not a bijection")
        cols.append(col)
    return len(live), cols


# ---------------------------------------------------------------------------
# Deterministic incremental Schreier-Sims
# ---------------------------------------------------------------------------


def schreier_sims(degree, gens):
    """Build a stabilizer chain for <gens> on 0..degree-1.

    Returns (base, transversals, orbits, order): base points are chosen as
    the smallest point moved by the element forcing each level, orbits are
    in discovery order, and transversals map an orbit point q to the pair
    (u, u_inverse) with base^u = q, both as image tuples.
    """
    gens = [list(g) for g in gens if any(g[i] != i for i in range(degree))]
    base = []
    S = []  # strong generators per level
    T = []  # transversals per level: {point: (u, uinv)}
    orbits = []
    verified = []  # per level: {(point, gen index)} already checked

    ident = tuple(range(degree))

    def min_moved(g):
        for i in range(degree):
            if g[i] != i:
                return i
        return -1

    def new_level(b):
        base.append(b)
        S.append([])
        T.append({b: (ident, ident)})
        orbits.append([b])
        verified.append(set())

    def extend_orbit(l):
        # re-walk the orbit; existing transversal entries are never replaced
        ob = orbits[l]
        tr = T[l]
        i = 0
        while i < len(ob):
            pt = ob[i]
            i += 1
            up = tr[pt][0]
            for s in S[l]:
                q = s[pt]
                if q not in tr:
                    u = tuple(s[x] for x in up)
                    uinv = [0] * degree
                    for idx, img in enumerate(u):
                        uinv[img] = idx
                    tr[q] = (u, tuple(uinv))
                    ob.append(q)

    def stick_level(g, start):
        l = start
        while l < len(base) and g[base[l]] == base[l]:
            l += 1
        return l

    def add_generator(h, lo):
        j = stick_level(h, lo)
        if j == len(base):
            new_level(min_moved(h))
        for l in range(lo, j + 1):
            S[l].append(h)
            extend_orbit(l)
        return j

    def strip(g, start):
        l = start
        while l < len(base):
            x = g[base[l]]
            entry = T[l].get(x)
            if entry is None:
                return g, l
            uinv = entry[1]
            g = [uinv[v] for v in g]
            l += 1
        return g, l

    for g in gens:
        add_generator(g, 0)

    i = len(base) - 1
    while i >= 0:
        restart = False
        ob = orbits[i]
        tr = T[i]
        done = verified[i]
        oi = 0
        while oi < len(ob):
            pt = ob[oi]
            si = 0
            while si < len(S[i]):
                if (pt, si) not in done:
                    done.add((pt, si))
                    s = S[i][si]
                    q = s[pt]
                    up = tr[pt][0]
                    uq_inv = tr[q][1]
                    sg = [uq_inv[s[x]] for x in up]
                    if any(sg[x] != x for x in range(degree)):
                        h, j = strip(sg, i + 1)
                        if any(h[x] != x for x in range(degree)):
                            i = add_generator(h, i + 1)
                            restart = True
                            break
                si += 1
            if restart:
                break
            oi += 1
        if restart:
            continue
        i -= 1

    order = 1
    for ob in orbits:
        order *= len(ob)
    return base, T, [list(ob) for ob in orbits], order


def sift(degree, base, transversals, perm):
    """Reduce perm through the chain; returns the residue image list."""
    g = list(perm)
    for l in range(len(base)):
        x = g[base[l]]
        entry = transversals[l].get(x)
        if entry is None:
            return g
        uinv = entry[1]
        g = [uinv[v] for v in g]
    return g


def iter_chain_elements(degree, transversals):
    """Yield every chain element as an image tuple, base-image lex order."""
    ident = tuple(range(degree))
    m = len(transversals)

    def rec(l, acc):
        if l == m:
            yield acc
            return
        tr = transversals[l]
        for x in sorted(tr, key=lambda pt: acc[pt]):
            u = tr[x][0]
            yield from rec(l + 1, tuple(acc[u[i]] for i in range(degree)))

    yield from rec(0, ident)


def intersection_filter(degree, small_transversals, big_base, big_transversals):
    """Elements of the small chain that are members of the big chain."""
    members = []
    identity = tuple(range(degree))
    for el in iter_chain_elements(degree, small_transversals):
        g = el
        ok = True
        for l in range(len(big_base)):
            entry = big_transversals[l].get(g[big_base[l]])
            if entry is None:
                ok = False
                break
            uinv = entry[1]
            g = tuple(uinv[v] for v in g)
        if ok and g == identity:
            members.append(el)
    return members


# ---------------------------------------------------------------------------
# Flag-graph helpers
# ---------------------------------------------------------------------------


def adjacency_table(elements, rgens):
    """adj[c][i] = index of elements[i] * rgens[c] within elements."""
    index = {el: i for i, el in enumerate(elements)}
    adj = []
    for r in rgens:
        col = []
        for el in elements:
            col.append(index[tuple(r[x] for x in el)])
        adj.append(col)
    return adj


def component_labels(n, adjs):
    """Connected components under the given adjacency maps.

    Returns (labels, count); labels are numbered by first occurrence so
    the output is independent of union-find internals.
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for adj in adjs:
        for i in range(n):
            ri = find(i)
            rj = find(adj[i])
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj
    labels = [0] * n
    seen = {}
    for i in range(n):
        r = find(i)
        if r not in seen:
            seen[r] = len(seen)
        labels[i] = seen[r]
    return labels, len(seen)
