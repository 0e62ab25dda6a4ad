# cython: language_level=3
"""Compiled kernels: coset enumeration, stabilizer chains, flag labelling.

Twin of the pure-Python module: the same algorithms with the same
deterministic tie-breaking, so results are bit-for-bit identical.  See
the pure module's docstring for the shared conventions (right action,
letter encoding, coset numbering).
"""

from libcpp.vector cimport vector

from polymix.errors import BudgetExceeded

IMPLEMENTATION = "compiled"


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration (HLT with coincidence merging + lookahead)
# ---------------------------------------------------------------------------


cdef class _CosetTable:
    cdef vector[int] table          # flat, ncols entries per (live or dead) coset
    cdef vector[int] p              # union-find over cosets, representative is the minimum
    cdef vector[vector[int]] relators
    cdef int ncols
    cdef long long nlive, budget

    cdef inline size_t idx(self, int a, int x):
        return (<size_t> a) * (<size_t> self.ncols) + (<size_t> x)

    cdef inline int nrows(self):
        return <int> (self.table.size() / (<size_t> self.ncols))

    cdef int rep(self, int k):
        cdef int l = k
        cdef int m = k
        cdef int tmp
        while self.p[l] != l:
            l = self.p[l]
        while self.p[m] != l:
            tmp = self.p[m]
            self.p[m] = l
            m = tmp
        return l

    cdef int define(self, int a, int x) except? -2:
        # returns the new coset, or -1 when the live budget is exhausted
        cdef int b, i
        if self.nlive >= self.budget:
            return -1
        b = self.nrows()
        for i in range(self.ncols):
            self.table.push_back(-1)
        self.p.push_back(b)
        self.nlive += 1
        self.table[self.idx(a, x)] = b
        self.table[self.idx(b, x ^ 1)] = a
        return b

    cdef void merge(self, int k, int l, vector[int]& queue) except *:
        cdef int tmp
        k = self.rep(k)
        l = self.rep(l)
        if k != l:
            if k > l:
                tmp = k
                k = l
                l = tmp
            self.p[l] = k
            self.nlive -= 1
            queue.push_back(l)

    cdef void coincidence(self, int a, int b) except *:
        cdef vector[int] queue
        cdef int i = 0
        cdef int gamma, x, delta, mu, nu
        self.merge(a, b, queue)
        while i < <int> queue.size():
            gamma = queue[i]
            i += 1
            for x in range(self.ncols):
                delta = self.table[self.idx(gamma, x)]
                if delta < 0:
                    continue
                self.table[self.idx(delta, x ^ 1)] = -1
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if self.table[self.idx(mu, x)] >= 0:
                    self.merge(nu, self.table[self.idx(mu, x)], queue)
                elif self.table[self.idx(nu, x ^ 1)] >= 0:
                    self.merge(mu, self.table[self.idx(nu, x ^ 1)], queue)
                else:
                    self.table[self.idx(mu, x)] = nu
                    self.table[self.idx(nu, x ^ 1)] = mu

    cdef int scan(self, int a, vector[int]& word, bint fill) except? -2:
        # trace word at coset a; fill=True defines missing cosets.
        # returns 0 when the scan finished, 1 when a define hit the budget.
        cdef int f = a
        cdef int b = a
        cdef int i = 0
        cdef int j = (<int> word.size()) - 1
        while True:
            while i <= j and self.table[self.idx(f, word[i])] >= 0:
                f = self.table[self.idx(f, word[i])]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return 0
            while j >= i and self.table[self.idx(b, word[j] ^ 1)] >= 0:
                b = self.table[self.idx(b, word[j] ^ 1)]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return 0
            if j == i:
                self.table[self.idx(f, word[i])] = b
                self.table[self.idx(b, word[i] ^ 1)] = f
                return 0
            if not fill:
                return 0
            if self.define(f, word[i]) < 0:
                return 1

    cdef void lookahead(self) except *:
        # collapse-only pass: trace everything, define nothing
        cdef int a = 0
        cdef size_t r
        while a < self.nrows():
            if self.p[a] == a:
                for r in range(self.relators.size()):
                    self.scan(a, self.relators[r], False)
                    if self.p[a] != a:
                        break
            a += 1

    cdef int scan_fill_rescued(self, int a, vector[int]& word) except? -2:
        # returns 0 when the scan finished, 1 when the budget is truly exhausted
        cdef long long before
        while True:
            if self.scan(a, word, True) == 0:
                return 0
            before = self.nlive
            self.lookahead()
            if self.nlive >= self.budget or self.nlive >= before:
                return 1


def coset_enumerate(ngens, relators, subgens, budget):
    """Enumerate cosets of <subgens> in <generators | relators>.

    relators and subgens are encoded words. Returns (ncosets, cols) where
    cols[g][c] is the coset reached from c by generator g, numbered in
    first-definition order. Raises BudgetExceeded if more than `budget`
    live cosets are ever needed at once.
    """
    cdef int ng = ngens
    if ng == 0:
        return 1, []

    cdef _CosetTable tab = _CosetTable()
    cdef int ncols = 2 * ng
    cdef vector[int] word
    cdef vector[int] live
    cdef vector[int] newidx
    cdef vector[char] seen
    cdef size_t r
    cdef int letter, a, old, g, image, i, nrows, nlive

    tab.ncols = ncols
    tab.budget = budget
    tab.nlive = 1
    for i in range(ncols):
        tab.table.push_back(-1)
    tab.p.push_back(0)
    for w in relators:
        word.clear()
        for letter in w:
            word.push_back(letter)
        tab.relators.push_back(word)

    for w in subgens:
        word.clear()
        for letter in w:
            word.push_back(letter)
        if tab.scan_fill_rescued(0, word) != 0:
            raise BudgetExceeded(
                f"coset enumeration needs more than {budget} live cosets"
            )
    a = 0
    while a < tab.nrows():
        if tab.p[a] == a:
            for r in range(tab.relators.size()):
                if tab.scan_fill_rescued(a, tab.relators[r]) != 0:
                    raise BudgetExceeded(
                        f"coset enumeration needs more than {budget} live cosets"
                    )
                if tab.p[a] != a:
                    break
        a += 1

    nrows = tab.nrows()
    newidx.assign(nrows, -1)
    for a in range(nrows):
        if tab.p[a] == a:
            newidx[a] = <int> live.size()
            live.push_back(a)
    nlive = <int> live.size()
    cols = []
    for g in range(ng):
        col = [0] * nlive
        seen.assign(nlive, 0)
        for i in range(nlive):
            old = live[i]
            image = tab.table[tab.idx(old, 2 * g)]
            if image < 0:
                raise AssertionError("incomplete coset table after enumeration")
            image = newidx[tab.rep(image)]
            col[i] = image
            seen[image] = 1
        for i in range(nlive):
            if not seen[i]:
                raise AssertionError("coset table column is not a bijection")
        cols.append(col)
    return nlive, cols


# ---------------------------------------------------------------------------
# Deterministic incremental Schreier-Sims
# ---------------------------------------------------------------------------


cdef class _Chain:
    cdef int degree
    cdef vector[vector[int]] perms       # arena of image vectors; id 0 is the identity
    cdef vector[int] base
    cdef vector[vector[int]] S           # strong generators per level, as arena ids
    cdef vector[vector[int]] orbit       # orbit points per level, in discovery order
    cdef vector[vector[int]] tmap        # per level: point -> orbit slot, or -1
    cdef vector[vector[int]] tu          # per level: slot -> arena id of u
    cdef vector[vector[int]] tuinv       # per level: slot -> arena id of u^-1
    cdef vector[vector[vector[char]]] done   # per level: [slot][gen index] checked marks

    cdef inline int nlevels(self):
        return <int> self.base.size()

    cdef int min_moved(self, vector[int]& g):
        cdef int i
        for i in range(self.degree):
            if g[i] != i:
                return i
        return -1

    cdef bint is_identity(self, vector[int]& g):
        cdef int i
        for i in range(self.degree):
            if g[i] != i:
                return False
        return True

    cdef void new_level(self, int b) except *:
        cdef vector[int] empty_ids
        cdef vector[vector[char]] empty_done
        cdef vector[int] pts
        cdef vector[int] tmap_l
        cdef vector[int] ids
        self.base.push_back(b)
        self.S.push_back(empty_ids)
        pts.push_back(b)
        self.orbit.push_back(pts)
        tmap_l.assign(self.degree, -1)
        tmap_l[b] = 0
        self.tmap.push_back(tmap_l)
        ids.push_back(0)  # identity transversal entry for the base point
        self.tu.push_back(ids)
        self.tuinv.push_back(ids)
        self.done.push_back(empty_done)

    cdef void extend_orbit(self, int l) except *:
        # re-walk the orbit; existing transversal entries are never replaced
        cdef int i = 0
        cdef int si, pt, q, x, slot
        cdef int up_id, s_id, u_id, uinv_id
        cdef vector[int] u
        cdef vector[int] uinv
        u.resize(self.degree)
        uinv.resize(self.degree)
        while i < <int> self.orbit[l].size():
            pt = self.orbit[l][i]
            i += 1
            up_id = self.tu[l][self.tmap[l][pt]]
            for si in range(<int> self.S[l].size()):
                s_id = self.S[l][si]
                q = self.perms[s_id][pt]
                if self.tmap[l][q] < 0:
                    for x in range(self.degree):
                        u[x] = self.perms[s_id][self.perms[up_id][x]]
                    for x in range(self.degree):
                        uinv[u[x]] = x
                    u_id = <int> self.perms.size()
                    self.perms.push_back(u)
                    uinv_id = <int> self.perms.size()
                    self.perms.push_back(uinv)
                    slot = <int> self.orbit[l].size()
                    self.tmap[l][q] = slot
                    self.tu[l].push_back(u_id)
                    self.tuinv[l].push_back(uinv_id)
                    self.orbit[l].push_back(q)

    cdef int stick_level(self, vector[int]& g, int start):
        cdef int l = start
        while l < self.nlevels() and g[self.base[l]] == self.base[l]:
            l += 1
        return l

    cdef int add_generator(self, vector[int]& h, int lo) except? -2:
        cdef int j = self.stick_level(h, lo)
        cdef int h_id, l
        if j == self.nlevels():
            self.new_level(self.min_moved(h))
        h_id = <int> self.perms.size()
        self.perms.push_back(h)
        for l in range(lo, j + 1):
            self.S[l].push_back(h_id)
            self.extend_orbit(l)
        return j

    cdef int strip(self, vector[int]& g, int start, vector[int]& out) except? -2:
        # reduces g through the chain into `out`; returns the sticking level
        cdef int l = start
        cdef int x, slot, v, uinv_id
        cdef vector[int] cur
        cdef vector[int] nxt
        cur = g
        nxt.resize(self.degree)
        while l < self.nlevels():
            x = cur[self.base[l]]
            slot = self.tmap[l][x]
            if slot < 0:
                out = cur
                return l
            uinv_id = self.tuinv[l][slot]
            for v in range(self.degree):
                nxt[v] = self.perms[uinv_id][cur[v]]
            cur.swap(nxt)
            l += 1
        out = cur
        return l

    cdef void mark_done(self, int l, int slot, int si) except *:
        cdef vector[char] empty_row
        while <int> self.done[l].size() <= slot:
            self.done[l].push_back(empty_row)
        while <int> self.done[l][slot].size() <= si:
            self.done[l][slot].push_back(0)
        self.done[l][slot][si] = 1

    cdef bint is_done(self, int l, int slot, int si):
        if <int> self.done[l].size() <= slot:
            return False
        if <int> self.done[l][slot].size() <= si:
            return False
        return self.done[l][slot][si] != 0


def schreier_sims(degree, gens):
    """Build a stabilizer chain for <gens> on 0..degree-1.

    Returns (base, transversals, orbits, order): base points are chosen as
    the smallest point moved by the element forcing each level, orbits are
    in discovery order, and transversals map an orbit point q to the pair
    (u, u_inverse) with base^u = q, both as image tuples.
    """
    cdef int deg = degree
    cdef _Chain chain = _Chain()
    cdef vector[int] ident
    cdef vector[int] g_vec
    cdef vector[int] sg
    cdef vector[int] h
    cdef int i, x, pt, q, si, oi, s_id, up_id, uqinv_id, j, slot, lv
    cdef bint restart, moved
    cdef object order

    chain.degree = deg
    ident.resize(deg)
    for i in range(deg):
        ident[i] = i
    chain.perms.push_back(ident)  # arena id 0 is the identity

    for g in gens:
        g_vec.clear()
        for x in g:
            g_vec.push_back(x)
        moved = False
        for i in range(deg):
            if g_vec[i] != i:
                moved = True
                break
        if moved:
            chain.add_generator(g_vec, 0)

    sg.resize(deg)
    i = chain.nlevels() - 1
    while i >= 0:
        restart = False
        oi = 0
        while oi < <int> chain.orbit[i].size():
            pt = chain.orbit[i][oi]
            slot = chain.tmap[i][pt]
            si = 0
            while si < <int> chain.S[i].size():
                if not chain.is_done(i, slot, si):
                    chain.mark_done(i, slot, si)
                    s_id = chain.S[i][si]
                    q = chain.perms[s_id][pt]
                    up_id = chain.tu[i][slot]
                    uqinv_id = chain.tuinv[i][chain.tmap[i][q]]
                    for x in range(deg):
                        sg[x] = chain.perms[uqinv_id][
                            chain.perms[s_id][chain.perms[up_id][x]]
                        ]
                    if not chain.is_identity(sg):
                        j = chain.strip(sg, i + 1, h)
                        if not chain.is_identity(h):
                            i = chain.add_generator(h, i + 1)
                            restart = True
                            break
                si += 1
            if restart:
                break
            oi += 1
        if restart:
            continue
        i -= 1

    base = []
    transversals = []
    orbits = []
    order = 1
    for lv in range(chain.nlevels()):
        tr = {}
        ob = []
        for slot in range(<int> chain.orbit[lv].size()):
            pt = chain.orbit[lv][slot]
            u_t = tuple(chain.perms[chain.tu[lv][slot]])
            uinv_t = tuple(chain.perms[chain.tuinv[lv][slot]])
            tr[pt] = (u_t, uinv_t)
            ob.append(pt)
        base.append(chain.base[lv])
        transversals.append(tr)
        orbits.append(ob)
        order = order * len(ob)
    return base, transversals, orbits, order


def sift(degree, base, transversals, perm):
    """Reduce perm through the chain; returns the residue image list."""
    cdef int l, x
    g = list(perm)
    for l in range(len(base)):
        x = g[base[l]]
        entry = (<dict> transversals[l]).get(x)
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
    cdef int deg = degree
    cdef int nlevels = len(big_base)
    cdef vector[int] bbase
    cdef vector[vector[int]] btmap          # per level: point -> slot, or -1
    cdef vector[vector[vector[int]]] buinv  # per level: slot -> u^-1 images
    cdef vector[vector[int]] level_uinv
    cdef vector[int] tmap_l
    cdef vector[int] uinv_vec
    cdef vector[int] g
    cdef vector[int] nxt
    cdef int l, x, pt, v, slot
    cdef bint ok

    for l in range(nlevels):
        bbase.push_back(big_base[l])
        tmap_l.assign(deg, -1)
        level_uinv.clear()
        for pt, entry in (<dict> big_transversals[l]).items():
            tmap_l[pt] = <int> level_uinv.size()
            uinv_vec.clear()
            for v in entry[1]:
                uinv_vec.push_back(v)
            level_uinv.push_back(uinv_vec)
        btmap.push_back(tmap_l)
        buinv.push_back(level_uinv)

    members = []
    g.resize(deg)
    nxt.resize(deg)
    for el in iter_chain_elements(degree, small_transversals):
        for x in range(deg):
            g[x] = el[x]
        ok = True
        for l in range(nlevels):
            slot = btmap[l][g[bbase[l]]]
            if slot < 0:
                ok = False
                break
            for v in range(deg):
                nxt[v] = buinv[l][slot][g[v]]
            g.swap(nxt)
        if ok:
            for x in range(deg):
                if g[x] != x:
                    ok = False
                    break
            if ok:
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
    cdef int nn = n
    cdef vector[int] parent
    cdef vector[int] col
    cdef vector[int] labels_c
    cdef vector[int] seen_map
    cdef int i, ri, rj, x, count
    parent.resize(nn)
    for i in range(nn):
        parent[i] = i

    for adj in adjs:
        col.clear()
        for x in adj:
            col.push_back(x)
        for i in range(nn):
            ri = i
            while parent[ri] != ri:
                parent[ri] = parent[parent[ri]]
                ri = parent[ri]
            rj = col[i]
            while parent[rj] != rj:
                parent[rj] = parent[parent[rj]]
                rj = parent[rj]
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj

    labels_c.resize(nn)
    seen_map.assign(nn, -1)
    count = 0
    for i in range(nn):
        ri = i
        while parent[ri] != ri:
            parent[ri] = parent[parent[ri]]
            ri = parent[ri]
        if seen_map[ri] < 0:
            seen_map[ri] = count
            count += 1
        labels_c[i] = seen_map[ri]
    labels = [0] * nn
    for i in range(nn):
        labels[i] = labels_c[i]
    return labels, count
