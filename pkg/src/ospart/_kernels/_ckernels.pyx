# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word kernels for ordered set partitions.

Mirrors the public surface of ``_pure`` (same enumeration order, same
values) with C inner loops.  Words cross the boundary as Python tuples of
small ints.  Rationals are accumulated as reduced long-long fractions;
with the table cap at n = 7 every intermediate fits comfortably.
"""

from fractions import Fraction

from libc.stdlib cimport free, malloc

DEF MAXN = 12


cdef long long FACT[MAXN + 1]
cdef int _fi
FACT[0] = 1
for _fi in range(1, MAXN + 1):
    FACT[_fi] = FACT[_fi - 1] * _fi


cdef long long c_gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void frac_add(long long *num, long long *den,
                   long long n2, long long d2) noexcept nogil:
    cdef long long g = c_gcd(den[0], d2)
    cdef long long a = den[0] // g
    cdef long long b = d2 // g
    num[0] = num[0] * b + n2 * a
    den[0] = den[0] * b
    g = c_gcd(num[0], den[0])
    if g > 1:
        num[0] //= g
        den[0] //= g


cdef int tuple_to_buf(u, int *buf) except -1:
    cdef int n = len(u)
    cdef int k
    if n > MAXN:
        raise ValueError("word too long for compiled kernel")
    for k in range(n):
        buf[k] = u[k]
    return n


def fubini(int n):
    if n < 0:
        raise ValueError("n must be >= 0")
    from math import comb
    row = [1]
    for m in range(1, n + 1):
        row.append(sum(comb(m, k) * row[m - k] for k in range(1, m + 1)))
    return row[n]


cdef void _gen_words(int n, int p, int k, int missing, int *w, int *seen,
                     list out):
    cdef int v, i
    if n - k < missing:
        return
    if k == n:
        out.append(tuple([w[i] for i in range(n)]))
        return
    for v in range(1, p + 1):
        w[k] = v
        if seen[v]:
            _gen_words(n, p, k + 1, missing, w, seen, out)
        else:
            seen[v] = 1
            _gen_words(n, p, k + 1, missing - 1, w, seen, out)
            seen[v] = 0


def osp_words_list(int n):
    """All OP words of [n], block count ascending then lex (matches _pure)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 7:
        raise ValueError("osp_words is capped at n = 7; stream instead")
    cdef int w[MAXN]
    cdef int seen[MAXN + 2]
    cdef int i, p
    for i in range(MAXN + 2):
        seen[i] = 0
    out = []
    for p in range(1, n + 1):
        _gen_words(n, p, 0, p, w, seen, out)
    return out


def kernel_word(seq):
    if len(seq) == 0:
        raise ValueError("empty index tuple")
    rank = {v: i + 1 for i, v in enumerate(sorted(set(seq)))}
    return tuple([rank[v] for v in seq])


def rgs_word(u):
    cdef int n = len(u)
    cdef int buf[MAXN]
    cdef int lab[2 * MAXN + 2]
    cdef int i, x, nxt = 0
    if n > MAXN:
        raise ValueError("word too long for compiled kernel")
    for i in range(2 * MAXN + 2):
        lab[i] = 0
    for i in range(n):
        x = u[i]
        if x < 0 or x > 2 * MAXN + 1:
            raise ValueError("letter out of range")
        if lab[x] == 0:
            nxt += 1
            lab[x] = nxt
        buf[i] = lab[x]
    return tuple([buf[i] for i in range(n)])


cdef void _quasi_meet_c(int n, int *ub, int *vb, int *res) noexcept nogil:
    # rank positions by distinct (ub[k], vb[k]) pairs in lex order
    cdef int dist[2 * MAXN]
    cdef int nd = 0
    cdef int i, j, a, b
    cdef bint found
    for i in range(n):
        found = False
        for j in range(nd):
            if dist[2 * j] == ub[i] and dist[2 * j + 1] == vb[i]:
                found = True
                break
        if not found:
            dist[2 * nd] = ub[i]
            dist[2 * nd + 1] = vb[i]
            nd += 1
    for i in range(1, nd):
        a = dist[2 * i]
        b = dist[2 * i + 1]
        j = i - 1
        while j >= 0 and (dist[2 * j] > a or
                          (dist[2 * j] == a and dist[2 * j + 1] > b)):
            dist[2 * j + 2] = dist[2 * j]
            dist[2 * j + 3] = dist[2 * j + 1]
            j -= 1
        dist[2 * j + 2] = a
        dist[2 * j + 3] = b
    for i in range(n):
        for j in range(nd):
            if dist[2 * j] == ub[i] and dist[2 * j + 1] == vb[i]:
                res[i] = j + 1
                break


def quasi_meet(u, v):
    cdef int ub[MAXN]
    cdef int vb[MAXN]
    cdef int res[MAXN]
    cdef int n = tuple_to_buf(u, ub)
    cdef int i
    if len(v) != n:
        raise ValueError("length mismatch")
    tuple_to_buf(v, vb)
    _quasi_meet_c(n, ub, vb, res)
    return tuple([res[i] for i in range(n)])


cdef bint _block_map_c(int n, int *ub, int *vb, int *bm) noexcept nogil:
    cdef int i, pu = 0
    for i in range(n):
        if ub[i] > pu:
            pu = ub[i]
    for i in range(pu + 1):
        bm[i] = 0
    for i in range(n):
        if bm[ub[i]] == 0:
            bm[ub[i]] = vb[i]
        elif bm[ub[i]] != vb[i]:
            return False
    for i in range(1, pu):
        if bm[i] > bm[i + 1]:
            return False
    return True


def leq_words(u, v):
    cdef int ub[MAXN]
    cdef int vb[MAXN]
    cdef int bm[MAXN + 1]
    cdef int n = tuple_to_buf(u, ub)
    if len(v) != n:
        raise ValueError("length mismatch")
    tuple_to_buf(v, vb)
    return bool(_block_map_c(n, ub, vb, bm))


def interval_type_words(u, v):
    cdef int ub[MAXN]
    cdef int vb[MAXN]
    cdef int bm[MAXN + 1]
    cdef int counts[MAXN + 1]
    cdef int n = tuple_to_buf(u, ub)
    cdef int i, pu = 0, pv = 0
    if len(v) != n:
        raise ValueError("length mismatch")
    tuple_to_buf(v, vb)
    if not _block_map_c(n, ub, vb, bm):
        raise ValueError("incomparable words")
    for i in range(n):
        if ub[i] > pu:
            pu = ub[i]
        if vb[i] > pv:
            pv = vb[i]
    for i in range(pv + 1):
        counts[i] = 0
    for i in range(1, pu + 1):
        counts[bm[i]] += 1
    for i in range(1, pv + 1):
        if counts[i] == 0:
            raise ValueError("incomparable words")
    return tuple([counts[i] for i in range(1, pv + 1)])


# ---------------------------------------------------------------------------
# ideal iteration: every tau <= sigma is a choice of one sub-OP per block
# ---------------------------------------------------------------------------

cdef struct IdealIter:
    int n
    int p                    # number of blocks of sigma
    int bsize[MAXN]          # block sizes
    int bpos[MAXN * MAXN]    # positions per block, row-major
    int nwords[MAXN]         # |OP_{bsize}| per block
    int choice[MAXN]         # odometer state


cdef list _SUBWORDS = [None]   # _SUBWORDS[m] = osp_words_list(m)


cdef _ensure_subwords(int n):
    cdef int m
    global _SUBWORDS
    for m in range(len(_SUBWORDS), n + 1):
        _SUBWORDS.append(osp_words_list(m))


cdef void _ideal_init(IdealIter *it, int n, int *v) noexcept nogil:
    cdef int i, j, p = 0
    for i in range(n):
        if v[i] > p:
            p = v[i]
    it.n = n
    it.p = p
    for j in range(p):
        it.bsize[j] = 0
        it.choice[j] = 0
    for i in range(n):
        j = v[i] - 1
        it.bpos[j * MAXN + it.bsize[j]] = i
        it.bsize[j] += 1


cdef bint _ideal_next(IdealIter *it) noexcept nogil:
    # advance odometer; returns False when exhausted
    cdef int j
    for j in range(it.p):
        it.choice[j] += 1
        if it.choice[j] < it.nwords[j]:
            return True
        it.choice[j] = 0
    return False


cdef void _ideal_word(IdealIter *it, int **subflat, int *sublen, int *out,
                      int *ktype) noexcept nogil:
    # materialize tau for the current odometer state; ktype[j] = local
    # block count = interval type of (tau, sigma)
    cdef int j, i, off = 0, m, mx
    cdef int *wloc
    for j in range(it.p):
        m = it.bsize[j]
        wloc = subflat[j] + it.choice[j] * m
        mx = 0
        for i in range(m):
            out[it.bpos[j * MAXN + i]] = off + wloc[i]
            if wloc[i] > mx:
                mx = wloc[i]
        ktype[j] = mx
        off += mx


cdef int **_flatten_subwords(IdealIter *it, int **keepalive) except NULL:
    # per block: flat C copy of osp_words_list(block size)
    cdef int j, wi, i, m
    cdef int **subflat = <int **> malloc(it.p * sizeof(int *))
    if subflat == NULL:
        raise MemoryError()
    for j in range(it.p):
        subflat[j] = NULL
    for j in range(it.p):
        m = it.bsize[j]
        words = _SUBWORDS[m]
        it.nwords[j] = len(words)
        subflat[j] = <int *> malloc(len(words) * m * sizeof(int))
        if subflat[j] == NULL:
            _free_subwords(subflat, it.p)
            raise MemoryError()
        for wi in range(len(words)):
            w = words[wi]
            for i in range(m):
                subflat[j][wi * m + i] = w[i]
    keepalive[0] = NULL
    return subflat


cdef void _free_subwords(int **subflat, int p) noexcept:
    cdef int j
    if subflat == NULL:
        return
    for j in range(p):
        if subflat[j] != NULL:
            free(subflat[j])
    free(subflat)


# ---------------------------------------------------------------------------
# exhaustive identity checks
# ---------------------------------------------------------------------------

cdef bint _mu_zeta_pair(int p, int *ktype, bint u_eq_v) noexcept nogil:
    # convolve over the interval [u,v] of type (k_1..k_p): every rho is a
    # choice of a composition per run, encoded by a break mask
    cdef long long mz_n = 0, mz_d = 1, zm_n = 0, zm_d = 1
    cdef long long mzn, mzd, zmn, zmd
    cdef int mask[MAXN]
    cdef int i, j, c, parts, bits
    cdef bint done
    for j in range(p):
        mask[j] = 0
    while True:
        mzn = 1
        mzd = 1
        zmn = 1
        zmd = 1
        for j in range(p):
            bits = mask[j]
            parts = 1
            c = 1
            for i in range(ktype[j] - 1):
                if bits & (1 << i):
                    if c % 2 == 0:      # mu~(u,rho) part factor (-1)^(c-1)/c
                        mzn = -mzn
                    mzd *= c
                    zmd *= FACT[c]      # zeta~(u,rho) part factor 1/c!
                    parts += 1
                    c = 1
                else:
                    c += 1
            if c % 2 == 0:
                mzn = -mzn
            mzd *= c
            zmd *= FACT[c]
            mzd *= FACT[parts]          # zeta~(rho,v) block factor 1/parts!
            if parts % 2 == 0:          # mu~(rho,v) block factor
                zmn = -zmn
            zmd *= parts
        frac_add(&mz_n, &mz_d, mzn, mzd)
        frac_add(&zm_n, &zm_d, zmn, zmd)
        done = True
        for j in range(p):
            mask[j] += 1
            if mask[j] < (1 << (ktype[j] - 1)):
                done = False
                break
            mask[j] = 0
        if done:
            break
    if u_eq_v:
        return mz_n == 1 and mz_d == 1 and zm_n == 1 and zm_d == 1
    return mz_n == 0 and zm_n == 0


cdef long long _binom_ll(long long x, int k) noexcept nogil:
    cdef long long r = 1
    cdef int i
    for i in range(k):
        r *= x - i
    for i in range(2, k + 1):
        r //= i
    return r


cdef bint _beta_pair(int p, int *ktype, long long s, long long t) noexcept nogil:
    cdef long long total = 0, term, expect = 1
    cdef int mask[MAXN]
    cdef int i, j, c, parts, bits
    cdef bint done
    for j in range(p):
        mask[j] = 0
        expect *= _binom_ll(s * t, ktype[j])
    while True:
        term = 1
        for j in range(p):
            bits = mask[j]
            parts = 1
            c = 1
            for i in range(ktype[j] - 1):
                if bits & (1 << i):
                    term *= _binom_ll(s, c)
                    parts += 1
                    c = 1
                else:
                    c += 1
            term *= _binom_ll(s, c)
            term *= _binom_ll(t, parts)
        total += term
        done = True
        for j in range(p):
            mask[j] += 1
            if mask[j] < (1 << (ktype[j] - 1)):
                done = False
                break
            mask[j] = 0
        if done:
            break
    return total == expect


cdef bint _scan_pairs(int n, bint beta_mode, long long s, long long t) except -1:
    """Iterate every comparable pair (u <= v) in OP_n and run a check."""
    cdef list words = osp_words_list(n)
    _ensure_subwords(n)
    cdef int vb[MAXN]
    cdef int ktype[MAXN]
    cdef int out[MAXN]
    cdef IdealIter it
    cdef int **subflat
    cdef int *keepalive
    cdef int j
    cdef bint u_eq_v, ok
    for v in words:
        tuple_to_buf(v, vb)
        _ideal_init(&it, n, vb)
        subflat = _flatten_subwords(&it, &keepalive)
        try:
            while True:
                _ideal_word(&it, subflat, NULL, out, ktype)
                u_eq_v = True
                for j in range(it.p):
                    if ktype[j] != 1:
                        u_eq_v = False
                        break
                if beta_mode:
                    ok = _beta_pair(it.p, ktype, s, t)
                else:
                    ok = _mu_zeta_pair(it.p, ktype, u_eq_v)
                if not ok:
                    return False
                if not _ideal_next(&it):
                    break
        finally:
            _free_subwords(subflat, it.p)
    return True


def mu_zeta_identity(int n):
    """Check mu~ * zeta~ = zeta~ * mu~ = delta on every comparable pair."""
    return bool(_scan_pairs(n, False, 0, 0))


def beta_semigroup_identity(int n, int s, int t):
    """Check beta_s * beta_t = beta_{st} on every comparable pair."""
    return bool(_scan_pairs(n, True, s, t))


# ---------------------------------------------------------------------------
# brute-force coefficient tables
# ---------------------------------------------------------------------------

def weisner_oracle_table(int n):
    """w(tau,eta) for all pairs by bucketing mu~(sigma,1^) over quasi-meets."""
    cdef list words = osp_words_list(n)
    cdef int count = len(words)
    cdef int i, k, sid, eid, tid, p
    cdef int *W = <int *> malloc(count * n * sizeof(int))
    cdef long long *num = <long long *> malloc(count * sizeof(long long))
    cdef long long *den = <long long *> malloc(count * sizeof(long long))
    cdef int *ptab = <int *> malloc(count * sizeof(int))
    cdef int qm[MAXN]
    if W == NULL or num == NULL or den == NULL or ptab == NULL:
        free(W); free(num); free(den); free(ptab)
        raise MemoryError()
    ids = {}
    try:
        for sid in range(count):
            w = words[sid]
            p = 0
            for k in range(n):
                W[sid * n + k] = w[k]
                if w[k] > p:
                    p = w[k]
            ptab[sid] = p
            ids[w] = sid
        table = {}
        for eid in range(count):
            for i in range(count):
                num[i] = 0
                den[i] = 1
            for sid in range(count):
                _quasi_meet_c(n, W + sid * n, W + eid * n, qm)
                tid = ids[tuple([qm[i] for i in range(n)])]
                p = ptab[sid]
                frac_add(&num[tid], &den[tid], -1 if p % 2 == 0 else 1, p)
            row = {}
            for tid in range(count):
                if num[tid] != 0:
                    row[words[tid]] = Fraction(num[tid], den[tid])
            table[words[eid]] = row
        return table
    finally:
        free(W); free(num); free(den); free(ptab)


def goldberg_oracle_table(int n):
    """g(tau,eta) = sum_{sigma >= tau} zeta~(tau,sigma) w(sigma,eta)."""
    cdef list words = osp_words_list(n)
    cdef int count = len(words)
    _ensure_subwords(n)
    wtab = weisner_oracle_table(n)
    # flatten ideal pairs: for each sigma the list of (tau id, zeta~ denom)
    cdef list pair_t = []
    cdef list pair_d = []
    cdef list offsets = [0]
    cdef IdealIter it
    cdef int **subflat
    cdef int *keepalive
    cdef int vb[MAXN]
    cdef int out[MAXN]
    cdef int ktype[MAXN]
    cdef int i, j, sid
    cdef long long zd
    ids = {w: i for i, w in enumerate(words)}
    for sid in range(count):
        tuple_to_buf(words[sid], vb)
        _ideal_init(&it, n, vb)
        subflat = _flatten_subwords(&it, &keepalive)
        try:
            while True:
                _ideal_word(&it, subflat, NULL, out, ktype)
                zd = 1
                for j in range(it.p):
                    zd *= FACT[ktype[j]]
                pair_t.append(ids[tuple([out[i] for i in range(n)])])
                pair_d.append(zd)
                if not _ideal_next(&it):
                    break
        finally:
            _free_subwords(subflat, it.p)
        offsets.append(len(pair_t))
    cdef int npairs = len(pair_t)
    cdef int *pt = <int *> malloc(npairs * sizeof(int))
    cdef long long *pd = <long long *> malloc(npairs * sizeof(long long))
    cdef long long *num = <long long *> malloc(count * sizeof(long long))
    cdef long long *den = <long long *> malloc(count * sizeof(long long))
    cdef int *offs = <int *> malloc((count + 1) * sizeof(int))
    if pt == NULL or pd == NULL or num == NULL or den == NULL or offs == NULL:
        free(pt); free(pd); free(num); free(den); free(offs)
        raise MemoryError()
    cdef long long wn, wd
    cdef int tid
    try:
        for i in range(npairs):
            pt[i] = pair_t[i]
            pd[i] = pair_d[i]
        for i in range(count + 1):
            offs[i] = offsets[i]
        table = {}
        for eta, row in wtab.items():
            for i in range(count):
                num[i] = 0
                den[i] = 1
            for sig, wval in row.items():
                sid = ids[sig]
                wn = wval.numerator
                wd = wval.denominator
                for i in range(offs[sid], offs[sid + 1]):
                    frac_add(&num[pt[i]], &den[pt[i]], wn, wd * pd[i])
            out_row = {}
            for tid in range(count):
                if num[tid] != 0:
                    out_row[words[tid]] = Fraction(num[tid], den[tid])
            table[eta] = out_row
        return table
    finally:
        free(pt); free(pd); free(num); free(den); free(offs)
