# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled embedding kernel (targets with at most 64 rows and 64 columns).

Same contract as ``confex._pykernel.embed``; see that module for the argument
layout.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

MAX_BITS = 64


cdef struct Ctx:
    int p
    int gcount
    int m
    int n
    int nsym
    int row_ordered
    int col_ordered
    int required
    int total
    int* gsym
    int* gmult
    int* row_order
    u64* row_cands
    u64* eq
    u64* compat
    int* assign
    int* slots_out
    u64* slot_masks
    int* owner
    int* slot_first


cdef inline u64 bit(int i) nogil:
    return (<u64>1) << i


cdef inline u64 above(int pos) nogil:
    # bits strictly greater than pos
    if pos >= 63:
        return 0
    return ~((bit(pos + 1)) - 1)


cdef bint augment(Ctx* c, int slot, u64* seen) nogil:
    cdef u64 avail = c.slot_masks[slot] & ~seen[0]
    cdef u64 low
    cdef int col, other
    while avail:
        low = avail & (~avail + 1)
        avail ^= low
        seen[0] |= low
        col = ctz64(low)
        other = c.owner[col]
        if other < 0 or augment(c, other, seen):
            c.owner[col] = slot
            return True
    return False


cdef bint run_matching(Ctx* c) nogil:
    cdef int col, slot
    cdef u64 seen
    for col in range(c.n):
        c.owner[col] = -1
    for slot in range(c.total):
        seen = 0
        if not augment(c, slot, &seen):
            return False
    for col in range(c.n):
        if c.owner[col] >= 0:
            c.slots_out[c.owner[col]] = col
    return True


cdef bint leaf_matching(Ctx* c, u64* compat) nogil:
    cdef int g, k, s
    cdef u64 b
    s = 0
    for g in range(c.gcount):
        c.slot_first[g] = s
        for k in range(c.gmult[g]):
            c.slot_masks[s] = compat[g]
            s += 1
    if c.required < 0:
        return run_matching(c)
    b = bit(c.required)
    for g in range(c.gcount):
        if not (compat[g] & b):
            continue
        s = 0
        for k in range(c.gcount):
            for s in range(c.slot_first[k], c.slot_first[k] + c.gmult[k]):
                c.slot_masks[s] = compat[k] & ~b
        c.slot_masks[c.slot_first[g]] = b
        if run_matching(c):
            return True
    return False


cdef int greedy(Ctx* c, u64* compat, int lo, int hi, int start, u64 limit, int out_off) nogil:
    """Leftmost increasing placement; returns last position or -2 on failure."""
    cdef int g, pos = start
    cdef u64 avail
    for g in range(lo, hi):
        avail = compat[g] & limit & above(pos)
        if not avail:
            return -2
        pos = ctz64(avail)
        c.slots_out[out_off + g - lo] = pos
    return pos


cdef bint leaf_ordered(Ctx* c, u64* compat) nogil:
    cdef int g
    cdef u64 b, below, allbits = ~(<u64>0)
    if c.required < 0:
        return greedy(c, compat, 0, c.gcount, -1, allbits, 0) != -2
    b = bit(c.required)
    below = b - 1
    for g in range(c.gcount):
        if not (compat[g] & b):
            continue
        if greedy(c, compat, 0, g, -1, below, 0) == -2:
            continue
        if greedy(c, compat, g + 1, c.gcount, c.required, allbits, g + 1) == -2:
            continue
        c.slots_out[g] = c.required
        return True
    return False


cdef bint dfs(Ctx* c, int d, u64 used, int last) nogil:
    cdef u64* compat = c.compat + d * c.gcount
    cdef u64* nxt
    cdef u64 cand, low, msk, union_, req_bit
    cdef int i, h, g, base
    cdef bint ok, hit
    if d == c.p:
        if c.col_ordered:
            return leaf_ordered(c, compat)
        return leaf_matching(c, compat)
    nxt = c.compat + (d + 1) * c.gcount
    i = c.row_order[d]
    cand = c.row_cands[i] & ~used
    if c.row_ordered:
        cand &= above(last)
    req_bit = bit(c.required) if c.required >= 0 else 0
    while cand:
        low = cand & (~cand + 1)
        cand ^= low
        h = ctz64(low)
        if c.row_ordered and c.m - h - 1 < c.p - d - 1:
            break
        base = h * c.nsym
        ok = True
        hit = req_bit == 0
        union_ = 0
        for g in range(c.gcount):
            msk = compat[g] & c.eq[base + c.gsym[g * c.p + i]]
            if popcount64(msk) < c.gmult[g]:
                ok = False
                break
            union_ |= msk
            if msk & req_bit:
                hit = True
            nxt[g] = msk
        if not ok or not hit or popcount64(union_) < c.total:
            continue
        c.assign[i] = h
        if dfs(c, d + 1, used | low, h):
            return True
    c.assign[i] = -1
    return False


def embed(int p, int gcount, gsym, gmult, row_order, row_cands, int m, int n,
          eq, int nsym, bint row_ordered, bint col_ordered, int required):
    cdef Ctx c
    cdef int k, total = 0
    cdef u64 full
    cdef bint found
    if m > 64 or n > 64:
        raise ValueError("compiled kernel handles at most 64 rows and columns")
    for k in range(gcount):
        total += <int>gmult[k]
    if total > n or p > m:
        return None
    if required >= n:
        return None
    full = ~(<u64>0) if n == 64 else (bit(n) - 1)
    c.p = p
    c.gcount = gcount
    c.m = m
    c.n = n
    c.nsym = nsym
    c.row_ordered = row_ordered
    c.col_ordered = col_ordered
    c.required = required
    c.total = total
    c.gsym = <int*>malloc(sizeof(int) * (gcount * p + 1))
    c.gmult = <int*>malloc(sizeof(int) * (gcount + 1))
    c.row_order = <int*>malloc(sizeof(int) * (p + 1))
    c.row_cands = <u64*>malloc(sizeof(u64) * (p + 1))
    c.eq = <u64*>malloc(sizeof(u64) * (m * nsym + 1))
    c.compat = <u64*>malloc(sizeof(u64) * ((p + 1) * gcount + 1))
    c.assign = <int*>malloc(sizeof(int) * (p + 1))
    c.slots_out = <int*>malloc(sizeof(int) * (total + 1))
    c.slot_masks = <u64*>malloc(sizeof(u64) * (total + 1))
    c.owner = <int*>malloc(sizeof(int) * (n + 1))
    c.slot_first = <int*>malloc(sizeof(int) * (gcount + 1))
    try:
        for k in range(gcount * p):
            c.gsym[k] = gsym[k]
        for k in range(gcount):
            c.gmult[k] = gmult[k]
            c.compat[k] = full
        for k in range(p):
            c.row_order[k] = row_order[k]
            c.row_cands[k] = row_cands[k]
            c.assign[k] = -1
        for k in range(m * nsym):
            c.eq[k] = eq[k]
        with nogil:
            found = dfs(&c, 0, 0, -1)
        if not found:
            return None
        return [c.assign[k] for k in range(p)], [c.slots_out[k] for k in range(total)]
    finally:
        free(c.gsym)
        free(c.gmult)
        free(c.row_order)
        free(c.row_cands)
        free(c.eq)
        free(c.compat)
        free(c.assign)
        free(c.slots_out)
        free(c.slot_masks)
        free(c.owner)
        free(c.slot_first)
