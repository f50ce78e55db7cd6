"""Pure-Python embedding kernel.

Bitsets are Python ints. The compiled twin in ``_ckernel.pyx`` implements
the same function with 64-bit words and must return identical answers.

Arguments (shared by both kernels):

p            rows of the pattern
gcount       number of column groups (identical pattern columns are merged
             unless column order matters)
gsym         flat ``gcount * p`` list, ``gsym[g*p + i]`` = symbol of group g
             at pattern row i
gmult        copies of each group
row_order    pattern rows in the order the search assigns them
row_cands    per pattern row, bitmask of admissible target rows
m, n         target shape
eq           flat ``m * nsym`` list, bitmask of target columns holding
             symbol x in row h at ``eq[h*nsym + x]``
nsym         symbols covered by ``eq`` (every pattern symbol is < nsym)
row_ordered  row map must be strictly increasing (``row_order`` is then 0..p-1)
col_ordered  column map must be strictly increasing (``gmult`` all 1)
required     target column every solution must use, or -1

Returns ``(row_assign, slot_assign)`` or ``None``; slots enumerate groups
in order, each repeated ``gmult[g]`` times.
"""


def _augment(slot, masks, owner, seen):
    avail = masks[slot] & ~seen[0]
    while avail:
        low = avail & -avail
        avail ^= low
        seen[0] |= low
        c = low.bit_length() - 1
        other = owner.get(c)
        if other is None or _augment(other, masks, owner, seen):
            owner[c] = slot
            return True
    return False


def _match(masks):
    owner = {}
    for slot in range(len(masks)):
        if not _augment(slot, masks, owner, [0]):
            return None
    out = [0] * len(masks)
    for c, slot in owner.items():
        out[slot] = c
    return out


def _leaf_matching(compat, gmult, required):
    slots = []
    firsts = []
    for g, k in enumerate(gmult):
        firsts.append(len(slots))
        slots.extend([compat[g]] * k)
    if required < 0:
        return _match(slots)
    bit = 1 << required
    for g in range(len(gmult)):
        if not compat[g] & bit:
            continue
        masks = [msk & ~bit for msk in slots]
        masks[firsts[g]] = bit
        res = _match(masks)
        if res is not None:
            return res
    return None


def _greedy(compat, lo, hi, start):
    """Leftmost increasing placement of compat[lo:hi] into columns > start."""
    out = []
    pos = start
    for g in range(lo, hi):
        avail = (compat[g] >> (pos + 1)) << (pos + 1)
        if not avail:
            return None
        low = avail & -avail
        pos = low.bit_length() - 1
        out.append(pos)
    return out


def _leaf_ordered(compat, n, required):
    gcount = len(compat)
    if required < 0:
        return _greedy(compat, 0, gcount, -1)
    bit = 1 << required
    below = bit - 1
    for g in range(gcount):
        if not compat[g] & bit:
            continue
        head = _greedy([c & below for c in compat], 0, g, -1)
        if head is None:
            continue
        tail = _greedy(compat, g + 1, gcount, required)
        if tail is None:
            continue
        return head + [required] + tail
    return None


def embed(p, gcount, gsym, gmult, row_order, row_cands, m, n, eq, nsym,
          row_ordered, col_ordered, required):
    full = (1 << n) - 1
    total = sum(gmult)
    req_bit = (1 << required) if required >= 0 else 0
    assign = [-1] * p

    def leaf(compat):
        if col_ordered:
            return _leaf_ordered(compat, n, required)
        return _leaf_matching(compat, gmult, required)

    def dfs(d, compat, used, last):
        if d == p:
            return leaf(compat)
        i = row_order[d]
        cand = row_cands[i] & ~used
        if row_ordered:
            cand = (cand >> (last + 1)) << (last + 1)
        need_after = p - d - 1
        while cand:
            low = cand & -cand
            cand ^= low
            h = low.bit_length() - 1
            if row_ordered and m - h - 1 < need_after:
                break
            base = h * nsym
            new = []
            union = 0
            hit = req_bit == 0
            for g in range(gcount):
                msk = compat[g] & eq[base + gsym[g * p + i]]
                if msk.bit_count() < gmult[g]:
                    break
                union |= msk
                if msk & req_bit:
                    hit = True
                new.append(msk)
            else:
                if hit and union.bit_count() >= total:
                    assign[i] = h
                    res = dfs(d + 1, new, used | low, h)
                    if res is not None:
                        return res
        assign[i] = -1
        return None

    if total > n or p > m:
        return None
    init = [full] * gcount
    if req_bit and not (full & req_bit):
        return None
    slots = dfs(0, init, 0, -1)
    if slots is None:
        return None
    return list(assign), slots
