"""Pure-Python kernels; reference semantics for the compiled ones in ``_ckernel``.

``charrank_batch`` works on the packed structure-constant layout produced by
:func:`charrank.kernel.pack`: for ``1 <= i`` and ``1 <= k`` with ``i + k <= dim``,
``table[offsets[i * (dim + 1) + k] + p * betti[k] + q]`` is the product of
basis class ``p`` in degree ``i`` with basis class ``q`` in degree ``k``.
"""


def rank_u64(rows):
    pivots = {}
    for x in rows:
        while x:
            low = x & -x
            row = pivots.get(low)
            if row is None:
                pivots[low] = x
                break
            x ^= row
    return len(pivots)


def charrank_batch(dim, betti, table, offsets, profiles):
    stride = dim + 1
    out = []
    for w in profiles:
        spans = [None] * stride
        spans[0] = [1]
        result = dim
        for j in range(1, stride):
            b = betti[j]
            if b == 0:
                spans[j] = []
                continue
            piv = {}
            for i in range(1, j + 1):
                wi = w[i]
                if not wi:
                    continue
                k = j - i
                if k == 0:
                    products = (wi,)
                else:
                    src = spans[k]
                    if not src:
                        continue
                    base = offsets[i * stride + k]
                    bk = betti[k]
                    products = []
                    for u in src:
                        v = 0
                        x = wi
                        while x:
                            low = x & -x
                            x ^= low
                            row = base + (low.bit_length() - 1) * bk
                            y = u
                            while y:
                                ly = y & -y
                                y ^= ly
                                v ^= table[row + ly.bit_length() - 1]
                        products.append(v)
                for v in products:
                    while v:
                        low = v & -v
                        r = piv.get(low)
                        if r is None:
                            piv[low] = v
                            break
                        v ^= r
                if len(piv) == b:
                    break
            if len(piv) < b:
                result = j - 1
                break
            spans[j] = list(piv.values())
        out.append(result)
    return out
