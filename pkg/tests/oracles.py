"""Slow, independent reference implementations used to check the package.

Nothing here imports the package's linear algebra or span code: ranks come
from a column-by-column eliminator on explicit 0/1 lists, and spans are
enumerated monomial by monomial.
"""

from __future__ import annotations

from itertools import combinations_with_replacement


def to_rows(vectors, width):
    return [[(v >> k) & 1 for k in range(width)] for v in vectors]


def naive_rank(vectors, width):
    """Rank over F_2 by scanning columns left to right and picking any pivot row."""
    rows = to_rows(vectors, width)
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def naive_contains(vectors, width, v):
    return naive_rank(list(vectors) + [v], width) == naive_rank(vectors, width)


def span_set(vectors):
    """Every XOR combination of ``vectors``."""
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return out


def _product(alg, factors):
    out = alg.one()
    for f in factors:
        out = out * f
    return out


def monomials_of_degree(w, degree):
    """Index multisets ``i_1 <= ... <= i_r`` of nonzero classes summing to ``degree``."""
    idx = [i for i, x in w.items() if x]
    out = []

    def rec(start, left, chosen):
        if left == 0:
            out.append(tuple(chosen))
            return
        for t in range(start, len(idx)):
            if idx[t] <= left:
                rec(t, left - idx[t], chosen + [idx[t]])

    rec(0, degree, [])
    return out


def oracle_charrank(alg, w):
    """``w`` maps i to an Element; checks every degree by listing all monomials explicitly."""
    for j in range(alg.dim + 1):
        if j == 0:
            vecs = [1]
        else:
            vecs = [_product(alg, [w[i] for i in mono]).bits[j] for mono in monomials_of_degree(w, j)]
        if naive_rank(vecs, alg.betti[j]) < alg.betti[j]:
            return j - 1
    return alg.dim


def oracle_longest_product(alg, factors):
    """Largest t with some product of t factors (with repetition) nonzero."""
    factors = [f for f in factors if f]
    best = 0
    for t in range(1, alg.dim + 1):
        if any(_product(alg, combo) for combo in combinations_with_replacement(factors, t)):
            best = t
        else:
            break
    return best


def oracle_cup_length(alg):
    return oracle_longest_product(alg, [x for x in alg.basis_elements() if x.degrees() != [0]])


def oracle_pairing(alg):
    d = alg.dim
    if alg.betti[d] != 1:
        return False
    for j in range(d + 1):
        if alg.betti[j] != alg.betti[d - j]:
            return False
        rows = []
        for u in alg.basis_elements(j):
            row = 0
            for q, v in enumerate(alg.basis_elements(d - j)):
                if (u * v).bits[d]:
                    row |= 1 << q
            rows.append(row)
        if naive_rank(rows, alg.betti[d - j]) != alg.betti[j]:
            return False
    return True


def truncated_poly_product(e1, e2, bounds, degrees, dim):
    """Exponent-vector product in F_2[x]/(x_k^bounds[k]) truncated above ``dim``; None means zero."""
    e = tuple(a + b for a, b in zip(e1, e2))
    if any(x >= b for x, b in zip(e, bounds)):
        return None
    if sum(x * d for x, d in zip(e, degrees)) > dim:
        return None
    return e


def bit_reverse_lex(width):
    """Lexicographic order on bitstrings with coordinate 0 most significant."""
    strings = sorted(format(k, f"0{width}b") for k in range(1 << width)) if width else [""]
    return [sum(1 << i for i, ch in enumerate(s) if ch == "1") for s in strings]


def naive_echelon(vectors, width):
    """Reduced echelon form by scanning columns from the most significant bit down.

    Returns ``[(column, row)]``. Independent of the package's lowest-bit
    pivoting: columns are visited in the opposite order and rows are fully
    reduced against each other.
    """
    rows = [v for v in vectors if v]
    pivots = []
    r = 0
    for col in range(width - 1, -1, -1):
        if r == len(rows):
            break
        bit = 1 << col
        k = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        p = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= p
        pivots.append((col, p))
        r += 1
    return pivots


def echelon_contains(pivots, v):
    for col, row in pivots:
        if v >> col & 1:
            v ^= row
    return v == 0
