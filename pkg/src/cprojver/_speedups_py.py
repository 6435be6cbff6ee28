"""Pure-Python elimination kernels.

Same API as the compiled `cprojver._speedups` module; the active implementation
is chosen in `cprojver._backend`.  Rows are dicts mapping a column key to a
nonzero Python int.
"""

from math import gcd

BACKEND = "python"


def row_update(r, p, a, b):
    """In place: r := a*r - b*p, then divide by the content gcd."""
    if a != 1:
        for k in r:
            r[k] *= a
    for k, v in p.items():
        s = r.get(k, 0) - b * v
        if s:
            r[k] = s
        else:
            r.pop(k, None)
    if not r:
        return
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in r:
            r[k] //= g


def row_content(r):
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def bareiss_rank(rows, ncols):
    """Rank of a dense integer matrix (list of lists), fraction-free."""
    m = [list(r) for r in rows]
    nrows = len(m)
    prev = 1
    rank = 0
    row = 0
    for col in range(ncols):
        piv = -1
        for i in range(row, nrows):
            if m[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for i in range(row + 1, nrows):
            ri = m[i]
            rv = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = (pv * ri[j] - rv * m[row][j]) // prev
            ri[col] = 0
        prev = pv
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank
