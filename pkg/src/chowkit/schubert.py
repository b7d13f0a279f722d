"""Partition combinatorics and Schubert-class products in a k x (n-k) box.

Partitions are tuples of weakly decreasing positive integers; the empty tuple
is the unit class.  Products live in the Chow ring of a Grassmannian, so any
partition leaving the box indexes the zero class and is dropped.

Two independent multiplication routes: the Littlewood-Richardson rule
(counting lattice-word skew tableaux) and a straightening recursion that only
ever uses the Pieri rule.  Tests compare them exhaustively.
"""

from __future__ import annotations

from functools import lru_cache


def fits_in_box(lam, rows, cols):
    lam = tuple(lam)
    return len(lam) <= rows and all(cols >= p > 0 for p in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1)
    )


def partitions_in_box(rows, cols, size=None):
    """Partitions fitting in a rows x cols box, descending lex order.

    With ``size`` given, only partitions of that weight.
    """
    acc = [()]

    def grow(prefix, cap):
        for part in range(1, cap + 1):
            lam = prefix + (part,)
            acc.append(lam)
            if len(lam) < rows:
                grow(lam, part)

    if rows > 0 and cols > 0:
        grow((), cols)
    if size is not None:
        acc = [lam for lam in acc if sum(lam) == size]
    return sorted(acc, reverse=True)


def complement(lam, rows, cols):
    """The dual partition in the box: row i maps to cols - lam_{rows+1-i}."""
    lam = tuple(lam)
    if not fits_in_box(lam, rows, cols):
        raise ValueError(f"{lam} does not fit in a {rows}x{cols} box")
    padded = lam + (0,) * (rows - len(lam))
    out = tuple(cols - padded[rows - 1 - i] for i in range(rows))
    return tuple(p for p in out if p)


def pieri(lam, k, rows, cols):
    """Partitions mu in the box with mu/lam a horizontal strip of k boxes.

    These index the terms of sigma_lam * sigma_(k); strips leaving the box
    are dropped since their classes vanish in the quotient.
    """
    lam = tuple(lam)
    if k < 0:
        raise ValueError("strip size must be nonnegative")
    if not fits_in_box(lam, rows, cols):
        return []
    out = []
    nrows = min(rows, len(lam) + 1)

    def rec(i, used, mu):
        if i == nrows:
            if used == k:
                out.append(tuple(p for p in mu if p))
            return
        low = lam[i] if i < len(lam) else 0
        high = cols if i == 0 else lam[i - 1]
        for v in range(low, min(high, low + k - used) + 1):
            rec(i + 1, used + v - low, mu + (v,))

    rec(0, 0, ())
    return sorted(out, reverse=True)


def lr_coefficient(lam, mu, nu):
    """Littlewood-Richardson coefficient c^nu_{lam mu}.

    Counts semistandard skew tableaux of shape nu/lam and content mu whose
    reverse reading word (right to left along rows, top row first) is a
    lattice word.
    """
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if sum(nu) != sum(lam) + sum(mu) or len(lam) > len(nu):
        return 0
    padded = lam + (0,) * (len(nu) - len(lam))
    if any(padded[i] > nu[i] for i in range(len(nu))):
        return 0
    # cells in reverse reading order
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, padded[r] - 1, -1)]
    nvals = len(mu)
    counts = [0] * (nvals + 1)
    grid = {}

    def fill(pos):
        if pos == len(cells):
            return 1
        r, c = cells[pos]
        ceiling = grid[(r, c + 1)] if c + 1 < nu[r] else nvals
        floor = grid[(r - 1, c)] + 1 if r > 0 and c >= padded[r - 1] else 1
        total = 0
        for v in range(floor, ceiling + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] >= counts[v - 1]:
                continue  # lattice condition would break at this prefix
            counts[v] += 1
            grid[(r, c)] = v
            total += fill(pos + 1)
            counts[v] -= 1
            del grid[(r, c)]
        return total

    return fill(0)


def lr_product(lam, mu, rows, cols):
    """sigma_lam * sigma_mu in the box ring, as {nu: coefficient}."""
    lam, mu = tuple(lam), tuple(mu)
    if not (fits_in_box(lam, rows, cols) and fits_in_box(mu, rows, cols)):
        return {}
    out = {}
    for nu in partitions_in_box(rows, cols, size=sum(lam) + sum(mu)):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[nu] = c
    return out


@lru_cache(maxsize=None)
def _pieri_product(lam, mu, rows, cols):
    if not mu:
        return ((lam, 1),)
    head, rest = mu[0], mu[1:]
    acc = {}
    for rho, c in _pieri_product(lam, rest, rows, cols):
        for nu in pieri(rho, head, rows, cols):
            acc[nu] = acc.get(nu, 0) + c
    # straightening corrections: the other terms of sigma_rest * sigma_(head)
    for nu in pieri(rest, head, rows, cols):
        if nu == mu:
            continue
        for tau, c in _pieri_product(lam, nu, rows, cols):
            acc[tau] = acc.get(tau, 0) - c
    return tuple(sorted((nu, c) for nu, c in acc.items() if c))


def pieri_product(lam, mu, rows, cols):
    """Independent route to sigma_lam * sigma_mu using only the Pieri rule.

    Peel mu's first row: multiply sigma_lam * sigma_{mu minus first row} by
    the single-row class, then subtract the products indexed by the other
    Pieri terms of that single-row product.  Every correction has a strictly
    longer first row, so the recursion terminates at single-row classes.
    """
    lam, mu = tuple(lam), tuple(mu)
    if not (fits_in_box(lam, rows, cols) and fits_in_box(mu, rows, cols)):
        return {}
    return dict(_pieri_product(lam, mu, rows, cols))
