"""Pure-Python row reduction kernels.

Two primitives cover the hot paths of the whole package:

* ``gf_rref``: reduced row echelon form over F_p with unit pivots.
* ``int_rref``: fraction-free Gauss-Jordan over the integers; every
  pivot row is primitive (content 1, positive pivot) and all other
  entries in pivot columns are cleared.  Rational matrices are scaled
  to integer rows by the caller and divided back out afterwards.

Both operate in place on a list of row lists and return (rank, pivots).
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def gf_rref(rows: list[list[int]], p: int) -> tuple[int, list[int]]:
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    pivots: list[int] = []
    for col in range(n):
        piv = -1
        for r in range(rank, m):
            if rows[r][col] % p:
                piv = r
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[col], -1, p)
        for j in range(col, n):
            prow[j] = prow[j] * inv % p
        for r in range(m):
            if r == rank:
                continue
            f = rows[r][col] % p
            if f:
                row = rows[r]
                for j in range(col, n):
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    return rank, pivots


def _make_primitive(row: list[int], lead: int) -> None:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        for j in range(len(row)):
            row[j] //= g
    if row[lead] < 0:
        for j in range(len(row)):
            row[j] = -row[j]


def int_rref(rows: list[list[int]]) -> tuple[int, list[int]]:
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    pivots: list[int] = []
    for col in range(n):
        piv = -1
        for r in range(rank, m):
            if rows[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        _make_primitive(prow, col)
        a = prow[col]
        for r in range(m):
            if r == rank:
                continue
            row = rows[r]
            b = row[col]
            if b:
                for j in range(n):
                    row[j] = a * row[j] - b * prow[j]
                _reduce_content(row)
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    return rank, pivots


def _reduce_content(row: list[int]) -> None:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return
    if g > 1:
        for j in range(len(row)):
            row[j] //= g
