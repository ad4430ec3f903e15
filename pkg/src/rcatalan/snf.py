"""Elementary divisors of integer matrices."""
from __future__ import annotations


def elementary_divisors(matrix) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns ``min(rows, cols)`` nonnegative integers ``d_1 | d_2 | ...``;
    zeros (if any) come last.
    """
    a = [[int(x) for x in row] for row in matrix]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    for k in range(min(rows, cols)):
        # pivot: smallest nonzero absolute value in the remaining block
        pivot = None
        for i in range(k, rows):
            for j in range(k, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            diag.extend([0] * (min(rows, cols) - k))
            break
        i, j = pivot
        a[k], a[i] = a[i], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        while True:
            done = True
            for i in range(k + 1, rows):
                if a[i][k]:
                    f = a[i][k] // a[k][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                    if a[i][k]:
                        done = False
            for j in range(k + 1, cols):
                if a[k][j]:
                    f = a[k][j] // a[k][k]
                    for row in a:
                        row[j] -= f * row[k]
                    if a[k][j]:
                        done = False
            if done:
                # divisibility: fold any entry not divisible by the pivot into row k
                bad = next(
                    ((i, j) for i in range(k + 1, rows) for j in range(k + 1, cols) if a[i][j] % a[k][k]),
                    None,
                )
                if bad is None:
                    break
                a[k] = [x + y for x, y in zip(a[k], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column k to the pivot
            cands = [(i, k) for i in range(k, rows) if a[i][k]] + [(k, j) for j in range(k, cols) if a[k][j]]
            i, j = min(cands, key=lambda c: abs(a[c[0]][c[1]]))
            a[k], a[i] = a[i], a[k]
            for row in a:
                row[k], row[j] = row[j], row[k]
        diag.append(abs(a[k][k]))
    nonzero = sorted(d for d in diag if d)
    return nonzero + [0] * (len(diag) - len(nonzero))
