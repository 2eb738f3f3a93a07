"""Exact linear algebra over the rational-function field.

Vectors are dicts mapping arbitrary hashable row keys to QScalar.  Kernel
computations split the column set into connected components (columns are
linked when they share a row key), which keeps the Gaussian eliminations
tiny for the graded systems that arise here.
"""

from __future__ import annotations

from .scalars import ONE, ZERO

__all__ = ["kernel_basis", "solve_unique", "rank", "in_span", "invert_matrix"]


def _components(columns):
    """Union-find on columns sharing a row key."""
    parent = list(range(len(columns)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for ci, col in enumerate(columns):
        for key in col:
            if key in owner:
                ra, rb = find(owner[key]), find(ci)
                if ra != rb:
                    parent[rb] = ra
            else:
                owner[key] = ci
    groups = {}
    for ci in range(len(columns)):
        groups.setdefault(find(ci), []).append(ci)
    return list(groups.values())


def _dense_kernel(cols):
    """Kernel basis of the matrix with the given dense columns."""
    nrows = len(cols[0]) if cols else 0
    ncols = len(cols)
    # row-reduce the transpose-free way: eliminate on rows of [cols]
    mat = [[cols[j][i] for j in range(ncols)] for i in range(nrows)]
    pivots = []
    prow = 0
    for col in range(ncols):
        sel = None
        for r in range(prow, len(mat)):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[prow], mat[sel] = mat[sel], mat[prow]
        inv = mat[prow][col].inverse()
        mat[prow] = [x * inv for x in mat[prow]]
        for r in range(len(mat)):
            if r != prow and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[prow])]
        pivots.append(col)
        prow += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for pr, pc in enumerate(pivots):
            v[pc] = -mat[pr][fc]
        basis.append(v)
    return basis, pivots


def kernel_basis(columns):
    """Basis of the kernel of the linear map sending unit vector j to
    columns[j] (a dict row-key -> QScalar).

    Returns a list of coefficient lists (length = number of columns).
    """
    n = len(columns)
    if n == 0:
        return []
    basis = []
    for group in _components(columns):
        keys = sorted({k for ci in group for k in columns[ci]},
                      key=lambda k: repr(k))
        if not keys:  # all-zero columns: each is free
            for ci in group:
                v = [ZERO] * n
                v[ci] = ONE
                basis.append(v)
            continue
        dense = [[columns[ci].get(k, ZERO) for k in keys] for ci in group]
        sub_basis, _ = _dense_kernel(dense)
        for sv in sub_basis:
            v = [ZERO] * n
            for local, ci in enumerate(group):
                v[ci] = sv[local]
            basis.append(v)
    return basis


def rank(columns) -> int:
    return len(columns) - len(kernel_basis(columns))


def in_span(columns, target) -> list | None:
    """Coefficients expressing `target` in the span of `columns`, or None."""
    ext = list(columns) + [target]
    for v in kernel_basis(ext):
        if v[-1]:
            inv = -v[-1].inverse()  # move target to the other side
            return [x * inv for x in v[:-1]]
    return None


def solve_unique(columns, target):
    """Solve sum_j x_j columns[j] = target; return x if it exists and is
    unique, raise otherwise."""
    sol = in_span(columns, target)
    if sol is None:
        raise ValueError("inconsistent linear system")
    if kernel_basis(columns):
        raise ValueError("underdetermined linear system")
    return sol


def invert_matrix(mat):
    """Inverse of a square QScalar matrix, or None if singular."""
    n = len(mat)
    aug = [[mat[i][j] for j in range(n)] + [ONE if i == k else ZERO
                                            for k in range(n)]
           for i in range(n)]
    row = 0
    for col in range(n):
        sel = None
        for r in range(row, n):
            if aug[r][col]:
                sel = r
                break
        if sel is None:
            return None
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = aug[row][col].inverse()
        aug[row] = [x * inv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        row += 1
    return [r[n:] for r in aug]
