"""Integer lattices (kernels, Hermite forms with witnesses) and polynomial kernels over Q[x]."""

from dataclasses import dataclass

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .algebra import integer_roots

QX, X = ring("x", QQ)


def integer_kernel(rows, n):
    """A Z-basis of ``{e in Z^n : row . e == 0 for every row}``."""
    A = [list(map(int, r)) for r in rows if any(r)]
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of U are the transformed unit vectors
    cols = [[row[j] for row in A] for j in range(n)]
    ucols = [[U[i][j] for i in range(n)] for j in range(n)]
    pivot = 0
    for r in range(len(A)):
        while True:
            live = [j for j in range(pivot, n) if cols[j][r]]
            if len(live) <= 1:
                break
            j0 = min(live, key=lambda j: abs(cols[j][r]))
            for j in live:
                if j == j0:
                    continue
                q = cols[j][r] // cols[j0][r]
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[j0])]
                ucols[j] = [a - q * b for a, b in zip(ucols[j], ucols[j0])]
        live = [j for j in range(pivot, n) if cols[j][r]]
        if live:
            j = live[0]
            cols[pivot], cols[j] = cols[j], cols[pivot]
            ucols[pivot], ucols[j] = ucols[j], ucols[pivot]
            pivot += 1
    return hermite_basis([ucols[j] for j in range(pivot, n)])


def hermite_basis(vectors, witnesses=None, mul=None, inv=None, power=None):
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    When ``witnesses`` are given, each row carries a multiplicative witness
    that is transformed alongside (``row_i -= q*row_j`` divides by
    ``w_j**q``).  Returns ``(rows, witnesses)`` or just ``rows``.
    """
    rows = [list(map(int, v)) for v in vectors]
    track = witnesses is not None
    ws = list(witnesses) if track else [None] * len(rows)

    def sub(i, j, q):
        rows[i] = [a - q * b for a, b in zip(rows[i], rows[j])]
        if track and q:
            ws[i] = mul(ws[i], inv(power(ws[j], q)))

    width = len(rows[0]) if rows else 0
    k = 0
    for c in range(width):
        while True:
            live = [i for i in range(k, len(rows)) if rows[i][c]]
            if len(live) <= 1:
                break
            i0 = min(live, key=lambda i: abs(rows[i][c]))
            for i in live:
                if i != i0:
                    sub(i, i0, rows[i][c] // rows[i0][c])
        live = [i for i in range(k, len(rows)) if rows[i][c]]
        if not live:
            continue
        i = live[0]
        rows[k], rows[i] = rows[i], rows[k]
        ws[k], ws[i] = ws[i], ws[k]
        if rows[k][c] < 0:
            rows[k] = [-a for a in rows[k]]
            if track:
                ws[k] = inv(ws[k])
        for i in range(k):
            sub(i, k, rows[i][c] // rows[k][c])
        k += 1
    return (rows[:k], ws[:k]) if track else rows[:k]


@dataclass
class KernelBasisResult:
    """Kernel generators over Q[x] and the specialization threshold ``delta``."""

    basis: list
    delta: int


def _as_qx(e):
    if isinstance(e, type(X)) and e.ring == QX:
        return e
    if hasattr(e, "as_expr"):
        e = e.as_expr()
    return QX.from_expr(e) if not isinstance(e, (int,)) else QX(e)


def polynomial_kernel_basis(matrix, ncols=None):
    """Kernel of a matrix over Q[x] via unimodular diagonalization.

    Returns generators ``v_i(x)`` with ``A(x) v_i(x) == 0`` and ``delta`` such
    that for every integer ``n >= delta`` the values ``v_i(n)`` form a basis
    of the kernel of ``A(n)``.
    """
    A = [[_as_qx(e) for e in row] for row in matrix]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    Q = [[QX.one if i == j else QX.zero for j in range(n)] for i in range(n)]
    diag = []
    k = 0
    while k < min(m, n):
        entries = [(A[i][j].degree(), i, j) for i in range(k, m) for j in range(k, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[k], A[pi] = A[pi], A[k]
        for row in A:
            row[k], row[pj] = row[pj], row[k]
        for row in Q:
            row[k], row[pj] = row[pj], row[k]
        while True:
            p = A[k][k]
            dirty = False
            for i in range(k + 1, m):
                if A[i][k]:
                    q, r = A[i][k].div(p)
                    A[i] = [a - q * b for a, b in zip(A[i], A[k])]
                    if r:
                        dirty = True
            for j in range(k + 1, n):
                if A[k][j]:
                    q, r = A[k][j].div(p)
                    for row in A:
                        row[j] = row[j] - q * row[k]
                    for row in Q:
                        row[j] = row[j] - q * row[k]
                    if r:
                        dirty = True
            if not dirty:
                break
            entries = [(A[i][k].degree(), i, k) for i in range(k, m) if A[i][k]]
            entries += [(A[k][j].degree(), k, j) for j in range(k, n) if A[k][j]]
            _, pi, pj = min(entries)
            if pi != k:
                A[k], A[pi] = A[pi], A[k]
            if pj != k:
                for row in A:
                    row[k], row[pj] = row[pj], row[k]
                for row in Q:
                    row[k], row[pj] = row[pj], row[k]
        diag.append(A[k][k])
        k += 1
    basis = []
    for j in range(k, n):
        v = [Q[i][j] for i in range(n)]
        lead = next(e for e in v if e)
        c = lead.LC
        basis.append(tuple(e.quo_ground(c) for e in v))
    delta = 0
    for d in diag:
        coeffs = [QQ(0)] * (d.degree() + 1)
        for (e,), c in d.terms():
            coeffs[e] = c
        roots = [r for r in integer_roots(coeffs) if r >= 0] if d.degree() > 0 else []
        if roots:
            delta = max(delta, max(roots) + 1)
    return KernelBasisResult(basis, delta)
