"""Exact integer matrices, Smith normal form, and presented quotients.

The Smith normal form engine works on sparse rows so that the structured
matrices produced by permutation actions (two nonzeros per column) stay
cheap at ranks in the low thousands. Pivoting is deterministic: the nonzero
entry of smallest absolute value, ties broken by row-major position.
"""

from __future__ import annotations

import heapq
import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from . import arith
from .errors import ContractError, ConsistencyError, InputError

DEBUG = os.environ.get("KUSPHERE_DEBUG", "") not in ("", "0")
# Dense re-verification of U M V = D below this many entries; sampled above.
FULL_VERIFY_LIMIT = 40_000


class IntMatrix:
    """Dense rectangular matrix of Python ints."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        self.data = [[int(x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        for row in self.data:
            if len(row) != cols:
                raise InputError("matrix is not rectangular")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[dict], cols: int) -> IntMatrix:
        m = cls.zeros(len(rows), cols)
        for i, row in enumerate(rows):
            for j, v in row.items():
                m.data[i][j] = v
        return m

    @classmethod
    def from_sparse_cols(cls, cols: Sequence[dict], rows: int) -> IntMatrix:
        m = cls.zeros(rows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                m.data[i][j] = v
        return m

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.data[i][j] = int(value)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self.data))))

    def __repr__(self):
        return f"IntMatrix({self.data!r})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix([list(c) for c in zip(*self.data)] if self.rows else [], self.rows)

    T = property(transpose)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.transpose().data if other.rows else [[] for _ in range(other.cols)]
        out = []
        for row in self.data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out.append([sum(a * col[k] for k, a in nz) for col in ocols])
        return IntMatrix(out, other.cols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise InputError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix([[k * a for a in r] for r in self.data], self.cols)

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(r, vec)) for r in self.data]

    def reduce_rows(self, moduli: Sequence[int]) -> IntMatrix:
        """Reduce row i modulo moduli[i]; a modulus of 0 leaves the row alone."""
        return IntMatrix(
            [[a % m if m else a for a in r] for r, m in zip(self.data, moduli)], self.cols
        )

    def sparse_rows(self) -> list[dict]:
        return [{j: v for j, v in enumerate(r) if v} for r in self.data]

    def sparse_cols(self) -> list[dict]:
        cols = [{} for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for j, v in enumerate(r):
                if v:
                    cols[j][i] = v
        return cols

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        n = self.rows
        if n != self.cols:
            raise InputError("determinant of a non-square matrix")
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


def as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


# --------------------------------------------------------------------------
# sparse elimination


def _axpy(target: dict, source: dict, f: int) -> None:
    """target += f * source, dropping zeros."""
    for k, v in source.items():
        w = target.get(k, 0) + f * v
        if w:
            target[k] = w
        else:
            target.pop(k, None)


def _eliminate(rows: list[dict], ncols: int, track: bool):
    """Diagonalize by unimodular row/column operations.

    Returns (pivots, (U, Uinv), V) where pivots is a list of (row, col,
    value) in elimination order, U is a list of sparse rows (row operations
    applied to the identity), Uinv the sparse columns of its inverse and V a
    list of sparse columns. Without ``track`` the transforms are None.
    ``rows`` is consumed.
    """
    nrows = len(rows)
    A = rows
    C: list[set] = [set() for _ in range(ncols)]
    heap = []
    for i, row in enumerate(A):
        for j, v in row.items():
            C[j].add(i)
            heap.append((abs(v), i, j))
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    U = [{i: 1} for i in range(nrows)] if track else None
    Uinv = [{i: 1} for i in range(nrows)] if track else None
    V = [{j: 1} for j in range(ncols)] if track else None
    pivots = []

    while heap:
        a, i, j = pop(heap)
        row = A[i]
        if row is None:
            continue
        v = row.get(j)
        if v is None or (v if v > 0 else -v) != a:
            continue

        dirty = False
        # row operations clear column j
        for k in sorted(C[j]):
            if k == i:
                continue
            rk = A[k]
            f, r = divmod(rk[j], v)
            for col, val in row.items():
                w = rk.get(col, 0) - f * val
                if w:
                    if col not in rk:
                        C[col].add(k)
                    rk[col] = w
                    push(heap, (w if w > 0 else -w, k, col))
                else:
                    del rk[col]
                    C[col].discard(k)
            if track and f:
                _axpy(U[k], U[i], -f)
                _axpy(Uinv[i], Uinv[k], f)
            if r:
                dirty = True
        if dirty:
            push(heap, (a, i, j))
            continue

        # column operations clear row i; column j is now zero off the pivot
        for col in sorted(row):
            if col == j:
                continue
            f, r = divmod(row[col], v)
            if track:
                _axpy(V[col], V[j], -f)
            if r:
                row[col] = r
                push(heap, (r if r > 0 else -r, i, col))
                dirty = True
            else:
                del row[col]
                C[col].discard(i)
        if dirty:
            push(heap, (a, i, j))
            continue

        pivots.append((i, j, v))
        A[i] = None
        C[j].discard(i)
    return pivots, (U, Uinv), V


def _eliminate_diagonal(A: list[dict], ncols: int) -> list[int]:
    """Pivot values only, no transforms.

    The diagonal is an invariant of the matrix, so the pivot order is free
    here: unit entries are swept out row by row first, and only the
    non-unit remainder goes through the smallest-entry heap of _eliminate.
    """
    C: list[set] = [set() for _ in range(ncols)]
    for i, row in enumerate(A):
        for j in row:
            C[j].add(i)
    out = []
    changed = True
    while changed:
        changed = False
        for i, row in enumerate(A):
            if not row:
                continue
            for j, v in row.items():
                if v == 1 or v == -1:
                    break
            else:
                continue
            Cj = C[j]
            for k in list(Cj):
                if k == i:
                    continue
                rk = A[k]
                f = rk[j] * v
                for col, val in row.items():
                    w = rk.get(col, 0) - f * val
                    if w:
                        if col not in rk:
                            C[col].add(k)
                        rk[col] = w
                    else:
                        del rk[col]
                        C[col].discard(k)
            for col in row:
                if col != j:
                    C[col].discard(i)
            Cj.clear()
            A[i] = None
            out.append(1)
            changed = True
    rest = [row if row else {} for row in A]
    pivots, _, _ = _eliminate(rest, ncols, track=False)
    out.extend(abs(v) for _, _, v in pivots)
    return out


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        t, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    return a, x0, y0


@dataclass
class SmithDecomposition:
    """U @ M @ V == D with D diagonal, d1 | d2 | ..., zeros last."""

    shape: tuple[int, int]
    diagonal: tuple[int, ...]
    u_rows: list[dict] = field(repr=False)
    v_cols: list[dict] = field(repr=False)
    uinv_cols: list[dict] = field(repr=False, default_factory=list)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)

    @property
    def U(self) -> IntMatrix:
        return IntMatrix.from_sparse_rows(self.u_rows, self.shape[0])

    @property
    def V(self) -> IntMatrix:
        return IntMatrix.from_sparse_cols(self.v_cols, self.shape[1])

    @property
    def D(self) -> IntMatrix:
        D = IntMatrix.zeros(*self.shape)
        for k, d in enumerate(self.diagonal):
            D.data[k][k] = d
        return D

    def kernel_basis(self) -> list[dict]:
        """Sparse columns of V spanning the (saturated) integer kernel of M."""
        return [self.v_cols[k] for k in range(self.rank, self.shape[1])]

    def verify(self, M, full: bool | None = None) -> None:
        """Check U M V = D; dense when small or in debug mode, else on random probes."""
        m, n = self.shape
        rows = _to_sparse_rows(M)
        if full is None:
            full = DEBUG or m * n <= FULL_VERIFY_LIMIT
        if full:
            probes = None
        else:
            rng = random.Random(m * 1_000_003 + n)
            probes = [
                ({i: rng.randint(-3, 3) for i in rng.sample(range(m), min(m, 8))},
                 {j: rng.randint(-3, 3) for j in rng.sample(range(n), min(n, 8))})
                for _ in range(4)
            ]
        if probes is None:
            UM = [_row_times_sparse(u, rows) for u in self.u_rows]
            for i, um in enumerate(UM):
                for j, vcol in enumerate(self.v_cols):
                    s = sum(um.get(k, 0) * x for k, x in vcol.items())
                    expect = self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                    if s != expect:
                        raise ConsistencyError(f"U M V != D at ({i}, {j})")
            return
        for x, y in probes:
            xu = {}
            for i, c in x.items():
                _axpy(xu, self.u_rows[i], c)
            xum = _row_times_sparse(xu, rows)
            vy = {}
            for j, c in y.items():
                _axpy(vy, self.v_cols[j], c)
            lhs = sum(xum.get(k, 0) * c for k, c in vy.items())
            rhs = sum(x.get(k, 0) * y.get(k, 0) * d for k, d in enumerate(self.diagonal))
            if lhs != rhs:
                raise ConsistencyError("U M V != D on a random probe")


def _row_times_sparse(vec: dict, rows: list[dict]) -> dict:
    out: dict = {}
    for i, c in vec.items():
        if c:
            _axpy(out, rows[i], c)
    return out


def _to_sparse_rows(M) -> list[dict]:
    if isinstance(M, SparseMatrix):
        return [dict(r) for r in M.rows]
    return as_matrix(M).sparse_rows()


@dataclass
class SparseMatrix:
    """Row-sparse integer matrix for large structured inputs and Mackey structure maps."""

    rows: list[dict]
    ncols: int

    @classmethod
    def from_dense(cls, M) -> SparseMatrix:
        M = as_matrix(M)
        return cls(M.sparse_rows(), M.cols)

    @classmethod
    def from_columns(cls, cols: Sequence[dict], nrows: int) -> SparseMatrix:
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(rows, len(cols))

    @classmethod
    def identity(cls, n: int, scale: int = 1) -> SparseMatrix:
        return cls([{i: scale} if scale else {} for i in range(n)], n)

    @property
    def shape(self):
        return len(self.rows), self.ncols

    def dense(self) -> IntMatrix:
        return IntMatrix.from_sparse_rows(self.rows, self.ncols)

    def tolist(self) -> list[list[int]]:
        return self.dense().tolist()

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.ncols != len(other.rows):
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix([_row_times_sparse(r, other.rows) for r in self.rows], other.ncols)

    def reduce_rows(self, moduli: Sequence[int]) -> SparseMatrix:
        """Reduce row i mod moduli[i] (0 = leave as is)."""
        out = []
        for r, m in zip(self.rows, moduli):
            if m:
                r = {j: v % m for j, v in r.items() if v % m}
            else:
                r = {j: v for j, v in r.items() if v}
            out.append(r)
        return SparseMatrix(out, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix) or self.shape != other.shape:
            return False
        return all({j: v for j, v in a.items() if v} == {j: v for j, v in b.items() if v}
                   for a, b in zip(self.rows, other.rows))

    def transpose(self) -> SparseMatrix:
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return SparseMatrix(rows, len(self.rows))

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)


def _shape(M) -> tuple[int, int]:
    if isinstance(M, SparseMatrix):
        return M.shape
    M = as_matrix(M)
    return M.shape


def smith_normal_form(M, verify: bool = True) -> SmithDecomposition:
    """Smith normal form with unimodular transforms."""
    m, n = _shape(M)
    pivots, (U, Uinv), V = _eliminate(_to_sparse_rows(M), n, track=True)
    prow = [i for i, _, _ in pivots]
    pcol = [j for _, j, _ in pivots]
    used_r, used_c = set(prow), set(pcol)
    row_order = prow + [i for i in range(m) if i not in used_r]
    col_order = pcol + [j for j in range(n) if j not in used_c]
    u_rows = [U[i] for i in row_order]
    uinv_cols = [Uinv[i] for i in row_order]
    v_cols = [V[j] for j in col_order]
    diag = []
    for k, (_, _, v) in enumerate(pivots):
        if v < 0:
            u_rows[k] = {c: -x for c, x in u_rows[k].items()}
            uinv_cols[k] = {c: -x for c, x in uinv_cols[k].items()}
            v = -v
        diag.append(v)

    # sort ascending, then enforce the divisibility chain with 2x2 gcd/lcm moves
    r = len(diag)
    order = sorted(range(r), key=lambda k: diag[k])
    diag = [diag[k] for k in order]
    u_rows[:r] = [u_rows[k] for k in order]
    uinv_cols[:r] = [uinv_cols[k] for k in order]
    v_cols[:r] = [v_cols[k] for k in order]
    for i in range(r):
        if diag[i] == 1:
            continue
        for j in range(i + 1, r):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            u_rows[i], u_rows[j] = (_combine(u_rows[i], s, u_rows[j], t),
                                    _combine(u_rows[i], -bg, u_rows[j], ag))
            uinv_cols[i], uinv_cols[j] = (_combine(uinv_cols[i], ag, uinv_cols[j], bg),
                                          _combine(uinv_cols[i], -t, uinv_cols[j], s))
            v_cols[i], v_cols[j] = (_combine(v_cols[i], 1, v_cols[j], 1),
                                    _combine(v_cols[i], -t * bg, v_cols[j], s * ag))
            diag[i], diag[j] = g, a * bg
    diag += [0] * (min(m, n) - r)
    dec = SmithDecomposition((m, n), tuple(diag), u_rows, v_cols, uinv_cols)
    if verify:
        dec.verify(M)
    return dec


def _combine(x: dict, a: int, y: dict, b: int) -> dict:
    out: dict = {}
    _axpy(out, x, a)
    _axpy(out, y, b)
    return out


def diagonal_form(M) -> list[int]:
    """Absolute values of some diagonalization of M (no divisibility chain).

    The multiset determines the cokernel up to isomorphism; zeros for the
    free rank are appended. This is the transform-free path used by sweeps.
    """
    m, n = _shape(M)
    piv = _eliminate_diagonal(_to_sparse_rows(M), n)
    return piv + [0] * (m - len(piv))


def invariant_factors(M) -> tuple[int, ...]:
    """Nonzero invariant factors d1 | d2 | ... (units included)."""
    return chain_from_diagonal([d for d in diagonal_form(M) if d])


def chain_from_diagonal(values: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of the diagonal matrix with the given nonzero entries."""
    values = [abs(v) for v in values]
    units = values.count(1)
    diag = sorted(v for v in values if v != 1)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if b % a:
                g = gcd(a, b)
                diag[i], diag[j] = g, a * b // g
    return (1,) * (units + diag.count(1)) + tuple(d for d in diag if d != 1)


def rank_mod_p(vectors: Iterable[dict], p: int, dim: int, stop_at: int | None = None) -> int:
    """Rank over F_p of sparse integer vectors (incremental echelon form)."""
    pivots: dict[int, dict] = {}
    target = dim if stop_at is None else stop_at
    for vec in vectors:
        v = {k: x % p for k, x in vec.items() if x % p}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(v[lead], -1, p)
                pivots[lead] = {k: x * inv % p for k, x in v.items()}
                break
            f = v[lead]
            for k, x in piv.items():
                w = (v.get(k, 0) - f * x) % p
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
        if len(pivots) >= target:
            break
    return len(pivots)


# --------------------------------------------------------------------------
# presented quotients


@dataclass
class QuotientPresentation:
    """Cokernel of a relation matrix with chosen generators.

    ``orders[p]`` is the order of generator p (0 = free in integral mode,
    q-profinite in q-complete mode). ``lift[i]`` expresses ambient basis
    vector i as {generator: coefficient}; ``generators[p]`` is the ambient
    vector (sparse) representing generator p.
    """

    labels: tuple[str, ...]
    orders: tuple[int, ...]
    lift: list[dict]
    generators: list[dict]
    relations: list[dict]
    ambient_labels: tuple[str, ...]
    mode: str = "integral"
    q: int | None = None

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(o for o in self.orders if o)

    def project(self, vec: dict) -> list[int]:
        """Coordinates of an ambient vector in generator basis, reduced."""
        out = [0] * self.ngens
        for i, c in vec.items():
            for p, x in self.lift[i].items():
                out[p] += c * x
        return [x % o if o else x for x, o in zip(out, self.orders)]

    def project_sparse(self, vec: dict) -> dict:
        out: dict = {}
        for i, c in vec.items():
            if c:
                _axpy(out, self.lift[i], c)
        res = {}
        for p, x in out.items():
            o = self.orders[p]
            if o:
                x %= o
            if x:
                res[p] = x
        return res

    def lift_matrix(self) -> IntMatrix:
        return IntMatrix.from_sparse_cols(self.lift, self.ngens)


def _combo_label(vec: dict, labels: Sequence[str]) -> str:
    if len(vec) == 1:
        (i, c), = vec.items()
        if c == 1:
            return labels[i]
        if c == -1:
            return "-" + labels[i]
    parts = []
    for i in sorted(vec):
        c = vec[i]
        parts.append(f"{c}*{labels[i]}")
    return " + ".join(parts).replace("+ -", "- ")


def cokernel_presentation(M, mode: str = "integral", q: int | None = None,
                          labels: Sequence[str] | None = None) -> QuotientPresentation:
    """Present coker(M: Z^n -> Z^m) through the Smith normal form of M."""
    if mode not in ("integral", "q_complete"):
        raise InputError(f"unknown mode {mode!r}")
    if mode == "q_complete" and (q is None or not arith.is_prime(q)):
        raise InputError("q_complete mode needs a prime q")
    m, n = _shape(M)
    labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(m))
    dec = smith_normal_form(M)
    # columns of U^{-1} are the new basis in ambient coordinates
    Uinv = dec.uinv_cols
    diag = list(dec.diagonal) + [0] * (m - len(dec.diagonal))
    keep, orders = [], []
    for p, d in enumerate(diag):
        o = d
        if mode == "q_complete" and d:
            o = arith.q_part(d, q)
        if o == 1:
            continue
        keep.append(p)
        orders.append(o)
    index = {p: k for k, p in enumerate(keep)}
    lift = [dict() for _ in range(m)]
    for p, urow in enumerate(dec.u_rows):
        k = index.get(p)
        if k is None:
            continue
        o = orders[k]
        for i, c in urow.items():
            c = c % o if o else c
            if c:
                lift[i][k] = c
    gens = [Uinv[p] for p in keep]
    return QuotientPresentation(
        labels=tuple(_combo_label(g, labels) for g in gens),
        orders=tuple(orders),
        lift=lift,
        generators=gens,
        relations=_to_sparse_cols(M),
        ambient_labels=labels,
        mode=mode,
        q=q,
    )


def _to_sparse_cols(M) -> list[dict]:
    m, n = _shape(M)
    cols = [dict() for _ in range(n)]
    for i, row in enumerate(_to_sparse_rows(M)):
        for j, v in row.items():
            cols[j][i] = v
    return cols


def _column_images(f, nsrc: int, ntgt: int):
    """Normalize f (dense, sparse, or callable on basis indices) to a column lookup."""
    if callable(f) and not isinstance(f, (IntMatrix, SparseMatrix)):
        return f
    if isinstance(f, SparseMatrix):
        shape = f.shape
        cols = f.transpose().rows
    else:
        f = as_matrix(f)
        shape = f.shape
        cols = f.sparse_cols()
    if shape != (ntgt, nsrc):
        raise InputError("map does not match the ambient modules")
    return cols.__getitem__


def induced_quotient_map_sparse(f, source: QuotientPresentation, target: QuotientPresentation,
                                check: bool = True) -> SparseMatrix:
    """Sparse matrix, in generator bases, of the map induced by f on quotients.

    With ``check`` (the default) every source relation must land in the
    target relations, otherwise ContractError.
    """
    image_of = _column_images(f, len(source.ambient_labels), len(target.ambient_labels))

    def image(vec: dict) -> dict:
        out: dict = {}
        for i, c in vec.items():
            _axpy(out, image_of(i), c)
        return out

    if check:
        for j, rel in enumerate(source.relations):
            img = target.project_sparse(image(rel))
            if img:
                raise ContractError(f"map does not descend: relation {j} maps to {img}")
    cols = [target.project_sparse(image(g)) for g in source.generators]
    return SparseMatrix.from_columns(cols, target.ngens)


def induced_quotient_map(f, source: QuotientPresentation, target: QuotientPresentation,
                         check: bool = True) -> IntMatrix:
    """Dense matrix, in generator bases, of the map induced by f on quotients."""
    return induced_quotient_map_sparse(f, source, target, check).dense()


@lru_cache(maxsize=4096)
def _primary_parts(n: int) -> tuple[int, ...]:
    return tuple(_factor_primary(n))


def primary_parts(n: int) -> list[int]:
    """Prime-power factors of n > 1 (trial division)."""
    if n < 1:
        raise InputError("expected a positive integer")
    return list(_primary_parts(n))


def _factor_primary(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            pk = 1
            while n % p == 0:
                n //= p
                pk *= p
            out.append(pk)
        p += 1
    if n > 1:
        out.append(n)
    return out


# --------------------------------------------------------------------------
# permutation-structured relation matrices


def psi_relation_matrix(perm: Sequence[int], ell: int, d: int) -> SparseMatrix:
    """Integer form of l^d S - I, where S e_a = e_perm[a].

    For d < 0 the denominators are cleared: S - l^|d| I, which has the same
    cokernel after inverting l.
    """
    n = len(perm)
    rows = [dict() for _ in range(n)]
    if d >= 0:
        a_s, a_i = ell**d, -1
    else:
        a_s, a_i = 1, -(ell ** (-d))
    for a, b in enumerate(perm):
        rows[b][a] = rows[b].get(a, 0) + a_s
        rows[a][a] = rows[a].get(a, 0) + a_i
    for r in rows:
        for k in [k for k, v in r.items() if v == 0]:
            del r[k]
    return SparseMatrix(rows, n)


def perm_cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycles of a permutation, each starting from its smallest element."""
    seen = [False] * len(perm)
    cycles = []
    for a in range(len(perm)):
        if seen[a]:
            continue
        cyc = []
        b = a
        while not seen[b]:
            seen[b] = True
            cyc.append(b)
            b = perm[b]
        cycles.append(cyc)
    return cycles


def orbit_cokernel(perm: Sequence[int], ell: int, d: int, labels: Sequence[str],
                   mode: str = "q_complete", q: int | None = None,
                   cycles: list[list[int]] | None = None) -> QuotientPresentation:
    """Cokernel of psi - 1 on a permutation module, one generator per cycle.

    A cycle (a_0, a_1 = perm[a_0], ...) of length t contributes the
    generator a_0 with order |l^{dt} - 1| (its q-part in q-complete mode),
    and a_s is identified with l^{-ds} a_0, because l^d a_{s+1} = a_s in the
    quotient.
    """
    if mode not in ("integral", "q_complete"):
        raise InputError(f"unknown mode {mode!r}")
    if mode == "integral" and d < 0:
        raise InputError("negative degrees need l inverted; use q_complete mode")
    if mode == "q_complete" and (q is None or ell % q == 0):
        raise InputError("q_complete mode needs q prime to l")
    if cycles is None:
        cycles = perm_cycles(perm)
    n = len(perm)
    blocks = []
    for cyc in cycles:
        t = len(cyc)
        if d == 0:
            order = 0
        elif mode == "integral":
            order = ell ** (d * t) - 1
        else:
            order = q ** arith.nu_q_unit_power_minus_one(ell, d * t, q)
        if order != 1:
            blocks.append((order, cyc))
    # generators ordered by relation order, then by representative
    blocks.sort(key=lambda b: (b[0], b[1][0]))
    lift = [dict() for _ in range(n)]
    gens, orders, glabels = [], [], []
    for k, (order, cyc) in enumerate(blocks):
        orders.append(order)
        gens.append({cyc[0]: 1})
        glabels.append(labels[cyc[0]])
        if d == 0:
            for a in cyc:
                lift[a][k] = 1
        else:
            step = pow(ell, -d, order)
            c = 1
            for a in cyc:
                lift[a][k] = c
                c = c * step % order
    rel_cols = [dict() for _ in range(n)]
    for i, row in enumerate(psi_relation_matrix(perm, ell, d).rows):
        for j, v in row.items():
            rel_cols[j][i] = v
    return QuotientPresentation(
        labels=tuple(glabels),
        orders=tuple(orders),
        lift=lift,
        generators=gens,
        relations=rel_cols,
        ambient_labels=tuple(labels),
        mode=mode,
        q=q if mode == "q_complete" else None,
    )
