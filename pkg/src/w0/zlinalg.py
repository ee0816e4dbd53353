"""Exact integer linear algebra.

Smith normal form, Hermite normal form, cohomology of integer cochain
complexes, and exactness checks for sequences of free modules and for maps
induced on cohomology. Everything runs on Python ints, so there is no
overflow regardless of how large intermediate entries become.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class W0Error(Exception):
    """Base class for every error raised by this package."""


class ShapeError(W0Error, ValueError):
    pass


class NotACochainComplexError(W0Error):
    def __init__(self, degree: int):
        super().__init__(f"d^{degree + 1} o d^{degree} != 0")
        self.degree = degree


class Ring(str, enum.Enum):
    Z = "Z"
    Q = "Q"

    @classmethod
    def parse(cls, value: "Ring | str") -> "Ring":
        if isinstance(value, Ring):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise W0Error(f"unknown ring {value!r} (expected Z or Q)") from None


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Immutable integer matrix, stored sparsely as ``{row: {col: value}}``.

    ``entries`` gives the dense row-major view. Zero-row and zero-column
    matrices are ordinary values.
    """

    rows: int
    cols: int
    _data: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = {}
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ShapeError(f"row {i} has length {len(r)}, expected {cols}")
            nz = {j: int(v) for j, v in enumerate(r) if v}
            if nz:
                data[i] = nz
        return cls(len(rows), cols, data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence[int]) -> "IntMatrix":
        if len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        return cls.from_rows([entries[i * cols:(i + 1) * cols] for i in range(rows)], cols)

    @classmethod
    def from_dict(cls, rows: int, cols: int, values: dict) -> "IntMatrix":
        data: dict = {}
        for (i, j), v in values.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if v:
                data.setdefault(i, {})[j] = int(v)
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    # views
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(v for r in self.to_rows() for v in r)

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def columns(self) -> list[list[int]]:
        return [list(c) for c in zip(*self.to_rows())] if self.rows else [[] for _ in range(self.cols)]

    def items(self) -> Iterator[tuple[int, int, int]]:
        for i, r in self._data.items():
            for j, v in r.items():
                yield i, j, v

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data.get(i, {}).get(j, 0)

    def is_zero(self) -> bool:
        return not self._data

    # algebra
    def transpose(self) -> "IntMatrix":
        data: dict = {}
        for i, j, v in self.items():
            data.setdefault(j, {})[i] = v
        return IntMatrix(self.cols, self.rows, data)

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        data: dict = {}
        for i, r in self._data.items():
            acc: dict = {}
            for k, a in r.items():
                for j, b in other._data.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                data[i] = acc
        return IntMatrix(self.rows, other.cols, data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {i: {j: -v for j, v in r.items()} for i, r in self._data.items()})

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self.items()))))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ShapeError(f"hstack of {self.shape} and {other.shape}")
        data = {i: dict(r) for i, r in self._data.items()}
        for i, j, v in other.items():
            data.setdefault(i, {})[j + self.cols] = v
        return IntMatrix(self.rows, self.cols + other.cols, data)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.to_rows()})"


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _pivot(A, t, m, n):
    best = None
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return best


def _diagonalize(A: list[list[int]], m: int, n: int, U=None, V=None) -> int:
    """Reduce ``A`` in place to Smith form; returns the rank.

    Row operations are mirrored on ``U`` and column operations on ``V`` when
    given. Pivot: smallest absolute value, ties to the lowest row then column.
    """

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        if U is not None:
            U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        if V is not None:
            for row in V:
                row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = A[src], A[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = _pivot(A, t, m, n)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), 0, i) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), 1, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, kind, k = min(rest)
                if kind == 0:
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        t += 1
    return t


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Return ``U, D, V`` with ``U @ A @ V == D`` and ``U``, ``V`` unimodular."""
    m, n = A.shape
    work = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    r = _diagonalize(work, m, n, U, V)
    factors = tuple(work[i][i] for i in range(r))
    return SmithForm(
        D=IntMatrix.from_rows(work, n),
        U=IntMatrix.from_rows(U, m),
        V=IntMatrix.from_rows(V, n),
        invariant_factors=factors,
    )


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    m, n = A.shape
    work = A.to_rows()
    r = _diagonalize(work, m, n)
    return tuple(work[i][i] for i in range(r))


def rank_bareiss(A: IntMatrix) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    M = A.to_rows()
    m, n = A.shape
    rank, prev = 0, 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, m):
            a = M[i][c]
            M[i] = [(p * M[i][j] - a * M[rank][j]) // prev for j in range(n)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def determinant(A: IntMatrix) -> int:
    """Exact determinant of a square matrix (Bareiss)."""
    n = A.rows
    if A.cols != n:
        raise ShapeError(f"determinant of non-square {A.shape}")
    M = A.to_rows()
    sign, prev = 1, 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel lattice of ``A`` (saturated)."""
    snf = smith_normal_form(A)
    n = A.cols
    V = snf.V.to_rows()
    keep = range(snf.rank, n)
    return IntMatrix.from_rows([[V[i][j] for j in keep] for i in range(n)], len(keep))


def hermite_normal_form(vectors: Iterable[Sequence[int]], dim: int) -> tuple[tuple[int, ...], ...]:
    """Row Hermite normal form of the lattice spanned by ``vectors`` in Z^dim.

    The result is canonical: two generating sets span the same lattice iff
    their normal forms are equal. Zero rows are dropped.
    """
    rows = [list(v) for v in vectors if any(v)]
    out = []
    for c in range(dim):
        active = [r for r in rows if r[c]]
        rows = [r for r in rows if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[c] // p[c]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[c] else rows).append(r)
            active = nxt
        if active:
            p = active[0]
            if p[c] < 0:
                p = [-a for a in p]
            for k, h in enumerate(out):
                q = h[c] // p[c]
                if q:
                    out[k] = [a - q * b for a, b in zip(h, p)]
            out.append(p)
        rows = [r for r in rows if any(r)]
    return tuple(tuple(r) for r in out)


def column_hermite_form(A: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """Hermite form of the lattice spanned by the columns of ``A``."""
    return hermite_normal_form(A.columns(), A.rows)


# ---------------------------------------------------------------------------
# cochain complexes


@dataclass(frozen=True)
class CohomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d <= 1 for d in self.torsion):
            raise ValueError(f"torsion coefficients must exceed 1: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion is not a divisibility chain: {self.torsion}")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def format(self, ring: Ring | str = Ring.Z) -> str:
        base = "Q" if Ring.parse(ring) is Ring.Q else "Z"
        parts = []
        if self.free_rank == 1:
            parts.append(base)
        elif self.free_rank > 1:
            parts.append(f"{base}^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) or "0"

    def __str__(self):
        return self.format()

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class CochainComplex:
    """``differentials[n]`` is d^n : C^n -> C^{n+1}, of shape (dims[n+1], dims[n])."""

    dims: tuple[int, ...]
    differentials: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ShapeError(f"{len(self.dims)} degrees need {len(self.dims) - 1} differentials")
        for n, d in enumerate(self.differentials):
            if d.shape != (self.dims[n + 1], self.dims[n]):
                raise ShapeError(f"d^{n} has shape {d.shape}, expected {(self.dims[n + 1], self.dims[n])}")

    def d(self, n: int) -> IntMatrix:
        """d^n with zero maps outside the stored range."""
        if 0 <= n < len(self.differentials):
            return self.differentials[n]
        return IntMatrix.zeros(self.dim_at(n + 1), self.dim_at(n))

    def dim_at(self, n: int) -> int:
        return self.dims[n] if 0 <= n < len(self.dims) else 0

    def check(self) -> None:
        for n in range(len(self.differentials) - 1):
            if not (self.differentials[n + 1] @ self.differentials[n]).is_zero():
                raise NotACochainComplexError(n)


def reduce_complex(C: CochainComplex) -> CochainComplex:
    """Cancel every differential entry equal to +-1 (Gaussian elimination).

    The result has isomorphic integral cohomology in every degree and is
    usually far smaller, which keeps the dense Smith form cheap.
    """
    top = len(C.dims)
    # per degree: alive simplices, and each d^n as row dict + column dict
    alive = [set(range(k)) for k in C.dims]
    rows = []
    cols = []
    for d in C.differentials:
        r = {i: dict(v) for i, v in d._data.items()}
        c: dict = {}
        for i, j, v in d.items():
            c.setdefault(j, {})[i] = v
        rows.append(r)
        cols.append(c)

    def kill_row(n, i):  # drop row i of d^n
        for j in rows[n].pop(i, {}):
            cols[n][j].pop(i, None)

    def kill_col(n, j):
        for i in cols[n].pop(j, {}):
            rows[n][i].pop(j, None)

    def cancel(n, i, j):
        R, Cn = rows[n], cols[n]
        piv = R[i][j]
        col_j = {k: v for k, v in Cn[j].items() if k != i}
        row_i = {k: v for k, v in R[i].items() if k != j}
        for k, a in col_j.items():
            rk = R[k]
            for l, b in row_i.items():
                v = rk.get(l, 0) - a * b * piv
                if v:
                    rk[l] = v
                    Cn.setdefault(l, {})[k] = v
                else:
                    rk.pop(l, None)
                    Cn[l].pop(k, None)
        kill_row(n, i)
        kill_col(n, j)
        alive[n].discard(j)
        alive[n + 1].discard(i)
        if n > 0:
            kill_row(n - 1, j)
        if n + 1 < top - 1:
            kill_col(n + 1, i)

    for n in range(top - 1):
        R, Cn = rows[n], cols[n]
        changed = True
        while changed:
            changed = False
            for j in sorted(Cn):
                if j not in Cn:
                    continue
                units = [i for i, v in Cn[j].items() if v in (1, -1)]
                if not units:
                    continue
                changed = True
                cancel(n, min(units, key=lambda i: (len(R[i]), i)), j)
    index = [{s: k for k, s in enumerate(sorted(a))} for a in alive]
    diffs = []
    for n in range(top - 1):
        src, dst = index[n], index[n + 1]
        vals = {(dst[i], src[j]): v for i, r in rows[n].items() for j, v in r.items() if v}
        diffs.append(IntMatrix.from_dict(len(dst), len(src), vals))
    return CochainComplex(tuple(len(ix) for ix in index), tuple(diffs))


def complex_cohomology(C: CochainComplex, ring: Ring | str = Ring.Z) -> list[CohomologyGroup]:
    """H^n = ker d^n / im d^{n-1} for every stored degree."""
    ring = Ring.parse(ring)
    C.check()
    R = reduce_complex(C)
    if ring is Ring.Q:
        ranks = [rank_bareiss(d) for d in R.differentials]
        factors = [()] * len(ranks)
    else:
        facs = [invariant_factors(d) for d in R.differentials]
        ranks = [len(f) for f in facs]
        factors = [tuple(x for x in f if x > 1) for f in facs]
    out = []
    for n, k in enumerate(R.dims):
        r_out = ranks[n] if n < len(ranks) else 0
        r_in = ranks[n - 1] if n > 0 else 0
        tors = factors[n - 1] if n > 0 else ()
        out.append(CohomologyGroup(k - r_out - r_in, tors))
    return out


# ---------------------------------------------------------------------------
# exactness


@dataclass(frozen=True)
class ExactnessReport:
    exact: bool
    ring: Ring
    composite_zero: bool
    defect: str | None = None

    def __bool__(self):
        return self.exact


def _lattice_rank(columns: list[list[int]], dim: int) -> int:
    if not columns:
        return 0
    return rank_bareiss(IntMatrix.from_columns(columns, dim))


def cohomology_exactness(
    alpha: IntMatrix,
    d_a: IntMatrix,
    d_b_in: IntMatrix,
    d_b: IntMatrix,
    beta: IntMatrix,
    d_c_in: IntMatrix,
    ring: Ring | str = Ring.Z,
) -> ExactnessReport:
    """Exactness of ``H(A) -> H(B) -> H(C)`` at H(B), for cochain-level maps.

    ``alpha``: A^a -> B^b and ``beta``: B^b -> C^c are the cochain maps;
    ``d_a`` is the differential leaving A^a, ``d_b_in``/``d_b`` enter and
    leave B^b, ``d_c_in`` enters C^c. Exact means

        alpha(Z_A) + B_B  ==  {z in Z_B : beta(z) in B_C}

    as lattices over Z (Hermite forms), or as subspaces over Q (ranks).
    """
    ring = Ring.parse(ring)
    nb = alpha.rows
    if alpha.rows != beta.cols or d_b.cols != nb or d_b_in.rows != nb:
        raise ShapeError(
            f"incompatible shapes alpha {alpha.shape}, beta {beta.shape}, "
            f"d_b_in {d_b_in.shape}, d_b {d_b.shape}"
        )
    if d_a.cols != alpha.cols or d_c_in.rows != beta.rows:
        raise ShapeError(f"incompatible shapes d_a {d_a.shape}, d_c_in {d_c_in.shape}")
    za = kernel_basis(d_a)
    image = (alpha @ za).columns() + d_b_in.columns()
    zb = kernel_basis(d_b)
    M = (beta @ zb).hstack(d_c_in)
    sol = kernel_basis(M)
    xs = IntMatrix.from_rows(sol.to_rows()[: zb.cols], sol.cols)
    kernel = (zb @ xs).columns()

    # composite is zero on cohomology iff image lies in kernel
    if ring is Ring.Z:
        h_im = hermite_normal_form(image, nb)
        h_ker = hermite_normal_form(kernel, nb)
        h_both = hermite_normal_form(image + kernel, nb)
        inside = h_both == h_ker
        exact = h_im == h_ker
    else:
        r_im = _lattice_rank(image, nb)
        r_ker = _lattice_rank(kernel, nb)
        r_both = _lattice_rank(image + kernel, nb)
        inside = r_both == r_ker
        exact = inside and r_im == r_ker
    defect = None
    if not inside:
        defect = "image is not contained in kernel (composite nonzero)"
    elif not exact:
        defect = "image is a proper sublattice of kernel" if ring is Ring.Z else "image has smaller rank than kernel"
    return ExactnessReport(exact, ring, inside, defect)


def exactness_check(f: IntMatrix, g: IntMatrix, ring: Ring | str = Ring.Z) -> ExactnessReport:
    """Exactness of ``A --f--> B --g--> C`` at B for free modules."""
    if g.cols != f.rows:
        raise ShapeError(f"g has {g.cols} columns but f has {f.rows} rows")
    ring = Ring.parse(ring)
    zero_a = IntMatrix.zeros(0, f.cols)
    zero_b_in = IntMatrix.zeros(f.rows, 0)
    zero_b = IntMatrix.zeros(0, f.rows)
    zero_c_in = IntMatrix.zeros(g.rows, 0)
    report = cohomology_exactness(f, zero_a, zero_b_in, zero_b, g, zero_c_in, ring)
    composite_zero = (g @ f).is_zero()
    if not composite_zero:
        return ExactnessReport(False, ring, False, "g o f != 0")
    return report
