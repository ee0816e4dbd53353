"""Semisimplicial sets, their cochain complexes, maps and mapping cones.

A semisimplicial set has levels of n-simplices, identified by integers
``0..levels[n]-1``, and face maps ``d_0, ..., d_n`` from level n to level
n-1 that satisfy ``d_i d_j = d_{j-1} d_i`` for ``i < j``. There are no
degeneracies.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .zlinalg import (
    CochainComplex,
    CohomologyGroup,
    ExactnessReport,
    IntMatrix,
    Ring,
    W0Error,
    cohomology_exactness,
    complex_cohomology,
)


@dataclass(frozen=True)
class SemisimplicialSet:
    """Finite semisimplicial set.

    ``faces[n][s]`` is the tuple ``(d_0 s, ..., d_n s)`` for every n >= 1.
    Construction never validates; call :func:`validate`.
    """

    levels: tuple[int, ...]
    faces: Mapping[int, tuple[tuple[int, ...], ...]] = field(default_factory=dict)
    labels: tuple[tuple[str | None, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(int(k) for k in self.levels))
        faces = {int(n): tuple(tuple(int(x) for x in fs) for fs in level) for n, level in dict(self.faces).items()}
        object.__setattr__(self, "faces", faces)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(tuple(level) for level in self.labels))

    @classmethod
    def empty(cls) -> "SemisimplicialSet":
        return cls(())

    @classmethod
    def from_simplices(cls, facets: Sequence[Sequence]) -> "SemisimplicialSet":
        """Ordered simplicial complex generated by ``facets`` (vertex order = sort order)."""
        simplices: set = set()
        for f in facets:
            f = tuple(sorted(f))
            for k in range(1, len(f) + 1):
                simplices.update(itertools.combinations(f, k))
        if not simplices:
            return cls.empty()
        top = max(len(s) for s in simplices)
        by_level = [sorted(s for s in simplices if len(s) == n + 1) for n in range(top)]
        index = [{s: i for i, s in enumerate(level)} for level in by_level]
        faces = {
            n: tuple(tuple(index[n - 1][s[:k] + s[k + 1:]] for k in range(n + 1)) for s in by_level[n])
            for n in range(1, top)
        }
        labels = tuple(tuple("".join(map(str, s)) if n == 0 else ",".join(map(str, s)) for s in level)
                       for n, level in enumerate(by_level))
        return cls(tuple(len(level) for level in by_level), faces, labels)

    @property
    def dim(self) -> int:
        """Top dimension with a simplex, -1 when empty."""
        return max((n for n, k in enumerate(self.levels) if k), default=-1)

    def count(self, n: int) -> int:
        return self.levels[n] if 0 <= n < len(self.levels) else 0

    def face(self, n: int, s: int, k: int) -> int:
        return self.faces[n][s][k]

    def label(self, n: int, s: int) -> str:
        if self.labels is not None and n < len(self.labels) and s < len(self.labels[n]) and self.labels[n][s]:
            return str(self.labels[n][s])
        return f"{n}:{s}"


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str  # "arity" | "range" | "extra" | "identity" | "level" | "commute"
    n: int
    simplex: int | None = None
    i: int | None = None
    j: int | None = None
    detail: str = ""

    def __str__(self):
        where = f"n={self.n}"
        if self.simplex is not None:
            where += f", σ={self.simplex}"
        if self.i is not None:
            where += f", i={self.i}"
        if self.j is not None:
            where += f", j={self.j}"
        return f"{self.kind} ({where}): {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "\n".join(map(str, self.violations))


class InvalidSimplicialSetError(W0Error):
    def __init__(self, report: ValidationReport, what: str = "semisimplicial set"):
        super().__init__(f"invalid {what}:\n{report}")
        self.report = report


def validate(S: SemisimplicialSet) -> ValidationReport:
    """Check totality of every face map and all simplicial identities."""
    out: list[Violation] = []
    top = len(S.levels)
    for n, k in enumerate(S.levels):
        if k < 0:
            out.append(Violation("arity", n, detail=f"negative simplex count {k}"))
    for n in sorted(S.faces):
        if not 1 <= n < top:
            out.append(Violation("extra", n, detail="face data for a level that does not exist"))
    shaped = set()
    for n in range(1, top):
        level = S.faces.get(n, ())
        if len(level) != S.levels[n]:
            out.append(Violation("arity", n, detail=f"{len(level)} face tuples for {S.levels[n]} simplices"))
            continue
        good = True
        for s, fs in enumerate(level):
            if len(fs) != n + 1:
                out.append(Violation("arity", n, s, detail=f"{len(fs)} faces, expected {n + 1}"))
                good = False
                continue
            for k, f in enumerate(fs):
                if not 0 <= f < S.levels[n - 1]:
                    out.append(Violation("range", n, s, k, detail=f"d_{k} = {f} outside level {n - 1}"))
                    good = False
        if good:
            shaped.add(n)
    for n in range(2, top):
        if n not in shaped or n - 1 not in shaped:
            continue
        below = S.faces[n - 1]
        for s, fs in enumerate(S.faces[n]):
            for i, j in itertools.combinations(range(n + 1), 2):
                left = below[fs[j]][i]
                right = below[fs[i]][j - 1]
                if left != right:
                    out.append(Violation(
                        "identity", n, s, i, j,
                        f"d_{i} d_{j} σ = {left} but d_{j - 1} d_{i} σ = {right}",
                    ))
    return ValidationReport(tuple(out))


def require_valid(S: SemisimplicialSet) -> None:
    report = validate(S)
    if not report.ok:
        raise InvalidSimplicialSetError(report)


# ---------------------------------------------------------------------------
# cochains


def coboundary(S: SemisimplicialSet, n: int) -> IntMatrix:
    """d^n: C^n -> C^{n+1}, (d phi)(σ) = sum_k (-1)^k phi(d_k σ)."""
    rows, cols = S.count(n + 1), S.count(n)
    vals: dict = {}
    for t, fs in enumerate(S.faces.get(n + 1, ()) if rows else ()):
        for k, f in enumerate(fs):
            key = (t, f)
            vals[key] = vals.get(key, 0) + (-1) ** k
    return IntMatrix.from_dict(rows, cols, vals)


def cochain_complex(S: SemisimplicialSet) -> CochainComplex:
    require_valid(S)
    top = S.dim + 1
    dims = tuple(S.count(n) for n in range(top))
    C = CochainComplex(dims, tuple(coboundary(S, n) for n in range(top - 1)))
    C.check()
    return C


def cohomology(S: SemisimplicialSet, ring: Ring | str = Ring.Z) -> list[CohomologyGroup]:
    """Cohomology in degrees ``0..dim``; the empty set gives an empty list."""
    return complex_cohomology(cochain_complex(S), ring)


def euler_characteristic(S: SemisimplicialSet) -> int:
    return sum((-1) ** n * k for n, k in enumerate(S.levels))


def relabel(S: SemisimplicialSet, perms: Sequence[Sequence[int]]) -> SemisimplicialSet:
    """Rename simplex ids: ``perms[n][old] = new``."""
    faces = {}
    for n, level in S.faces.items():
        new = [None] * len(level)
        for s, fs in enumerate(level):
            new[perms[n][s]] = tuple(perms[n - 1][f] for f in fs)
        faces[n] = tuple(new)
    labels = None
    if S.labels is not None:
        labels = []
        for n, level in enumerate(S.labels):
            new = [None] * len(level)
            for s, lab in enumerate(level):
                new[perms[n][s]] = lab
            labels.append(tuple(new))
    return SemisimplicialSet(S.levels, faces, labels)


# ---------------------------------------------------------------------------
# maps and cones


@dataclass(frozen=True)
class SimplicialMap:
    """``maps[n][s]`` is the image in ``target`` of the n-simplex ``s`` of ``source``."""

    source: SemisimplicialSet
    target: SemisimplicialSet
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(tuple(int(x) for x in m) for m in self.maps))

    @classmethod
    def identity(cls, S: SemisimplicialSet) -> "SimplicialMap":
        return cls(S, S, tuple(tuple(range(k)) for k in S.levels))

    def image(self, n: int, s: int) -> int:
        return self.maps[n][s]


def validate_map(f: SimplicialMap) -> ValidationReport:
    out = list(validate(f.source).violations) + list(validate(f.target).violations)
    if out:
        return ValidationReport(tuple(out))
    S, T = f.source, f.target
    for n, k in enumerate(S.levels):
        if not k:
            continue
        m = f.maps[n] if n < len(f.maps) else ()
        if len(m) != k:
            out.append(Violation("arity", n, detail=f"map defined on {len(m)} of {k} simplices"))
            continue
        for s, t in enumerate(m):
            if not 0 <= t < T.count(n):
                out.append(Violation("range", n, s, detail=f"image {t} outside target level {n}"))
    if out:
        return ValidationReport(tuple(out))
    for n in range(1, len(S.levels)):
        for s in range(S.levels[n]):
            t = f.maps[n][s]
            for k in range(n + 1):
                a = f.maps[n - 1][S.faces[n][s][k]]
                b = T.faces[n][t][k]
                if a != b:
                    out.append(Violation("commute", n, s, k, detail=f"f(d_{k} σ) = {a} but d_{k} f(σ) = {b}"))
    return ValidationReport(tuple(out))


def pullback(f: SimplicialMap, n: int) -> IntMatrix:
    """f^*: C^n(target) -> C^n(source)."""
    rows, cols = f.source.count(n), f.target.count(n)
    return IntMatrix.from_dict(rows, cols, {(s, t): 1 for s, t in enumerate(f.maps[n])} if rows else {})


def _cone_degrees(f: SimplicialMap) -> int:
    return max(f.target.dim + 1, f.source.dim + 2)


def algebraic_cone(f: SimplicialMap) -> CochainComplex:
    """Mapping cone of f^*: Cone^n = C^n(target) ⊕ C^{n-1}(source).

    D(b, a) = (d b, f^* b - d a); its cohomology is H^*(target, source).
    """
    report = validate_map(f)
    if not report.ok:
        raise InvalidSimplicialSetError(report, "simplicial map")
    T, S = f.target, f.source
    N = _cone_degrees(f)
    dims = tuple(T.count(n) + S.count(n - 1) for n in range(N))
    diffs = []
    for n in range(N - 1):
        tn, tn1, sn, sn_1 = T.count(n), T.count(n + 1), S.count(n), S.count(n - 1)
        vals: dict = {}
        for i, j, v in coboundary(T, n).items():
            vals[(i, j)] = v
        for i, j, v in pullback(f, n).items():
            vals[(tn1 + i, j)] = v
        if n >= 1:
            for i, j, v in coboundary(S, n - 1).items():
                vals[(tn1 + i, tn + j)] = -v
        diffs.append(IntMatrix.from_dict(tn1 + sn, tn + sn_1, vals))
    C = CochainComplex(dims, tuple(diffs))
    C.check()
    return C


@dataclass(frozen=True)
class SequencePosition:
    """Exactness verdicts at one term of the long exact sequence."""

    degree: int
    term: str  # "cone" | "target" | "source"
    over_q: ExactnessReport
    over_z: ExactnessReport

    @property
    def exact(self) -> bool:
        return self.over_q.exact and self.over_z.exact

    @property
    def name(self) -> str:
        return f"H^{self.degree}({self.term})"


def cone_long_exact_sequence(f: SimplicialMap) -> list[SequencePosition]:
    """Check exactness of

        ... -> H^{i-1}(source) -> H^i(cone) -> H^i(target) -> H^i(source) -> H^{i+1}(cone) -> ...

    at every term, over Q and over Z.
    """
    T, S = f.target, f.source
    cone = algebraic_cone(f)
    CT = cochain_complex(T)
    CS = cochain_complex(S)
    N = len(cone.dims)

    def dT(n):
        return CT.d(n) if n >= 0 else IntMatrix.zeros(T.count(0), 0)

    def dS(n):
        return CS.d(n) if n >= 0 else IntMatrix.zeros(S.count(0), 0)

    def dC(n):
        return cone.d(n) if n >= 0 else IntMatrix.zeros(cone.dim_at(0), 0)

    def incl(i):  # C^{i-1}(S) -> Cone^i
        t = T.count(i)
        return IntMatrix.from_dict(cone.dim_at(i), S.count(i - 1), {(t + a, a): 1 for a in range(S.count(i - 1))})

    def proj(i):  # Cone^i -> C^i(T)
        return IntMatrix.from_dict(T.count(i), cone.dim_at(i), {(b, b): 1 for b in range(T.count(i))})

    def fstar(i):
        if i < len(f.maps):
            return pullback(f, i)
        return IntMatrix.zeros(S.count(i), T.count(i))

    def both(*args):
        return cohomology_exactness(*args, Ring.Q), cohomology_exactness(*args, Ring.Z)

    out = []
    for i in range(N):
        q, z = both(incl(i), dS(i - 1), dC(i - 1), dC(i), proj(i), dT(i - 1))
        out.append(SequencePosition(i, "cone", q, z))
        q, z = both(proj(i), dC(i), dT(i - 1), dT(i), fstar(i), dS(i - 1))
        out.append(SequencePosition(i, "target", q, z))
        q, z = both(fstar(i), dT(i), dS(i - 1), dS(i), incl(i + 1), dC(i))
        out.append(SequencePosition(i, "source", q, z))
    return out
