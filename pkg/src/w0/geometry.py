"""From variety-level combinatorics to nerves, W_0 groups and theorem checks.

An :class:`SncConfiguration` lists the irreducible components of a variety
(or divisor) with normal-crossing-type intersections, the connected pieces
of every multi-fold intersection, and which piece of each facet intersection
contains a given piece. Its dual complex has one n-simplex per connected
piece of an (n+1)-fold intersection.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .sscomplex import (
    InvalidSimplicialSetError,
    SemisimplicialSet,
    SequencePosition,
    SimplicialMap,
    algebraic_cone,
    cohomology,
    cone_long_exact_sequence,
    validate,
    validate_map,
)
from .zlinalg import CohomologyGroup, Ring, ShapeError, W0Error, complex_cohomology

INTEGRAL_CAPTION = "nerve cohomology (= W_0 over Q; image in H^*(X,Z) may be smaller)"


class ConfigError(W0Error):
    """Structurally invalid configuration; ``path`` locates the problem."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class InconsistentContainmentError(ConfigError):
    pass


Key = tuple[int, ...]


@dataclass(frozen=True)
class Stratum:
    """One connected piece of an intersection X^S.

    ``faces[k]`` is the label of the piece of X^{S - S[k]} containing it; for
    two-fold intersections these are component names.
    """

    label: str
    faces: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(self.faces))


@dataclass(frozen=True)
class SncConfiguration:
    components: tuple[str, ...]
    strata: Mapping[Key, tuple[Stratum, ...]] = field(default_factory=dict)
    complete: bool = True

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(set(comps)) != len(comps):
            raise ConfigError("duplicate component names", "$.components")
        strata = {}
        for key, pieces in dict(self.strata).items():
            key = tuple(key)
            path = f"$.strata[{','.join(map(str, key))}]"
            if len(key) < 2 or list(key) != sorted(set(key)):
                raise ConfigError("stratum keys need at least two distinct increasing indices", path)
            if not all(0 <= i < len(comps) for i in key):
                raise ConfigError("stratum references an undefined component", path)
            pieces = tuple(pieces)
            if pieces:
                strata[key] = pieces
        object.__setattr__(self, "strata", dict(sorted(strata.items(), key=lambda kv: (len(kv[0]), kv[0]))))
        seen = set(comps)
        object.__setattr__(self, "_labels", {})
        for key, pieces in self.strata.items():
            for p in pieces:
                if p.label in seen:
                    raise ConfigError(f"label {p.label!r} is not unique", self._path(key))
                seen.add(p.label)
                self._labels[p.label] = key
        for key, pieces in self.strata.items():
            for p in pieces:
                path = self._path(key) + f"[{p.label}]"
                if len(p.faces) != len(key):
                    raise ConfigError(f"{len(p.faces)} facet entries, expected {len(key)}", path)
                for k, lab in enumerate(p.faces):
                    facet = key[:k] + key[k + 1:]
                    if lab not in self.pieces(facet):
                        raise ConfigError(
                            f"facet {self.key_name(facet)} has no piece {lab!r}", path + f".faces[{k}]")

    _labels: dict = field(default=None, init=False, repr=False, compare=False)

    def _path(self, key: Key) -> str:
        return f"$.strata[{self.key_name(key)!r}]"

    @classmethod
    def single(cls, name: str = "X") -> "SncConfiguration":
        return cls((name,))

    def key_name(self, key: Key) -> str:
        return ",".join(self.components[i] for i in key)

    def pieces(self, key: Key) -> tuple[str, ...]:
        """Labels of the connected pieces of X^key (a component counts as one piece)."""
        if len(key) == 1:
            return (self.components[key[0]],)
        return tuple(p.label for p in self.strata.get(tuple(key), ()))

    def stratum(self, label: str) -> Stratum:
        key = self._labels[label]
        return next(p for p in self.strata[key] if p.label == label)

    def key_of(self, label: str) -> Key:
        """Index set of the intersection a label (component or piece) belongs to."""
        if label in self._labels:
            return self._labels[label]
        return (self.components.index(label),)

    def has_label(self, label: str) -> bool:
        return label in self._labels or label in self.components

    def containing(self, label: str, dropped: int) -> str:
        """Piece containing ``label`` after removing component index ``dropped``."""
        key = self.key_of(label)
        return self.stratum(label).faces[key.index(dropped)]

    def labels_at(self, n: int) -> list[str]:
        if n == 0:
            return list(self.components)
        return [p.label for key, ps in self.strata.items() if len(key) == n + 1 for p in ps]


def reorder_components(cfg: SncConfiguration, order: Sequence[int]) -> SncConfiguration:
    """Same configuration with components listed as ``[cfg.components[i] for i in order]``."""
    new_pos = {old: new for new, old in enumerate(order)}
    strata = {}
    for key, pieces in cfg.strata.items():
        new_key = tuple(sorted(new_pos[i] for i in key))
        moved = []
        for p in pieces:
            faces = [None] * len(key)
            for k, old in enumerate(key):
                faces[new_key.index(new_pos[old])] = p.faces[k]
            moved.append(Stratum(p.label, tuple(faces)))
        strata[new_key] = tuple(moved)
    return SncConfiguration(tuple(cfg.components[i] for i in order), strata, cfg.complete)


def disjoint_union(parts: Sequence[SncConfiguration], prefixes: Sequence[str] | None = None) -> SncConfiguration:
    """Configuration whose components are those of all ``parts``, prefixed to stay unique."""
    prefixes = prefixes if prefixes is not None else [f"{k}." for k in range(len(parts))]
    comps: list[str] = []
    strata = {}
    for cfg, pre in zip(parts, prefixes):
        off = len(comps)
        comps += [pre + c for c in cfg.components]
        for key, pieces in cfg.strata.items():
            strata[tuple(off + i for i in key)] = tuple(
                Stratum(pre + p.label, tuple(pre + f for f in p.faces)) for p in pieces
            )
    return SncConfiguration(tuple(comps), strata, all(c.complete for c in parts))


# ---------------------------------------------------------------------------
# dual complexes


def _index(cfg: SncConfiguration) -> dict[str, tuple[int, int]]:
    """label -> (level, id) in the dual complex."""
    out = {c: (0, i) for i, c in enumerate(cfg.components)}
    counts: dict[int, int] = {}
    for key, pieces in cfg.strata.items():
        n = len(key) - 1
        for p in pieces:
            out[p.label] = (n, counts.get(n, 0))
            counts[n] = counts.get(n, 0) + 1
    return out


def dual_complex(cfg: SncConfiguration) -> SemisimplicialSet:
    """n-simplices = connected pieces of (n+1)-fold intersections."""
    index = _index(cfg)
    top = max((len(k) for k in cfg.strata), default=1 if cfg.components else 0)
    levels = [0] * top
    faces: dict[int, list] = {}
    labels: list[list[str]] = [[] for _ in range(top)]
    for lab, (n, _) in sorted(index.items(), key=lambda kv: kv[1]):
        levels[n] += 1
        labels[n].append(lab)
        if n:
            faces.setdefault(n, []).append(tuple(index[f][1] for f in cfg.stratum(lab).faces))
    S = SemisimplicialSet(tuple(levels), faces, tuple(map(tuple, labels)))
    report = validate(S)
    if not report.ok:
        v = next(v for v in report.violations if v.kind == "identity")
        lab = labels[v.n][v.simplex]
        key = cfg.key_of(lab)
        a, b = cfg.components[key[v.i]], cfg.components[key[v.j]]
        left = labels[v.n - 2][S.faces[v.n - 1][S.faces[v.n][v.simplex][v.j]][v.i]]
        right = labels[v.n - 2][S.faces[v.n - 1][S.faces[v.n][v.simplex][v.i]][v.j - 1]]
        raise InconsistentContainmentError(
            f"containment of {lab!r} is path dependent: removing {b} then {a} reaches {left!r}, "
            f"removing {a} then {b} reaches {right!r}",
            cfg._path(key),
        )
    return S


def kh_complete(S: SemisimplicialSet, ring: Ring | str = Ring.Z) -> list[CohomologyGroup]:
    """KH^i = W_0 H^i of a complete variety whose nerve is ``S``.

    Over Z this is the nerve cohomology (see ``INTEGRAL_CAPTION``).
    """
    return cohomology(S, ring)


# ---------------------------------------------------------------------------
# pairs


@dataclass(frozen=True)
class PairData:
    """Closed subvariety Z of X; ``inclusion`` sends labels of Z to labels of X."""

    ambient: SncConfiguration
    closed: SncConfiguration
    inclusion: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "inclusion", dict(self.inclusion))


def induced_map(p: PairData) -> SimplicialMap:
    source = dual_complex(p.closed)
    target = dual_complex(p.ambient)
    src_index = _index(p.closed)
    tgt_index = _index(p.ambient)
    maps: list[list[int]] = [[0] * k for k in source.levels]
    for lab, (n, s) in src_index.items():
        if lab not in p.inclusion:
            raise ConfigError(f"no image for {lab!r}", f"$.inclusion[{lab!r}]")
        img = p.inclusion[lab]
        if img not in tgt_index:
            raise ConfigError(f"{img!r} is not a component or stratum of the ambient", f"$.inclusion[{lab!r}]")
        m, t = tgt_index[img]
        if m != n:
            raise ConfigError(f"{lab!r} has level {n} but its image {img!r} has level {m}", f"$.inclusion[{lab!r}]")
        maps[n][s] = t
    for lab in p.inclusion:
        if lab not in src_index:
            raise ConfigError(f"{lab!r} is not a label of the closed subvariety", f"$.inclusion[{lab!r}]")
    f = SimplicialMap(source, target, tuple(map(tuple, maps)))
    report = validate_map(f)
    if not report.ok:
        raise InvalidSimplicialSetError(report, "inclusion (not a simplicial map)")
    return f


def khc_pair(p: PairData, ring: Ring | str = Ring.Z) -> list[CohomologyGroup]:
    """W_0 H_c^i(X - Z) as the cohomology of the algebraic cone."""
    return complex_cohomology(algebraic_cone(induced_map(p)), ring)


_TERM = {"cone": "KH_c^{i}(U)", "target": "KH^{i}(X)", "source": "KH^{i}(Z)"}


@dataclass(frozen=True)
class LesReport:
    positions: tuple[SequencePosition, ...]

    @property
    def exact(self) -> bool:
        return all(p.exact for p in self.positions)

    def rows(self) -> list[dict]:
        return [
            {
                "position": _TERM[p.term].format(i=p.degree),
                "exact_Q": p.over_q.exact,
                "exact_Z": p.over_z.exact,
                "defect": p.over_z.defect or p.over_q.defect,
            }
            for p in self.positions
        ]


def les_verify(p: PairData) -> LesReport:
    """Exactness of ... KH^{i-1}(Z) -> KH_c^i(U) -> KH^i(X) -> KH^i(Z) ... at every term."""
    return LesReport(tuple(cone_long_exact_sequence(induced_map(p))))


# ---------------------------------------------------------------------------
# products


def _product_label(c1: str, c2: str, T: Sequence[tuple[int, int]]) -> str:
    return f"{c1}×{c2}[{'+'.join(f'{i}.{j}' for i, j in T)}]"


def product_config(a: SncConfiguration, b: SncConfiguration) -> SncConfiguration:
    """Cover of X × Y by the products of components.

    For a set T of component pairs, X^T = X^{pr1 T} × Y^{pr2 T}, whose
    connected pieces are products of pieces.
    """
    nb = len(b.components)
    comps = tuple(f"{x}×{y}" for x in a.components for y in b.components)

    def name(T, c1, c2):
        if len(T) == 1:
            i, j = T[0]
            return comps[i * nb + j]
        return _product_label(c1, c2, T)

    def keys(cfg):
        ks = [(i,) for i in range(len(cfg.components))]
        return ks + list(cfg.strata)

    strata: dict = {}
    for p1 in keys(a):
        for p2 in keys(b):
            grid = [(i, j) for i in p1 for j in p2]
            for size in range(2, len(grid) + 1):
                for T in itertools.combinations(grid, size):
                    if {i for i, _ in T} != set(p1) or {j for _, j in T} != set(p2):
                        continue
                    key = tuple(i * nb + j for i, j in T)
                    pieces = []
                    for c1 in a.pieces(p1):
                        for c2 in b.pieces(p2):
                            faces = []
                            for k in range(len(T)):
                                rest = T[:k] + T[k + 1:]
                                i, j = T[k]
                                d1 = c1 if any(x == i for x, _ in rest) else a.containing(c1, i)
                                d2 = c2 if any(y == j for _, y in rest) else b.containing(c2, j)
                                faces.append(name(rest, d1, d2))
                            pieces.append(Stratum(name(T, c1, c2), tuple(faces)))
                    strata[key] = tuple(pieces)
    return SncConfiguration(comps, strata, a.complete and b.complete)


def rational_ranks(S: SemisimplicialSet) -> list[int]:
    return [g.free_rank for g in cohomology(S, Ring.Q)]


def convolve(x: Sequence[int], y: Sequence[int]) -> list[int]:
    out = [0] * max(len(x) + len(y) - 1, 0)
    for j, u in enumerate(x):
        for k, v in enumerate(y):
            out[j + k] += u * v
    return out


def _pad(xs, n):
    return list(xs) + [0] * (n - len(xs))


@dataclass(frozen=True)
class DegreeVerdict:
    degree: int
    computed: int
    predicted: int | None
    rule: str = ""

    @property
    def passed(self) -> bool:
        return self.predicted is None or self.computed == self.predicted

    def to_json(self) -> dict:
        return {"degree": self.degree, "computed": self.computed, "predicted": self.predicted,
                "rule": self.rule, "passed": self.passed}


@dataclass(frozen=True)
class VerdictReport:
    rows: tuple[DegreeVerdict, ...]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def kunneth_verify(a: SncConfiguration, b: SncConfiguration) -> VerdictReport:
    """Rational ranks of the product configuration against the convolution of factor ranks."""
    ra = rational_ranks(dual_complex(a))
    rb = rational_ranks(dual_complex(b))
    rp = rational_ranks(dual_complex(product_config(a, b)))
    pred = convolve(ra, rb)
    n = max(len(rp), len(pred))
    rows = tuple(
        DegreeVerdict(i, c, p, "sum_{j+k=i} b_j(X) b_k(Y)")
        for i, (c, p) in enumerate(zip(_pad(rp, n), _pad(pred, n)))
    )
    return VerdictReport(rows)


# ---------------------------------------------------------------------------
# isolated singularities


@dataclass(frozen=True)
class ResolutionData:
    """Resolution X~ -> X of isolated singularities with SNC exceptional divisor E.

    ``exceptional`` lists one component per connected piece of each E^i.
    ``image`` sends exceptional components (and optionally strata) to
    singular points; strata images are otherwise inherited from their
    components. ``ambient_of`` says which component of X~ contains each
    exceptional component and may be omitted when X~ is connected.
    """

    exceptional: SncConfiguration
    singular_points: tuple[str, ...]
    image: Mapping[str, str]
    ambient_components: tuple[str, ...] = ("X~",)
    ambient_of: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        E = self.exceptional
        pts = tuple(self.singular_points)
        amb = tuple(self.ambient_components)
        object.__setattr__(self, "singular_points", pts)
        object.__setattr__(self, "ambient_components", amb)
        if len(set(pts)) != len(pts):
            raise ConfigError("duplicate singular point names", "$.singular_points")
        if len(set(amb)) != len(amb):
            raise ConfigError("duplicate ambient component names", "$.ambient_components")
        image = dict(self.image)
        for lab, s in image.items():
            if not E.has_label(lab):
                raise ConfigError(f"{lab!r} is not an exceptional component or stratum", f"$.image[{lab!r}]")
            if s not in pts:
                raise ConfigError(f"{s!r} is not a singular point", f"$.image[{lab!r}]")
        for c in E.components:
            if c not in image:
                raise ConfigError(f"exceptional component {c!r} has no image point", f"$.image[{c!r}]")
        for key, pieces in E.strata.items():
            for p in pieces:
                over = {image[E.components[i]] for i in key}
                path = f"$.image[{p.label!r}]"
                if len(over) > 1:
                    raise ConfigError(
                        f"stratum {p.label!r} lies on components over different points {sorted(over)}", path)
                (s,) = over
                if image.setdefault(p.label, s) != s:
                    raise ConfigError(f"stratum {p.label!r} maps to {image[p.label]!r} but its components map to {s!r}", path)
        object.__setattr__(self, "image", image)
        hit = {image[c] for c in E.components}
        for s in pts:
            if s not in hit:
                raise ConfigError(f"singular point {s!r} has empty exceptional fibre", "$.singular_points")
        ambient_of = dict(self.ambient_of)
        for c in E.components:
            if c not in ambient_of:
                if len(amb) != 1:
                    raise ConfigError(f"no ambient component given for {c!r}", f"$.ambient_of[{c!r}]")
                ambient_of[c] = amb[0]
            if ambient_of[c] not in amb:
                raise ConfigError(f"{ambient_of[c]!r} is not an ambient component", f"$.ambient_of[{c!r}]")
        for c in ambient_of:
            if c not in E.components:
                raise ConfigError(f"{c!r} is not an exceptional component", f"$.ambient_of[{c!r}]")
        object.__setattr__(self, "ambient_of", ambient_of)

    def point_chain(self) -> list[list[str]]:
        """S_0 ⊇ S_1 ⊇ ...: S_k = images of (k+1)-fold intersections."""
        E = self.exceptional
        chain = [list(self.singular_points)]
        n = 1
        while True:
            over = {self.image[lab] for lab in E.labels_at(n)}
            if not over:
                return chain
            chain.append([s for s in self.singular_points if s in over])
            n += 1


def resolution_nerve(res: ResolutionData, pad: bool = True) -> SemisimplicialSet:
    """Nerve of the simplicial resolution ... E_1 ⊔ S_2 ⇉ E_0 ⊔ S_1 ⇉ X~ ⊔ S_0.

    Level n is π_0(E_{n-1}) ⊔ S_n. On an n-fold piece the first n faces are
    containments (into X~ for n = 1) and the last face is the image point in
    S_{n-1}; on S_n all faces are inclusions.

    With ``pad`` (the default) every point whose chain S_0 ∋ s, ..., S_L ∋ s
    ends at odd L is repeated once more at level L+1. The constant point
    truncated at an odd level is a circle, not a point, and without padding
    the nerve acquires spurious classes whenever exceptional curves meet
    (two curves crossing over one point already give H^1 = Z).
    """
    E = res.exceptional
    dE = dual_complex(E)
    chain = res.point_chain()
    if pad:
        for s in res.singular_points:
            last = max(k for k, level in enumerate(chain) if s in level)
            if last % 2:
                if last + 1 == len(chain):
                    chain.append([])
                chain[last + 1] = [p for p in res.singular_points if p in chain[last + 1] or p == s]
    top = max(len(chain), dE.dim + 2)
    chain += [[] for _ in range(top - len(chain))]

    amb = list(res.ambient_components)
    levels = []
    labels = []
    for n in range(top):
        e_part = [] if n == 0 else [dE.label(n - 1, c) for c in range(dE.count(n - 1))]
        base = amb if n == 0 else e_part
        levels.append(len(base) + len(chain[n]))
        labels.append(tuple(base) + tuple(f"{s}@{n}" if n else s for s in chain[n]))

    def point_id(n, s):
        base = len(amb) if n == 0 else dE.count(n - 1)
        return base + chain[n].index(s)

    faces = {}
    for n in range(1, top):
        level = []
        for c in range(dE.count(n - 1)):
            lab = dE.label(n - 1, c)
            if n == 1:
                head = (amb.index(res.ambient_of[lab]),)
            else:
                head = dE.faces[n - 1][c]
            level.append(tuple(head) + (point_id(n - 1, res.image[lab]),))
        for s in chain[n]:
            level.append((point_id(n - 1, s),) * (n + 1))
        faces[n] = tuple(level)
    S = SemisimplicialSet(tuple(levels), faces, tuple(labels))
    report = validate(S)
    if not report.ok:
        raise InvalidSimplicialSetError(report, "resolution nerve (ambient assignment inconsistent with strata)")
    return S


def betti_bound_report(res: ResolutionData) -> VerdictReport:
    """dim KH^i(X) against the Betti numbers of the exceptional dual complex.

    Isolated singularities: dim KH^i(X) = b_{i-1}(Σ_E) for i >= 2 and
    dim KH^1(X) = b_0(Σ_E) - #S. The i = 1 formula assumes X~ and X have the
    same number of connected components; otherwise the Mayer-Vietoris
    correction b_0(X) - b_0(X~) is added and noted.
    """
    kh = rational_ranks(resolution_nerve(res))
    bE = rational_ranks(dual_complex(res.exceptional)) if res.exceptional.components else []
    n_pts = len(res.singular_points)
    b0X = kh[0] if kh else 0
    b0T = len(res.ambient_components)
    n = max(len(kh), len(bE) + 1, 2)
    kh, bE = _pad(kh, n), _pad(bE, n)
    rows = [DegreeVerdict(0, kh[0], None, "not constrained")]
    notes = []
    corr = b0X - b0T
    if corr:
        notes.append(f"b_0(X~) = {b0T} differs from b_0(X) = {b0X}; degree 1 uses the Mayer-Vietoris correction")
        rows.append(DegreeVerdict(1, kh[1], bE[0] - n_pts + corr, "b_0(Σ_E) - #S + b_0(X) - b_0(X~)"))
    else:
        rows.append(DegreeVerdict(1, kh[1], bE[0] - n_pts, "b_0(Σ_E) - #S"))
    for i in range(2, n):
        rows.append(DegreeVerdict(i, kh[i], bE[i - 1], f"b_{i - 1}(Σ_E)"))
    return VerdictReport(tuple(rows), tuple(notes))


@dataclass(frozen=True)
class BoundVerdict:
    degree: int
    kh: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.kh <= self.bound

    def to_json(self) -> dict:
        return {"degree": self.degree, "kh": self.kh, "bound": self.bound, "passed": self.passed}


def bound_check(kh_dims: Sequence[int], h_struct_dims: Sequence[int]) -> VerdictReport:
    """dim KH^i(X, C) <= dim H^i(X, O_X) (or the fibre of R^i f_* O_X), degree by degree.

    The coherent dimensions come from outside; a failing degree means the
    two inputs cannot both be right.
    """
    if len(kh_dims) != len(h_struct_dims):
        raise ShapeError(f"{len(kh_dims)} KH dimensions but {len(h_struct_dims)} coherent dimensions")
    if any(int(x) < 0 for x in list(kh_dims) + list(h_struct_dims)):
        raise W0Error("dimensions must be non-negative")
    return VerdictReport(tuple(BoundVerdict(i, int(k), int(h)) for i, (k, h) in enumerate(zip(kh_dims, h_struct_dims))))
