"""Hypothesis strategies for matrices, semisimplicial sets, configurations, maps and pairs."""
import itertools

from hypothesis import strategies as st

from w0.geometry import PairData, ResolutionData, SncConfiguration, Stratum, disjoint_union
from w0.sscomplex import SemisimplicialSet, SimplicialMap
from w0.zlinalg import IntMatrix


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5, lo=-9, hi=9):
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(lo, hi), min_size=m * n, max_size=m * n))
    return IntMatrix.from_entries(m, n, entries)


@st.composite
def low_rank_matrices(draw, max_dim=5):
    """Products of two small matrices, so rank deficiency and torsion are common."""
    m = draw(st.integers(0, max_dim))
    k = draw(st.integers(0, 3))
    n = draw(st.integers(0, max_dim))
    a = draw(st.lists(st.integers(-4, 4), min_size=m * k, max_size=m * k))
    b = draw(st.lists(st.integers(-4, 4), min_size=k * n, max_size=k * n))
    return IntMatrix.from_entries(m, k, a) @ IntMatrix.from_entries(k, n, b)


@st.composite
def semisimplicial_sets(draw, max_dim=3, max_per_level=5):
    """Random valid semisimplicial sets, built level by level.

    Each new n-simplex picks d_0, ..., d_n in turn among the (n-1)-simplices
    compatible with the faces already chosen; dead ends are discarded.
    """
    levels = [draw(st.integers(0, max_per_level))]
    faces = {}
    if not levels[0]:
        return SemisimplicialSet(())
    top = draw(st.integers(0, max_dim))
    for n in range(1, top + 1):
        below = faces.get(n - 1)
        want = draw(st.integers(0, max_per_level))
        level = []
        for _ in range(want):
            chosen = []
            for k in range(n + 1):
                cands = [
                    c for c in range(levels[n - 1])
                    if n == 1 or all(below[c][i] == below[chosen[i]][k - 1] for i in range(k))
                ]
                if not cands:
                    break
                chosen.append(draw(st.sampled_from(cands)))
            if len(chosen) == n + 1:
                level.append(tuple(chosen))
        if not level:
            break
        levels.append(len(level))
        faces[n] = tuple(level)
    return SemisimplicialSet(tuple(levels), faces)


def relabel_perms(S):
    return st.tuples(*[st.permutations(range(k)) for k in S.levels])


@st.composite
def snc_configurations(draw, max_components=4, max_pieces=2, min_components=1, prefix=""):
    m = draw(st.integers(min_components, max_components))
    comps = tuple(f"{prefix}C{i}" for i in range(m))
    strata: dict = {}

    def pieces(key):
        if len(key) == 1:
            return [comps[key[0]]]
        return [p.label for p in strata.get(key, ())]

    counter = itertools.count()
    for size in range(2, m + 1):
        for key in itertools.combinations(range(m), size):
            facets = [key[:k] + key[k + 1:] for k in range(size)]
            combos = []
            for faces in itertools.product(*(pieces(f) for f in facets)):
                if size >= 4 and not _consistent(strata, key, faces):
                    continue
                combos.append(faces)
            if not combos:
                continue
            cap = max_pieces if size == 2 else min(max_pieces, 1 if size >= 4 else max_pieces)
            count = draw(st.integers(0, cap))
            chosen = [draw(st.sampled_from(combos)) for _ in range(count)]
            if chosen:
                strata[key] = tuple(Stratum(f"{prefix}p{next(counter)}", f) for f in chosen)
    return SncConfiguration(comps, strata)


def _consistent(strata, key, faces):
    """Do the chosen facet pieces agree on every codimension-two facet?"""
    lookup = {p.label: p for ps in strata.values() for p in ps}
    n = len(key) - 1
    for i, j in itertools.combinations(range(n + 1), 2):
        # d_i d_j = d_{j-1} d_i
        if lookup[faces[j]].faces[i] != lookup[faces[i]].faces[j - 1]:
            return False
    return True


@st.composite
def simplicial_maps(draw):
    """Either an inclusion of a random sub-complex or a random face-compatible map."""
    T = draw(semisimplicial_sets(max_dim=2, max_per_level=4))
    if draw(st.booleans()):
        return _subcomplex_inclusion(draw, T)
    S = draw(semisimplicial_sets(max_dim=2, max_per_level=4))
    return _greedy_map(draw, S, T)


def _subcomplex_inclusion(draw, T):
    keep = []
    for n, k in enumerate(T.levels):
        ok = [s for s in range(k) if n == 0 or all(f in keep[n - 1] for f in T.faces[n][s])]
        chosen = [s for s in ok if draw(st.booleans())]
        keep.append(chosen)
    return _restrict(T, keep)


def _restrict(T, keep):
    keep = [k for k in keep]
    while keep and not keep[-1]:
        keep.pop()
    idx = [{s: i for i, s in enumerate(level)} for level in keep]
    faces = {n: tuple(tuple(idx[n - 1][f] for f in T.faces[n][s]) for s in keep[n]) for n in range(1, len(keep))}
    S = SemisimplicialSet(tuple(len(k) for k in keep), faces)
    return SimplicialMap(S, T, tuple(tuple(level) for level in keep))


def _greedy_map(draw, S, T):
    images = []
    keep = []
    for n, k in enumerate(S.levels):
        lev_keep, lev_img = [], []
        for s in range(k):
            cands = list(range(T.count(0))) if n == 0 else _compatible(S, T, n, s, keep, images)
            if cands:
                lev_keep.append(s)
                lev_img.append(draw(st.sampled_from(cands)))
        keep.append(lev_keep)
        images.append(lev_img)
    while keep and not keep[-1]:
        keep.pop()
        images.pop()
    idx = [{s: i for i, s in enumerate(level)} for level in keep]
    faces = {n: tuple(tuple(idx[n - 1][f] for f in S.faces[n][s]) for s in keep[n]) for n in range(1, len(keep))}
    src = SemisimplicialSet(tuple(len(k) for k in keep), faces)
    return SimplicialMap(src, T, tuple(tuple(i) for i in images))


def _compatible(S, T, n, s, keep, images):
    """Target n-simplices whose faces are the images of the faces of s (none if a face was dropped)."""
    fimg = []
    for f in S.faces[n][s]:
        if f not in keep[n - 1]:
            return []
        fimg.append(images[n - 1][keep[n - 1].index(f)])
    return [t for t in range(T.count(n)) if T.faces[n][t] == tuple(fimg)]


@st.composite
def pairs(draw):
    """(X, Z) with Z a random closed sub-configuration of X, or points collapsing into a component."""
    X = draw(snc_configurations(max_components=4, max_pieces=2))
    if draw(st.integers(0, 4)) == 0:
        k = draw(st.integers(0, 3))
        target = draw(st.sampled_from(X.components))
        Z = SncConfiguration(tuple(f"z{i}" for i in range(k)))
        return PairData(X, Z, {f"z{i}": target for i in range(k)})
    comps = [i for i in range(len(X.components)) if draw(st.booleans())]
    new = {old: i for i, old in enumerate(comps)}
    kept_labels = {X.components[i] for i in comps}
    strata = {}
    for key, pieces in X.strata.items():
        if not all(i in new for i in key):
            continue
        keep = tuple(p for p in pieces if all(f in kept_labels for f in p.faces) and draw(st.booleans()))
        if keep:
            strata[tuple(new[i] for i in key)] = keep
            kept_labels.update(p.label for p in keep)
    Z = SncConfiguration(tuple(X.components[i] for i in comps), strata)
    inclusion = {lab: lab for lab in kept_labels}
    return PairData(X, Z, inclusion)


@st.composite
def resolutions(draw):
    """Isolated singular points, each with its own exceptional configuration."""
    n_pts = draw(st.integers(0, 3))
    parts = [draw(snc_configurations(max_components=3, max_pieces=2)) for _ in range(n_pts)]
    E = disjoint_union(parts, [f"s{k}." for k in range(n_pts)])
    pts = tuple(f"s{k}" for k in range(n_pts))
    image = {c: c.split(".")[0] for c in E.components}
    amb = tuple(f"X{i}" for i in range(draw(st.integers(1, 3))))
    # components joined by an intersection must lie in one component of X~
    parent = {c: c for c in E.components}

    def find(c):
        while parent[c] != c:
            c = parent[c]
        return c

    for key in E.strata:
        for i in key[1:]:
            parent[find(E.components[i])] = find(E.components[key[0]])
    roots = sorted({find(c) for c in E.components})
    where = {r: draw(st.sampled_from(amb)) for r in roots}
    ambient_of = {c: where[find(c)] for c in E.components}
    return ResolutionData(E, pts, image, amb, ambient_of)
