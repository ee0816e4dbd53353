"""Standard small examples: curves, divisors, singular points and pairs."""
from __future__ import annotations

import itertools

from .geometry import PairData, ResolutionData, SncConfiguration, Stratum
from .sscomplex import SemisimplicialSet

# minimal 6-vertex triangulation of the real projective plane
RP2_TRIANGLES = [
    (1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
    (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6),
]


def point() -> SemisimplicialSet:
    return SemisimplicialSet((1,), {}, (("pt",),))


def cycle_graph(n: int) -> SemisimplicialSet:
    """n vertices, edges (i, i+1 mod n) with d_0 = larger endpoint."""
    return SemisimplicialSet.from_simplices([(i, (i + 1) % n) for i in range(n)])


def boundary_simplex(k: int) -> SemisimplicialSet:
    return SemisimplicialSet.from_simplices(list(itertools.combinations(range(k + 1), k)))


def rp2() -> SemisimplicialSet:
    return SemisimplicialSet.from_simplices(RP2_TRIANGLES)


def banana_sset() -> SemisimplicialSet:
    return SemisimplicialSet((2, 2), {1: ((1, 0), (1, 0))}, (("A", "B"), ("p", "q")))


# ---------------------------------------------------------------------------
# configurations


def point_config(name: str = "X") -> SncConfiguration:
    return SncConfiguration((name,))


def banana() -> SncConfiguration:
    """Two smooth curves meeting transversally in two points."""
    return SncConfiguration(("A", "B"), {(0, 1): (Stratum("p", ("B", "A")), Stratum("q", ("B", "A")))})


def cycle_config(n: int) -> SncConfiguration:
    """I_n: a cycle of n >= 3 rational curves, consecutive ones meeting once."""
    if n < 3:
        raise ValueError("cycle_config needs n >= 3 (use banana() for n = 2)")
    comps = tuple(f"C{i}" for i in range(n))
    strata = {}
    for i in range(n):
        a, b = sorted((i, (i + 1) % n))
        strata[(a, b)] = (Stratum(f"x{a}{b}" if n <= 10 else f"x{a}_{b}", (comps[b], comps[a])),)
    return SncConfiguration(comps, strata)


def simplex_config(m: int, top: int | None = None) -> SncConfiguration:
    """m components; every k-fold intersection (k <= top) nonempty and connected."""
    top = m if top is None else top
    comps = tuple(f"H{i}" for i in range(m))
    strata = {}

    def name(key):
        return comps[key[0]] if len(key) == 1 else "p" + "".join(map(str, key))

    for k in range(2, top + 1):
        for key in itertools.combinations(range(m), k):
            faces = tuple(name(key[:j] + key[j + 1:]) for j in range(k))
            strata[key] = (Stratum(name(key), faces),)
    return SncConfiguration(comps, strata)


def tetrahedron() -> SncConfiguration:
    """Four coordinate planes: all pairs and triples meet, the 4-fold is empty."""
    return simplex_config(4, top=3)


# ---------------------------------------------------------------------------
# isolated singularities


def nodal_cubic() -> ResolutionData:
    """Normalization P^1 -> nodal cubic; the node has two preimages."""
    E = SncConfiguration(("p", "q"))
    return ResolutionData(E, ("s",), {"p": "s", "q": "s"}, ("P1",))


def two_nodes() -> ResolutionData:
    """An irreducible curve with two nodes."""
    E = SncConfiguration(("p1", "q1", "p2", "q2"))
    img = {"p1": "s1", "q1": "s1", "p2": "s2", "q2": "s2"}
    return ResolutionData(E, ("s1", "s2"), img, ("C~",))


def curve_cone() -> ResolutionData:
    """Cone over a smooth curve: blow-up of the vertex, E irreducible."""
    return ResolutionData(SncConfiguration(("E",)), ("v",), {"E": "v"}, ("X~",))


def chain_resolution(n: int) -> ResolutionData:
    """A_n surface singularity: a chain of n exceptional curves."""
    comps = tuple(f"E{i}" for i in range(n))
    strata = {(i, i + 1): (Stratum(f"e{i}{i + 1}", (comps[i + 1], comps[i])),) for i in range(n - 1)}
    E = SncConfiguration(comps, strata)
    return ResolutionData(E, ("s",), {c: "s" for c in comps}, ("X~",))


def cusp_resolution(n: int) -> ResolutionData:
    """Cusp singularity: the exceptional divisor is a cycle of n >= 3 curves."""
    E = cycle_config(n)
    return ResolutionData(E, ("s",), {c: "s" for c in E.components}, ("X~",))


def smooth(n_components: int = 1) -> ResolutionData:
    return ResolutionData(SncConfiguration(()), (), {}, tuple(f"X{i}" for i in range(n_components)))


# ---------------------------------------------------------------------------
# pairs


def p1_minus_points(k: int) -> PairData:
    """X = P^1 (one vertex), Z = k points; U = P^1 minus k points."""
    Z = SncConfiguration(tuple(f"z{i}" for i in range(k)))
    return PairData(point_config("P1"), Z, {f"z{i}": "P1" for i in range(k)})


def self_pair(cfg: SncConfiguration) -> PairData:
    labels = list(cfg.components) + [p.label for ps in cfg.strata.values() for p in ps]
    return PairData(cfg, cfg, {x: x for x in labels})


def empty_pair(cfg: SncConfiguration) -> PairData:
    return PairData(cfg, SncConfiguration(()), {})
