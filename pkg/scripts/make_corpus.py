"""Write the bundled example documents to src/w0/corpus/."""
import json
import pathlib

from w0 import catalog
from w0.io import BoundsData, dumps

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "w0" / "corpus"

DOCS = {
    "point.json": catalog.point_config("X"),
    "banana.json": catalog.banana(),
    "tetrahedron.json": catalog.tetrahedron(),
    "rp2.json": catalog.rp2(),
    "cycle_graph_5.json": catalog.cycle_graph(5),
    "boundary_tetrahedron.json": catalog.boundary_simplex(3),
    "nodal_cubic.json": catalog.nodal_cubic(),
    "two_nodes.json": catalog.two_nodes(),
    "curve_cone.json": catalog.curve_cone(),
    "a2_chain.json": catalog.chain_resolution(2),
    "cusp_4.json": catalog.cusp_resolution(4),
    "cstar_pair.json": catalog.p1_minus_points(2),
    "affine_line_pair.json": catalog.p1_minus_points(1),
    "nodal_cubic_bounds.json": BoundsData((1, 1), (1, 1)),
    "inconsistent_bounds.json": BoundsData((1, 2), (1, 1)),
}
for n in range(3, 9):
    DOCS[f"i{n}.json"] = catalog.cycle_config(n)

# deliberately broken inputs
BROKEN = {
    "broken_face.json": {
        "kind": "semisimplicial",
        "levels": [3, 3, 1],
        "faces": {"1": [[1, 0], [2, 0], [2, 1]], "2": [[2, 0, 0]]},
    },
    "undefined_component.json": {
        "kind": "snc",
        "components": ["A", "B"],
        "strata": {"A,C": [{"label": "p"}]},
    },
}

if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, obj in DOCS.items():
        (OUT / name).write_text(dumps(obj) + "\n", encoding="utf-8")
    for name, doc in BROKEN.items():
        (OUT / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(DOCS) + len(BROKEN)} documents to {OUT}")
