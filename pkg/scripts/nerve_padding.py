"""Compare the literal and padded resolution nerves on the catalog of isolated singularities.

The literal construction stops each singular point at the last level where
exceptional strata still lie over it. Stopping at an odd level leaves the
point's own contribution looking like a circle, which shows up as spurious
classes. The padded nerve repeats the point one level more.

    python scripts/nerve_padding.py
"""
from w0 import catalog
from w0.geometry import betti_bound_report, kh_complete, rational_ranks, dual_complex, resolution_nerve

CASES = {
    "nodal cubic": catalog.nodal_cubic(),
    "two nodes": catalog.two_nodes(),
    "cone over curve": catalog.curve_cone(),
    "A_2 chain": catalog.chain_resolution(2),
    "A_4 chain": catalog.chain_resolution(4),
    "cusp, 3 curves": catalog.cusp_resolution(3),
    "cusp, 5 curves": catalog.cusp_resolution(5),
    "smooth": catalog.smooth(1),
}


def fmt(groups):
    return ", ".join(g.format() for g in groups)


def predicted(res):
    """dim KH^i from the exceptional dual complex: b_0 - #S in degree 1, b_{i-1} above."""
    if not res.exceptional.components:
        return [len(res.ambient_components)]
    b = rational_ranks(dual_complex(res.exceptional))
    return ["-", b[0] - len(res.singular_points)] + b[1:]


def main():
    print(f"{'case':<16} {'literal':<24} {'padded':<24} {'predicted dims':<16} relation")
    for name, res in CASES.items():
        lit = kh_complete(resolution_nerve(res, pad=False))
        pad = kh_complete(resolution_nerve(res, pad=True))
        ok = "holds" if betti_bound_report(res).passed else "FAILS"
        print(f"{name:<16} {fmt(lit):<24} {fmt(pad):<24} {str(predicted(res)):<16} {ok}")


if __name__ == "__main__":
    main()
