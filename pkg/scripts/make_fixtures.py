"""Regenerate the shipped fixture documents from the builders."""
from pathlib import Path

from orbtorsion.abelian import AbelianGroup, free_abelian
from orbtorsion.builders import (FIGURE_EIGHT, TREFOIL, FillingData, knot_complex,
                                 local_unknot_exterior, solid_torus_complex,
                                 thickened_torus_complex, two_curve_orbifold)
from orbtorsion.io import render_complex, render_filling, render_knot

OUT = Path(__file__).resolve().parent.parent / "src" / "orbtorsion" / "fixtures"


def main():
    H3 = AbelianGroup(1, (3,))
    Z = free_abelian(1)
    docs = {
        "solid_torus_3.tcx": solid_torus_complex(3, H3, H3.gen(0), H3.gen(1), "solid torus alpha 3"),
        "solid_torus.tcx": solid_torus_complex(1, Z, Z.gen(0), Z.identity()),
        "solid_torus_longitude.tcx": solid_torus_complex(1, Z, Z.gen(0), Z.identity(),
                                                         "solid torus, f reversed").flip_cells(["f"]),
        "thickened_torus.tcx": thickened_torus_complex(),
        "local_unknot_exterior.tcx": local_unknot_exterior(),
        "hopf_2_3.tcx": two_curve_orbifold(2, 3),
        "trefoil.tcx": knot_complex(TREFOIL),
        "figure_eight.tcx": knot_complex(FIGURE_EIGHT),
    }
    for name, X in docs.items():
        (OUT / name).write_text(render_complex(X))
    (OUT / "trefoil.knt").write_text(render_knot(TREFOIL))
    (OUT / "figure_eight.knt").write_text(render_knot(FIGURE_EIGHT))
    fills = {
        "meridian.fill": FillingData(("v", "a", "b", "f"), 1),
        "longitude_3.fill": FillingData(("v", "b", "a", "f"), 3),
        "end1_2.fill": FillingData(("v1", "a1", "b1", "f1"), 2),
        "knot_3.fill": FillingData(("v", "a", "b", "f"), 3),
    }
    for name, f in fills.items():
        (OUT / name).write_text(render_filling(f))


if __name__ == "__main__":
    main()
