"""Regenerate the shipped fixture corpus (canonical serialization)."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from multicx.corpus import arrow, corner, corner_projection, staircase  # noqa: E402
from multicx.docs import serialize  # noqa: E402
from multicx.fields import GF2, GF7, QQ  # noqa: E402
from multicx.linalg import Matrix  # noqa: E402
from multicx.multicomplex import (Multicomplex, identity_morphism,  # noqa: E402
                                  single_cell, tensor_product, zero_morphism,
                                  zero_multicomplex)

OUT = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def write(name, text):
    (OUT / name).write_text(text, encoding="utf-8")
    print("wrote", name)


def broken_corner(field):
    # d_1 then d_0 do not commute on this shape: the composite through
    # (-1, 0) survives while the other path is zero
    one = Matrix.identity(field, 1)
    dims = {(0, 0): 1, (-1, 0): 1, (-1, 1): 1}
    maps = {0: {(-1, 0): one}, 1: {(0, 0): one}}
    return Multicomplex(field, 2, dims, maps)


def main():
    OUT.mkdir(exist_ok=True)
    write("corner.mcx", serialize(corner(GF2, 0, 0)))
    write("corner_q.mcx", serialize(corner(QQ, 0, 0)))
    write("corner_gf7.mcx", serialize(corner(GF7, 0, 0)))
    write("cell.mcx", serialize(single_cell(GF2, 0, 0, 2)))
    write("pi_corner.mcx", serialize(corner_projection(GF2, 0, 0)))
    write("corner_broken.mcx", serialize(broken_corner(GF2)))
    write("staircase_s3.mcx", serialize(staircase(GF2, 3)))
    write("arrows_12.mcx",
          serialize(tensor_product(arrow(GF7, 1, 0, 0, 3), arrow(GF7, 2, 0, 0, 3))))
    # the no-lift square against the corner projection
    K = single_cell(GF2, 0, 0, 2)
    C = corner(GF2, 0, 0)
    Z = zero_multicomplex(GF2, 2)
    write("lift_i.mcx", serialize(zero_morphism(Z, K)))
    write("lift_top.mcx", serialize(zero_morphism(Z, C)))
    write("lift_bottom.mcx", serialize(identity_morphism(K)))


if __name__ == "__main__":
    main()
