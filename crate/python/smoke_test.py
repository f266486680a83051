"""Smoke test for the pycoxeter extension module."""

import pathlib

import pycoxeter as pc

DATA = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "data"


def main():
    f4 = pc.Presentation.coxeter([3, 4, 3])
    assert f4.order() == 1152

    gamma = pc.Presentation.parse((DATA / "gamma.cox").read_text())
    assert gamma.subgroup_names() == ["FACET", "VERTEX"]
    t = gamma.enumerate("VERTEX", strategy="hlt-lookahead")
    assert t.index == 268800
    again = pc.CosetTable.from_bytes(t.to_bytes())
    assert again.digest() == t.digest()

    try:
        gamma.enumerate("VERTEX", max_cosets=100)
    except pc.CosetLimitError:
        pass
    else:
        raise AssertionError("expected CosetLimitError")

    stats = pc.Presentation.locally_toroidal("2:single").polytope_stats()
    assert (stats["f"], stats["v"], stats["group_order"]) == (128, 32, "2359296")
    assert stats["vertex_type"] == "2:double"

    base = pc.Presentation.toroidal_base("2:double")
    g = base.enumerate("FACET").permutation_group()
    assert g.order() == 73728 and g.is_string_c_group()

    s4 = pc.PermGroup.from_cycles(4, ["(1,2)", "(2,3)", "(3,4)", "()", "()", "()"])
    omega = pc.omega765()
    assert omega.order() == 1045094400
    assert s4.mix(omega).order() == 25082265600

    assert pc.mix_toroidal("3:single", "2:double") == "6:double"
    assert pc.gf2_verify()["orbit_size"] == 135
    print("smoke test passed")


if __name__ == "__main__":
    main()
