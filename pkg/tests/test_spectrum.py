import pytest

from qweyl.errors import UNKNOWN, InvalidCoordinates, TooLarge
from qweyl.fields import make_field
from qweyl.spectrum import (
    CentrePrime,
    atlas_to_dot,
    classify_prime,
    enumerate_spectrum,
    residue_field,
    weyl_s_value,
)


class TestPointClassification:
    def test_generic_point_worked_example(self, F5):
        # (r, t) = (2, 1): s0 = -2 + (q-1)^(-2) = -2 + 4 = 2 over F5
        assert weyl_s_value(F5, 2, 1) == 2
        rep = classify_prime(CentrePrime("A1", "point", ext_field=F5, coords=(2, 1)))
        assert rep.stratum == "M''"
        assert rep.ce_report.index == 1 and rep.ce_report.matrix_size == 2
        assert rep.simple_module["dimension"] == 2
        assert rep.endomorphism["degree"] == 1
        assert rep.completely_prime is False
        assert rep.primitive is True

    def test_origin_is_top_quotient(self, F5):
        rep = classify_prime(CentrePrime("A1", "point", ext_field=F5, coords=(0, 0)))
        assert rep.stratum == "(t,r)"
        assert rep.quotient["type"] == "MatrixOverField"
        assert rep.simple_module["dimension"] == 2
        assert rep.completely_prime is False

    def test_axis_points(self, F5):
        rep = classify_prime(CentrePrime("A1", "point", ext_field=F5, coords=(2, 0)))
        assert rep.stratum == "T"
        rep = classify_prime(CentrePrime("A1", "point", ext_field=F5, coords=(0, 2)))
        assert rep.stratum == "R"

    def test_weyl_fiber_points(self, F3):
        # s0 = 0 <=> r0 t0 = 1 over F3, n = 2
        rep = classify_prime(CentrePrime("A1", "point", ext_field=F3, coords=(1, 1)))
        assert rep.stratum == "H''"
        # x^2 - 1 = (x-1)(x+1): two degree-1 fiber primes
        assert sorted(f["quotient_field_degree"] for f in rep.fiber) == [1, 1]
        rep = classify_prime(CentrePrime("A1", "point", ext_field=F3, coords=(2, 2)))
        assert rep.stratum == "H''"
        # x^2 - 2 is irreducible over F3
        assert [f["quotient_field_degree"] for f in rep.fiber] == [2]

    def test_plane_fiber_example(self, F5):
        # (s, t) = (0, 2): 2 is a non-square mod 5 -> single prime, field F25
        assert all(pow(x, 2, 5) != 2 for x in range(5))
        rep = classify_prime(CentrePrime("A", "point", ext_field=F5, coords=(0, 2)))
        assert rep.stratum == "H"
        assert [f["quotient_field_degree"] for f in rep.fiber] == [2]
        assert rep.completely_prime is True

    def test_plane_origin(self, F5):
        rep = classify_prime(CentrePrime("A", "point", ext_field=F5, coords=(0, 0)))
        assert rep.stratum == "(x,h)"
        assert rep.quotient["type"] == "Field"

    def test_plane_h_side_fiber(self, F5):
        rep = classify_prime(CentrePrime("A", "point", ext_field=F5, coords=(2, 0)))
        assert rep.stratum == "X"

    def test_torus_rejects_zero_coordinates(self, F5):
        with pytest.raises(InvalidCoordinates):
            classify_prime(CentrePrime("B", "point", ext_field=F5, coords=(0, 1)))
        with pytest.raises(InvalidCoordinates):
            classify_prime(CentrePrime("CA", "point", ext_field=F5, coords=(1, 0)))

    def test_coordinates_must_generate(self, F3):
        F9 = residue_field(F3, 2)
        with pytest.raises(InvalidCoordinates):
            classify_prime(
                CentrePrime("A1", "point", ext_field=F9, coords=(F9.one(), F9.one()))
            )

    def test_extension_point(self, F3):
        F9 = residue_field(F3, 2)
        z = F9.generator_value()
        rep = classify_prime(CentrePrime("A1", "point", ext_field=F9, coords=(z, F9.one())))
        assert rep.stratum in ("M''", "H''")


class TestHeightOne:
    def test_named_primes(self):
        rep = classify_prime(CentrePrime("A1", "height1", generator="t"))
        assert rep.stratum == "(t)" and rep.completely_prime is False
        assert rep.primitive is False
        rep = classify_prime(CentrePrime("A1", "height1", generator="h"))
        assert rep.completely_prime is True

    def test_contraction_notes(self):
        rep = classify_prime(CentrePrime("A1", "height1", generator="s"))
        assert rep.stratum == "(h)"
        assert any("contraction" in n for n in rep.notes)
        rep = classify_prime(CentrePrime("A", "height1", generator="t"))
        assert rep.stratum == "(x)"

    def test_poly_generator_verified(self, F3):
        rep = classify_prime(
            CentrePrime("A1", "height1", generator=("poly_t", [1, 1]), ext_field=F3)
        )
        assert rep.stratum == "N''"
        assert rep.input["irreducibility"] == "verified"
        assert rep.completely_prime == UNKNOWN

    def test_poly_generator_reducible_rejected(self, F3):
        from qweyl.errors import ParseError

        with pytest.raises(ParseError):
            classify_prime(
                CentrePrime("A1", "height1", generator=("poly_t", [2, 0, 1]), ext_field=F3)
            )

    def test_bivariate_trusted(self, F3):
        rep = classify_prime(
            CentrePrime("A1", "height1", generator=("bivariate", "r^2 t - r - 1", True), ext_field=F3)
        )
        assert "unverified" in rep.input["irreducibility"]

    def test_zero_prime(self):
        rep = classify_prime(CentrePrime("A1", "zero"))
        assert rep.stratum == "zero"
        assert rep.completely_prime is True and rep.primitive is False


class TestAtlas:
    def test_f3_degree_one_partition(self, F3):
        atlas = enumerate_spectrum("A1", F3, max_ext_degree=1)
        assert atlas["strata_counts"] == {
            "(t,r)": 1,
            "T": 2,
            "R": 2,
            "H''": 2,
            "M''": 2,
        }

    def test_f3_degree_two(self, F3):
        atlas = enumerate_spectrum("A1", F3, max_ext_degree=2)
        # 9 rational points + 36 Frobenius orbits of strictly-degree-2 points
        assert atlas["point_count"] == 45
        for rep in atlas["points"]:
            assert rep.primitive is True
            if rep.stratum == "M''":
                assert rep.completely_prime == (rep.ce_report.index == 2)

    def test_fiber_matches_factorization(self, F3):
        from qweyl.polys import Polynomial, factor_over_finite_field

        atlas = enumerate_spectrum("A1", F3, max_ext_degree=2)
        for rep in atlas["points"]:
            if rep.stratum != "H''":
                continue
            Fp = make_field(rep.input["field"])
            t0 = Fp.parse_element(rep.input["coords"]["t"])
            factors = factor_over_finite_field(Polynomial.binomial(Fp, 2, t0))
            assert sorted(f["quotient_field_degree"] for f in rep.fiber) == sorted(
                g.degree for g, _ in factors
            )

    def test_torus_single_family(self, F3):
        atlas = enumerate_spectrum("B", F3, max_ext_degree=1)
        assert set(atlas["strata_counts"]) == {"max"}
        assert atlas["strata_counts"]["max"] == 4

    def test_laurent_strata(self, F3):
        atlas = enumerate_spectrum("CA", F3, max_ext_degree=1)
        assert set(atlas["strata_counts"]) <= {"M'", "H'"}

    def test_plane_diagram_edges(self, F3):
        atlas = enumerate_spectrum("A", F3, max_ext_degree=1)
        edges = atlas["edges"]
        origin = [i for i, rep in enumerate(atlas["points"]) if rep.stratum == "(x,h)"]
        assert len(origin) == 1
        name = f"point{origin[0]}"
        assert ("(x)", name, "solid") in edges
        assert ("(h)", name, "solid") in edges
        assert ("zero", "(x)", "solid") in edges

    def test_weyl_observed_edges(self, F3):
        atlas = enumerate_spectrum("A1", F3, max_ext_degree=1)
        # the hyperbola primes rt - c contain exactly the maximal points with
        # r0 t0 = c; check one observed edge exists for rt-2 (the M'' pair)
        observed = [e for e in atlas["edges"] if e[2] == "observed"]
        assert any(src.startswith("rt-2") for src, _, _ in observed)
        # and the excluded s-associate never appears (those points are H'')
        assert not any(src == "rt-1" for src, _, _ in observed)

    def test_assertions_present(self, F3):
        atlas = enumerate_spectrum("A1", F3, max_ext_degree=1)
        assert atlas["assertions"]

    def test_budget_guard(self, F13):
        with pytest.raises(TooLarge):
            enumerate_spectrum("A1", F13, max_ext_degree=3)

    def test_dot_output(self, F3):
        atlas = enumerate_spectrum("A1", F3, max_ext_degree=1)
        dot = atlas_to_dot(atlas)
        assert dot.startswith("digraph") and "->" in dot


class TestOtherAlgebraAtlases:
    def test_plane_degree_two(self, F3):
        atlas = enumerate_spectrum("A", F3, max_ext_degree=2)
        assert set(atlas["strata_counts"]) <= {"(x,h)", "X", "H", "M"}
        assert atlas["strata_counts"]["(x,h)"] == 1
        for rep in atlas["points"]:
            assert rep.primitive

    def test_laurent_degree_two(self, F3):
        atlas = enumerate_spectrum("CA", F3, max_ext_degree=2)
        assert set(atlas["strata_counts"]) <= {"M'", "H'"}
