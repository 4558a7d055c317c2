"""Tests for braid words, Burau-based Conway polynomials, and the catalog."""

import json

import pytest

from mmjones.exactalg import LaurentPoly, QPoly
from mmjones.knots import (
    BraidWord,
    CatalogError,
    InvalidTorusParametersError,
    KnotRecord,
    NotAKnotError,
    TorusParams,
    catalog_lookup,
    conway_poly,
    conway_torus,
    default_catalog,
    load_catalog,
    reduced_burau,
)


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


class TestBraidWord:
    def test_component_counts(self):
        assert BraidWord(1, []).closure_component_count() == 1
        assert BraidWord(2, [1, 1, 1]).closure_component_count() == 1
        assert BraidWord(2, [1, 1]).closure_component_count() == 2

    def test_writhe(self):
        assert BraidWord(2, [1, 1, 1]).writhe() == 3
        assert BraidWord(3, [1, -2, 1, -2]).writhe() == 0
        assert BraidWord(4, []).writhe() == 0

    def test_letter_validation(self):
        with pytest.raises(ValueError):
            BraidWord(2, [2])
        with pytest.raises(ValueError):
            BraidWord(3, [0])


class TestBurau:
    def test_braid_relations(self):
        a = reduced_burau(BraidWord(3, [1, 2, 1]))
        b = reduced_burau(BraidWord(3, [2, 1, 2]))
        assert mat_eq(a, b)
        a = reduced_burau(BraidWord(4, [1, 3]))
        b = reduced_burau(BraidWord(4, [3, 1]))
        assert mat_eq(a, b)

    def test_inverse_letters(self):
        m = reduced_burau(BraidWord(4, [2, -2]))
        ident = reduced_burau(BraidWord(4, []))
        assert mat_eq(m, ident)


class TestConway:
    def test_unknot(self):
        assert conway_poly(BraidWord(1, [])) == QPoly.one()

    def test_trefoil_matches_torus(self):
        assert conway_poly(BraidWord(2, [1, 1, 1])) == conway_torus(TorusParams(2, 3))

    def test_catalog_values(self):
        assert conway_poly(BraidWord(3, [1, -2, 1, -2])) == QPoly.from_z2_coeffs([1, -1])
        assert conway_poly(BraidWord(3, [-1, -1, -1, -2, 1, -2])) == QPoly.from_z2_coeffs([1, 2])
        assert conway_poly(BraidWord(4, [1, 1, 2, -1, -3, 2, -3])) == QPoly.from_z2_coeffs([1, -2])
        assert conway_poly(
            BraidWord(5, [1, 1, 2, -1, -3, 2, -3, -4, 3, -4])
        ) == QPoly.from_z2_coeffs([1, -4])

    def test_rejects_links(self):
        with pytest.raises(NotAKnotError):
            conway_poly(BraidWord(2, [1, 1]))

    def test_even_powers_and_normalization(self):
        for strands, word in [(2, [1, 1, 1]), (3, [1, -2, 1, -2]), (3, [-1, -1, -1, -2, 1, -2])]:
            c = conway_poly(BraidWord(strands, word))
            assert c.only_even_powers()
            assert c.constant_term() == 1
            assert c.has_integer_coeffs()

    def test_markov_moves_invariance(self):
        base = BraidWord(3, [-1, -1, -1, -2, 1, -2])
        expected = conway_poly(base)
        assert conway_poly(base.stabilized(1)) == expected
        assert conway_poly(base.stabilized(-1)) == expected
        assert conway_poly(base.conjugated(2)) == expected
        assert conway_poly(base.conjugated(-1)) == expected

    def test_mirror_invariance_of_conway(self):
        base = BraidWord(4, [1, 1, 2, -1, -3, 2, -3])
        assert conway_poly(base.mirror()) == conway_poly(base)


class TestConwayTorus:
    @pytest.mark.parametrize(
        "p,q,coeffs",
        [
            (2, 3, [1, 1]),
            (2, 5, [1, 3, 1]),
            (2, 7, [1, 6, 5, 1]),
            (3, 5, [1, 8, 14, 7, 1]),
        ],
    )
    def test_golden(self, p, q, coeffs):
        assert conway_torus(TorusParams(p, q)) == QPoly.from_z2_coeffs(coeffs)

    def test_symmetry(self):
        assert conway_torus(TorusParams(3, 5)) == conway_torus(TorusParams(5, 3))
        assert conway_torus(TorusParams(2, 7)) == conway_torus(TorusParams(7, 2))

    def test_braid_matches_closed_form(self):
        for p, q in [(2, 3), (2, 5), (3, 5)]:
            t = TorusParams(p, q)
            assert conway_poly(t.braid()) == conway_torus(t)

    def test_invalid_params(self):
        with pytest.raises(InvalidTorusParametersError):
            TorusParams(2, 4)
        with pytest.raises(InvalidTorusParametersError):
            TorusParams(1, 5)


class TestCatalog:
    def test_default_catalog_loads(self):
        records = default_catalog()
        names = [r.name for r in records]
        assert names == ["unknot", "3_1", "4_1", "5_2", "6_1", "8_3"]
        rec = catalog_lookup(records, "4_1")
        assert rec.amphicheiral
        assert rec.conway == QPoly.from_z2_coeffs([1, -1])

    def test_json_round_trip(self, tmp_path):
        path = tmp_path / "catalog.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "name": "4_1",
                        "strands": 3,
                        "braid": [1, -2, 1, -2],
                        "amphicheiral": True,
                        "conway": [1, -1],
                    }
                ]
            )
        )
        records = load_catalog(str(path))
        assert records[0].name == "4_1"

    def test_rejects_multi_component(self):
        with pytest.raises(NotAKnotError):
            load_catalog([{"name": "hopf", "strands": 2, "braid": [1, 1]}])

    def test_rejects_conway_mismatch(self):
        with pytest.raises(CatalogError) as err:
            load_catalog(
                [
                    {
                        "name": "5_2",
                        "strands": 3,
                        "braid": [-1, -1, -1, -2, 1, -2],
                        "conway": [1, -2],
                    }
                ]
            )
        assert "5_2" in str(err.value)

    def test_rejects_schema_violations(self):
        with pytest.raises(CatalogError):
            load_catalog([{"name": "x", "strands": "3", "braid": []}])
        with pytest.raises(CatalogError):
            load_catalog([{"name": "x", "strands": 3, "braid": [1.5]}])
        with pytest.raises(CatalogError):
            load_catalog("not json [")

    def test_unknown_lookup(self):
        with pytest.raises(CatalogError):
            catalog_lookup(default_catalog(), "9_42")
