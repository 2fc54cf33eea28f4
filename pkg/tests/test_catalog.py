"""预设目录、Cartan 类型与输入 / 期望文件的读写"""
import pytest

from src.models.schemas import InputSpec
from src.services.catalog_service import (
    cartan_matrix_from_type, get_preset, positive_roots, preset_cartan, preset_cartan_type, preset_super_a11,
    preset_taft, preset_uqsl2, validate_cartan,
)
from src.services.config_service import (
    build_bicharacter, build_roots, build_space, dump_expectations, effective_limits, flatten_value, load_expectations,
    load_input, parse_input, preset_to_input, write_expectations, write_input,
)
from src.utils.errors import InputValidationError


class TestPresets:
    def test_taft_conventions(self):
        preset = preset_taft(3)
        bichar = preset.bicharacter()
        assert preset.conductor == 6 and preset.exponents == ((4,),)
        assert bichar.conductor == 3
        assert bichar.q_exp(0, 0) == 2

    def test_taft_provenance(self):
        prov = preset_taft(5).provenance()
        assert prov["total_dim"] == "published"
        assert prov["modularity"] == "derived"

    def test_uqsl2(self):
        preset = preset_uqsl2(3)
        assert preset.name == "uqsl2-3"
        assert preset.expectations()["drinfeld_map_rank"] == 27
        assert preset.provenance()["modularity"] == "published"

    def test_super(self):
        preset = preset_super_a11(3, k=5)
        assert preset.orders == (6, 6)
        assert preset.exponents == ((3, 0), (5, 3))
        assert preset.expectations()["total_dim"] == 24

    @pytest.mark.parametrize("factory,args", [
        (preset_taft, (1,)),
        (preset_taft, (4, 2)),
        (preset_uqsl2, (4,)),
        (preset_super_a11, (2,)),
        (preset_super_a11, (3, 3)),
    ])
    def test_invalid(self, factory, args):
        with pytest.raises(InputValidationError):
            factory(*args)

    def test_get_preset_defaults(self):
        assert get_preset("taft").name == "taft-3"
        assert get_preset("super-a11").name == "super-a11-1"
        assert get_preset("cartan").name == "cartan-A2-5"
        with pytest.raises(InputValidationError) as exc:
            get_preset("sl3")
        assert exc.value.field == "preset"


class TestCartan:
    @pytest.mark.parametrize("type_name,count", [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("B3", 9),
                                                  ("C3", 9), ("D4", 12), ("G2", 6)])
    def test_positive_root_count(self, type_name, count):
        matrix, _ = cartan_matrix_from_type(type_name)
        assert len(positive_roots(matrix)) == count

    def test_b2_matrix(self):
        matrix, d = cartan_matrix_from_type("B2")
        assert matrix == [[2, -1], [-2, 2]]
        assert d == [2, 1]
        validate_cartan(matrix, d)

    def test_g2_roots(self):
        matrix, _ = cartan_matrix_from_type("G2")
        assert set(positive_roots(matrix)) == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}

    @pytest.mark.parametrize("type_name", ["D3", "E6", "G3", "B1", "X"])
    def test_unknown_type(self, type_name):
        with pytest.raises(InputValidationError):
            cartan_matrix_from_type(type_name)

    def test_asymmetrizable(self):
        with pytest.raises(InputValidationError):
            validate_cartan([[2, -1], [-2, 2]], [1, 1])

    @pytest.mark.parametrize("type_name,l", [("A2", 4), ("A2", 1), ("G2", 3), ("B2", 5)])
    def test_l_constraints(self, type_name, l):
        if (type_name, l) == ("B2", 5):
            preset_cartan_type(type_name, l)
            return
        with pytest.raises(InputValidationError):
            preset_cartan_type(type_name, l)

    def test_a2_expectations(self):
        preset = preset_cartan_type("A2", 5)
        assert preset.exponents == ((2, 4), (4, 2))
        assert preset.roots.orders == (5, 5, 5)
        assert preset.expectations()["total_dim"] == 125
        assert preset.expectations()["i_ell"] == [3, 3]

    def test_custom_matrix(self):
        preset = preset_cartan([[2]], [1], 7, name="rank-one")
        assert preset.expectations()["total_dim"] == 7


class TestInputFiles:
    def _data(self):
        return {
            "name": "demo",
            "group": {"orders": [3]},
            "braiding": {"conductor": 6, "exponents": [[4]]},
            "roots": {"positive": [[1]], "orders": [3]},
            "limits": {"cutoff": 8},
        }

    def test_parse(self):
        spec = parse_input(self._data())
        assert spec.checks == ["dims", "modularity", "ribbon", "axioms"]
        bichar = build_bicharacter(spec)
        assert build_space(spec, bichar).n == 1
        assert build_roots(spec).orders == (3,)

    def test_unknown_limit(self):
        data = self._data()
        data["limits"] = {"cutof": 8}
        with pytest.raises(InputValidationError) as exc:
            parse_input(data)
        assert exc.value.field == "limits"

    def test_missing_section(self):
        data = self._data()
        del data["braiding"]
        with pytest.raises(InputValidationError) as exc:
            parse_input(data)
        assert exc.value.field == "braiding"

    def test_limits_precedence(self):
        spec = parse_input(self._data())
        assert effective_limits(spec).cutoff == 8
        assert effective_limits(spec, {"cutoff": 12, "max_dim": None}).cutoff == 12

    def test_roundtrip(self, tmp_path):
        spec = preset_to_input(preset_super_a11(1), checks=["dims", "modularity"])
        path = tmp_path / "super.toml"
        write_input(spec, str(path))
        loaded = load_input(str(path))
        assert isinstance(loaded, InputSpec)
        assert loaded.model_dump() == spec.model_dump()

    def test_default_name(self, tmp_path):
        path = tmp_path / "mine.toml"
        path.write_text('[group]\norders = [3]\n[braiding]\nconductor = 3\nexponents = [[1]]\n', encoding="utf-8")
        assert load_input(str(path)).name == "mine"

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputValidationError):
            load_input(str(tmp_path / "nope.toml"))

    def test_bad_toml(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("[group\n", encoding="utf-8")
        with pytest.raises(InputValidationError):
            load_input(str(path))


class TestExpectationFiles:
    def test_write_and_load(self, tmp_path):
        preset = preset_taft(3)
        path = tmp_path / "taft3.toml"
        write_expectations(preset, str(path))
        loaded = load_expectations(str(path))
        assert loaded["total_dim"] == 3
        assert loaded["kr_pairs"] == flatten_value(preset.expectations()["kr_pairs"])
        assert "[provenance]" in dump_expectations(preset)

    def test_missing_expect_table(self, tmp_path):
        path = tmp_path / "empty.toml"
        path.write_text("[provenance]\n", encoding="utf-8")
        with pytest.raises(InputValidationError):
            load_expectations(str(path))

    def test_flatten(self):
        assert flatten_value({"zeta": [2], "a": [[1, 3]]}) == [[[1, 3]], [2]]
