import pytest

from frobgen.finitefield import new_context
from frobgen.serialize import (
    SpecError,
    algebra_spec_from_dict,
    data_path,
    load_algebra,
    load_ypoly,
    parse_elements,
    parse_field,
    read_ypoly_text,
    split_csv,
)


def test_parse_field():
    assert parse_field("3,2") == (3, 2)
    assert parse_field("5") == (5, 1)
    with pytest.raises(SpecError):
        parse_field("a,b")


def test_split_csv_respects_brackets():
    assert split_csv("[1,2],0, 2") == ["[1,2]", "0", "2"]


def test_parse_elements():
    F9 = new_context(3, 2)
    assert parse_elements("[0,1],2", F9) == [F9.gen, F9(2)]
    with pytest.raises(SpecError):
        parse_elements("x", F9)


def test_element_forms_in_spec():
    spec, extra = algebra_spec_from_dict(
        {"p": 3, "e": 2, "n": 1, "generators": [[[[0, 1]]], [["[1,1]"]], [[-1]]], "note": "x"}
    )
    F9 = spec.ctx
    assert [g[0][0] for g in spec.generators] == [F9.gen, F9([1, 1]), F9(2)]
    assert extra == {"note": "x"}


def test_spec_validation():
    with pytest.raises(SpecError):
        algebra_spec_from_dict({"p": 3, "n": 2})
    with pytest.raises(SpecError):
        algebra_spec_from_dict({"p": 3, "n": 2, "generators": [[[1, 0], [0]]]})
    with pytest.raises(SpecError):
        algebra_spec_from_dict({"p": 3, "n": 1, "generators": [[[True]]]})


def test_shipped_files():
    spec, _ = load_algebra(data_path("a4.alg"))
    assert spec.n == 3 and len(spec.basis) == 5
    text, header = read_ypoly_text(data_path("a4_g.ypoly"))
    assert header == {"p": 2, "e": 1, "m": 5}
    g = load_ypoly(data_path("a4_g.ypoly"))
    assert g.degree == 4
