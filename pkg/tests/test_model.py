"""Presentation and table layer: validation, serialization, degree gates."""

import json
import random
from fractions import Fraction

import pytest

from oracles import random_presentation
from rht.algebra import FreeGCA, Generator
from rht.errors import SchemaError
from rht.model import (
    GradedAlgebraTable,
    SullivanPresentation,
    parse_presentation,
    parse_table,
    serialize_presentation,
)


def two_sphere():
    gens = [Generator(0, "x", 2), Generator(1, "y", 3)]
    alg = FreeGCA(gens)
    _, x2 = alg.normalize_word([0, 0])
    return SullivanPresentation(
        "s2", gens, {1: alg.element({x2: Fraction(1)})}, 6, 2
    )


def test_valid_presentation_has_no_violations():
    assert two_sphere().validate() == []


def test_degree_one_generator_is_flagged():
    gens = [Generator(0, "x", 1)]
    p = SullivanPresentation("bad", gens, {}, 5, None)
    assert any("degree" in str(v) for v in p.validate())


def test_non_decomposable_differential_is_flagged():
    gens = [Generator(0, "x", 2), Generator(1, "y", 1 + 2)]
    alg = FreeGCA(gens)
    _, xw = alg.normalize_word([0])
    p = SullivanPresentation("bad", gens, {1: alg.element({xw: Fraction(1)})}, 6, None)
    bad = p.validate()
    assert any("decompos" in str(v) for v in bad)


def test_wrong_image_degree_is_flagged():
    gens = [Generator(0, "x", 2), Generator(1, "y", 5)]
    alg = FreeGCA(gens)
    _, x2 = alg.normalize_word([0, 0])
    # deg x^2 = 4 but deg y + 1 = 6
    p = SullivanPresentation("bad", gens, {1: alg.element({x2: Fraction(1)})}, 8, None)
    assert p.validate()


def test_d_squared_violation_is_flagged():
    gens = [Generator(0, "x", 2), Generator(1, "y", 3), Generator(2, "z", 4)]
    alg = FreeGCA(gens)
    _, x2 = alg.normalize_word([0, 0])
    _, xy = alg.normalize_word([0, 1])
    p = SullivanPresentation(
        "bad",
        gens,
        {1: alg.element({x2: Fraction(1)}), 2: alg.element({xy: Fraction(1)})},
        8,
        None,
    )
    # d(z) = xy, d(xy) = x * x^2 != 0
    assert any("d(d(" in str(v) for v in p.validate())


def test_round_trip_is_byte_identical():
    p = two_sphere()
    text = serialize_presentation(p)
    again = serialize_presentation(parse_presentation(text))
    assert again == text


def test_round_trip_on_random_presentations():
    rng = random.Random(7)
    for _ in range(25):
        p = random_presentation(rng)
        text = serialize_presentation(p)
        back = parse_presentation(text)
        assert back == p
        assert serialize_presentation(back) == text


def test_parse_rejects_missing_fields():
    with pytest.raises(SchemaError):
        parse_presentation(json.dumps({"name": "x"}))


def test_parse_rejects_unknown_generator_in_differential():
    doc = {
        "name": "bad",
        "truncation_degree": 5,
        "generators": [{"name": "x", "degree": 2}],
        "differential": {"q": []},
    }
    with pytest.raises(SchemaError):
        parse_presentation(json.dumps(doc))


def test_parse_rejects_bad_json_text():
    with pytest.raises(SchemaError):
        parse_presentation("{not json")


def test_d_of_unlisted_generator_is_zero():
    p = two_sphere()
    assert p.d_of(0).is_zero()


# ---------------------------------------------------------------- tables


def cp2_table():
    from rht.model import BasisClass

    return GradedAlgebraTable(
        "h-cp2",
        [BasisClass("1", 0), BasisClass("x", 2), BasisClass("x2", 4)],
        "1",
        {("x", "x"): {"x2": Fraction(1)}, ("x", "x2"): {}, ("x2", "x2"): {}},
    )


def test_table_products():
    t = cp2_table()
    x = {"x": Fraction(1)}
    assert t.multiply(x, x) == {"x2": Fraction(1)}
    assert t.multiply(x, {"x2": Fraction(1)}) == t.zero()
    assert t.multiply(t.one(), x) == x


def test_table_add_and_scale():
    t = cp2_table()
    x = {"x": Fraction(1)}
    assert t.add(x, t.scale(x, Fraction(-1))) == {}
    assert t.scale(x, Fraction(0)) == {}
    assert t.scale(x, Fraction(3, 2)) == {"x": Fraction(3, 2)}


def test_table_graded_commutativity_disagreement():
    from rht.model import BasisClass

    with pytest.raises(SchemaError):
        GradedAlgebraTable(
            "bad",
            [BasisClass("1", 0), BasisClass("x", 2), BasisClass("y", 2), BasisClass("z", 4)],
            "1",
            {
                ("x", "y"): {"z": Fraction(1)},
                ("y", "x"): {"z": Fraction(-1)},
            },
        )


def test_odd_class_with_nonzero_square_is_rejected():
    from rht.model import BasisClass

    with pytest.raises(SchemaError):
        GradedAlgebraTable(
            "bad",
            [BasisClass("1", 0), BasisClass("u", 3), BasisClass("v", 6)],
            "1",
            {("u", "u"): {"v": Fraction(1)}},
        )


def test_table_degree_basis():
    t = cp2_table()
    assert t.degree_basis(0) == ["1"]
    assert t.degree_basis(2) == ["x"]
    assert t.degree_basis(3) == []
    assert t.max_degree() == 4


def test_table_rejects_duplicate_class_names():
    from rht.model import BasisClass

    with pytest.raises(SchemaError):
        GradedAlgebraTable(
            "bad",
            [BasisClass("1", 0), BasisClass("x", 2), BasisClass("x", 4)],
            "1",
            {},
        )


def test_table_round_trip_from_corpus_is_byte_identical():
    from rht.corpus import load_manifest, _read_text
    from rht.model import serialize_table

    for key, rec in load_manifest()["tables"].items():
        text = _read_text(rec["file"])
        assert serialize_table(parse_table(text)) == text
