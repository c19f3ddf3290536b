import pytest
from hypothesis import given, strategies as st

from bordered_twist.algebra import Alg
from bordered_twist.knot_cfd import (KNOT_NAMES, CfkMinus, CfkParseError, builtin_knot,
                                     cfd_from_cfk, distinguished, format_cfk, load_knot, parse_cfk,
                                     unstable_length, validate_cfk)
from bordered_twist.library import cfda_twist
from bordered_twist.reduction import is_isomorphic, reduce
from bordered_twist.structures import validate_type_d
from bordered_twist.tensor import box_da_d

knots = st.sampled_from(KNOT_NAMES).map(builtin_knot)


def expected_counts(c, framing):
    m = unstable_length(c, framing)
    lengths = [n for _, _, n in c.vertical + c.horizontal]
    gens = len(c.basis) + sum(lengths) + abs(m)
    arrows = sum(n + 1 for n in lengths) + (1 if m == 0 else abs(m) + 1)
    return gens, arrows


@pytest.mark.parametrize("name", KNOT_NAMES)
def test_builtin_knots_validate(name):
    assert validate_cfk(builtin_knot(name)) == []


def test_distinguished_generators():
    assert distinguished(builtin_knot("unknot")) == ("x", "x")
    assert distinguished(builtin_knot("trefoil_rh")) == ("a", "c")
    assert distinguished(builtin_knot("figure_eight")) == ("e", "e")


@given(knots, st.integers(-6, 6))
def test_compiled_module_validates(c, framing):
    d = cfd_from_cfk(c, framing)
    assert validate_type_d(d) == []
    assert (len(d), len(d.arrows)) == expected_counts(c, framing)


@given(knots, st.integers(-6, 6))
def test_iota0_part_is_the_basis(c, framing):
    d = cfd_from_cfk(c, framing)
    assert sorted(g.name for g in d.generators if g.idem == 0) == sorted(c.basis)


def test_unknot_framings():
    c = builtin_knot("unknot")
    assert set(cfd_from_cfk(c, 0).arrows) == {("x", Alg.R12, "x")}
    d = cfd_from_cfk(c, 2)
    assert set(d.arrows) == {("x", Alg.R123, "mu:1"), ("mu:1", Alg.R23, "mu:2"),
                             ("mu:2", Alg.R2, "x")}
    d = cfd_from_cfk(c, -1)
    assert set(d.arrows) == {("x", Alg.R1, "mu:1"), ("x", Alg.R3, "mu:1")}


def test_trefoil_chains():
    d = cfd_from_cfk(builtin_knot("trefoil_rh"), 2)
    assert set(d.arrows) == {("b", Alg.R1, "kappa:0:1"), ("c", Alg.R123, "kappa:0:1"),
                             ("b", Alg.R3, "lambda:0:1"), ("lambda:0:1", Alg.R2, "a"),
                             ("a", Alg.R12, "c")}


@given(knots, st.integers(-3, 3))
def test_framing_increase(c, framing):
    nxt = reduce(box_da_d(cfda_twist(), cfd_from_cfk(c, framing)))[0]
    assert is_isomorphic(nxt, cfd_from_cfk(c, framing + 1))


@pytest.mark.parametrize("bad,kind", [
    (CfkMinus.build(["a", "b"], vertical=[("a", "b", 1)], horizontal=[("a", "b", 1)]), "diagonal"),
    (CfkMinus.build(["a"], vertical=[("a", "z", 1)]), "unknown-generator"),
    (CfkMinus.build(["a", "b", "c"], vertical=[("a", "b", 0)]), "not-reduced"),
    (CfkMinus.build(["a", "b", "c"], vertical=[("a", "b", 1), ("a", "c", 1)]), "not-simplified"),
    (CfkMinus.build(["a", "b"]), "distinguished"),
    (CfkMinus.build(["a", "a"]), "duplicate"),
    (CfkMinus.build(["a", "b"], vertical=[("a", "a", 1)]), "loop"),
])
def test_validation_errors(bad, kind):
    assert kind in {v.kind for v in validate_cfk(bad)}


def test_compiling_invalid_data_raises():
    with pytest.raises(ValueError):
        cfd_from_cfk(CfkMinus.build(["a", "b"]), 0)


@pytest.mark.parametrize("name", KNOT_NAMES)
def test_text_round_trip(name):
    c = builtin_knot(name)
    assert parse_cfk(format_cfk(c)) == c


def test_parse_example():
    text = "knot t\ntau 1  # right-handed\ngens a b c\nvert b -> c len 1\nhoriz b -> a len 1\n"
    assert parse_cfk(text) == CfkMinus.build(
        ["a", "b", "c"], [("b", "c", 1)], [("b", "a", 1)], 1, "t")


@pytest.mark.parametrize("text,line", [
    ("tau x\n", 1),
    ("tau 0\ngens a\nvert a b len 1\n", 3),
    ("tau 0\nhoriz a -> b len q\n", 2),
    ("tau 0\nbogus\n", 2),
    ("gens a\n", 0),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(CfkParseError) as err:
        parse_cfk(text)
    assert err.value.line == line


def test_load_knot(tmp_path):
    assert load_knot("unknot") == builtin_knot("unknot")
    p = tmp_path / "k.cfk"
    p.write_text(format_cfk(builtin_knot("figure_eight")))
    assert load_knot(str(p)) == builtin_knot("figure_eight")
    with pytest.raises(KeyError):
        builtin_knot("nope")
