import pytest

from decomp.formats import (
    ParseError,
    load,
    load_smap,
    parse_category,
    parse_monoid,
    parse_poset,
    parse_sset,
    parse_xiset,
    save,
    write_category,
    write_monoid,
    write_poset,
    write_smap,
    write_sset,
    write_xiset,
)
from decomp.ingest import divisor_poset, nerve_poset, truncated_addition
from decomp.presheaf import SSetMap, dec_bot, u_star


def test_sset_roundtrip_is_canonical():
    X = nerve_poset(divisor_poset(6), 4)
    text = write_sset(X)
    again = parse_sset(text)
    assert write_sset(again) == text
    assert again == X or sorted(again.levels[1]) == sorted(X.levels[1])
    assert text.endswith("\n")
    assert not any(line != line.rstrip() for line in text.splitlines())


def test_xiset_roundtrip_is_canonical():
    A = u_star(nerve_poset(divisor_poset(6), 4))
    text = write_xiset(A)
    assert write_xiset(parse_xiset(text)) == text


def test_sset_rejects_xiset_directives():
    X = nerve_poset(divisor_poset(6), 4)
    bad = write_sset(X) + "sbot 0: x->y\n"
    with pytest.raises(ParseError):
        parse_sset(bad)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_sset("SSET v1\ncap x\n")
    assert ":2:" in str(err.value)


def test_comments_and_blanks_ignored():
    text = "# leading comment\n\nPOSET v1\nelements: a b  # trailing\nle a b\n"
    spec = parse_poset(text)
    assert spec.leq("a", "b")


def test_poset_roundtrip_and_antisymmetry():
    spec = divisor_poset(12)
    text = write_poset(spec)
    assert write_poset(parse_poset(text)) == text
    with pytest.raises(ParseError) as err:
        parse_poset("POSET v1\nelements: a b\nle a b\nle b a\n")
    assert "a" in str(err.value) and "b" in str(err.value)


def test_monoid_roundtrip_and_rejection():
    spec = truncated_addition(3)
    text = write_monoid(spec)
    assert write_monoid(parse_monoid(text)) == text
    bad = ("MONOID v1\nelements: 0 1\nunit: 0\n"
           "mul 0 0: 0\nmul 0 1: 1\nmul 1 0: 1\nmul 1 1: 1\n")
    with pytest.raises(ParseError) as err:
        parse_monoid(bad)
    assert "factorisations" in str(err.value)


def test_category_roundtrip_and_validation():
    text = ("CAT v1\nobjects: x y\nid x: ix\nid y: iy\n"
            "arrow f: x -> y\n")
    spec = parse_category(text)
    assert write_category(parse_category(write_category(spec))) == \
        write_category(spec)
    with pytest.raises(ParseError):
        parse_category("CAT v1\nobjects: x\nid x: ix\n"
                       "arrow f: x -> x\narrow g: x -> x\n")  # missing f;g


def test_smap_roundtrip(tmp_path):
    X = nerve_poset(divisor_poset(6), 4)
    D, counit = dec_bot(X)
    save(X, tmp_path / "cod.sset")
    save(D, tmp_path / "dom.sset")
    text = write_smap(counit, "dom.sset", "cod.sset")
    (tmp_path / "counit.smap").write_text(text, encoding="utf-8")
    M = load_smap(str(tmp_path / "counit.smap"))
    assert isinstance(M, SSetMap)
    assert M.components == counit.components
    assert M.dom == D and M.cod == X


def test_load_sniffs_format(tmp_path):
    save(divisor_poset(6), tmp_path / "p.poset")
    spec = load(str(tmp_path / "p.poset"))
    assert spec.leq("2", "6")
    with pytest.raises(ParseError):
        load(__file__)
