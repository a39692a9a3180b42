import pytest
from hypothesis import given, settings, strategies as st

from braidlab.braid import PureBraid, SigmaBraid, a_generator, braids_equal, commutator
from braidlab.freelie import Alphabet, LieElement, lie_bracket
from braidlab.kohno import kohno_bracket, kohno_generator
from braidlab.parsing import ParseError, format_braid, parse_braid, parse_kohno, parse_lie, parse_word
from braidlab.words import FreeWord, commutator as word_commutator

from strategies import lie_elements, sigma_words, words

Y3 = Alphabet("y", 3)


def test_word_syntax():
    y = [None] + [FreeWord.generator(Y3, i) for i in range(1, 4)]
    assert parse_word("y1 y2^-1", 3) == y[1] * ~y[2]
    assert parse_word("g1^3", 3) == y[1] ** 3
    assert parse_word("[y1,y2]", 3) == word_commutator(y[1], y[2])
    assert parse_word("[[y1,y2],y3^-1] y1", 3) == word_commutator(word_commutator(y[1], y[2]), ~y[3]) * y[1]
    assert parse_word("", 3).is_identity() and parse_word("1", 3).is_identity()
    assert parse_word("(y1 y2)^2", 3) == y[1] * y[2] * y[1] * y[2]


@pytest.mark.parametrize("bad", ["y1 +", "[y1,", "y1^", "x1", "y1]", "[y1 y2]"])
def test_word_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_word(bad, 3)


def test_word_index_error():
    with pytest.raises(IndexError):
        parse_word("y4", 3)


@given(words(3, 10, "y"))
def test_word_round_trip(w):
    assert parse_word(str(w), 3) == w


def test_braid_syntax():
    assert parse_braid("n=3: A(1,3)") == a_generator(1, 3, 3)
    b = parse_braid("[A(1,2),A(1,3)]", 3)
    assert isinstance(b, PureBraid)
    assert b == commutator(a_generator(1, 2, 3), a_generator(1, 3, 3))
    assert type(parse_braid("n=3: s1 s2^-1")) is SigmaBraid
    assert parse_braid("n=2:") == PureBraid(2, ())
    assert format_braid(PureBraid(2, ())) == "n=2:"


def test_braid_parse_errors():
    with pytest.raises(ParseError):
        parse_braid("s1")
    with pytest.raises(ParseError):
        parse_braid("n=3: s1", 4)
    with pytest.raises(ParseError):
        parse_braid("n=3: B(1,2)")
    with pytest.raises(IndexError):
        parse_braid("n=3: s3")
    with pytest.raises(IndexError):
        parse_braid("n=3: A(1,4)")


@given(sigma_words(4, 12))
def test_braid_round_trip(b):
    # pure words come back as PureBraid, so compare contents rather than class
    for back in (parse_braid(format_braid(b)), parse_braid(str(b), 4)):
        assert (back.n, back.word) == (b.n, b.word)


def test_lie_syntax():
    y = [None] + [LieElement.generator(Y3, i) for i in range(1, 4)]
    br = lie_bracket
    assert parse_lie("[[y1,y2],y3]", 3) == br(br(y[1], y[2]), y[3])
    assert parse_lie("[y1,y2,y3]", 3) == br(br(y[1], y[2]), y[3])
    assert parse_lie("3*[y1,y2] - [y1,y3]", 3) == 3 * br(y[1], y[2]) - br(y[1], y[3])
    assert parse_lie("-y1 + 2*y2", 3) == -y[1] + 2 * y[2]
    assert parse_lie("[[[y1,y2],y3],y2]", 3) == parse_lie("[y1,y2,y3,y2]", 3)
    assert parse_lie("0", 3).is_zero()


@pytest.mark.parametrize("bad", ["[y1]", "3 y1", "y1 y2", "[y1,y2", "2*"])
def test_lie_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_lie(bad, 3)


@settings(deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: lie_elements(3, m)))
def test_lie_round_trip(e):
    assert parse_lie(str(e), 3) == e


def test_kohno_syntax_and_round_trip():
    x = parse_kohno("[B(1,2),B(1,3)] + 2*B(2,4)", 4)
    assert x == kohno_bracket(kohno_generator(1, 2, 4), kohno_generator(1, 3, 4)) + 2 * kohno_generator(2, 4, 4)
    assert parse_kohno(str(x), 4) == x
    with pytest.raises(ParseError):
        parse_kohno("y1", 4)
