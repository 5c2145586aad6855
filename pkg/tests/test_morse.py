"""Morse-diagram machinery: validation, walks, linking data, text format."""

import pytest

from hopfinv.morse import (
    MorseFormatError,
    MorseLink,
    Slice,
    analyze,
    kinked_unknot,
    symmetric_signature,
    unknot_diagram,
)


def test_round_unknot():
    an = analyze(unknot_diagram(clockwise=False))
    assert an.component_count == 1
    assert an.walks[0].whitney_degree() == 1
    assert an.linking.matrix == [[0]]
    assert an.linking.signature == 0
    an = analyze(unknot_diagram(clockwise=True))
    assert an.walks[0].whitney_degree() == -1


def test_two_disjoint_unknots():
    L = MorseLink(
        (Slice("cup", 0), Slice("cap", 0), Slice("cup", 0), Slice("cap", 0)), (1, 1)
    )
    an = analyze(L)
    assert an.component_count == 2
    assert an.linking.matrix == [[0, 0], [0, 0]]
    assert an.linking.signature == 0


def test_kinks_writhe_degree_signature():
    # positive curl: writhe +1, sigma +1; side picks the turning contribution
    an = analyze(kinked_unknot("x+", east=True))
    assert an.linking.matrix == [[1]]
    assert an.linking.signature == 1
    an = analyze(kinked_unknot("x-", east=True))
    assert an.linking.matrix == [[-1]]
    assert an.linking.signature == -1


def test_figure_eight_degrees():
    # one curl on the counterclockwise circle: degree 2 or 0 by curl side
    east = MorseLink(kinked_unknot("x+", east=True).slices, (-1,))
    west = MorseLink(kinked_unknot("x+", east=False).slices, (-1,))
    degs = {analyze(east).walks[0].whitney_degree(), analyze(west).walks[0].whitney_degree()}
    assert degs == {0, 2}


def test_double_kink_signature():
    # two positive curls: framing matrix diag(2), signature 1
    sl = (
        Slice("cup", 0),
        Slice("cup", 2),
        Slice("x+", 1),
        Slice("cap", 2),
        Slice("cup", 2),
        Slice("x+", 1),
        Slice("cap", 2),
        Slice("cap", 0),
    )
    an = analyze(MorseLink(sl, (1,)))
    assert an.linking.matrix == [[2]]
    assert an.linking.signature == 1


def test_malformed_words_rejected():
    with pytest.raises(MorseFormatError):
        analyze(MorseLink((Slice("cup", 0),), (1,)))  # open strands at top
    with pytest.raises(MorseFormatError):
        analyze(MorseLink((Slice("cap", 0),), ()))  # cap on nothing
    with pytest.raises(MorseFormatError):
        analyze(MorseLink((Slice("cup", 3),), ()))  # cup out of range
    with pytest.raises(MorseFormatError):
        analyze(MorseLink((Slice("cup", 0), Slice("x+", 1), Slice("cap", 0)), (1,)))


def test_text_round_trip():
    L = MorseLink(
        (
            Slice("cup", 0),
            Slice("cup", 1),
            Slice("x+", 0),
            Slice("x-", 1),
            Slice("cap", 1),
            Slice("cap", 0),
        ),
        (1, -1) if False else (-1,),
    )
    text = L.to_text()
    back = MorseLink.from_text(text)
    assert back == L
    assert back.to_text() == text  # bit-exact round trip


def test_text_parse_errors():
    with pytest.raises(MorseFormatError):
        MorseLink.from_text("twist 0\n")
    with pytest.raises(MorseFormatError):
        MorseLink.from_text("cup 0 0\n")
    with pytest.raises(MorseFormatError):
        MorseLink.from_text("orient 0 ?\n")


def test_signature_helper():
    assert symmetric_signature([[2]]) == 1
    assert symmetric_signature([[0, 2], [2, -1]]) == 0  # det < 0
    assert symmetric_signature([[0, 3], [3, 0]]) == 0  # hyperbolic block
    assert symmetric_signature([[1, 0], [0, 1]]) == 2
    assert symmetric_signature([[0, 0], [0, 0]]) == 0
    assert symmetric_signature([[2, 1], [1, 2]]) == 2
