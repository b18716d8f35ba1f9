import pytest

import mjdef_py as m

RUNNING_HAND = "C1C4C6C7C8C9D1D2D3D6D6D7D8"
RUNNING_KB = "001100121|010000030|032242321"
DISCARD_HAND = "C1C1C1C5C6C8C9C9C9D3D3D4D5D5"
DISCARD_KB = "333411123|010433411|101121422"


@pytest.mark.parametrize("algo", ["block", "quadtree", "oracle"])
def test_running_example(algo):
    assert m.deficiency(RUNNING_HAND, RUNNING_KB, algo) == 4


def test_complete_hand():
    hand = "B1B2B2B3B3B4B7B7B7C1C1D4D5D6"
    assert m.is_complete(hand)
    assert m.deficiency(hand) == 0


def test_incompletable():
    assert m.deficiency(RUNNING_HAND, "0" * 27, "quadtree") == m.INCOMPLETABLE


def test_discard():
    r = m.discard(DISCARD_HAND, DISCARD_KB)
    assert r["dfncy"] == 2
    assert r["chosen"] == "C8"
    assert r["values"]["C8"] == 19
    assert m.discard("B1B2B2B3B3B4B7B7B7C1C1D4D5D6")["chosen"] is None


def test_blocks():
    assert m.blocks(RUNNING_HAND, RUNNING_KB) == ["(C1)", "(C4)", "(C6C7C8C9)", "(D1D2D3)", "(D6D6D7D8)"]


@pytest.mark.parametrize("hand,kb,algo", [("B1B1", "complement", "block"),
                                          (RUNNING_HAND, "12", "block"),
                                          (RUNNING_HAND, RUNNING_KB, "fast")])
def test_bad_input(hand, kb, algo):
    with pytest.raises(ValueError):
        m.deficiency(hand, kb, algo)
