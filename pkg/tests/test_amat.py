import pytest
from hypothesis import given

from confex import amat
from confex.matrix import AlphMatrix

from conftest import matrices


@given(matrices(max_alphabet=12))
def test_roundtrip(M):
    assert amat.loads(amat.dumps(M)) == M


def test_compact_rows_and_comments():
    text = "# a comment\namat 2 3 2\n010   \n# mid\n1 1 0\n"
    assert amat.loads(text).to_rows() == [[0, 1, 0], [1, 1, 0]]


def test_writer_uses_spaces():
    M = AlphMatrix.from_rows([[0, 1], [1, 0]])
    assert amat.dumps(M, "hello").splitlines() == ["# hello", "amat 2 2 2", "0 1", "1 0"]


@pytest.mark.parametrize("text", [
    "", "amat 2 2", "amat 1 2 2\n0 5", "amat 2 2 2\n0 1", "amat 1 2 12\n01", "mat 1 1 2\n0",
    "amat 1 2 2\n0 x",
])
def test_format_errors(text):
    with pytest.raises(amat.FormatError):
        amat.loads(text)


def test_file_io(tmp_path):
    M = AlphMatrix.from_rows([[2, 0, 1]])
    p = tmp_path / "m.amat"
    amat.dump(M, p)
    assert amat.load(p) == M
