import numpy as np
import pytest

from schatten_sparsify.mtxio import (ParseError, dumps_matrix, loads_matrix, read_matrix,
                                     write_matrix)


def test_parse_example():
    a = loads_matrix("2 2 2\n1 1 1.0\n2 2 -1.0\n")
    assert np.array_equal(a, [[1, 0], [0, -1]])


def test_round_trip_is_exact(tmp_path, rng):
    a = rng.standard_normal((5, 3))
    a[1, 2] = 0.0
    path = tmp_path / "a.mtx"
    write_matrix(path, a)
    assert np.array_equal(read_matrix(path), a)
    assert dumps_matrix(read_matrix(path)) == path.read_text()


@pytest.mark.parametrize("text, line", [
    ("1 1 2\n1 1 1\n1 1 1\n", 3),
    ("2 2\n", 1),
    ("2 2 2\n1 1 1\n", None),
    ("2 2 1\n1 x 1\n", 2),
    ("2 2 1\n1 1 abc\n", 2),
    ("2 2 1\n1 1 nan\n", 2),
    ("2 2 1\n3 1 1\n", 2),
    ("2 2 1\n0 1 1\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        loads_matrix(text)
    if line is not None:
        assert info.value.line == line


def test_duplicate_message():
    with pytest.raises(ParseError, match="duplicate"):
        loads_matrix("1 1 2\n1 1 1\n1 1 1\n")
