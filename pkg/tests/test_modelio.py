import json

import pytest

from qpk.errors import ChainOrderError, CoverageError, MeasurabilityError, ParseError, RowMassError
from qpk.modelio import FIXTURES, dumps, fixture_path, load_fixture, loads

from helpers import fixture


def doc(**fields):
    base = {"schema": "qpk-model/1", "n": 2, "partition": [[0], [1]], "kernel": [["1/1", "0/1"], ["0/1", "0/1"]]}
    base.update(fields)
    return json.dumps({k: v for k, v in base.items() if v is not None})


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_files_are_canonical(name):
    text = fixture_path(name).read_text()
    assert dumps(loads(text)) == text


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(name):
    m = load_fixture(name)
    assert loads(dumps(m)) == m


def test_f3_parses():
    pi, e = fixture("F3")
    assert e.blocks == ((0, 1), (2, 3)) and pi.n == 4


def test_integers_and_bare_numerators_accepted():
    m = loads(doc(kernel=[[1, "0"], [0, 0]]))
    assert dumps(m) == dumps(loads(doc()))


class TestErrors:
    def test_zero_denominator(self):
        with pytest.raises(ParseError) as info:
            loads(doc(kernel=[["1/0", "0"], ["0", "0"]]))
        assert info.value.where == "$.kernel[0][0]"

    def test_float_rejected(self):
        with pytest.raises(ParseError, match=r"\$\.kernel\[0\]\[0\]"):
            loads(doc(kernel=[[1.0, 0], [0, 0]]))

    def test_syntax_error_has_position(self):
        with pytest.raises(ParseError) as info:
            loads('{"schema": "qpk-model/1",\n "n": }')
        assert info.value.where == "2:7"

    def test_block_constancy_names_block(self):
        with pytest.raises(MeasurabilityError) as info:
            loads(doc(partition=[[0, 1]], kernel=[["1", "0"], ["0", "1"]]))
        assert info.value.block == (0, 1)
        assert "$.kernel" in str(info.value) and "[0, 1]" in str(info.value)

    def test_row_mass(self):
        with pytest.raises(RowMassError):
            loads(doc(kernel=[["1/2", "0"], ["0", "0"]]))

    def test_partition_coverage(self):
        with pytest.raises(CoverageError, match=r"\$\.partition"):
            loads(doc(partition=[[0]]))

    def test_schema(self):
        with pytest.raises(ParseError, match="schema"):
            loads(doc(schema="other"))

    def test_unknown_field(self):
        with pytest.raises(ParseError, match="extra"):
            loads(doc(extra=1))

    def test_kernel_without_partition(self):
        with pytest.raises(ParseError):
            loads(doc(partition=None))

    def test_chain_order(self):
        chain = {"partitions": [[[0, 1]], [[0], [1]]]}
        with pytest.raises(ChainOrderError, match=r"\$\.chain"):
            loads(doc(chain=chain))

    def test_wrong_length(self):
        with pytest.raises(ParseError, match=r"\$\.measures\.mu"):
            loads(doc(measures={"mu": ["1"]}))


def test_measures_and_chain_round_trip():
    text = doc(measures={"mu": ["1", "0"]},
               chain={"partitions": [[[0], [1]], [[0, 1]]], "reference": ["1/2", "1/2"]})
    m = loads(text)
    assert m.measures["mu"][0] == 1
    assert loads(dumps(m)) == m
