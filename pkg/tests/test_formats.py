import random

import pytest
from hypothesis import given, settings, strategies as st

from pdcross.formats import (ParseError, parse_pdg, parse_witness, serialize_pdg, serialize_witness,
                             structurally_equal)
from pdcross.instances import random_sketch
from pdcross.model import is_conforming
from pdcross.solver import solve_pdcr


def test_corpus_round_trip(corpus):
    for ex in corpus.values():
        p = ex.instance
        assert structurally_equal(parse_pdg(serialize_pdg(p)), p), ex.name


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_random_round_trip(seed):
    rng = random.Random(seed)
    p = random_sketch(rng, rng.randint(2, 7), rng.randint(1, 5)).instance("r")
    assert structurally_equal(parse_pdg(serialize_pdg(p)), p)


def test_weights_and_flags_survive():
    text = "pdg v1\nv a\nv b\ne e a b X w=4\n"
    p = parse_pdg(text)
    e = p.graph.edge("e")
    assert e.weight == 4 and e.uncrossable and not e.predrawn
    assert "w=4" in serialize_pdg(p)


@pytest.mark.parametrize("text", ["", "pdg v2\n", "pdg v1\ne e a b\n", "pdg v1\nv a\nrot a x.0\n",
                                  "pdg v1\nv a\nv b\ne e a b H\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pdg(text)


def test_witness_round_trip(corpus):
    p = corpus["fig3-instance"].instance
    w = solve_pdcr(p).witness
    w2 = parse_witness(serialize_witness(w), p.graph)
    assert w2.cost == w.cost == 1
    assert is_conforming(w2, p, 1)
