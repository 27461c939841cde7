import random

import pytest
from hypothesis import given, settings, strategies as st

from pdcross.extension import extend_planar, is_extendable
from pdcross.model import drawings_equivalent
from pdcross.instances import _relabel, random_sketch
from pdcross.obstructions import (contains_obstruction, default_bases, find_subdivision_embedding,
                                  load_catalog, pd_subgraph_of_subdivision, predrawn_isomorphic)
from pdcross.solver import subdivide_once


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


def test_catalog_entries_are_obstructions(catalog):
    assert len(catalog) >= len(default_bases())
    for e in catalog.entries:
        assert extend_planar(e.instance) is None, e.name


def test_catalog_names_unique(catalog):
    assert len(set(catalog.names())) == len(catalog.names())


def test_k5_contains_k5(catalog, corpus):
    hit = contains_obstruction(corpus["k5"].instance, catalog)
    assert hit is not None and hit[0].base == "k5"


def test_planar_instances_have_no_obstruction(catalog, corpus):
    for name in ("k4", "fig4-framing", "triangle-point", "fig9-big"):
        assert contains_obstruction(corpus[name].instance, catalog) is None


def test_containment_is_reflexive(corpus):
    for ex in corpus.values():
        assert pd_subgraph_of_subdivision(ex.instance, ex.instance), ex.name


def test_subdividing_the_host_keeps_containment(corpus):
    for name in ("fig1-pair", "fig4-framing", "k33", "fig9-pair"):
        p = corpus[name].instance
        assert pd_subgraph_of_subdivision(p, subdivide_once(p)), name


def test_fig9_embedding_maps_triangle_onto_path(corpus):
    ex = corpus["fig9-pair"]
    emb = find_subdivision_embedding(ex.instance, ex.extras["partner"])
    assert emb is not None


def test_mirrored_triangles_isomorphic_after_relabelling(corpus):
    # swapping b1 and b2 turns one picture into the other, so only the identity map fails
    ex = corpus["fig1-pair"]
    assert predrawn_isomorphic(ex.instance, ex.extras["partner"])
    assert not drawings_equivalent(ex.instance.drawing, ex.extras["partner"].drawing)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_relabelled_copy_is_isomorphic_and_contained(seed):
    rng = random.Random(seed)
    s = random_sketch(rng, rng.randint(2, 6), rng.randint(1, 4))
    p, q = s.instance("a"), _relabel(rng, s).instance("b")
    assert predrawn_isomorphic(p, q)
    assert pd_subgraph_of_subdivision(p, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_obstruction_found_implies_not_extendable(seed):
    cat = load_catalog(verify=False)
    rng = random.Random(seed)
    p = random_sketch(rng, rng.randint(4, 7), rng.randint(2, 6), p_g=0.6).instance("r")
    if contains_obstruction(p, cat) is not None:
        assert not is_extendable(p)
