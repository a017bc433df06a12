import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toursub.core import (
    CutSplit,
    Tournament,
    bits_of,
    blowup_cyclic_triangle,
    degree_profile,
    format_tournament,
    generate,
    induced,
    low_in_degree_vertices,
    low_out_degree_vertices,
    mask_of,
    parse_tournament,
    random_tournament,
    rotational_tournament,
    split_by_cut,
    strong_components,
    tournament_hash,
    transitive_tournament,
)


def cyclic_triangle():
    return Tournament([0b010, 0b100, 0b001])


# --- generators -----------------------------------------------------------


def test_transitive_degrees():
    t = transitive_tournament(3)
    assert [t.out_degree(v) for v in t.vertices()] == [2, 1, 0]


def test_rotational_regular():
    t = rotational_tournament(5)
    assert all(t.out_degree(v) == 2 and t.in_degree(v) == 2 for v in t.vertices())


@pytest.mark.parametrize("n", [1, 3, 7, 15, 21])
def test_rotational_is_half_regular(n):
    t = rotational_tournament(n)
    h = (n - 1) // 2
    assert all(t.out_degree(v) == h for v in t.vertices())


def test_rotational_even_rejected():
    with pytest.raises(ValueError):
        rotational_tournament(6)


def test_nonpositive_sizes_rejected():
    for gen in (transitive_tournament, lambda n: random_tournament(n, 0)):
        with pytest.raises(ValueError):
            gen(0)
    with pytest.raises(ValueError):
        blowup_cyclic_triangle(0)


def test_blowup_degrees_match_first_principles():
    t = blowup_cyclic_triangle(4)
    assert t.n == 12
    # Independent recount straight from the defining rule.
    def beats(i, j):
        ci, pi = divmod(i, 4)
        cj, pj = divmod(j, 4)
        if ci == cj:
            return pi < pj
        return (cj - ci) % 3 == 1

    for i in range(12):
        expected = sum(1 for j in range(12) if j != i and beats(i, j))
        assert t.out_degree(i) == expected
    degs = [t.out_degree(v) for v in t.vertices()]
    assert min(degs) == 4 and max(degs) == 7


def test_random_deterministic_and_seeded():
    a = random_tournament(40, 123)
    b = random_tournament(40, 123)
    c = random_tournament(40, 124)
    assert a == b
    assert a != c
    with pytest.raises(ValueError):
        generate("random", 10)  # seed required


def test_generate_dispatch():
    assert generate("transitive", 4) == transitive_tournament(4)
    assert generate("rotational", 7) == rotational_tournament(7)
    assert generate("blowup_cyclic_triangle", 2) == blowup_cyclic_triangle(2)
    assert generate("random", 9, seed=5) == random_tournament(9, 5)
    with pytest.raises(ValueError):
        generate("nope", 3)


def any_tournament(draw):
    kind = draw(st.sampled_from(["random", "transitive", "rotational", "blowup"]))
    if kind == "random":
        return random_tournament(draw(st.integers(2, 40)), draw(st.integers(0, 2**32)))
    if kind == "transitive":
        return transitive_tournament(draw(st.integers(2, 40)))
    if kind == "rotational":
        return rotational_tournament(2 * draw(st.integers(1, 20)) + 1)
    return blowup_cyclic_triangle(draw(st.integers(1, 13)))


tournaments = st.composite(any_tournament)()


@given(tournaments)
@settings(max_examples=60, deadline=None)
def test_handshake(t):
    profile = degree_profile(t)
    assert all(
        o + i == t.n - 1 for o, i in zip(profile.out_degrees, profile.in_degrees)
    )
    assert sum(profile.out_degrees) == t.n * (t.n - 1) // 2
    t.validate()


# --- degree profile and low-degree sets ------------------------------------


def test_degree_profile_examples():
    p = degree_profile(transitive_tournament(4))
    assert p.min_out == 0 and p.min_in == 0
    p = degree_profile(rotational_tournament(7))
    assert p.min_out == 3 and p.min_in == 3
    p = degree_profile(random_tournament(10, 1))
    assert sum(p.out_degrees) == 45


def test_low_in_degree_examples():
    assert low_in_degree_vertices(transitive_tournament(5), 1) == {0, 1}
    assert low_in_degree_vertices(rotational_tournament(7), 2) == frozenset()
    big = low_in_degree_vertices(random_tournament(50, 7), 10)
    assert len(big) <= 21
    with pytest.raises(ValueError):
        low_in_degree_vertices(cyclic_triangle(), -1)


@given(tournaments, st.integers(0, 45))
@settings(max_examples=60, deadline=None)
def test_low_degree_count_bound(t, bound):
    # At most 2*bound+1 vertices can have in-degree (out-degree) <= bound.
    assert len(low_in_degree_vertices(t, bound)) <= 2 * bound + 1
    assert len(low_out_degree_vertices(t, bound)) <= 2 * bound + 1


# --- induced ----------------------------------------------------------------


def test_induced_examples():
    t = induced(transitive_tournament(5), [0, 2, 4])
    assert t == transitive_tournament(3)
    assert t.labels == (0, 2, 4)

    t5 = transitive_tournament(5)
    assert induced(t5, range(5)) == t5

    sub = induced(rotational_tournament(7), [0, 1, 2])
    assert sorted((sub.out_degree(v) for v in sub.vertices()), reverse=True) == [2, 1, 0]


def test_induced_label_composition():
    root = transitive_tournament(8)
    mid = induced(root, [1, 3, 4, 6])
    leaf = induced(mid, [0, 2, 3])
    assert leaf.labels == (1, 4, 6)


def test_induced_errors():
    with pytest.raises(ValueError):
        induced(transitive_tournament(3), [])
    with pytest.raises(ValueError):
        induced(transitive_tournament(3), [5])


# --- strong components and cuts ---------------------------------------------


def test_strong_components_transitive_order():
    comps = strong_components(transitive_tournament(4))
    assert comps == [frozenset({0}), frozenset({1}), frozenset({2}), frozenset({3})]


def test_strong_components_cyclic():
    assert strong_components(cyclic_triangle()) == [frozenset({0, 1, 2})]


def _reachable(t, start, universe):
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in bits_of(t.out_mask(v) & universe):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def test_split_by_cut_examples():
    assert split_by_cut(cyclic_triangle(), []) is None
    cut = split_by_cut(transitive_tournament(3), [1])
    assert cut == CutSplit(cut=frozenset({1}), source=frozenset({0}), sink=frozenset({2}))

    b = blowup_cyclic_triangle(2)
    # Independent strong-connectivity check: the class cycle reaches all.
    assert all(len(_reachable(b, v, b.full_mask)) == b.n for v in b.vertices())
    assert split_by_cut(b, []) is None

    with pytest.raises(ValueError):
        split_by_cut(transitive_tournament(3), [0, 1])


@given(tournaments, st.data())
@settings(max_examples=40, deadline=None)
def test_split_by_cut_orientation(t, data):
    if t.n < 3:
        return
    size = data.draw(st.integers(0, t.n - 2))
    cut = data.draw(st.sets(st.integers(0, t.n - 1), min_size=size, max_size=size))
    if t.n - len(cut) < 2:
        return
    res = split_by_cut(t, cut)
    universe = t.full_mask & ~mask_of(cut)
    comps = strong_components(t, universe)
    assert (res is None) == (len(comps) == 1)
    if res is not None:
        assert res.source and res.sink
        assert res.source | res.sink | res.cut == set(range(t.n))
        for s in res.source:
            for w in res.sink:
                assert t.has_edge(s, w)


def test_split_by_cut_prefix():
    t = transitive_tournament(4)
    res = split_by_cut(t, [], prefix=2)
    assert res.source == {0, 1} and res.sink == {2, 3}
    res = split_by_cut(t, [], prefix=99)  # clamped to keep the sink nonempty
    assert res.sink == {3}


# --- text format -------------------------------------------------------------


def test_format_parse_round_trip():
    for t in (cyclic_triangle(), transitive_tournament(6), random_tournament(17, 3)):
        assert parse_tournament(format_tournament(t)) == t


def test_parse_errors():
    good = format_tournament(transitive_tournament(3))
    with pytest.raises(ValueError):
        parse_tournament(good.replace("tournament v1", "tournament v2"))
    with pytest.raises(ValueError):
        parse_tournament("tournament v1\n2\n-x\n0-\n")
    # both directions claimed
    with pytest.raises(ValueError):
        parse_tournament("tournament v1\n2\n-1\n1-\n")
    # diagonal must be '-'
    with pytest.raises(ValueError):
        parse_tournament("tournament v1\n2\n11\n0-\n")
    with pytest.raises(ValueError):
        parse_tournament("tournament v1\n3\n-10\n0-1\n")


def test_hash_is_stable_and_distinguishes():
    a = tournament_hash(rotational_tournament(7))
    b = tournament_hash(rotational_tournament(7))
    c = tournament_hash(transitive_tournament(7))
    assert a == b != c
    assert len(a) == 64
