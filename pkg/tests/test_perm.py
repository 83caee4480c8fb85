import itertools
import random

import pytest

from minbase.perm import (
    DegreeMismatch,
    ParseError,
    PermGroup,
    compose,
    coset_action,
    format_perm,
    identity,
    inverse,
    is_identity,
    parse_perm,
    perm_order,
    sign,
)


def brute_elements(gens, degree):
    """Oracle: exhaustive closure of a generator set under composition."""
    elems = {identity(degree)}
    frontier = [identity(degree)]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    return elems


def test_parse_basic():
    assert parse_perm("(1,2)(3,4)", 4) == (1, 0, 3, 2)
    assert parse_perm("", 5) == identity(5)
    assert parse_perm("( )", 3) == identity(3)


def test_parse_three_cycle_order():
    p = parse_perm("(1,2,3)", 3)
    assert compose(compose(p, p), p) == identity(3)
    assert perm_order(p) == 3


def test_parse_right_to_left():
    # (1,2)(2,3) applies (2,3) first, giving the 3-cycle 1->2->3->1.
    assert parse_perm("(1,2)(2,3)", 3) == parse_perm("(1,2,3)", 3)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_perm("(1,5)", 4)
    with pytest.raises(ParseError):
        parse_perm("(1,2", 4)
    with pytest.raises(ParseError):
        parse_perm("(1,1)", 4)


def test_format_roundtrip():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(1, 10)
        images = list(range(n))
        rng.shuffle(images)
        p = tuple(images)
        assert parse_perm(format_perm(p), n) == p


def test_sign_and_order():
    assert sign(parse_perm("(1,2)", 4)) == -1
    assert sign(parse_perm("(1,2,3)", 4)) == 1
    assert perm_order(parse_perm("(1,2)(3,4,5)", 5)) == 6


def test_s4_order():
    G = PermGroup([parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)])
    assert G.order == 24


def test_a4_order():
    G = PermGroup([parse_perm("(1,2,3)", 4), parse_perm("(2,3,4)", 4)])
    assert G.order == 12


def test_trivial_group():
    G = PermGroup([], 6)
    assert G.order == 1
    assert G.contains(identity(6))


def test_contains():
    s4 = PermGroup([parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)])
    a4 = PermGroup([parse_perm("(1,2,3)", 4), parse_perm("(2,3,4)", 4)])
    assert s4.contains(parse_perm("(1,3)", 4))
    assert not a4.contains(parse_perm("(1,2)", 4))
    assert a4.contains(identity(4))
    with pytest.raises(DegreeMismatch):
        s4.contains(identity(5))


def test_order_matches_enumeration_random_groups():
    # Stabilizer-chain order vs exhaustive closure on 30 random small groups.
    rng = random.Random(2024)
    for _ in range(30):
        n = rng.randrange(3, 7)
        gens = []
        for _ in range(rng.randrange(1, 3)):
            images = list(range(n))
            rng.shuffle(images)
            gens.append(tuple(images))
        G = PermGroup(gens, n)
        oracle = brute_elements(gens, n)
        assert G.order == len(oracle)
        for p in itertools.permutations(range(n)):
            assert G.contains(p) == (p in oracle)


def test_elements_deterministic_and_complete():
    gens = [parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)]
    G1 = PermGroup(gens)
    G2 = PermGroup(gens)
    assert G1.base == G2.base
    assert G1.elements() == G2.elements()
    assert set(G1.elements()) == brute_elements(gens, 4)


def test_conjugate():
    H = PermGroup([parse_perm("(1,2)", 3)])
    K = H.conjugate(parse_perm("(2,3)", 3))
    assert set(K.elements()) == set(PermGroup([parse_perm("(1,3)", 3)]).elements())
    rng = random.Random(5)
    G = PermGroup([parse_perm("(1,2)", 5), parse_perm("(1,2,3,4,5)", 5)])
    sub = PermGroup([parse_perm("(1,2,3)", 5)])
    for _ in range(5):
        g = G.random_element(rng)
        assert sub.conjugate(g).order == sub.order
    ident_conj = H.conjugate(identity(3))
    assert set(ident_conj.elements()) == set(H.elements())


def test_coset_action_point_stabilizer():
    G = PermGroup([parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)])
    H = PermGroup([parse_perm("(1,2)", 4), parse_perm("(1,2,3)", 4)])  # stab of 4
    image, reps, _ = coset_action(G, H)
    assert image.degree == 4
    assert image.order == 24


def test_coset_action_index_two():
    G = PermGroup([parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)])
    A = PermGroup([parse_perm("(1,2,3)", 4), parse_perm("(2,3,4)", 4)])
    image, reps, _ = coset_action(G, A)
    assert image.degree == 2
    assert image.order == 2


def test_coset_action_s5_over_s4():
    G = PermGroup([parse_perm("(1,2)", 5), parse_perm("(1,2,3,4,5)", 5)])
    H = PermGroup([parse_perm("(1,2)", 5), parse_perm("(1,2,3,4)", 5)])
    image, reps, _ = coset_action(G, H)
    assert image.degree == 5
    assert image.order == 120
    # orbit structure: transitive on 5 points
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in image.generators:
            if g[x] not in orbit:
                orbit.add(g[x])
                frontier.append(g[x])
    assert orbit == set(range(5))


def test_coset_action_counts_cosets():
    # |G| = |H| * degree for several subgroups.
    G = PermGroup([parse_perm("(1,2)", 5), parse_perm("(1,2,3,4,5)", 5)])
    for gens in [["(1,2)"], ["(1,2,3)", "(1,2)"], ["(1,2,3,4,5)"]]:
        H = PermGroup([parse_perm(s, 5) for s in gens])
        image, reps, _ = coset_action(G, H)
        assert H.order * image.degree == G.order


def test_coset_action_rejects_non_subgroup():
    G = PermGroup([parse_perm("(1,2,3)", 4), parse_perm("(2,3,4)", 4)])
    H = PermGroup([parse_perm("(1,2)", 4)])
    with pytest.raises(ValueError):
        coset_action(G, H)


def test_group_file_roundtrip(tmp_path):
    from minbase.perm import read_group_file, write_group_file

    G = PermGroup([parse_perm("(1,2)", 6), parse_perm("(1,2,3,4,5,6)", 6)])
    path = tmp_path / "g.grp"
    write_group_file(path, G)
    H = read_group_file(path)
    assert H.degree == 6 and H.order == G.order
