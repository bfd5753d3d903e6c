import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgreduce import (
    ParityGame,
    PgSolverFormatError,
    Player,
    disjoint_union,
    parse_pgsolver,
    random_game,
    reward_leq,
    serialize_pgsolver,
    to_dot,
)


def test_reward_order_examples():
    assert reward_leq(0, 1)
    assert reward_leq(5, 5)
    assert reward_leq(3, 1)
    assert not reward_leq(1, 0)


def test_reward_order_is_total_order():
    prios = range(11)
    for n in prios:
        assert reward_leq(n, n)
        for m in prios:
            assert reward_leq(n, m) or reward_leq(m, n)
            if reward_leq(n, m) and reward_leq(m, n):
                assert n == m
            for k in prios:
                if reward_leq(n, m) and reward_leq(m, k):
                    assert reward_leq(n, k)


def test_player_opponent_involution():
    for p in Player:
        assert p.opponent.opponent is p


def test_parse_smallest_game():
    g = parse_pgsolver("parity 0;\n0 0 0 0;")
    assert g.vertex_count == 1
    assert g.priorities == (0,)
    assert g.owners == (Player.EVEN,)
    assert g.successors == ((0,),)


def test_parse_escape_edge_fixture(escape_edge):
    assert escape_edge.priorities == (1, 1, 1, 0)
    assert escape_edge.owners == (Player.ODD, Player.EVEN, Player.ODD, Player.EVEN)
    assert escape_edge.successors == ((2,), (2, 3), (2,), (3,))


def test_parse_reports_totality_violation():
    with pytest.raises(PgSolverFormatError, match="vertex 0 has no successors"):
        parse_pgsolver("parity 1;\n0 0 0 ;")


def test_parse_reports_dangling_successor():
    with pytest.raises(PgSolverFormatError, match="successor 7"):
        parse_pgsolver("parity 0;\n0 0 0 7;")


def test_parse_reports_duplicate_vertex():
    with pytest.raises(PgSolverFormatError, match="duplicate vertex id 0"):
        parse_pgsolver("0 0 0 0;\n0 1 1 0;")


def test_parse_reports_line_numbers():
    with pytest.raises(PgSolverFormatError, match="line 2"):
        parse_pgsolver("parity 1;\n0 0 broken 0;\n1 0 0 1;")


def test_parse_rejects_bad_owner_and_huge_priority():
    with pytest.raises(PgSolverFormatError, match="owner"):
        parse_pgsolver("0 0 2 0;")
    with pytest.raises(PgSolverFormatError, match="exceeds"):
        parse_pgsolver(f"0 {2**31} 0 0;")


def test_parse_is_whitespace_and_order_tolerant(escape_edge):
    scrambled = "parity 3;\n2 1 1    2;0 1 1 2;\n1 1 0 3 , 2;\n\n3 0 0 3;"
    assert parse_pgsolver(scrambled) == escape_edge


def test_parse_keeps_labels():
    g = parse_pgsolver('parity 1;\n0 0 0 1 "start";\n1 2 1 0,1 "sink loop";')
    assert g.labels == ("start", "sink loop")
    assert parse_pgsolver(serialize_pgsolver(g)) == g


def test_serialize_rejects_unrepresentable_labels():
    g = ParityGame((0,), (0,), ((0,),), labels=('a"b',))
    with pytest.raises(ValueError, match="not representable"):
        serialize_pgsolver(g)


def test_serialize_canonical_bytes():
    g = parse_pgsolver("parity 0;\n0 0 0 0;")
    assert serialize_pgsolver(g) == b"parity 0;\n0 0 0 0;\n"
    assert serialize_pgsolver(g) == serialize_pgsolver(g)


def test_serialize_round_trip_on_fixtures(all_fixture_games):
    for game in all_fixture_games.values():
        assert parse_pgsolver(serialize_pgsolver(game)) == game


@st.composite
def games(draw, max_n=6, max_priority=4):
    n = draw(st.integers(min_value=1, max_value=max_n))
    prios = draw(st.lists(st.integers(0, max_priority), min_size=n, max_size=n))
    owners = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    succs = [
        tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))))
        for _ in range(n)
    ]
    return ParityGame(tuple(prios), tuple(owners), tuple(succs))


@given(games())
@settings(max_examples=150, deadline=None)
def test_parse_serialize_identity(game):
    assert parse_pgsolver(serialize_pgsolver(game)) == game


def test_game_rejects_dead_ends_and_bad_indices():
    with pytest.raises(ValueError, match="no successors"):
        ParityGame((0,), (0,), ((),))
    with pytest.raises(ValueError, match="outside"):
        ParityGame((0,), (0,), ((1,),))
    with pytest.raises(ValueError, match="negative"):
        ParityGame((-1,), (0,), ((0,),))


def test_game_normalises_successors():
    g = ParityGame((0, 0), (0, 1), ((1, 0, 1), (0,)))
    assert g.successors == ((0, 1), (0,))


def test_random_game_is_deterministic():
    a = random_game(8, 3, (1, 3), 42)
    b = random_game(8, 3, (1, 3), 42)
    assert a == b
    assert serialize_pgsolver(a) == serialize_pgsolver(b)
    assert a != random_game(8, 3, (1, 3), 43)


def test_random_game_single_vertex_forces_loop():
    g = random_game(1, 0, (1, 1), 7)
    assert g.successors == ((0,),)


def test_random_game_invariants():
    for seed in range(30):
        g = random_game(6, 4, (2, 4), seed)
        for v in g.vertices:
            assert 2 <= len(g.successors[v]) <= 4
            assert 0 <= g.priorities[v] <= 4


def test_random_game_rejects_empty_degree_range():
    with pytest.raises(ValueError):
        random_game(4, 2, (3, 2), 0)
    with pytest.raises(ValueError):
        random_game(4, 2, (0, 2), 0)
    with pytest.raises(ValueError):
        random_game(4, 2, (1, 5), 0)


def test_to_dot_shapes(escape_edge):
    dot = to_dot(escape_edge)
    assert "v1 [shape=diamond" in dot
    assert "v0 [shape=box" in dot
    assert 'label="3:0"' in dot
    assert "v1 -> v3;" in dot


def test_disjoint_union_offsets(escape_edge, delayed_chain):
    u = disjoint_union(escape_edge, delayed_chain)
    off = escape_edge.vertex_count
    assert u.vertex_count == off + delayed_chain.vertex_count
    assert u.successors[off] == (off + 1,)
    assert u.priorities[: off] == escape_edge.priorities
