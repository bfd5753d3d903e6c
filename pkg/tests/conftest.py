import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import fixture_games
from pgreduce import ParityGame, random_game


@pytest.fixture(scope="session")
def fake_divergence():
    return fixture_games.load("fake_divergence")


@pytest.fixture(scope="session")
def escape_edge():
    return fixture_games.load("escape_edge")


@pytest.fixture(scope="session")
def delayed_chain():
    return fixture_games.load("delayed_chain")


@pytest.fixture(scope="session")
def cross_owner():
    return fixture_games.load("cross_owner")


@pytest.fixture(scope="session")
def single_move_owners():
    return fixture_games.load("single_move_owners")


@pytest.fixture(scope="session")
def cycle_vs_loop():
    return fixture_games.load("cycle_vs_loop")


@pytest.fixture(scope="session")
def biased_gap():
    return fixture_games.load("biased_gap")


@pytest.fixture(scope="session")
def all_fixture_games():
    return {name: fixture_games.load(name) for name in fixture_games.ALL_TEXTS}


def small_random_games(count, max_n, max_priority=3, max_degree=3, start_n=2):
    """Deterministic corpus of random games, cycling through the sizes."""
    games = []
    sizes = list(range(start_n, max_n + 1))
    for seed in range(count):
        n = sizes[seed % len(sizes)]
        games.append(random_game(n, max_priority, (1, min(max_degree, n)), seed))
    return games


def _canonical_form(prios, owners, succs):
    n = len(prios)
    best = None
    for perm in itertools.permutations(range(n)):
        p2 = [0] * n
        o2 = [0] * n
        s2 = [()] * n
        for v in range(n):
            p2[perm[v]] = prios[v]
            o2[perm[v]] = owners[v]
            s2[perm[v]] = tuple(sorted(perm[u] for u in succs[v]))
        key = (tuple(p2), tuple(o2), tuple(s2))
        if best is None or key < best:
            best = key
    return best


def exhaustive_games(max_n=3, max_priority=2, max_degree=2):
    """Every total game up to the given bounds, one per isomorphism class.

    All properties the suite checks are invariant under vertex renaming, so
    checking one representative per class checks the whole space.
    """
    reps = set()
    for n in range(1, max_n + 1):
        verts = range(n)
        succ_choices = [
            c for k in range(1, max_degree + 1) for c in itertools.combinations(verts, k)
        ]
        per_vertex = [
            (p, o, s)
            for p in range(max_priority + 1)
            for o in (0, 1)
            for s in succ_choices
        ]
        for combo in itertools.product(per_vertex, repeat=n):
            prios = tuple(c[0] for c in combo)
            owners = tuple(c[1] for c in combo)
            succs = tuple(c[2] for c in combo)
            reps.add(_canonical_form(prios, owners, succs))
    return [ParityGame(p, o, s) for p, o, s in sorted(reps)]


@pytest.fixture(scope="session")
def exhaustive_corpus():
    return exhaustive_games()


@pytest.fixture(scope="session")
def random_corpus():
    # 200 seeded games with up to 8 vertices.
    return small_random_games(200, max_n=8, max_priority=3, max_degree=3, start_n=3)
