"""Frozen fixture games used across the suite.

Each fixture is kept as PGSolver text so the parser is exercised on every
test run.  The names describe what the game exhibits:

* ``FAKE_DIVERGENCE``: a cluster of priority-0 vertices that can cycle among
  each other, yet neither player can force staying there forever.
* ``ESCAPE_EDGE``: one vertex has an extra escape edge to a good self-loop,
  making it strictly above its neighbour in the direct simulation preorder.
* ``DELAYED_CHAIN``: a three-vertex chain whose priority mismatches can only
  be matched with delay.
* ``CROSS_OWNER``: vertices owned by different players that are governed
  bisimilar, next to same-owner vertices that are not.
* ``SINGLE_MOVE_OWNERS``: two single-move vertices with different owners that
  only governed bisimilarity can merge.
* ``CYCLE_VS_LOOP``: a two-vertex cycle next to a self-loop; strongly
  bisimilar but not isomorphic.
* ``BIASED_GAP``: a two-vertex game separating the biased delayed simulation
  kernels from both the direct and the plain delayed kernel.
"""
from pgreduce import parse_pgsolver

FAKE_DIVERGENCE = """\
parity 4;
0 0 1 1,2;
1 0 0 0,2;
2 1 1 2;
3 0 0 2;
4 0 0 3;
"""

ESCAPE_EDGE = """\
parity 3;
0 1 1 2;
1 1 0 2,3;
2 1 1 2;
3 0 0 3;
"""

DELAYED_CHAIN = """\
parity 2;
0 0 0 1;
1 1 0 2;
2 0 1 2;
"""

CROSS_OWNER = """\
parity 6;
0 0 0 2;
1 0 0 2,4;
2 1 0 3,5;
3 1 0 2,5;
4 1 0 4;
5 2 1 5;
6 0 1 2;
"""

SINGLE_MOVE_OWNERS = """\
parity 2;
0 0 1 1,2;
1 1 1 1;
2 1 0 2;
"""

CYCLE_VS_LOOP = """\
parity 2;
0 0 0 1;
1 0 0 0;
2 0 0 2;
"""

BIASED_GAP = """\
parity 1;
0 1 0 0,1;
1 2 1 0;
"""

ALL_TEXTS = {
    "fake_divergence": FAKE_DIVERGENCE,
    "escape_edge": ESCAPE_EDGE,
    "delayed_chain": DELAYED_CHAIN,
    "cross_owner": CROSS_OWNER,
    "single_move_owners": SINGLE_MOVE_OWNERS,
    "cycle_vs_loop": CYCLE_VS_LOOP,
    "biased_gap": BIASED_GAP,
}


def load(name: str):
    return parse_pgsolver(ALL_TEXTS[name])
