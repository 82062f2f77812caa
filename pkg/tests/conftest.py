import itertools
from collections import deque

import pytest

from listupdate.core import RequestSequence


def seq(order, requests):
    return RequestSequence(tuple(order), tuple(requests))


def bfs_swap_distance(src, dst):
    """Shortest number of adjacent transpositions, by breadth-first search."""
    src, dst = tuple(src), tuple(dst)
    seen = {src: 0}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        if cur == dst:
            return seen[cur]
        for p in range(len(cur) - 1):
            nxt = list(cur)
            nxt[p], nxt[p + 1] = nxt[p + 1], nxt[p]
            nxt = tuple(nxt)
            if nxt not in seen:
                seen[nxt] = seen[cur] + 1
                queue.append(nxt)
    raise AssertionError("unreachable")


def inversions(a, b):
    rank = {x: i for i, x in enumerate(b)}
    return sum(
        1 for i, j in itertools.combinations(range(len(a)), 2) if rank[a[i]] > rank[a[j]]
    )


@pytest.fixture
def xy():
    return (0, 1)


# -- acceptance summary -------------------------------------------------------

_verdicts = []


@pytest.fixture
def verdict():
    """Record one acceptance line, then fail the test if it did not pass."""
    def judge(number, name, ok, detail, elapsed, limit):
        timed = elapsed < limit
        passed = bool(ok) and timed
        _verdicts.append((number, passed, name, f"{detail}; {elapsed:.3f}s (limit {limit}s)"))
        assert ok, f"criterion {number} {name}: {detail}"
        assert timed, f"criterion {number} {name}: {elapsed:.3f}s exceeds {limit}s"
    return judge


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, name, detail in sorted(_verdicts):
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {name}: {detail}")
