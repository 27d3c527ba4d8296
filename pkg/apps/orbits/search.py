"""
Bounded breadth-first search in Hurwitz orbits.

States are tuples of (a, b, c, d) entry tuples so that frontiers can be
shipped to worker processes. The search is level-synchronous: a whole
frontier is expanded (in contiguous chunks when several workers are used)
and the children are merged back in frontier order, so a run with any
number of workers visits the same states in the same order as a
single-worker run.
"""

import logging
from dataclasses import dataclass, replace
from multiprocessing import Pool

from django.conf import settings

from apps.common.exceptions import BudgetExceeded, InvalidParameter
from apps.factorization.factorizations import (
    Factorization,
    HurwitzMove,
    MoveDirection,
    canonical_form,
)
from apps.factorization.normal_forms import certificate
from apps.sl2z.matrices import Sl2zElement

logger = logging.getLogger(__name__)

RIGHT, LEFT = MoveDirection.RIGHT, MoveDirection.LEFT


@dataclass(frozen=True)
class OrbitReport:
    states_visited: int
    canonical_reached: bool
    # False when the node budget ran out before the frontier emptied
    frontier_exhausted: bool
    witness_moves: tuple[HurwitzMove, ...] | None
    pruned_by_bound: int
    entry_bound: int
    escalations: int = 0

    @property
    def inconclusive(self) -> bool:
        return not self.canonical_reached


def _mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _inv(x):
    a, b, c, d = x
    return (d, -b, -c, a)


def _within(x, bound):
    return max(abs(x[0]), abs(x[1]), abs(x[2]), abs(x[3])) <= bound


def neighbors(state, bound):
    """
    (index, direction, child) for every single move out of `state`, index
    ascending and right before left, children with an entry above `bound`
    dropped. Also returns the number dropped.
    """
    children = []
    pruned = 0
    for i in range(len(state) - 1):
        g, h = state[i], state[i + 1]
        for direction, pair in (
            (RIGHT, (_mul(_mul(g, h), _inv(g)), g)),
            (LEFT, (h, _mul(_mul(_inv(h), g), h))),
        ):
            if not _within(pair[0], bound) or not _within(pair[1], bound):
                pruned += 1
                continue
            children.append((i + 1, direction, state[:i] + pair + state[i + 2:]))
    return children, pruned


def _expand(job):
    frontier, bound = job
    expanded = []
    pruned = 0
    for state in frontier:
        children, dropped = neighbors(state, bound)
        pruned += dropped
        expanded.append((state, children))
    return expanded, pruned


def _chunks(frontier, jobs):
    size = -(-len(frontier) // jobs)
    return [frontier[start:start + size] for start in range(0, len(frontier), size)]


def as_state(F: Factorization):
    return tuple(entry.entries for entry in F)


def as_factorization(state) -> Factorization:
    return Factorization(tuple(Sl2zElement.from_entries(entries) for entries in state))


def _witness(parents, state):
    moves = []
    while parents[state] is not None:
        state, move = parents[state]
        moves.append(move)
    return tuple(reversed(moves))


def bounded_search(start, target, bound, node_budget, pool=None, jobs=1):
    """
    Breadth-first search from `start` to `target` (None searches the whole
    bounded orbit). Returns (parents, canonical_reached, frontier_exhausted,
    pruned) where `parents` maps every visited state to (parent, move).
    """
    parents = {start: None}
    if start == target:
        return parents, True, True, 0
    frontier = [start]
    pruned = 0
    while frontier:
        if pool is not None and len(frontier) > 1:
            results = pool.map(_expand, [(chunk, bound) for chunk in _chunks(frontier, jobs)])
        else:
            results = [_expand((frontier, bound))]
        next_frontier = []
        for expanded, dropped in results:
            pruned += dropped
            for parent, children in expanded:
                for index, direction, child in children:
                    if child in parents:
                        continue
                    if len(parents) >= node_budget:
                        return parents, False, False, pruned
                    parents[child] = (parent, HurwitzMove(index, direction))
                    if child == target:
                        return parents, True, False, pruned
                    next_frontier.append(child)
        frontier = next_frontier
    return parents, False, True, pruned


def enumerate_orbit(
    F: Factorization,
    entry_bound: int | None = None,
    node_budget: int | None = None,
    jobs: int | None = None,
    ceiling: int | None = None,
) -> OrbitReport:
    """
    Search the Hurwitz orbit of F for the canonical form of its certificate,
    never holding an entry above `entry_bound` in absolute value.

    An exhausted frontier without the canonical form doubles the bound and
    retries, up to `ceiling`, unless the bound pruned nothing. Running out
    of `node_budget` is reported with frontier_exhausted = False and is not
    retried.
    """
    options = settings.MONODROMY
    entry_bound = options["ORBIT_ENTRY_BOUND"] if entry_bound is None else entry_bound
    node_budget = options["ORBIT_NODE_BUDGET"] if node_budget is None else node_budget
    jobs = options["ORBIT_JOBS"] if jobs is None else jobs
    ceiling = options["ORBIT_ENTRY_BOUND_CEILING"] if ceiling is None else ceiling

    if node_budget < 1:
        raise InvalidParameter(f"node budget must be at least 1, got {node_budget}")
    if jobs < 1:
        raise InvalidParameter(f"jobs must be at least 1, got {jobs}")
    if entry_bound < F.height:
        raise InvalidParameter(
            f"entry bound {entry_bound} is below the largest entry {F.height} of the input"
        )

    p, q, k = certificate(F)
    start, target = as_state(F), as_state(canonical_form(p, q, k))
    logger.info(
        "orbit search: length %s, certificate (%s,%s,%s), bound %s, budget %s, jobs %s",
        len(F), p, q, k, entry_bound, node_budget, jobs,
    )

    pool = Pool(jobs) if jobs > 1 else None
    try:
        bound = entry_bound
        escalations = 0
        while True:
            parents, reached, exhausted, pruned = bounded_search(
                start, target, bound, node_budget, pool=pool, jobs=jobs
            )
            report = OrbitReport(
                states_visited=len(parents),
                canonical_reached=reached,
                frontier_exhausted=exhausted,
                witness_moves=_witness(parents, target) if reached else None,
                pruned_by_bound=pruned,
                entry_bound=bound,
            )
            # nothing pruned: the whole orbit was searched
            if reached or not exhausted or not pruned or bound >= ceiling:
                break
            bound = min(2 * bound, ceiling)
            escalations += 1
            logger.info("frontier exhausted, raising entry bound to %s", bound)
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    report = replace(report, escalations=escalations)
    logger.info(
        "orbit search finished: %s states, reached=%s, pruned %s",
        report.states_visited, report.canonical_reached, report.pruned_by_bound,
    )
    return report


def bounded_orbit(F: Factorization, entry_bound: int, node_budget: int | None = None) -> frozenset:
    """All states reachable from F without an entry above `entry_bound`."""
    if node_budget is None:
        node_budget = settings.MONODROMY["ORBIT_NODE_BUDGET"]
    parents, _, exhausted, _ = bounded_search(as_state(F), None, entry_bound, node_budget)
    if not exhausted:
        raise BudgetExceeded(f"orbit of {F} has more than {node_budget} states within bound {entry_bound}")
    return frozenset(parents)
