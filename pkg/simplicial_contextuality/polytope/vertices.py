"""Vertices of polytopes of simplicial distributions.

Vertices are found as basic feasible solutions of {A x = b, x >= 0}: every set of rank(A) columns with a
nonsingular square system gives one candidate, kept when it is nonnegative.
"""
import logging
import multiprocessing
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, islice
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from simplicial_contextuality.distribution.simp_dist import SimpDist, is_strongly_contextual, require_valid
from simplicial_contextuality.exceptions import ContextualityError, UnsupportedError
from simplicial_contextuality.local_config import NUM_WORKERS, VERTEX_CAP
from simplicial_contextuality.polytope import linalg
from simplicial_contextuality.polytope.contextuality import contextual_fraction
from simplicial_contextuality.polytope.polytope import Equation, distribution_polytope
from simplicial_contextuality.semiring import NONNEG_RATIONAL, Semiring
from simplicial_contextuality.simplicial.sset import SimplicialMap, SSet2, Target

log = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]
CHUNK_SIZE = 2000


@dataclass
class VertexReport:
    coordinates: SimpDist
    is_deterministic: bool
    is_strongly_contextual: bool
    contextual_fraction: Fraction


@dataclass
class BasisTaskArgs:
    rows: List[List[int]]
    rhs: List[int]
    bases: List[Tuple[int, ...]]


@dataclass
class WorkerFailure:
    worker: str
    message: str


def solve_bases(task: BasisTaskArgs) -> List[Point]:
    """The nonnegative basic solutions among a batch of candidate bases."""
    n = len(task.rows[0]) if task.rows else 0
    found = []
    for basis in task.bases:
        square = [[row[j] for j in basis] for row in task.rows]
        x_basis = linalg.bareiss_solve(square, task.rhs)
        if x_basis is None or any(v < 0 for v in x_basis):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(basis, x_basis):
            x[j] = v
        found.append(tuple(x))
    return found


class VertexWorkerMP(multiprocessing.Process):
    """A worker that solves batches of candidate bases."""

    def __init__(self, task_queue: multiprocessing.JoinableQueue, result_queue: multiprocessing.Queue):
        multiprocessing.Process.__init__(self)
        self.task_queue = task_queue
        self.result_queue = result_queue

    def run(self):
        log.debug("worker %s running." % self.name)
        while True:
            task = self.task_queue.get()
            if task is None:
                # Poison pill means shutdown
                self.task_queue.task_done()
                log.debug('%s: Exiting' % self.name)
                break
            try:
                self.result_queue.put(solve_bases(task))
            except Exception as e:
                log.error(f'unknown exception occured: {e}')
                self.result_queue.put(WorkerFailure(self.name, f'{type(e).__name__}: {e}'))
            finally:
                self.task_queue.task_done()


def _chunks(items: Iterable, size: int) -> Iterable[List]:
    it = iter(items)
    while chunk := list(islice(it, size)):
        yield chunk


def _solve_parallel(rows: List[List[int]], rhs: List[int], bases: Iterable, num_workers: int) -> List[Point]:
    task_queue: multiprocessing.JoinableQueue = multiprocessing.JoinableQueue()
    result_queue: multiprocessing.Queue = multiprocessing.Queue()
    workers = [VertexWorkerMP(task_queue, result_queue) for i in range(num_workers)]
    for w in workers:
        w.start()

    num_jobs = 0
    for chunk in _chunks(bases, CHUNK_SIZE):
        task_queue.put(BasisTaskArgs(rows, rhs, chunk))
        num_jobs += 1
    for i in range(num_workers):
        task_queue.put(None)
    task_queue.join()

    points: List[Point] = []
    failures: List[WorkerFailure] = []
    while num_jobs:
        result = result_queue.get()
        if isinstance(result, WorkerFailure):
            failures.append(result)
        else:
            points.extend(result)
        num_jobs -= 1
    if failures:
        first = failures[0]
        raise ContextualityError(
            f"vertex enumeration failed on {len(failures)} batch(es), first in {first.worker}: {first.message}"
        )
    return points


def basic_feasible_solutions(
    A: Sequence[Sequence], b: Sequence, cap: int = VERTEX_CAP, num_workers: int = NUM_WORKERS
) -> List[Point]:
    """All vertices of {A x = b, x >= 0}, sorted and without duplicates."""
    n = len(A[0]) if A else 0
    if n > cap:
        raise UnsupportedError(f"vertex enumeration over {n} variables exceeds the cap of {cap}")
    R, pivots = linalg.rref([list(row) + [rhs] for row, rhs in zip(A, b)], n + 1)
    if pivots and pivots[-1] == n:
        return []
    rows, rhs = linalg.integer_rows([row[:n] for row in R], [row[n] for row in R])
    r = len(rows)
    t0 = time.perf_counter()
    bases = combinations(range(n), r)
    if num_workers > 1:
        points = _solve_parallel(rows, rhs, bases, num_workers)
    else:
        points = solve_bases(BasisTaskArgs(rows, rhs, list(bases)))
    vertices = sorted(set(points))
    log.info(
        'vertex enumeration: %s variables, rank %s, %s bases, %s vertices in %.2f secs',
        n,
        r,
        comb(n, r),
        len(vertices),
        time.perf_counter() - t0,
    )
    return vertices


@lru_cache(maxsize=16)
def vertex_points(space: SSet2, target: Target, cap: int = VERTEX_CAP, num_workers: int = NUM_WORKERS):
    P = distribution_polytope(space, target)
    A, b = P.equality_rows()
    return tuple(basic_feasible_solutions(A, b, cap, num_workers))


def _require_rational(semiring: Semiring) -> None:
    if semiring != NONNEG_RATIONAL:
        raise UnsupportedError(f"vertices are computed over the rational semiring, not {semiring.name}")


def enumerate_vertices(
    space: SSet2,
    target: Target,
    semiring: Semiring = NONNEG_RATIONAL,
    cap: int = VERTEX_CAP,
    num_workers: int = NUM_WORKERS,
) -> List[VertexReport]:
    """Every extreme point of the polytope of simplicial distributions, with its contextuality flags."""
    _require_rational(semiring)
    P = distribution_polytope(space, target)
    reports = []
    for x in vertex_points(space, target, cap, num_workers):
        p = require_valid(P.to_simp_dist(x))
        reports.append(VertexReport(p, p.is_deterministic, is_strongly_contextual(p), contextual_fraction(p)))
    return reports


def is_vertex(p: SimpDist) -> bool:
    """p is extreme when the columns of the equality system on its support are independent."""
    _require_rational(p.semiring)
    P = distribution_polytope(p.space, p.target)
    x = P.coordinates(p)
    support = [j for j, v in enumerate(x) if v]
    A, _ = P.equality_rows()
    columns = [[row[j] for j in support] for row in A]
    return linalg.rank(columns, len(support)) == len(support)


def fiber_vertices(
    f: SimplicialMap, q: SimpDist, cap: int = VERTEX_CAP, num_workers: int = NUM_WORKERS
) -> List[SimpDist]:
    """Vertices of {p on the codomain of f : restrict(p, f) = q}."""
    _require_rational(q.semiring)
    P = distribution_polytope(f.codomain, q.target)
    A, b = P.equality_rows()
    extra: List[Equation] = P.restriction_equations(f, q)
    A = A + [[expr.get(j, 0) for j in range(P.num_vars)] for expr, _ in extra]
    b = b + [rhs for _, rhs in extra]
    return [require_valid(P.to_simp_dist(x)) for x in basic_feasible_solutions(A, b, cap, num_workers)]


def vertex_report(p: SimpDist) -> Optional[VertexReport]:
    """The report for p when it is a vertex, else None."""
    if not is_vertex(p):
        return None
    return VertexReport(p, p.is_deterministic, is_strongly_contextual(p), contextual_fraction(p))
