"""Labeled seeds, mutation by the exchange relation, and exchange-graph search.

A path is a tuple of 1-based directions describing a walk from the initial
vertex ``t0`` of the n-regular tree.  Paths are kept reduced: consecutive
equal letters cancel, since mutating twice in the same direction is the
identity.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .laurent import LaurentPolynomial, exact_div
from .matrices import ExchangeMatrix, mutate

log = logging.getLogger(__name__)

Path = tuple[int, ...]

DEFAULT_MAX_DEPTH = 12
DEFAULT_MAX_SEEDS = 100_000


def reduce_path(word: Iterable[int]) -> Path:
    """Cancel adjacent repeated letters until none remain."""
    out: list[int] = []
    for k in word:
        k = int(k)
        if out and out[-1] == k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def is_reduced(word: Sequence[int]) -> bool:
    return all(a != b for a, b in zip(word, word[1:]))


def parse_path(text: str) -> Path:
    """Parse ``"1,2,1"`` (spaces allowed, empty string is the empty path)."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)


def paths_up_to(n: int, depth: int) -> Iterator[Path]:
    """All reduced paths of length ``<= depth``, shortest first, then lexicographic."""
    level: list[Path] = [()]
    yield ()
    for _ in range(depth):
        nxt = []
        for p in level:
            for k in range(1, n + 1):
                if not p or p[-1] != k:
                    nxt.append(p + (k,))
        yield from nxt
        level = nxt


def paths_of_length(n: int, length: int) -> Iterator[Path]:
    """Reduced paths of exactly ``length`` letters, in lexicographic order."""
    if length == 0:
        yield ()
        return

    def grow(prefix: Path) -> Iterator[Path]:
        if len(prefix) == length:
            yield prefix
            return
        for k in range(1, n + 1):
            if not prefix or prefix[-1] != k:
                yield from grow(prefix + (k,))

    yield from grow(())


def rooted_paths(n: int, depth: int, root_depth: int) -> Iterator[tuple[Path, Path]]:
    """Pairs ``(root, path)`` with ``|root| <= root_depth`` and ``|root| + |path| <= depth``.

    Ordered by total length, then root, then path (each shortlex).  The root
    moves the initial vertex away from t0, so pairs of tree vertices other
    than ``(t0, t)`` are reached.
    """
    for total in range(depth + 1):
        for a in range(min(total, root_depth) + 1):
            for root in paths_of_length(n, a):
                for path in paths_of_length(n, total - a):
                    yield root, path


def path_from_neighbor(k: int, path: Path) -> Path:
    """Re-root ``path`` (a walk from t0) at t1, where t0 -k- t1."""
    return reduce_path((k,) + tuple(path))


@dataclass(frozen=True)
class Seed:
    B: ExchangeMatrix
    cluster: tuple[LaurentPolynomial, ...]
    path: Path = ()

    @property
    def n(self) -> int:
        return self.B.n

    def mutate(self, k: int) -> Seed:
        return mutate_seed(self, k)


def initial_seed(B0: ExchangeMatrix) -> Seed:
    n = B0.n
    return Seed(B0, tuple(LaurentPolynomial.variable(n, j) for j in range(1, n + 1)), ())


def exchange_monomials(seed: Seed, k: int) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """The two products of the exchange relation in direction ``k``."""
    n = seed.n
    col = seed.B.entries[:, k - 1]
    pos = LaurentPolynomial.constant(n, 1)
    neg = LaurentPolynomial.constant(n, 1)
    for l in range(n):
        b = int(col[l])
        if b > 0:
            pos = pos * seed.cluster[l] ** b
        elif b < 0:
            neg = neg * seed.cluster[l] ** (-b)
    return pos, neg


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Seed mutation: the new k-th variable is (pos + neg) / x_k, exactly."""
    B1 = mutate(seed.B, k)
    pos, neg = exchange_monomials(seed, k)
    new = exact_div(pos + neg, seed.cluster[k - 1])
    cluster = seed.cluster[: k - 1] + (new,) + seed.cluster[k:]
    path = seed.path[:-1] if seed.path and seed.path[-1] == k else seed.path + (k,)
    return Seed(B1, cluster, path)


@lru_cache(maxsize=1 << 16)
def _seed_at(B0: ExchangeMatrix, path: Path) -> Seed:
    if not path:
        return initial_seed(B0)
    return mutate_seed(_seed_at(B0, path[:-1]), path[-1])


def seed_at(B0: ExchangeMatrix, path: Sequence[int]) -> Seed:
    """The labeled seed at the end of ``path``, with the cluster expressed in x1..xn.

    Results are memoised on ``(B0, path)`` so sweeps over many paths share
    their common prefixes.
    """
    path = reduce_path(path)
    for k in path:
        if not 1 <= k <= B0.n:
            raise IndexError(f"direction {k} out of range 1..{B0.n}")
    return _seed_at(B0, path)


def clear_cache() -> None:
    _seed_at.cache_clear()


# ---------------------------------------------------------------------------
# unlabeled seeds


class CanonicalSeedKey(NamedTuple):
    B: tuple[tuple[int, ...], ...]
    cluster: tuple[tuple, ...]


def canonical_key(seed: Seed) -> CanonicalSeedKey:
    """Canonical form of a seed up to simultaneous relabeling of its indices.

    Cluster variables of a seed are pairwise distinct, so sorting them by their
    canonical term lists fixes the permutation uniquely; the exchange matrix is
    then permuted to match.
    """
    keys = [x.key() for x in seed.cluster]
    perm = sorted(range(seed.n), key=lambda i: (len(keys[i]), keys[i]))
    ordered = tuple(keys[i] for i in perm)
    if any(a == b for a, b in zip(ordered, ordered[1:])):
        raise ValueError("seed has repeated cluster variables")
    P = np.asarray(perm)
    Bp = seed.B.entries[np.ix_(P, P)]
    return CanonicalSeedKey(tuple(map(tuple, Bp.tolist())), ordered)


@dataclass
class ExplorationResult:
    B0: ExchangeMatrix
    closed: bool
    depth_reached: int
    keys: list[CanonicalSeedKey]
    edges: set[tuple[int, int]]
    witness_paths: dict[CanonicalSeedKey, Path]
    variables: list[LaurentPolynomial]
    non_positive: list[Path] = field(default_factory=list)

    @property
    def num_seeds(self) -> int:
        return len(self.keys)

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def seeds(self) -> Iterator[Seed]:
        """One labeled representative per unlabeled seed, replayed from its witness path."""
        for key in self.keys:
            yield seed_at(self.B0, self.witness_paths[key])

    def to_json(self) -> dict:
        return {
            "B0": self.B0.to_json(),
            "closed": self.closed,
            "num_seeds": self.num_seeds,
            "num_vars": self.num_vars,
            "num_edges": len(self.edges),
            "depth_reached": self.depth_reached,
            "witness_paths": {str(i): list(self.witness_paths[key]) for i, key in enumerate(self.keys)},
            "positivity_violations": [list(p) for p in self.non_positive],
        }


def _children(seed: Seed) -> list[Seed]:
    last = seed.path[-1] if seed.path else None
    return [mutate_seed(seed, k) for k in range(1, seed.n + 1) if k != last]


def explore(
    B0: ExchangeMatrix,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_seeds: int = DEFAULT_MAX_SEEDS,
    threads: int = 1,
) -> ExplorationResult:
    """Breadth-first search of the exchange graph up to relabeling.

    Reports ``closed=True`` when every neighbour of every discovered seed has
    itself been discovered, i.e. the cluster pattern is of finite type.
    Output order is canonical and does not depend on ``threads``.
    """
    if max_depth < 0 or max_seeds < 1:
        raise ValueError("bounds must be positive")
    root = initial_seed(B0)
    root_key = canonical_key(root)
    index = {root_key: 0}
    witness = {root_key: ()}
    variables = {x: None for x in root.cluster}
    non_positive: list[Path] = []
    raw_edges: set[tuple[CanonicalSeedKey, CanonicalSeedKey]] = set()
    frontier = [root]
    depth = 0
    truncated = False
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier:
            batches = pool.map(_children, frontier) if pool else map(_children, frontier)
            nxt: list[Seed] = []
            for parent, children in zip(frontier, batches):
                pkey = canonical_key(parent)
                for child in children:
                    ckey = canonical_key(child)
                    raw_edges.add((pkey, ckey) if pkey <= ckey else (ckey, pkey))
                    if ckey in index:
                        continue
                    if depth + 1 > max_depth or len(index) >= max_seeds:
                        truncated = True
                        continue
                    index[ckey] = len(index)
                    witness[ckey] = child.path
                    nxt.append(child)
                    for x in child.cluster:
                        if x not in variables:
                            variables[x] = None
                            if not x.has_positive_coefficients():
                                non_positive.append(child.path)
                                log.warning("non-positive cluster variable at path %s: %s", child.path, x)
            if not nxt:
                break
            frontier = nxt
            depth += 1
    finally:
        if pool:
            pool.shutdown()

    keys = sorted(index)
    pos = {key: i for i, key in enumerate(keys)}
    edges = {tuple(sorted((pos[a], pos[b]))) for a, b in raw_edges if a in pos and b in pos}
    return ExplorationResult(
        B0=B0,
        closed=not truncated,
        depth_reached=depth,
        keys=keys,
        edges=edges,
        witness_paths=witness,
        variables=sorted(variables, key=lambda x: (len(x), x.key())),
        non_positive=non_positive,
    )


def distinct_cluster_variables(result: ExplorationResult) -> list[LaurentPolynomial]:
    """All cluster variables met during exploration, in canonical order."""
    return list(result.variables)
