"""
The directed multigraph Sch(G -> Omega, A): one edge (w, w^a) per point w and
generator a. Generators are materialized as permutation tables and every
traversal works on frontier maps with one table gather per generator.
"""
from typing import Iterable, Optional
import hashlib
import logging
import numpy as np
from schreierlab.actions.base_action import BaseAction, index_dtype
from schreierlab.actions.element import GroupElement
from schreierlab.errors import EmptyGeneratorSet, PointOutOfRange
from schreierlab.graph.point_set import PointSet
from schreierlab.sampling.multiset import GeneratorMultiset, invert_multiset

logger = logging.getLogger(__name__)

UNREACHED = -1


class SchreierGraph:
    """Schreier graph given by k permutation tables of length n"""
    def __init__(
        self,
        tables: np.ndarray,
        instance: Optional[BaseAction] = None,
        generators: Optional[GeneratorMultiset] = None
    ):
        tables = np.asarray(tables)
        if tables.ndim != 2 or tables.shape[0] == 0:
            raise EmptyGeneratorSet("a Schreier graph needs at least one generator table")
        tables = tables.astype(index_dtype(tables.shape[1]), copy=True)
        tables.setflags(write=False)
        self.tables = tables
        self.instance = instance
        self.generators = generators
        self._distinct: Optional[np.ndarray] = None
        self._reverse: Optional["SchreierGraph"] = None
        self._root: Optional[np.ndarray] = None

    @classmethod
    def from_multiset(cls, instance: BaseAction, generators: GeneratorMultiset) -> "SchreierGraph":
        if generators.k == 0:
            raise EmptyGeneratorSet("cannot build a graph on an empty multiset")
        for g in generators:
            instance.check(g)
        tables = np.empty((generators.k, instance.degree), dtype=instance.dtype)
        for i, g in enumerate(generators):
            tables[i] = instance.materialize(g)
        logger.debug("Built graph on %s with k=%d", instance.spec, generators.k)
        return cls(tables, instance, generators)

    @classmethod
    def from_tables(cls, tables: np.ndarray, instance: Optional[BaseAction] = None) -> "SchreierGraph":
        """Graph on raw permutation tables, e.g. after relabeling the points"""
        tables = np.asarray(tables)
        points = np.arange(tables.shape[-1])
        for table in np.atleast_2d(tables):
            if not np.array_equal(np.sort(table), points):
                raise ValueError("generator table is not a permutation of the points")
        return cls(tables, instance)

    @property
    def degree(self) -> int:
        return self.tables.shape[1]

    @property
    def k(self) -> int:
        return self.tables.shape[0]

    def distinct_tables(self) -> np.ndarray:
        """Tables with duplicate generators removed; distances do not change"""
        if self._distinct is None:
            self._distinct = np.unique(self.tables, axis=0)
        return self._distinct

    def _check_point(self, omega: int) -> None:
        if not 0 <= omega < self.degree:
            raise PointOutOfRange(f"point {omega} outside [0, {self.degree})")

    def image_union(self, points: PointSet) -> PointSet:
        """X^A, the union of the images of X under every generator"""
        indices = points.indices()
        image = np.zeros(self.degree, dtype=bool)
        for table in self.distinct_tables():
            image[table[indices]] = True
        return PointSet(image)

    def sphere(self, omega: int, radius: int) -> PointSet:
        """Endpoints of the walks of length exactly `radius` from omega"""
        self._check_point(omega)
        current = PointSet.of(self.degree, [omega])
        for _ in range(radius):
            current = self.image_union(current)
        return current

    def distances(self, omega: int, cutoff: Optional[int] = None) -> np.ndarray:
        """
        BFS distances from omega, UNREACHED (-1) for points farther than
        `cutoff` or not reachable at all.
        """
        self._check_point(omega)
        n = self.degree
        dist = np.full(n, UNREACHED, dtype=np.int32)
        dist[omega] = 0
        frontier = np.array([omega], dtype=self.tables.dtype)
        reached = 1
        level = 0
        tables = self.distinct_tables()
        while frontier.size and reached < n and (cutoff is None or level < cutoff):
            level += 1
            mark = np.zeros(n, dtype=bool)
            for table in tables:
                mark[table[frontier]] = True
            mark &= dist == UNREACHED
            frontier = np.flatnonzero(mark)
            dist[frontier] = level
            reached += frontier.size
        return dist

    def root_distances(self) -> np.ndarray:
        """distances(0), computed once and read-only"""
        if self._root is None:
            root = self.distances(0)
            root.setflags(write=False)
            self._root = root
        return self._root

    def ball(self, omega: int, radius: int) -> PointSet:
        """Points at distance at most `radius` from omega"""
        return PointSet(self.distances(omega, cutoff=radius) != UNREACHED)

    def eccentricity(self, omega: int, cutoff: Optional[int] = None) -> Optional[int]:
        """Least t with ball(omega, t) = Omega, None if not within cutoff"""
        dist = self.distances(omega, cutoff)
        if np.any(dist == UNREACHED):
            return None
        return int(dist.max())

    def covering_radius(self, omega: int, cutoff: Optional[int] = None) -> Optional[int]:
        """
        Least t with sphere(omega, t) = Omega, None if there is none up to cutoff.

        The sphere sequence is deterministic, so once a sphere repeats without
        having covered Omega it never will; that ends the search early.
        """
        self._check_point(omega)
        if cutoff is None:
            cutoff = 4 * self.degree
        current = PointSet.of(self.degree, [omega])
        seen = set()
        for radius in range(cutoff + 1):
            if current.is_full():
                return radius
            digest = hashlib.blake2b(np.packbits(current.mask).tobytes(), digest_size=16).digest()
            if digest in seen:
                logger.debug("Sphere sequence from %d cycles at radius %d without covering", omega, radius)
                return None
            seen.add(digest)
            current = self.image_union(current)
        return None

    def is_connected(self) -> bool:
        """
        Strong connectivity. In a finite group s^-1 is a positive power of s,
        so forward reachability from 0 is the orbit of the generated subgroup.
        """
        return not np.any(self.root_distances() == UNREACHED)

    def reverse(self) -> "SchreierGraph":
        """The graph on the inverse generators; d_rev(x, y) = d(y, x)"""
        if self._reverse is None:
            inverse = np.empty_like(self.tables)
            points = np.arange(self.degree, dtype=self.tables.dtype)
            for i, table in enumerate(self.tables):
                inverse[i, table] = points
            generators = None
            if self.generators is not None and self.instance is not None:
                generators = invert_multiset(self.instance, self.generators)
            reverse = SchreierGraph(inverse, self.instance, generators)
            reverse._reverse = self
            self._reverse = reverse
        return self._reverse


def build_graph(instance: BaseAction, generators: GeneratorMultiset) -> SchreierGraph:
    """Materialize Sch(G -> Omega, A)"""
    return SchreierGraph.from_multiset(instance, generators)


def image_under(instance: BaseAction, points: PointSet, elements: Iterable[GroupElement]) -> PointSet:
    """X^A computed from the action directly, without materializing tables"""
    indices = points.indices()
    image = np.zeros(instance.degree, dtype=bool)
    for g in elements:
        image[instance.act_many(g, indices)] = True
    return PointSet(image)
