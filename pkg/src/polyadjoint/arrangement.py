"""The matroid of a polytope's facet hyperplane arrangement.

Elements are facet indices.  The rank of a subset is the linear rank of its
covectors, which equals the codimension of the intersection of the
hyperplanes (the empty intersection counts as codimension n+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exactlin import Vector, dot, kernel_basis, primitive_integer, rank
from .polytope import LinearSubspace, Polytope, face_of_subspace


@dataclass(frozen=True)
class FlatData:
    members: frozenset[int]
    subspace: LinearSubspace
    rank: int
    nullity: int
    face_vertices: tuple[int, ...]
    face_dim: int
    order: int

    @property
    def dim(self) -> int:
        """Projective dimension of the flat's linear space."""
        return self.subspace.dim

    @property
    def point(self) -> Vector:
        if self.subspace.dim != 0:
            raise ValueError("flat is not a point")
        return self.subspace.spanning_points[0]

    def sort_key(self):
        return (self.rank, tuple(sorted(self.members)))


class Arrangement:
    """Facet hyperplane arrangement of a polytope."""

    def __init__(self, polytope: Polytope):
        self.polytope = polytope
        self.forms = polytope.facets
        self.n = polytope.dim
        if rank(self.forms) != self.n + 1:
            raise ValueError("facet hyperplanes have a common point")
        self._flats: list[FlatData] | None = None

    @property
    def d(self) -> int:
        return len(self.forms)

    def rank_of(self, subset: Iterable[int]) -> int:
        return rank([self.forms[i] for i in subset])

    def closure(self, subset: Iterable[int]) -> frozenset[int]:
        subset = sorted(set(subset))
        rows = [self.forms[i] for i in subset]
        if not rows:
            return frozenset()
        ker = kernel_basis(rows)
        if not ker:
            return frozenset(range(self.d))
        return frozenset(
            i for i, f in enumerate(self.forms) if all(dot(f, k) == 0 for k in ker)
        )

    def flat_data(self, members: frozenset[int]) -> FlatData:
        sub = LinearSubspace.from_forms([self.forms[i] for i in sorted(members)], self.n + 1)
        r = sub.codim
        face, face_dim = face_of_subspace(self.polytope, sub)
        nullity = len(members) - r
        return FlatData(
            members=members,
            subspace=sub,
            rank=r,
            nullity=nullity,
            face_vertices=tuple(face),
            face_dim=face_dim,
            order=nullity + (0 if face_dim == sub.dim else 1),
        )

    def flats(self) -> list[FlatData]:
        """All proper flats of rank >= 1, sorted by (rank, members)."""
        if self._flats is None:
            seen: set[frozenset[int]] = set()
            level = []
            for i in range(self.d):
                fl = self.closure([i])
                if fl not in seen:
                    seen.add(fl)
                    level.append(fl)
            found = list(level)
            full = frozenset(range(self.d))
            while level:
                nxt = []
                for fl in level:
                    for e in range(self.d):
                        if e in fl:
                            continue
                        c = self.closure(fl | {e})
                        if c != full and c not in seen:
                            seen.add(c)
                            nxt.append(c)
                found.extend(nxt)
                level = nxt
            data = [self.flat_data(fl) for fl in found]
            data.sort(key=FlatData.sort_key)
            self._flats = data
        return list(self._flats)

    def order_of(self, flat: FlatData) -> int:
        return flat.nullity + (0 if flat.face_dim == flat.dim else 1)

    def flat_through(self, x) -> FlatData:
        """The flat ``F_x`` of all facet hyperplanes through a projective point."""
        members = frozenset(i for i, f in enumerate(self.forms) if dot(f, x) == 0)
        if not members:
            raise ValueError("point lies on no facet hyperplane")
        return self.flat_data(members)

    def point_residual(self) -> list[tuple[Vector, int]]:
        """Points cut out by rank-n flats with their orders, sorted by coordinates."""
        out = []
        vertex_set = set(self.polytope.vertices)
        for fl in self.flats():
            if fl.rank != self.n:
                continue
            x = primitive_integer(fl.point)
            is_vertex = x[0] != 0 and tuple(c / x[0] for c in x[1:]) in vertex_set
            if is_vertex != (fl.face_dim == 0):
                raise AssertionError("vertex test disagrees with face dimension")
            order = len(fl.members) - self.n + (0 if is_vertex else 1)
            if order != fl.order:
                raise AssertionError("point order disagrees with flat order")
            out.append((x, order))
        out.sort()
        return out


def point_residual(p: Polytope) -> list[tuple[Vector, int]]:
    return Arrangement(p).point_residual()
