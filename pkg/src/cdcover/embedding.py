"""Rotation systems, face tracing and the inductive complete-graph embedding."""
from __future__ import annotations

import dataclasses
from itertools import permutations, product
from typing import Mapping, Sequence

from .graph import Graph, GraphError, edge
from .verify import VerifyReport, verify_cdc
from .walks import Walk, canonical_sequence, walk_coverage


class RotationError(GraphError):
    pass


class DomainError(GraphError):
    pass


@dataclasses.dataclass(frozen=True)
class RotationSystem:
    host: Graph
    rotation: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        rot = {v: tuple(self.rotation.get(v, ())) for v in self.host.vertices}
        for v in self.host.vertices:
            if sorted(rot[v]) != list(self.host.adjacency[v]):
                raise RotationError(f"rotation at {v} is not a permutation of its neighbours")
        object.__setattr__(self, "rotation", rot)

    def successor(self, v: int, u: int) -> int:
        r = self.rotation[v]
        return r[(r.index(u) + 1) % len(r)]

    def to_json(self) -> dict:
        return {str(v): list(r) for v, r in sorted(self.rotation.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, Sequence[int]]) -> "RotationSystem":
        rot = {int(v): tuple(r) for v, r in data.items()}
        g = Graph.from_edges({edge(v, w) for v, r in rot.items() for w in r})
        return cls(g, rot)


@dataclasses.dataclass(frozen=True)
class FaceSet:
    host: Graph
    faces: tuple[Walk, ...]
    chi: int
    genus: int

    def to_json(self) -> dict:
        return {"chi": self.chi, "genus": self.genus,
                "faces": [list(f.vertices) for f in self.faces]}


def _trace(rot: Mapping[int, Sequence[int]]) -> list[list[int]]:
    """Orbits of the next-edge rule as vertex lists (closing vertex omitted)."""
    pos = {v: {u: i for i, u in enumerate(r)} for v, r in rot.items()}
    seen = set()
    faces = []
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                r = rot[b]
                a, b = b, r[(pos[b][a] + 1) % len(r)]
            faces.append(face)
    return faces


def face_trace(rs: RotationSystem) -> FaceSet:
    faces = tuple(Walk(tuple(f) + (f[0],)) for f in _trace(rs.rotation))
    g = rs.host
    chi = len(g.vertices) - len(g.edges) + len(faces)
    return FaceSet(g, faces, chi, (2 - chi) // 2)


def genus_bound(k: int) -> tuple[int, int]:
    if k < 3:
        raise DomainError("genus_bound needs k >= 3")
    t = (k - 3) * (k - 4)
    return t // 2, 2 - t


def _insertions(rot: dict, x: int, u: int):
    """Every way of placing edge x-u into the two rotations."""
    rx, ru = rot.get(x, []), rot[u]
    for i in range(max(len(rx), 1)):
        for j in range(len(ru)):
            yield i, j, rx[:i] + [u] + rx[i:], ru[:j + 1] + [x] + ru[j + 1:]


def _add_edge(rot: dict, x: int, u: int, delta: int) -> None:
    before = len(_trace(rot))
    for _i, _j, nx, nu in _insertions(rot, x, u):
        trial = dict(rot)
        trial[x], trial[u] = nx, nu
        if len(_trace(trial)) - before == delta:
            rot[x], rot[u] = nx, nu
            return
    raise RotationError(f"no insertion of {x}-{u} changes the face count by {delta}")


def inductive_complete_embedding(k: int) -> RotationSystem:
    """K(k) built vertex by vertex from a triangle.  Each new vertex puts
    three edges inside one face (genus unchanged) and routes every other
    edge over a new handle (one face fewer each)."""
    if k < 3:
        raise DomainError("inductive_complete_embedding needs k >= 3")
    rot: dict[int, list[int]] = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    for x in range(3, k):
        face = next(f for f in _trace(rot) if len(set(f)) >= 3)
        a, b, c = face[0], face[1], face[2]
        # pendant edge into the corner of ``face`` at b: arrive from a, leave to c
        rb = rot[b]
        rot[b] = rb[:rb.index(a) + 1] + [x] + rb[rb.index(a) + 1:]
        rot[x] = [b]
        _add_edge(rot, x, a, +1)
        _add_edge(rot, x, c, +1)
        for u in range(x):
            if u not in (a, b, c):
                _add_edge(rot, x, u, -1)
    g = Graph.from_edges((i, j) for i in range(k) for j in range(i + 1, k))
    return RotationSystem(g, {v: tuple(r) for v, r in rot.items()})


# Reference faces of a K5 torus embedding with one non-cycle face; v_i is i-1.
K5_TORUS_FACES = ((3, 2, 0), (3, 1, 0), (2, 0, 4), (0, 1, 4), (2, 1, 3, 4, 1, 2, 4, 3))

# Found by search_k5_torus_rotation() and frozen.
K5_TORUS_ROTATION = {0: (1, 3, 2, 4), 1: (0, 4, 2, 3), 2: (0, 3, 1, 4),
                     3: (0, 1, 4, 2), 4: (0, 2, 3, 1)}


def _face_key(faces) -> list:
    return sorted(canonical_sequence(tuple(f) + (f[0],)) for f in faces)


def search_k5_torus_rotation() -> dict[int, tuple[int, ...]] | None:
    """Brute force over the 6^5 rotation systems of K5 for one whose faces
    are exactly ``K5_TORUS_FACES``."""
    target = _face_key(K5_TORUS_FACES)
    orders = []
    for v in range(5):
        others = [u for u in range(5) if u != v]
        orders.append([(others[0],) + p for p in permutations(others[1:])])
    for choice in product(*orders):
        rot = dict(enumerate(choice))
        if _face_key(_trace(rot)) == target:
            return rot
    return None


def k5_torus_fixture() -> RotationSystem:
    g = Graph.from_edges((i, j) for i in range(5) for j in range(i + 1, 5))
    return RotationSystem(g, K5_TORUS_ROTATION)


def faces_as_cdc(fs: FaceSet) -> VerifyReport:
    return verify_cdc(fs.host, fs.faces)


def doubled_edges(w: Walk) -> set:
    return {e for e, m in walk_coverage(w).items() if m > 1}
