"""Combinatorial model of the balanced superelliptic cover.

The marked sphere is cut along the real line: the upper and lower half planes
are the two 2-cells, the marked points ``p_1 < ... < p_{2n+2}`` and the point
at infinity are the vertices, and the segments between them are the edges.
Edge ``e_i`` (``1 <= i <= 2n+1``) is the arc ``l_i`` from ``p_i`` to
``p_{i+1}``; ``e_{2n+2}`` runs from the last marked point to infinity and
``e_{2n+3}`` from infinity back to ``p_1``.

The k-fold cyclic cover is described by sheet shifts: crossing edge ``e_j``
downwards (upper cell to lower cell) moves from sheet ``s`` to ``s + c_j``.
With ``c_j = -1`` for odd ``j <= 2n+1`` and ``0`` otherwise, a small
anticlockwise loop around ``p_j`` has monodromy ``+1`` when ``j`` is odd and
``-1`` when ``j`` is even.

Closed curves that avoid the vertices are stored as *dual cycles*: cyclic
sequences of ``(edge, direction)`` crossings, where direction ``+1`` crosses
from the face on the left of the edge to the face on its right.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import intmat
from .family import FamilyParameters, UnsupportedParameters


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class CellComplex:
    """Oriented 2-dimensional cell complex.

    ``edges[e] = (tail, head)``; ``faces[f]`` is the boundary walk as a tuple
    of ``(edge, sign)`` steps, sign ``+1`` meaning the edge is traversed from
    tail to head. Faces lie to the left of their boundary walk.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[tuple[int, int], ...], ...]
    edge_names: tuple[str, ...] = ()
    face_names: tuple[str, ...] = ()

    def __post_init__(self):
        nv = len(self.vertices)
        for t, h in self.edges:
            if not (0 <= t < nv and 0 <= h < nv):
                raise ComplexError("edge endpoint out of range")
        for f in self.faces:
            walk = [self._step(e, s) for e, s in f]
            for (a, b), (c, d) in zip(walk, walk[1:] + walk[:1]):
                if b != c:
                    raise ComplexError("face boundary is not a closed walk")

    def _step(self, e, s):
        t, h = self.edges[e]
        if s == 1:
            return t, h
        if s == -1:
            return h, t
        raise ComplexError("boundary sign must be +1 or -1")

    def boundary_1(self) -> np.ndarray:
        d = intmat.zeros(len(self.vertices), len(self.edges))
        for e, (t, h) in enumerate(self.edges):
            d[h, e] += 1
            d[t, e] -= 1
        return d

    def boundary_2(self) -> np.ndarray:
        d = intmat.zeros(len(self.edges), len(self.faces))
        for f, walk in enumerate(self.faces):
            for e, s in walk:
                d[e, f] += s
        return d

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def edge_sides(self) -> list[dict]:
        """For each edge, the (face, position) of its left and right occurrence."""
        sides = [dict() for _ in self.edges]
        for f, walk in enumerate(self.faces):
            for pos, (e, s) in enumerate(walk):
                key = "left" if s == 1 else "right"
                if key in sides[e]:
                    raise ComplexError("edge has two faces on one side")
                sides[e][key] = (f, pos)
        for e, sd in enumerate(sides):
            if set(sd) != {"left", "right"}:
                raise ComplexError(f"edge {e} is not interior to the surface")
        return sides

    def is_connected(self) -> bool:
        adj = [[] for _ in self.vertices]
        for t, h in self.edges:
            adj[t].append(h)
            adj[h].append(t)
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"name": self.edge_names[i] if self.edge_names else str(i),
                       "tail": t, "head": h} for i, (t, h) in enumerate(self.edges)],
            "faces": [{"name": self.face_names[i] if self.face_names else str(i),
                       "boundary": [[e, s] for e, s in walk]}
                      for i, walk in enumerate(self.faces)],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CellComplex":
        return cls(
            vertices=tuple(data["vertices"]),
            edges=tuple((int(e["tail"]), int(e["head"])) for e in data["edges"]),
            faces=tuple(tuple((int(e), int(s)) for e, s in f["boundary"]) for f in data["faces"]),
            edge_names=tuple(e["name"] for e in data["edges"]),
            face_names=tuple(f["name"] for f in data["faces"]),
        )


def _edge_shift(j: int, m: int) -> int:
    return -1 if (j % 2 == 1 and j <= m - 1) else 0


@dataclass(frozen=True)
class MarkedSphereComplex:
    """The sphere with marked points ``p_1 .. p_m`` on a line, plus infinity."""

    m: int
    complex: CellComplex

    @property
    def marked_vertices(self) -> tuple[int, ...]:
        return tuple(range(self.m))

    def arc(self, i: int) -> int:
        """Edge index of the arc ``l_i`` joining ``p_i`` and ``p_{i+1}``."""
        if not 1 <= i <= self.m - 1:
            raise ValueError("arc index out of range")
        return i - 1

    def left_edge(self, j: int) -> int:
        """Edge index immediately left of ``p_j`` on the real line."""
        return self.m if j == 1 else j - 2

    def right_edge(self, j: int) -> int:
        return j - 1

    def pair_loop(self, i: int) -> tuple[tuple[int, int], ...]:
        """Dual cycle of the loop ``gamma_{i,i+1}`` around ``p_i`` and ``p_{i+1}``."""
        if not 1 <= i <= self.m - 1:
            raise ValueError("adjacent-pair index out of range")
        return ((self.left_edge(i), 1), (self.right_edge(i + 1), -1))

    def point_loop(self, j: int) -> tuple[tuple[int, int], ...]:
        """Dual cycle of a small anticlockwise loop around ``p_j`` alone."""
        return ((self.left_edge(j), 1), (self.right_edge(j), -1))

    def encloses(self, dual_cycle) -> set[int]:
        """Marked points enclosed by a two-crossing dual loop (upper-cell start)."""
        (a, _), (b, _) = dual_cycle
        ends = sorted([a, b])
        # the loop crosses the real line at edges a and b; it encloses the
        # vertices strictly between those edges along the line
        pos = {e: i for i, e in enumerate([self.m] + list(range(self.m)))}
        lo, hi = sorted(pos[e] for e in ends)
        return {v for v in range(self.m) if lo <= v < hi}


def build_sphere(m: int) -> MarkedSphereComplex:
    verts = tuple(f"p{j}" for j in range(1, m + 1)) + ("inf",)
    inf = m
    edges = [(j - 1, j) for j in range(1, m)] + [(m - 1, inf), (inf, 0)]
    upper = tuple((e, 1) for e in range(m + 1))
    lower = tuple((e, -1) for e in reversed(range(m + 1)))
    cx = CellComplex(
        vertices=verts,
        edges=tuple(edges),
        faces=(upper, lower),
        edge_names=tuple(f"e{j}" for j in range(1, m + 2)),
        face_names=("U", "L"),
    )
    return MarkedSphereComplex(m=m, complex=cx)


@dataclass(frozen=True)
class SurfaceComplex:
    """The cover ``Sigma_g -> S^2`` with its deck transformation.

    Edge ``(j, s)`` (arc ``e_j`` on sheet ``s``) has index ``(j-1)*k + s``;
    faces are ``U_0..U_{k-1}`` followed by ``L_0..L_{k-1}``.
    """

    params: FamilyParameters
    sphere: MarkedSphereComplex
    complex: CellComplex
    vertex_projection: tuple[int, ...]
    edge_projection: tuple[int, ...]
    face_projection: tuple[int, ...]
    deck_vertices: tuple[int, ...]
    deck_edges: tuple[int, ...]
    deck_faces: tuple[int, ...]
    edge_sheet: tuple[int, ...]
    shifts: tuple[int, ...] = field(repr=False, default=())

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def genus(self) -> int:
        return self.params.g

    @property
    def fixed_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, w in enumerate(self.deck_vertices) if v == w)

    def edge(self, j: int, s: int) -> int:
        return (j - 1) * self.k + (s % self.k)

    def upper_face(self, s: int) -> int:
        return s % self.k

    def lower_face(self, s: int) -> int:
        return self.k + (s % self.k)

    def deck_power(self, j: int):
        """Cell permutations of the deck map raised to the ``j``-th power."""
        out = []
        for perm in (self.deck_vertices, self.deck_edges, self.deck_faces):
            cur = list(range(len(perm)))
            for _ in range(j % self.k):
                cur = [perm[c] for c in cur]
            out.append(tuple(cur))
        return tuple(out)

    def apply_deck_to_dual(self, cycle, power: int = 1):
        _, edges, _ = self.deck_power(power)
        return tuple((edges[e], d) for e, d in cycle)

    def quotient(self) -> CellComplex:
        """Collapse deck orbits; cell names follow the sphere."""
        vs = sorted(set(self.vertex_projection))
        es = sorted(set(self.edge_projection))
        fs = sorted(set(self.face_projection))
        cx = self.complex
        edges = []
        for e in es:
            rep = self.edge_projection.index(e)
            t, h = cx.edges[rep]
            edges.append((self.vertex_projection[t], self.vertex_projection[h]))
        faces = []
        for f in fs:
            rep = self.face_projection.index(f)
            faces.append(tuple((self.edge_projection[e], s) for e, s in cx.faces[rep]))
        return CellComplex(vertices=tuple(self.sphere.complex.vertices[v] for v in vs),
                           edges=tuple(edges), faces=tuple(faces))

    def to_json_dict(self) -> dict:
        d = self.complex.to_json_dict()
        d.update({
            "n": self.params.n,
            "k": self.params.k,
            "deck": {"vertices": list(self.deck_vertices), "edges": list(self.deck_edges),
                     "faces": list(self.deck_faces)},
            "projection": {"vertices": list(self.vertex_projection),
                           "edges": list(self.edge_projection),
                           "faces": list(self.face_projection)},
        })
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "SurfaceComplex":
        params = FamilyParameters(int(data["n"]), int(data["k"]))
        built = build_cover(params)
        cx = CellComplex.from_json_dict(data)
        if (cx.vertices, cx.edges, cx.faces) != (built.complex.vertices, built.complex.edges,
                                                 built.complex.faces):
            raise ComplexError("imported complex does not match the canonical build")
        if (tuple(data["deck"]["edges"]) != built.deck_edges
                or tuple(data["projection"]["edges"]) != built.edge_projection):
            raise ComplexError("imported deck/projection data does not match")
        return built


def build_cover(params: FamilyParameters) -> SurfaceComplex:
    """Build the k-fold cyclic branched cover over the marked sphere."""
    if not isinstance(params, FamilyParameters):
        raise UnsupportedParameters("expected FamilyParameters")
    n, k = params.n, params.k
    m = 2 * n + 2
    sphere = build_sphere(m)
    shifts = tuple(_edge_shift(j, m) for j in range(1, m + 2))

    verts = [f"p{j}~" for j in range(1, m + 1)] + [f"inf_{s}" for s in range(k)]
    inf = lambda s: m + (s % k)  # noqa: E731

    edges, enames, esheet, eproj = [], [], [], []
    for j in range(1, m + 2):
        for s in range(k):
            if j <= m - 1:
                t, h = j - 1, j
            elif j == m:
                t, h = m - 1, inf(s)
            else:
                t, h = inf(s), 0
            edges.append((t, h))
            enames.append(f"e{j}_{s}")
            esheet.append(s)
            eproj.append(j - 1)

    def eidx(j, s):
        return (j - 1) * k + (s % k)

    faces, fnames = [], []
    for s in range(k):
        faces.append(tuple((eidx(j, s), 1) for j in range(1, m + 2)))
        fnames.append(f"U_{s}")
    for t in range(k):
        faces.append(tuple((eidx(j, t - shifts[j - 1]), -1) for j in reversed(range(1, m + 2))))
        fnames.append(f"L_{t}")

    cx = CellComplex(vertices=tuple(verts), edges=tuple(edges), faces=tuple(faces),
                     edge_names=tuple(enames), face_names=tuple(fnames))

    vproj = tuple(list(range(m)) + [m] * k)
    fproj = tuple([0] * k + [1] * k)
    deck_v = tuple(list(range(m)) + [inf(s + 1) for s in range(k)])
    deck_e = tuple(eidx(j, s + 1) for j in range(1, m + 2) for s in range(k))
    deck_f = tuple([(s + 1) % k for s in range(k)] + [k + (t + 1) % k for t in range(k)])

    cover = SurfaceComplex(params=params, sphere=sphere, complex=cx,
                           vertex_projection=vproj, edge_projection=tuple(eproj),
                           face_projection=fproj, deck_vertices=deck_v, deck_edges=deck_e,
                           deck_faces=deck_f, edge_sheet=tuple(esheet), shifts=shifts)
    _check_cover(cover)
    return cover


def _check_cover(cover: SurfaceComplex) -> None:
    cx = cover.complex
    n, k = cover.params.n, cover.params.k
    m = 2 * n + 2
    chi = cx.euler_characteristic()
    if chi != 2 - 2 * cover.genus or chi != k * 2 - m * (k - 1):
        raise ComplexError(f"Euler characteristic {chi} inconsistent with genus {cover.genus}")
    if intmat.matmul(cx.boundary_1(), cx.boundary_2()).any():
        raise ComplexError("boundary of boundary is nonzero")
    if any(v != 0 for v in cx.boundary_2().dot(np.ones(len(cx.faces), dtype=object))):
        raise ComplexError("face orientations do not glue to a closed oriented surface")
    cx.edge_sides()
    if not cx.is_connected():
        raise ComplexError("cover is disconnected")
    if len(cover.fixed_vertices) != m:
        raise ComplexError("deck map must fix exactly one vertex over each marked point")


def lift_dual_loop(cover: SurfaceComplex, loop) -> list[tuple[tuple[int, int], ...]]:
    """Preimage of a downstairs dual loop, one dual cycle per component.

    Components are returned in order of the upper-cell sheet on which their
    lift first starts; a component starting on sheet ``s`` is paired with ``s``.
    """
    k = cover.k
    sphere_sides = cover.sphere.complex.edge_sides()
    sides = cover.complex.edge_sides()
    first_edge, first_dir = loop[0]
    start_face_down = sphere_sides[first_edge]["left" if first_dir == 1 else "right"][0]
    comps = []
    seen = set()
    for s in range(k):
        face = cover.upper_face(s) if start_face_down == 0 else cover.lower_face(s)
        if face in seen:
            continue
        start = face
        cyc = []
        while True:
            seen.add(face)
            for e_down, d in loop:
                src = "left" if d == 1 else "right"
                dst = "right" if d == 1 else "left"
                cand = [e for e in range(len(cover.complex.edges))
                        if cover.edge_projection[e] == e_down and sides[e][src][0] == face]
                if len(cand) != 1:
                    raise ComplexError("path lifting is not unique")
                e = cand[0]
                cyc.append((e, d))
                face = sides[e][dst][0]
            if face == start:
                break
        comps.append(tuple(cyc))
    return comps


def dual_cycle_chain(cover_or_complex, cycle) -> np.ndarray:
    """Dual 1-chain of a dual cycle, as a vector over edges."""
    cx = getattr(cover_or_complex, "complex", cover_or_complex)
    v = intmat.zeros(len(cx.edges), 1)
    for e, d in cycle:
        v[e, 0] += d
    return v


def push_dual_to_primal_path(cx: CellComplex, cycle) -> list[tuple[int, int]]:
    """Homotope a dual cycle into the 1-skeleton.

    Each face contributes a walk along its boundary between its first corner
    and the tail of the crossed edge; the result is a closed edge path freely
    homotopic to the dual cycle.
    """
    sides = cx.edge_sides()
    path: list[tuple[int, int]] = []
    for e, d in cycle:
        lf, lp = sides[e]["left"]
        rf, rp = sides[e]["right"]
        lwalk, rwalk = cx.faces[lf], cx.faces[rf]
        if d == 1:
            path += list(lwalk[:lp]) + list(rwalk[rp + 1:])
        else:
            path += list(rwalk[:rp + 1]) + list(lwalk[lp:])
    _check_closed(cx, path)
    return path


def dual_to_primal_chain_matrix(cx: CellComplex) -> np.ndarray:
    """Chain map sending each dual edge to its pushed primal 1-chain."""
    sides = cx.edge_sides()
    mat = intmat.zeros(len(cx.edges), len(cx.edges))
    for e in range(len(cx.edges)):
        lf, lp = sides[e]["left"]
        rf, rp = sides[e]["right"]
        for f, s in list(cx.faces[lf][:lp]) + list(cx.faces[rf][rp + 1:]):
            mat[f, e] += s
    return mat


def path_chain(cx: CellComplex, path) -> np.ndarray:
    v = intmat.zeros(len(cx.edges), 1)
    for e, s in path:
        v[e, 0] += s
    return v


def _check_closed(cx: CellComplex, path) -> None:
    if not path:
        return
    steps = [cx._step(e, s) for e, s in path]
    for (a, b), (c, d) in zip(steps, steps[1:] + steps[:1]):
        if b != c:
            raise ComplexError("edge path is not closed")


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation; words are tuples of nonzero ints (+g / -g, 1-based)."""

    ngens: int
    relators: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for w in self.relators:
            for x in w:
                if x == 0 or abs(x) > self.ngens:
                    raise ValueError(f"relator letter {x} out of range")

    def with_relators(self, words) -> "GroupPresentation":
        return GroupPresentation(self.ngens, self.relators + tuple(tuple(w) for w in words),
                                 self.names, dict(self.extra))

    def relation_matrix(self) -> np.ndarray:
        """Abelianised relators as rows."""
        mat = intmat.zeros(len(self.relators), self.ngens)
        for r, w in enumerate(self.relators):
            for x in w:
                mat[r, abs(x) - 1] += 1 if x > 0 else -1
        return mat

    def abelian_invariants(self) -> list[int]:
        """Invariant factors of the abelianisation, 0 for each free summand, 1s dropped."""
        if not self.relators:
            return [0] * self.ngens
        return [d for d in intmat.invariant_factors(self.relation_matrix()) if d != 1]


@dataclass(frozen=True)
class SpanningTreePresentation:
    presentation: GroupPresentation
    basepoint: int
    tree_edges: frozenset
    edge_generator: tuple[int, ...]   # 0 for tree edges, else 1-based generator


def pi1_presentation(cover, basepoint: int = 0) -> SpanningTreePresentation:
    """Spanning-tree presentation: non-tree edges generate, faces relate."""
    cx = getattr(cover, "complex", cover)
    if not cx.is_connected():
        raise ComplexError("complex is disconnected")
    adj = [[] for _ in cx.vertices]
    for e, (t, h) in enumerate(cx.edges):
        adj[t].append((e, h))
        adj[h].append((e, t))
    for lst in adj:
        lst.sort()
    seen = {basepoint}
    tree = set()
    todo = deque([basepoint])
    while todo:
        v = todo.popleft()
        for e, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                todo.append(w)
    gen = []
    names = []
    count = 0
    for e in range(len(cx.edges)):
        if e in tree:
            gen.append(0)
        else:
            count += 1
            gen.append(count)
            names.append(cx.edge_names[e] if cx.edge_names else f"x{e}")
    rels = tuple(_path_word(gen, walk) for walk in cx.faces)
    pres = GroupPresentation(count, rels, tuple(names))
    return SpanningTreePresentation(pres, basepoint, frozenset(tree), tuple(gen))


def _path_word(gen, path) -> tuple[int, ...]:
    word = []
    for e, s in path:
        g = gen[e]
        if g:
            x = g * s
            if word and word[-1] == -x:
                word.pop()
            else:
                word.append(x)
    return tuple(word)


def cycle_to_word(cover, path, presentation: SpanningTreePresentation) -> tuple[int, ...]:
    """Word in the presentation generators for a closed edge path."""
    cx = getattr(cover, "complex", cover)
    _check_closed(cx, path)
    return _path_word(presentation.edge_generator, path)


def generator_cycles(cover, presentation: SpanningTreePresentation) -> np.ndarray:
    """Edge chains of the closed loops represented by each generator (columns)."""
    cx = getattr(cover, "complex", cover)
    root = presentation.basepoint
    parent: dict[int, tuple[int, int]] = {}
    adj = [[] for _ in cx.vertices]
    for e in sorted(presentation.tree_edges):
        t, h = cx.edges[e]
        adj[t].append((e, h, 1))
        adj[h].append((e, t, -1))
    todo = deque([root])
    seen = {root}
    while todo:
        v = todo.popleft()
        for e, w, s in adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = (e, s)
                todo.append(w)

    def to_root(v):
        # chain of the tree path from the root to v
        c = intmat.zeros(len(cx.edges), 1)
        while v != root:
            e, s = parent[v]
            c[e, 0] += s
            t, h = cx.edges[e]
            v = t if s == 1 else h
        return c

    out = intmat.zeros(len(cx.edges), presentation.presentation.ngens)
    for e, g in enumerate(presentation.edge_generator):
        if g:
            t, h = cx.edges[e]
            col = to_root(t) - to_root(h)
            col[e, 0] += 1
            out[:, g - 1] = col[:, 0]
    return out
