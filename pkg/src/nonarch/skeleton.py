"""Metric-graph skeleta, length-preserving refinements, retractions, finite
tower separation, and ordered subdivision sets with formal completion.

Graphs are abstract metric graphs (loops and multi-edges allowed).  Points
are exact: a vertex, or (edge, rational offset from the edge's first
endpoint).  A refinement embeds a coarse graph into a fine one edge-path by
edge-path; the complement of the image must be a disjoint union of trees
each attached at a single image point, which makes the nearest-point
retraction well defined and unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotSeparatedError


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "length", Fraction(self.length))
        if self.length <= 0:
            raise ValueError(f"edge {self.id}: length must be positive")

    def other(self, w: str) -> str:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise ValueError(f"{w} is not an endpoint of {self.id}")


@dataclass(frozen=True)
class SkeletonGraph:
    vertices: frozenset
    edges: Tuple[Edge, ...]
    cusps: Tuple[Tuple[str, str], ...] = ()  # (half-edge id, vertex)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if e.u not in self.vertices or e.v not in self.vertices:
                raise ValueError(f"edge {e.id} has an unknown endpoint")
        for hid, w in self.cusps:
            if w not in self.vertices:
                raise ValueError(f"cusp {hid} attached to unknown vertex {w}")
        if self.vertices and not self._connected():
            raise ValueError("graph must be connected")

    def _connected(self) -> bool:
        verts = set(self.vertices)
        adj: Dict[str, List[str]] = {w: [] for w in verts}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            w = stack.pop()
            for nb in adj[w]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return seen == verts

    @classmethod
    def build(cls, vertices: Sequence[str],
              edges: Sequence[Tuple[str, str, str, Fraction]],
              cusps: Sequence[Tuple[str, str]] = ()) -> "SkeletonGraph":
        return cls(frozenset(vertices),
                   tuple(Edge(i, u, v, Fraction(L)) for i, u, v, L in edges),
                   tuple(cusps))

    @property
    def edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [[e.id, e.u, e.v, str(e.length)] for e in self.edges],
            "cusps": [list(c) for c in self.cusps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SkeletonGraph":
        return cls.build(data["vertices"],
                         [(i, u, v, Fraction(L)) for i, u, v, L in data["edges"]],
                         [tuple(c) for c in data.get("cusps", [])])


@dataclass(frozen=True)
class GraphPoint:
    """A vertex (edge=None) or an interior edge point at a rational offset
    measured from the edge's first endpoint."""

    vertex: Optional[str] = None
    edge: Optional[str] = None
    offset: Optional[Fraction] = None

    def __post_init__(self):
        if (self.vertex is None) == (self.edge is None):
            raise ValueError("a point is either a vertex or an edge point")
        if self.edge is not None:
            object.__setattr__(self, "offset", Fraction(self.offset))

    @classmethod
    def at_vertex(cls, w: str) -> "GraphPoint":
        return cls(vertex=w)

    @classmethod
    def on_edge(cls, eid: str, offset) -> "GraphPoint":
        return cls(edge=eid, offset=Fraction(offset))

    def __repr__(self):
        if self.vertex is not None:
            return f"Pt(v={self.vertex})"
        return f"Pt({self.edge}@{self.offset})"


def canonical_point(g: SkeletonGraph, pt: GraphPoint) -> GraphPoint:
    """Snap offsets 0 and L to the corresponding vertices."""
    if pt.vertex is not None:
        if pt.vertex not in g.vertices:
            raise ValueError(f"unknown vertex {pt.vertex}")
        return pt
    e = g.edge_map.get(pt.edge)
    if e is None:
        raise ValueError(f"unknown edge {pt.edge}")
    if not 0 <= pt.offset <= e.length:
        raise ValueError("offset outside the edge")
    if pt.offset == 0:
        return GraphPoint.at_vertex(e.u)
    if pt.offset == e.length:
        return GraphPoint.at_vertex(e.v)
    return pt


@dataclass(frozen=True)
class Refinement:
    """Embedding of ``coarse`` into ``fine``: vertices map to vertices and
    each coarse edge maps to a length-preserving fine edge-path."""

    coarse: SkeletonGraph
    fine: SkeletonGraph
    vertex_map: Tuple[Tuple[str, str], ...]
    edge_paths: Tuple[Tuple[str, Tuple[Tuple[str, int], ...]], ...]
    _loc: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", tuple(sorted(self.vertex_map)))
        object.__setattr__(self, "edge_paths",
                           tuple(sorted((e, tuple(p)) for e, p in self.edge_paths)))
        object.__setattr__(self, "_loc", self._validate())

    @classmethod
    def build(cls, coarse, fine, vertex_map: Dict[str, str],
              edge_paths: Dict[str, Sequence[Tuple[str, int]]]) -> "Refinement":
        return cls(coarse, fine, tuple(vertex_map.items()),
                   tuple((e, tuple(p)) for e, p in edge_paths.items()))

    @property
    def vmap(self) -> Dict[str, str]:
        return dict(self.vertex_map)

    @property
    def paths(self) -> Dict[str, Tuple[Tuple[str, int], ...]]:
        return dict(self.edge_paths)

    def _validate(self) -> dict:
        vmap = self.vmap
        paths = self.paths
        fmap = self.fine.edge_map
        cmap = self.coarse.edge_map
        if set(vmap) != set(self.coarse.vertices):
            raise ValueError("vertex_map must cover exactly the coarse vertices")
        if len(set(vmap.values())) != len(vmap):
            raise ValueError("vertex_map must be injective")
        for fv in vmap.values():
            if fv not in self.fine.vertices:
                raise ValueError(f"image vertex {fv} missing in the fine graph")
        if set(paths) != set(cmap):
            raise ValueError("edge_paths must cover exactly the coarse edges")

        edge_loc: Dict[str, Tuple[str, int, Fraction]] = {}
        interior_loc: Dict[str, Tuple[str, Fraction]] = {}
        used = set()
        mapped = set(vmap.values())
        for ceid, path in paths.items():
            ce = cmap[ceid]
            if not path:
                raise ValueError(f"empty path for coarse edge {ceid}")
            cur = vmap[ce.u]
            run = Fraction(0)
            for idx, (feid, sign) in enumerate(path):
                if sign not in (1, -1):
                    raise ValueError("path orientations must be +-1")
                if feid in used:
                    raise ValueError(f"fine edge {feid} used twice: not injective")
                used.add(feid)
                fe = fmap.get(feid)
                if fe is None:
                    raise ValueError(f"unknown fine edge {feid}")
                start, end = (fe.u, fe.v) if sign == 1 else (fe.v, fe.u)
                if start != cur:
                    raise ValueError(f"path of {ceid} breaks at {feid}")
                edge_loc[feid] = (ceid, sign, run)
                run += fe.length
                cur = end
                if idx < len(path) - 1:
                    # interior stop of the embedded arc
                    if cur in mapped:
                        raise ValueError(
                            f"path of {ceid} passes through the image vertex {cur}")
                    if cur in interior_loc:
                        raise ValueError(
                            f"fine vertex {cur} lies on two coarse edges")
                    interior_loc[cur] = (ceid, run)
            if cur != vmap[ce.v]:
                raise ValueError(f"path of {ceid} does not end at the image of {ce.v}")
            if run != ce.length:
                raise ValueError(
                    f"path of {ceid} has length {run}, expected {ce.length}")

        image_vertices = set(vmap.values()) | set(interior_loc)
        # complement components must be trees hanging at a single image point
        adj: Dict[str, List[Tuple[str, str]]] = {w: [] for w in self.fine.vertices}
        for fe in self.fine.edges:
            if fe.id in used:
                continue
            adj[fe.u].append((fe.id, fe.v))
            adj[fe.v].append((fe.id, fe.u))
        attach: Dict[str, str] = {}
        seen_v = set(image_vertices)
        for start in self.fine.vertices:
            if start in seen_v or not adj[start]:
                continue
            comp_v, comp_e = set(), set()
            anchors = set()
            stack = [start]
            comp_v.add(start)
            while stack:
                w = stack.pop()
                for eid, nb in adj[w]:
                    if eid in comp_e:
                        continue
                    comp_e.add(eid)
                    if nb in image_vertices:
                        anchors.add(nb)
                    elif nb not in comp_v:
                        comp_v.add(nb)
                        stack.append(nb)
                    else:
                        raise ValueError("complement component contains a cycle")
            if len(anchors) != 1:
                raise ValueError(
                    f"hanging component {sorted(comp_v)} attaches at "
                    f"{len(anchors)} image points, expected 1")
            anchor = anchors.pop()
            if len(comp_e) != len(comp_v):
                raise ValueError("complement component is not a tree")
            for w in comp_v:
                attach[w] = anchor
            seen_v |= comp_v
        # isolated non-image vertices with no complement edges cannot retract
        for w in self.fine.vertices:
            if w not in image_vertices and w not in attach:
                raise ValueError(f"fine vertex {w} is disconnected from the image")
        hang_edges = {}
        for fe in self.fine.edges:
            if fe.id in used:
                continue
            hang_edges[fe.id] = attach.get(fe.u) or attach.get(fe.v) or \
                (fe.u if fe.u in image_vertices else fe.v)
            # an untouched edge between two image vertices would be a cycle
            if fe.u in image_vertices and fe.v in image_vertices:
                raise ValueError(
                    f"complement edge {fe.id} joins two image points")
        rev = {fv: cv for cv, fv in vmap.items()}
        return {
            "edge_loc": edge_loc,
            "interior_loc": interior_loc,
            "attach": attach,
            "hang_edges": hang_edges,
            "rev_vmap": rev,
            "image_vertices": image_vertices,
        }

    def to_json(self) -> dict:
        return {
            "vertex_map": dict(self.vertex_map),
            "edge_paths": {e: [list(step) for step in p] for e, p in self.edge_paths},
        }


def _image_vertex_to_coarse(ref: Refinement, fv: str) -> GraphPoint:
    loc = ref._loc
    if fv in loc["rev_vmap"]:
        return GraphPoint.at_vertex(loc["rev_vmap"][fv])
    ceid, off = loc["interior_loc"][fv]
    return canonical_point(ref.coarse, GraphPoint.on_edge(ceid, off))


def retract(pt: GraphPoint, ref: Refinement) -> GraphPoint:
    """Nearest-point projection of a fine point onto the embedded coarse graph."""
    pt = canonical_point(ref.fine, pt)
    loc = ref._loc
    if pt.vertex is not None:
        fv = pt.vertex
        if fv in loc["image_vertices"]:
            return _image_vertex_to_coarse(ref, fv)
        anchor = loc["attach"].get(fv)
        if anchor is None:
            raise ValueError(f"vertex {fv} cannot be retracted")
        return _image_vertex_to_coarse(ref, anchor)
    feid = pt.edge
    if feid in loc["edge_loc"]:
        ceid, sign, prefix = loc["edge_loc"][feid]
        fe = ref.fine.edge_map[feid]
        t = pt.offset if sign == 1 else fe.length - pt.offset
        return canonical_point(ref.coarse, GraphPoint.on_edge(ceid, prefix + t))
    anchor = loc["hang_edges"].get(feid)
    if anchor is None:
        raise ValueError(f"edge {feid} cannot be retracted")
    if anchor in loc["image_vertices"]:
        return _image_vertex_to_coarse(ref, anchor)
    return _image_vertex_to_coarse(ref, loc["attach"][anchor])


def compose(r12: Refinement, r23: Refinement) -> Refinement:
    """Composite refinement: fine graph of r12, coarse graph of r23
    (r12: G1 <- G2 embedding ... fine=G1, coarse=G2; r23: fine=G2, coarse=G3)."""
    if r12.coarse is not r23.fine and r12.coarse.to_json() != r23.fine.to_json():
        raise ValueError("refinements do not chain: r12.coarse must be r23.fine")
    vmap = {cv: r12.vmap[fv2] for cv, fv2 in r23.vmap.items()}
    paths: Dict[str, List[Tuple[str, int]]] = {}
    for ceid, path2 in r23.paths.items():
        out: List[Tuple[str, int]] = []
        for eid2, sign2 in path2:
            sub = list(r12.paths[eid2])
            if sign2 == -1:
                sub = [(feid, -sign) for feid, sign in reversed(sub)]
            out.extend(sub)
        paths[ceid] = out
    return Refinement.build(r23.coarse, r12.fine, vmap, paths)


def graph_points_equal(g: SkeletonGraph, a: GraphPoint, b: GraphPoint) -> bool:
    return canonical_point(g, a) == canonical_point(g, b)


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    sample: Optional[GraphPoint] = None
    message: str = ""


def sample_points(g: SkeletonGraph, count: int, rng) -> List[GraphPoint]:
    """Deterministic sample: all vertices plus seeded rational edge points."""
    pts = [GraphPoint.at_vertex(w) for w in sorted(g.vertices)]
    edges = sorted(g.edges, key=lambda e: e.id)
    while len(pts) < count and edges:
        e = edges[rng.randrange(len(edges))]
        den = rng.randrange(2, 17)
        num = rng.randrange(1, den)
        pts.append(GraphPoint.on_edge(e.id, e.length * Fraction(num, den)))
    return pts[:count] if count < len(pts) else pts


def compose_check(r12: Refinement, r23: Refinement, samples: int = 100,
                  seed: int = 0) -> CheckReport:
    """Verify r23(r12(x)) = (r23 o r12)(x) on sampled points of the finest
    graph, with exact rational comparisons."""
    import random
    r13 = compose(r12, r23)
    rng = random.Random(seed)
    for pt in sample_points(r12.fine, samples, rng):
        two_step = retract(retract(pt, r12), r23)
        one_step = retract(pt, r13)
        if not graph_points_equal(r23.coarse, two_step, one_step):
            return CheckReport(False, pt,
                               f"{two_step!r} != {one_step!r} at {pt!r}")
    return CheckReport(True)


@dataclass(frozen=True)
class SkeletonTower:
    """graphs[0] is the coarsest; refinements[i] embeds graphs[i] into
    graphs[i+1] (fine = graphs[i+1], coarse = graphs[i])."""

    graphs: Tuple[SkeletonGraph, ...]
    refinements: Tuple[Refinement, ...]

    def __post_init__(self):
        if len(self.refinements) != len(self.graphs) - 1:
            raise ValueError("a tower of d+1 graphs needs d refinements")
        for i, r in enumerate(self.refinements):
            if r.coarse.to_json() != self.graphs[i].to_json() or \
                    r.fine.to_json() != self.graphs[i + 1].to_json():
                raise ValueError(f"refinement {i} does not match the tower graphs")

    @property
    def depth(self) -> int:
        return len(self.refinements)

    def images(self, pt: GraphPoint) -> List[GraphPoint]:
        """Retractions of a finest-graph point onto every level, index 0 =
        coarsest .. depth = the point itself."""
        out = [canonical_point(self.graphs[-1], pt)]
        for r in reversed(self.refinements):
            out.append(retract(out[-1], r))
        out.reverse()
        return out


def tower_separation(tower: SkeletonTower, x: GraphPoint, y: GraphPoint) -> int:
    """Smallest level at which the retraction images of x and y differ.

    Levels run over the proper retraction targets 0..depth-1; if every level
    identifies the two (distinct) points the tower is too coarse and
    NotSeparatedError is raised.
    """
    top = tower.graphs[-1]
    if graph_points_equal(top, x, y):
        raise ValueError("x and y must be distinct points of the finest graph")
    ix = tower.images(x)
    iy = tower.images(y)
    for level in range(tower.depth):
        if ix[level] != iy[level]:
            return level
    raise NotSeparatedError(
        f"points agree on all {tower.depth} proper levels of the tower")


class EdgeEnd(Enum):
    LOWER = "0_e"
    UPPER = "1_e"


@dataclass(frozen=True)
class SubdivisionSet:
    """Per-level strictly increasing rational cut positions in (0, L) on a
    host edge, with level-to-level inclusion."""

    length: Fraction
    levels: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "length", Fraction(self.length))
        lv = tuple(tuple(Fraction(t) for t in level) for level in self.levels)
        object.__setattr__(self, "levels", lv)
        if self.length <= 0:
            raise ValueError("edge length must be positive")
        prev = None
        for level in lv:
            for t in level:
                if not 0 < t < self.length:
                    raise ValueError("cut positions must lie strictly inside the edge")
            if list(level) != sorted(set(level)):
                raise ValueError("cut positions must be strictly increasing")
            if prev is not None and not set(prev) <= set(level):
                raise ValueError("levels must be nested (coarse included in fine)")
            prev = level


@dataclass(frozen=True)
class CompletedSubdivision:
    """Merged ordered cut set with formal endpoints 0_e, 1_e adjoined."""

    length: Fraction
    cuts: Tuple[Fraction, ...]

    @property
    def points(self) -> Tuple:
        return (EdgeEnd.LOWER,) + self.cuts + (EdgeEnd.UPPER,)

    def reversal(self, point):
        """Order-reversing bijection to the opposite orientation:
        t -> L - t, swapping the formal endpoints."""
        if point is EdgeEnd.LOWER:
            return EdgeEnd.UPPER
        if point is EdgeEnd.UPPER:
            return EdgeEnd.LOWER
        t = Fraction(point)
        if not 0 < t < self.length:
            raise ValueError("not a point of the completed edge")
        return self.length - t

    def reverse(self) -> "CompletedSubdivision":
        return CompletedSubdivision(
            self.length, tuple(self.length - t for t in reversed(self.cuts)))


def subdivision_union(s: SubdivisionSet) -> CompletedSubdivision:
    """Union of the levels as an ordered set with completion endpoints."""
    merged = sorted(set(t for level in s.levels for t in level))
    return CompletedSubdivision(s.length, tuple(merged))
