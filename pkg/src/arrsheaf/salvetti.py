"""Twisted cohomology of real line-arrangement complements via the Salvetti complex.

This is the brute-force oracle: it only needs the real face structure of the
arrangement and exact cyclotomic linear algebra, and shares no formulas with
the combinatorial rules elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .arrangement import Arrangement, PreconditionError, decone
from .exactmath import CycloElement, cyclotomic_embed, rank_exact
from .localsys import LocalSystem, check_length
from .provenance import LocalDim

Sign = tuple[int, ...]


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _eval(form, pt) -> Fraction:
    return form[0] * pt[0] + form[1] * pt[1] + form[2]


@dataclass
class FaceStructure:
    """Faces of the real picture as sign vectors over the defining forms."""

    arrangement: Arrangement
    vertices: list[Sign]
    vertex_points: list[tuple[Fraction, Fraction]]
    edges: list[Sign]
    edge_points: list[tuple[Fraction, Fraction]]
    chambers: list[Sign]

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.chambers)

    def euler(self) -> int:
        v, e, c = self.counts
        return v - e + c


def face_structure(A: Arrangement) -> FaceStructure:
    if A.n != 2:
        raise PreconditionError("the face structure is built for arrangements in the plane")
    if A.r == 0:
        raise PreconditionError("empty arrangement")
    forms = A.forms
    points: dict[tuple, None] = {}
    on_line: list[list[tuple[Fraction, Fraction]]] = [[] for _ in forms]
    for i in range(A.r):
        a1, b1, c1 = forms[i]
        for j in range(i + 1, A.r):
            a2, b2, c2 = forms[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = (b1 * c2 - b2 * c1) / det
            y = (a2 * c1 - a1 * c2) / det
            points[(x, y)] = None
    vertex_points = sorted(points)
    for pt in vertex_points:
        for i, f in enumerate(forms):
            if _eval(f, pt) == 0:
                on_line[i].append(pt)
    vertices = [tuple(_sgn(_eval(f, p)) for f in forms) for p in vertex_points]

    edge_points = []
    for i, (a, b, c) in enumerate(forms):
        d = (-b, a)
        pts = sorted(on_line[i], key=lambda p: p[0] * d[0] + p[1] * d[1])
        if not pts:
            base = (-c / a, Fraction(0)) if a != 0 else (Fraction(0), -c / b)
            samples = [base]
        else:
            samples = [(pts[0][0] - d[0], pts[0][1] - d[1])]
            samples += [((p[0] + q[0]) / 2, (p[1] + q[1]) / 2) for p, q in zip(pts, pts[1:])]
            samples.append((pts[-1][0] + d[0], pts[-1][1] + d[1]))
        edge_points.extend(samples)
    edges = [tuple(_sgn(_eval(f, p)) for f in forms) for p in edge_points]

    chambers_set = {}
    for sv in edges:
        k = sv.index(0)
        for s in (1, -1):
            chambers_set[sv[:k] + (s,) + sv[k + 1 :]] = None
    chambers = sorted(chambers_set)
    fs = FaceStructure(A, vertices, vertex_points, edges, edge_points, chambers)
    if fs.euler() != 1:
        raise ArithmeticError(f"face counts {fs.counts} violate the Euler relation")
    return fs


def _le(F: Sign, G: Sign) -> bool:
    return all(f == 0 or f == g for f, g in zip(F, G))


def _compose(F: Sign, C: Sign) -> Sign:
    return tuple(f if f else c for f, c in zip(F, C))


@dataclass
class TwistedComplex:
    """Chain groups indexed by Salvetti cells and the twisted boundary matrices.

    ``d1`` has one row per 0-cell and one column per 1-cell; ``d2`` has one
    row per 1-cell and one column per 2-cell.
    """

    cells0: list
    cells1: list
    cells2: list
    d1: list
    d2: list

    @property
    def dims(self) -> tuple[int, int, int]:
        return len(self.cells0), len(self.cells1), len(self.cells2)

    def composite_is_zero(self) -> bool:
        rows, inner, cols = len(self.d1), len(self.cells1), len(self.cells2)
        for i in range(rows):
            for k in range(cols):
                acc = 0
                for j in range(inner):
                    x, y = self.d1[i][j], self.d2[j][k]
                    if _nonzero(x) and _nonzero(y):
                        acc = x * y + acc
                if _nonzero(acc):
                    return False
        return True


def _nonzero(x) -> bool:
    if isinstance(x, CycloElement):
        return not x.is_zero()
    return x != 0


def _angle_key(v):
    x, y = v
    upper = y > 0 or (y == 0 and x > 0)
    return 0 if upper else 1


def _sort_by_angle(vectors: list) -> list[int]:
    """Indices of ``vectors`` in counterclockwise order, exactly."""

    def cmp(i, j):
        u, v = vectors[i], vectors[j]
        hu, hv = _angle_key(u), _angle_key(v)
        if hu != hv:
            return hu - hv
        cross = u[0] * v[1] - u[1] * v[0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(range(len(vectors)), key=cmp_to_key(cmp))


def twisted_complex(A: Arrangement, L: LocalSystem, faces: FaceStructure | None = None) -> TwistedComplex:
    check_length(A, L)
    fs = faces or face_structure(A)
    t = [cyclotomic_embed(a) for a in L.exponents]
    one = 1
    lines_of_edge = [sv.index(0) for sv in fs.edges]

    cells0 = list(fs.chambers)
    idx0 = {c: k for k, c in enumerate(cells0)}
    cells1 = []
    for e, sv in enumerate(fs.edges):
        j = lines_of_edge[e]
        for s in (1, -1):
            cells1.append((e, sv[:j] + (s,) + sv[j + 1 :]))
    idx1 = {c: k for k, c in enumerate(cells1)}

    def cross_weight(C: Sign, j: int):
        return one if C[j] > 0 else t[j]

    d1 = [[0] * len(cells1) for _ in cells0]
    for k, (e, C) in enumerate(cells1):
        j = lines_of_edge[e]
        D = C[:j] + (-C[j],) + C[j + 1 :]
        d1[idx0[D]][k] = cross_weight(C, j)
        d1[idx0[C]][k] = -1

    cells2 = []
    d2_cols = []
    for v, P in enumerate(fs.vertices):
        pt = fs.vertex_points[v]
        around = [e for e, sv in enumerate(fs.edges) if _le(P, sv)]
        dirs = [
            (fs.edge_points[e][0] - pt[0], fs.edge_points[e][1] - pt[1]) for e in around
        ]
        order = _sort_by_angle(dirs)
        rays = [around[o] for o in order]
        rdirs = [dirs[o] for o in order]
        n_rays = len(rays)
        m = n_rays // 2
        through = [j for j, x in enumerate(P) if x == 0]
        sectors = []
        for k in range(n_rays):
            u, w = rdirs[k], rdirs[(k + 1) % n_rays]
            d = (u[0] + w[0], u[1] + w[1])
            local = list(P)
            for j in through:
                f = A.forms[j]
                local[j] = _sgn(f[0] * d[0] + f[1] * d[1])
            sectors.append(tuple(local))

        def tau(C: Sign, D: Sign):
            w = one
            for j in through:
                if C[j] != D[j]:
                    w = w * cross_weight(C, j)
            return w

        for k in range(n_rays):
            C = sectors[k]
            col = {}
            for step in range(1, m + 1):
                D = sectors[(k + step - 1) % n_rays]
                cell = idx1[(rays[(k + step) % n_rays], D)]
                col[cell] = col.get(cell, 0) + tau(C, D)
            for step in range(m):
                D = sectors[(k - step) % n_rays]
                cell = idx1[(rays[(k - step) % n_rays], D)]
                col[cell] = col.get(cell, 0) - tau(C, D)
            cells2.append((v, C))
            d2_cols.append(col)
    d2 = [[0] * len(cells2) for _ in cells1]
    for k, col in enumerate(d2_cols):
        for i, x in col.items():
            d2[i][k] = x
    return TwistedComplex(cells0, cells1, cells2, d1, d2)


@lru_cache(maxsize=4096)
def twisted_betti(A: Arrangement, L: LocalSystem) -> tuple[int, int, int]:
    """Dimensions (b0, b1, b2) of the twisted cohomology of the complement.

    Also accepts point configurations in C (n = 1) and n = 0, where the
    answer is immediate.
    """
    check_length(A, L)
    if A.n == 0 or A.r == 0:
        return 1, 0, 0  # a point, or the complement of nothing
    if A.n == 1:
        b0 = 1 if L.is_constant else 0
        return b0, A.r - 1 + b0, 0
    if A.n != 2:
        raise PreconditionError("the oracle handles arrangements in the plane")
    cx = twisted_complex(A, L)
    n0, n1, n2 = cx.dims
    r1 = rank_exact(cx.d1) if n0 and n1 else 0
    r2 = rank_exact(cx.d2) if n1 and n2 else 0
    return n0 - r1, n1 - r1 - r2, n2 - r2


def descended_system(A: Arrangement, L: LocalSystem, k: int = 0) -> LocalSystem:
    return L.sub([i for i in range(A.r) if i != k])


def coned_cohomology(A: Arrangement, L: LocalSystem, q: int, decone_index: int = 0) -> LocalDim:
    """h^q of the projectivized complement with the descended local system."""
    check_length(A, L)
    if not A.central:
        raise PreconditionError("coned cohomology needs a central arrangement")
    if sum(L.exponents) % 1 != 0:
        raise PreconditionError("the product of all monodromies must be 1 to descend")
    if A.n not in (2, 3):
        raise PreconditionError("deconing is supported for n = 2 and n = 3")
    B = decone(A, decone_index)
    betti = twisted_betti(B, descended_system(A, L, decone_index))
    value = betti[q] if 0 <= q < len(betti) else 0
    return LocalDim.oracle(value, "salvetti on the deconed arrangement")


def complement_betti_via_cone(A: Arrangement, L: LocalSystem, decone_index: int = 0) -> list[int]:
    """All h^k(U, L), k = 0..n, for a central essential A with n in {2, 3}.

    Uses U = C* x P(U) when the monodromies multiply to 1; otherwise every
    group vanishes.
    """
    check_length(A, L)
    if sum(L.exponents) % 1 != 0:
        return [0] * (A.n + 1)
    p = [coned_cohomology(A, L, q, decone_index).value for q in range(A.n)]
    return [(p[k] if k < A.n else 0) + (p[k - 1] if k >= 1 else 0) for k in range(A.n + 1)]


def top_cohomology_via_cone(A: Arrangement, L: LocalSystem, decone_index: int = 0) -> LocalDim:
    """h^n(U, L) for central essential A in C^n (n = 2, 3)."""
    if sum(L.exponents) % 1 != 0:
        return LocalDim.oracle(0, "product of monodromies is not 1")
    return LocalDim.oracle(
        coned_cohomology(A, L, A.n - 1, decone_index).value, "salvetti on the deconed arrangement"
    )
