"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own code paths:
genus is recounted with Pick's theorem, symplectic group orders come from
the classical order formula, and quadratic-form values are recomputed
from the defining identity.
"""

from __future__ import annotations

import random
from math import gcd

import pytest

from spincycles import corpus
from spincycles.polygon import LatticePolygon, parse_polygon


@pytest.fixture(scope="session")
def d5():
    return corpus.load("quintic")


@pytest.fixture(scope="session")
def d7():
    return corpus.load("d7")


@pytest.fixture(scope="session")
def rect_4x2():
    return corpus.load("rect_4x2")


@pytest.fixture(scope="session")
def square_3x3():
    return corpus.load("square_3x3")


@pytest.fixture(scope="session")
def trapezoid_g2():
    return corpus.load("trapezoid_g2")


@pytest.fixture(scope="session")
def trapezoid_g2_cut():
    return corpus.load("trapezoid_g2_cut")


@pytest.fixture(scope="session")
def triangle_d3():
    return corpus.load("triangle_d3")


def polygon_from(vertices) -> LatticePolygon:
    return parse_polygon({"vertices": [list(v) for v in vertices]})


# ---------------------------------------------------------------------------
# independent oracles


def sp_order(genus: int) -> int:
    """|Sp(2g, F2)| = 2^(g^2) * prod_{i=1..g} (4^i - 1)."""
    order = 1 << (genus * genus)
    for i in range(1, genus + 1):
        order *= (4**i) - 1
    return order


def pick_genus(p: LatticePolygon) -> int:
    """Interior point count via Pick's theorem: I = A - B/2 + 1."""
    verts = p.vertices
    n = len(verts)
    twice_area = sum(
        verts[i][0] * verts[(i + 1) % n][1] - verts[(i + 1) % n][0] * verts[i][1]
        for i in range(n)
    )
    boundary = sum(
        gcd(
            abs(verts[(i + 1) % n][0] - verts[i][0]),
            abs(verts[(i + 1) % n][1] - verts[i][1]),
        )
        for i in range(n)
    )
    assert (twice_area - boundary) % 2 == 0
    return (twice_area - boundary + 2) // 2


def brute_q(q_bits_a, q_bits_b, x_bits: int) -> int:
    """q(x) recomputed from the defining identity, bit by bit.

    Expands q(sum e_k) = sum q(e_k) + sum_{k<l} <e_k, e_l> directly; the
    only basis pairs with nonzero pairing are (a_i, b_i).
    """
    g = len(q_bits_a)
    total = 0
    support = [k for k in range(2 * g) if (x_bits >> k) & 1]
    for k in support:
        total += q_bits_a[k // 2] if k % 2 == 0 else q_bits_b[k // 2]
    for idx, k in enumerate(support):
        for l in support[idx + 1 :]:
            if l == k + 1 and k % 2 == 0:
                total += 1
    return total & 1


# ---------------------------------------------------------------------------
# random smooth polygons for property checks


def _primitive(v):
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def _edge_length(a, b):
    return gcd(abs(a[0] - b[0]), abs(a[1] - b[1]))


def cut_corner(vertices: list, i: int) -> list | None:
    """Unit corner cut at vertex i; None when an adjacent edge is too short."""
    n = len(vertices)
    u, v, w = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
    if _edge_length(u, v) < 2 or _edge_length(v, w) < 2:
        return None
    to_u = _primitive((u[0] - v[0], u[1] - v[1]))
    to_w = _primitive((w[0] - v[0], w[1] - v[1]))
    out = list(vertices)
    out[i : i + 1] = [
        (v[0] + to_u[0], v[1] + to_u[1]),
        (v[0] + to_w[0], v[1] + to_w[1]),
    ]
    return out


BASE_FAMILIES = []
for _a in range(2, 8):
    for _b in range(2, 5):
        BASE_FAMILIES.append([(0, 0), (_a, 0), (_a, _b), (0, _b)])
for _d in range(3, 9):
    BASE_FAMILIES.append([(0, 0), (_d, 0), (0, _d)])
for _alpha in range(0, 4):
    for _n in range(1, 6):
        BASE_FAMILIES.append(
            [(0, 0), (_n + 2 * _alpha, 0), (_n, 2), (0, 2)]
            if _alpha
            else [(0, 0), (_n, 0), (_n, 2), (0, 2)]
        )


def random_smooth_polygon(rng: random.Random) -> LatticePolygon | None:
    """A random smooth polygon of genus >= 1, or None when the draw fails."""
    verts = [tuple(v) for v in rng.choice(BASE_FAMILIES)]
    for _ in range(rng.randrange(3)):
        i = rng.randrange(len(verts))
        cut = cut_corner(verts, i)
        if cut is not None:
            verts = cut
    # random unimodular map and translation
    mats = [
        ((1, rng.randint(-2, 2)), (0, 1)),
        ((1, 0), (rng.randint(-2, 2), 1)),
        ((0, 1), (1, 0)),
        ((-1, 0), (0, 1)),
    ]
    la, lb = (1, 0), (0, 1)
    for _ in range(rng.randrange(4)):
        (a, b), (c, d) = rng.choice(mats)
        la, lb = (
            (a * la[0] + b * lb[0], a * la[1] + b * lb[1]),
            (c * la[0] + d * lb[0], c * la[1] + d * lb[1]),
        )
    tx, ty = rng.randint(-5, 5), rng.randint(-5, 5)
    moved = [
        (la[0] * x + la[1] * y + tx, lb[0] * x + lb[1] * y + ty) for x, y in verts
    ]
    try:
        p = polygon_from(moved)
    except Exception:
        return None
    from spincycles.polygon import GenusZeroError, interior_data, is_smooth

    if not is_smooth(p):
        return None
    try:
        interior_data(p)
    except GenusZeroError:
        return None
    return p
