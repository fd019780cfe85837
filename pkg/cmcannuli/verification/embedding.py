"""
Self-intersection test for the triangulated patch.

Candidate pairs come from a k-d tree over triangle centroids followed by a
bounding box filter; pairs sharing a vertex are adjacent and skipped. The
narrow phase tests every edge of one triangle against the other with
orientation predicates, filtered in floating point and decided exactly with
rationals when the filter cannot.
"""

from fractions import Fraction

import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import Verdict
from cmcannuli.verification.mesh import check_nondegenerate

# Static error bound of the orient3d determinant in units of its permanent.
ORIENT3D_BOUND = (7.0 + 56.0 * 2.0**-53) * 2.0**-53

CHUNK = 1 << 18


def _exact_orient3d(a, b, c, d) -> int:
    rows = [[Fraction(float(x)) - Fraction(float(w)) for x, w in zip(p, d)] for p in (a, b, c)]
    (ax, ay, az), (bx, by, bz), (cx, cy, cz) = rows
    det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx)
    return (det > 0) - (det < 0)


def orient3d(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """
    Sign of det[a - d, b - d, c - d] for stacks of points, shape (m, 3)
    each. Positive when d lies below the plane of a, b, c oriented
    counter-clockwise.
    """
    ad, bd, cd = a - d, b - d, c - d

    minor_a = bd[:, 1] * cd[:, 2] - bd[:, 2] * cd[:, 1]
    minor_b = bd[:, 0] * cd[:, 2] - bd[:, 2] * cd[:, 0]
    minor_c = bd[:, 0] * cd[:, 1] - bd[:, 1] * cd[:, 0]
    det = ad[:, 0] * minor_a - ad[:, 1] * minor_b + ad[:, 2] * minor_c

    permanent = (
        np.abs(ad[:, 0]) * (np.abs(bd[:, 1] * cd[:, 2]) + np.abs(bd[:, 2] * cd[:, 1]))
        + np.abs(ad[:, 1]) * (np.abs(bd[:, 0] * cd[:, 2]) + np.abs(bd[:, 2] * cd[:, 0]))
        + np.abs(ad[:, 2]) * (np.abs(bd[:, 0] * cd[:, 1]) + np.abs(bd[:, 1] * cd[:, 0]))
    )

    sign = np.sign(det).astype(int)
    uncertain = np.flatnonzero(np.abs(det) <= ORIENT3D_BOUND * permanent)

    for k in uncertain:
        sign[k] = _exact_orient3d(a[k], b[k], c[k], d[k])

    return sign


def segment_crosses_triangle(p, q, a, b, c) -> np.ndarray:
    """
    Whether each segment pq meets the triangle abc, touching included.
    Segments lying in the plane of the triangle are not reported.
    """
    sp = orient3d(a, b, c, p)
    sq = orient3d(a, b, c, q)
    straddles = (sp * sq <= 0) & ~((sp == 0) & (sq == 0))

    result = np.zeros(len(p), dtype=bool)
    index = np.flatnonzero(straddles)

    if len(index) == 0:
        return result

    p, q, a, b, c = p[index], q[index], a[index], b[index], c[index]
    s1 = orient3d(p, q, a, b)
    s2 = orient3d(p, q, b, c)
    s3 = orient3d(p, q, c, a)

    inside = ((s1 >= 0) & (s2 >= 0) & (s3 >= 0)) | ((s1 <= 0) & (s2 <= 0) & (s3 <= 0))
    result[index] = inside

    return result


def triangles_intersect(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """
    Pairwise triangle intersection for stacks of triangles, shape (m, 3, 3):
    true when an edge of either triangle meets the other.
    """
    hit = np.zeros(len(first), dtype=bool)

    for one, other in ((first, second), (second, first)):
        for k in range(3):
            todo = np.flatnonzero(~hit)
            if len(todo) == 0:
                return hit

            hit[todo] |= segment_crosses_triangle(
                one[todo, k],
                one[todo, (k + 1) % 3],
                other[todo, 0],
                other[todo, 1],
                other[todo, 2],
            )

    return hit


def candidate_pairs(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """
    Non-adjacent triangle pairs whose bounding boxes overlap.
    """
    corners = vertices[faces]
    centroids = corners.mean(axis=1)
    reach = float(np.max(np.linalg.norm(corners - centroids[:, None], axis=-1)))

    pairs = cKDTree(centroids).query_pairs(2.0 * reach, output_type="ndarray")

    if len(pairs) == 0:
        return pairs

    shared = np.any(faces[pairs[:, 0], :, None] == faces[pairs[:, 1], None, :], axis=(1, 2))
    pairs = pairs[~shared]

    low, high = corners.min(axis=1), corners.max(axis=1)
    overlap = np.all(
        (low[pairs[:, 0]] <= high[pairs[:, 1]]) & (low[pairs[:, 1]] <= high[pairs[:, 0]]),
        axis=1,
    )

    return pairs[overlap]


def intersecting_pairs(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """
    All pairs of non-adjacent intersecting triangles, shape (k, 2).
    """
    pairs = candidate_pairs(vertices, faces)
    logger.debug(f"{len(pairs)} candidate triangle pairs")

    found = []
    for start in range(0, len(pairs), CHUNK):
        chunk = pairs[start : start + CHUNK]
        hit = triangles_intersect(vertices[faces[chunk[:, 0]]], vertices[faces[chunk[:, 1]]])
        found.append(chunk[hit])

    return np.concatenate(found) if found else np.empty((0, 2), dtype=int)


def check_embedded(model: AnnulusModel) -> Verdict:
    """
    Count intersecting non-adjacent triangle pairs; zero passes.
    """
    vertices, faces = model.vertices(), model.faces()
    check_nondegenerate(vertices, faces, model.diameter)

    hits = intersecting_pairs(vertices, faces)

    details = f"{len(hits)} intersecting pairs among {len(faces)} triangles"
    if len(hits):
        details += f"; first pair {hits[0].tolist()}"

    return Verdict.from_residual("embedded", float(len(hits)), 0.0, details=details)
