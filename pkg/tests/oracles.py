"""Double-precision reference computations, independent of the kernel code paths."""

import math

import numpy as np

SQRT3_2 = math.sqrt(3.0) / 2.0


def f64(x):
    return np.asarray(x, dtype=np.float32).astype(np.float64)


def collapse_ratio(m, e1, e2, n_points=100, rng=None):
    """Sampling oracle for plane collapse.

    Projects ``n_points`` random points of span(e1, e2) with ``m`` and measures
    how far the images are from a common line through the origin: the largest
    pairwise perp-dot of the images divided by the matching coefficient
    parallelogram.  Returns that area ratio divided by |e1||e2|.
    """
    rng = rng or np.random.default_rng(0)
    m, e1, e2 = f64(m), f64(e1), f64(e2)
    coef = rng.uniform(-1, 1, (n_points, 2))
    pts = coef[:, :1] * e1 + coef[:, 1:] * e2
    img = np.array([[sum(m[r, c] * p[c] for c in range(3)) for r in range(2)] for p in pts])
    i, j = np.triu_indices(n_points, 1)
    perp = img[i, 1] * img[j, 0] - img[i, 0] * img[j, 1]
    par = coef[i, 0] * coef[j, 1] - coef[i, 1] * coef[j, 0]
    keep = np.abs(par) > 1e-3
    ratio = np.max(np.abs(perp[keep]) / np.abs(par[keep]))
    return ratio / (np.linalg.norm(e1) * np.linalg.norm(e2))


def iso_paper(p, scale_den, anchor):
    """Hand-written isometric chain: real/visible point -> paper mm."""
    x, y, z = (float(c) for c in p)
    u = SQRT3_2 * (x - y)
    v = -(x + y) / 2.0 + z
    return (u / scale_den + anchor[0], v / scale_den + anchor[1])


def sequential_offsets(p, general, local, membership):
    """Replay general offsets front to back, then local ones; returns the image
    and the signed distance of the point to each plane when it was tested."""
    cur = np.array(p, dtype=np.float64)
    margins = []
    for n, c, d in general:
        h = float(np.dot(n, cur) - c)
        margins.append(h)
        if h > 1e-3:
            cur = cur + d
    for pipes, d in local:
        if membership in pipes:
            cur = cur + d
    return cur, margins


def intervals_overlap(spans):
    """Brute force: any pair of intervals with common interior points."""
    for i in range(len(spans)):
        for j in range(i + 1, len(spans)):
            if max(spans[i][0], spans[j][0]) < min(spans[i][1], spans[j][1]):
                return True
    return False
