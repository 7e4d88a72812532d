"""Independent reference computations used to freeze expected values.

Nothing here imports the package's bound code: the family is re-typed from
its defining formula and minimised by brute force.
"""
import math


def family_over_8pi(a, n, genus, beta=0):
    d = math.ceil(n * genus / (n + 1)) + n
    delta = 1 + (genus - 1 - beta / 2) / d
    c = (n - 1) / (n + 1)
    return d * (1 + (2 * a * a * delta - c) / ((2 * a - 1) ** 2 + c))


def golden_section(f, lo, hi, tol=1e-12, max_iter=500):
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def grid_min(f, lo, hi, steps=20001):
    best = (math.inf, None)
    for k in range(steps):
        x = lo + (hi - lo) * k / (steps - 1)
        v = f(x)
        if v < best[0]:
            best = (v, x)
    return best[1], best[0]


def central_difference(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


def optimal_over_8pi(n, genus):
    """Minimum of the family over the admissible interval by grid + golden-section refinement."""
    e = 1 / math.sqrt(2 * n * (n + 1))
    hi = e if n >= 2 else e * (1 - 1e-9)  # n=1 blows up at a=1/2
    f = lambda a: family_over_8pi(a, n, genus)  # noqa: E731
    x0, _ = grid_min(f, -e, hi, 2001)
    step = 2 * e / 2000
    x, v = golden_section(f, max(-e, x0 - step), min(hi, x0 + step))
    for edge in (-e, hi):
        if f(edge) < v:
            x, v = edge, f(edge)
    return x, v


def shortest_dual_brute(v1, v2, k=30):
    det = v1[0] * v2[1] - v1[1] * v2[0]
    w1 = (v2[1] / det, -v2[0] / det)
    w2 = (-v1[1] / det, v1[0] / det)
    best = math.inf
    for i in range(-k, k + 1):
        for j in range(-k, k + 1):
            if i or j:
                x = i * w1[0] + j * w2[0]
                y = i * w1[1] + j * w2[1]
                best = min(best, x * x + y * y)
    return best
