"""Pure-Python arithmetic kernel.

Elements of Z[lambda] are tuples of ints of length d (coordinates in the
power basis 1, lambda, ..., lambda^(d-1), where d is the degree of the
minimal polynomial of lambda).  `red` is the reduction table: red[k] is the
coordinate vector of lambda^(d+k); it always carries at least the row for
lambda^d so that multiplication by lambda can fold its top coefficient.

2x2 matrices are flat 4-tuples (a, b, c, d) of such vectors, and boundary
points are projective pairs (u, w) meaning u/w, with (1, 0, ...) : (0, ...)
playing the role of infinity.

The compiled twin in _speedups.pyx implements the same functions with the
same semantics; kernel.py picks one at import time.
"""

BACKEND = "python"


def vec_is_zero(a):
    for x in a:
        if x:
            return False
    return True


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(a, k):
    return tuple(x * k for x in a)


def vec_mul(a, b, red):
    """Product in Z[lambda], reduced modulo the minimal polynomial."""
    d = len(a)
    if d == 1:
        return (a[0] * b[0],)
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for p in range(2 * d - 2, d - 1, -1):
        c = prod[p]
        if c:
            row = red[p - d]
            for j in range(d):
                prod[j] += c * row[j]
    return tuple(prod[:d])


def lambda_shift(a, red):
    """Multiply by lambda: shift the power basis up one and fold the overflow."""
    d = len(a)
    top = a[d - 1]
    row = red[0]
    if d == 1:
        return (top * row[0],)
    out = [0] * d
    for j in range(1, d):
        out[j] = a[j - 1]
    if top:
        for j in range(d):
            out[j] += top * row[j]
    return tuple(out)


def mat_mul(A, B, red):
    a, b, c, d = A
    e, f, g, h = B
    return (
        vec_add(vec_mul(a, e, red), vec_mul(b, g, red)),
        vec_add(vec_mul(a, f, red), vec_mul(b, h, red)),
        vec_add(vec_mul(c, e, red), vec_mul(d, g, red)),
        vec_add(vec_mul(c, f, red), vec_mul(d, h, red)),
    )


def mat_mul_tb(A, b, red):
    """Right-multiply by T_b = [[b*lambda, -1], [1, 0]]."""
    p, pp, q, qp = A
    na = vec_add(vec_scale(lambda_shift(p, red), b), pp)
    nc = vec_add(vec_scale(lambda_shift(q, red), b), qp)
    return (na, vec_neg(p), nc, vec_neg(q))


def mat_det(A, red):
    a, b, c, d = A
    return vec_sub(vec_mul(a, d, red), vec_mul(b, c, red))


def mat_apply(A, u, w, red):
    """Apply the matrix to a projective pair: (a u + b w : c u + d w)."""
    a, b, c, d = A
    return (
        vec_add(vec_mul(a, u, red), vec_mul(b, w, red)),
        vec_add(vec_mul(c, u, red), vec_mul(d, w, red)),
    )


def tb_inv_apply(u, w, b, red):
    """Apply T_b^{-1} to a projective pair: (u : w) -> (-w : u - b*lambda*w)."""
    return (vec_neg(w), vec_sub(u, vec_scale(lambda_shift(w, red), b)))


def cross(u1, w1, u2, w2, red):
    """u1*w2 - u2*w1; zero exactly when the two pairs are projectively equal."""
    return vec_sub(vec_mul(u1, w2, red), vec_mul(u2, w1, red))


def eval_cf_matrix(bs, red, d):
    """Product T_{b_1} T_{b_2} ... T_{b_n} for a coefficient sequence."""
    one = (1,) + (0,) * (d - 1)
    zero = (0,) * d
    M = (one, zero, zero, one)
    for b in bs:
        M = mat_mul_tb(M, b, red)
    return M


def ivec_sign(vec, lo, hi, shift):
    """Sign of sum(vec[i] * lambda^i) with lambda in [lo, hi] / 2^shift.

    Returns +1 or -1 when the interval evaluation decides, 0 when it
    straddles zero (caller refines the lambda interval and retries).
    """
    rl = rh = vec[-1]
    s = 0
    for i in range(len(vec) - 2, -1, -1):
        p1 = rl * lo
        p2 = rl * hi
        p3 = rh * lo
        p4 = rh * hi
        nl = min(p1, p2, p3, p4)
        nh = max(p1, p2, p3, p4)
        s += shift
        c = vec[i] << s
        rl = nl + c
        rh = nh + c
    if rl > 0:
        return 1
    if rh < 0:
        return -1
    return 0


def dyadic_poly_sign(coeffs, n, s):
    """Exact sign of an integer polynomial at the dyadic point n / 2^s."""
    acc = coeffs[-1]
    pw = 1 << s
    for i in range(len(coeffs) - 2, -1, -1):
        acc = acc * n + coeffs[i] * pw
        pw <<= s
    if acc > 0:
        return 1
    if acc < 0:
        return -1
    return 0


def _gcd_many(values):
    g = 0
    for v in values:
        a = v if v >= 0 else -v
        while a:
            g, a = a, g % a
        if g == 1:
            return 1
    return g


def proj_normalize(u, w):
    """Divide out integer content and fix the sign of a projective pair.

    Canonical for degree 1 (plain rationals); for higher degrees it is only
    a deterministic representative of the integer-scaled class, suitable as
    a cache key but not as a projective equality test.
    """
    g = _gcd_many(u + w)
    if g > 1:
        u = tuple(x // g for x in u)
        w = tuple(x // g for x in w)
    lead = 0
    for x in w:
        if x:
            lead = x
            break
    if not lead:
        for x in u:
            if x:
                lead = x
                break
    if lead < 0:
        u = vec_neg(u)
        w = vec_neg(w)
    return u, w
