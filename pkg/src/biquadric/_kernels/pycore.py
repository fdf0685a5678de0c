"""Pure-Python kernels for the hot integer inner loops.

Every function here has a compiled twin in _cycore.pyx with identical
name, signature and semantics; the package selects one backend at import
time (see __init__).  Inputs are plain machine-scale integers, callers
are responsible for clearing denominators.  No validation beyond what is
needed for correctness: these are internal.
"""

BACKEND = "python"


def valuation_unit(n: int, p: int) -> tuple[int, int]:
    """(v, u) with n = p^v * u and p not dividing u.  n must be nonzero."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def legendre_int(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) >> 1, p) == 1 else -1


def squarefree_int(n: int) -> int:
    """Signed squarefree part of a nonzero integer (trial division)."""
    s = -1 if n < 0 else 1
    n = abs(n)
    d = 2
    while d * d <= n:
        dd = d * d
        while n % dd == 0:
            n //= dd
        if n % d == 0:
            s *= d
            n //= d
        d += 1 if d == 2 else 2
    return s * n


def hilbert_int(a: int, b: int, place: int) -> int:
    """Hilbert symbol (a,b) at a place of Q; place 0 means the real place.

    Closed form: signs at the real place, Legendre symbols of the unit
    parts at odd p, the mod-8 characters eps and omega at p = 2.  Only
    valuation parities enter.
    """
    if place == 0:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    al, u = valuation_unit(a, p)
    be, w = valuation_unit(b, p)
    if p != 2:
        s = 1
        if al & 1:
            if be & 1 and (p & 3) == 3:
                s = -s
            s *= legendre_int(w, p)
        if be & 1:
            s *= legendre_int(u, p)
        return s
    # p = 2: eps(m) = (m-1)/2 mod 2, omega(m) = (m^2-1)/8 mod 2
    e = 0
    if (u & 3) == 3 and (w & 3) == 3:
        e = 1
    if al & 1 and (w & 7) in (3, 5):
        e ^= 1
    if be & 1 and (u & 7) in (3, 5):
        e ^= 1
    return -1 if e else 1


def conic_soluble(a: int, b: int, p: int, depth: int) -> bool:
    """Primitive solubility of z^2 = a x^2 + b y^2 modulo p^depth.

    Requires v_p(a), v_p(b) in {0, 1} and depth >= 2 so that a primitive
    solution must have x or y a unit; scaling by the inverse of that unit
    reduces the search to the two slices x = 1 and y = 1.
    """
    m = p ** depth
    a %= m
    b %= m
    squares = bytearray(m)
    for z in range((m >> 1) + 1):
        squares[z * z % m] = 1
    for y in range(m):
        if squares[(a + b * y * y) % m]:
            return True
    for x in range(m):
        if squares[(a * x * x + b) % m]:
            return True
    return False


def isotropy_search(coeffs: tuple, bound: int):
    """Nonzero vector with entries in [0, bound] on which the diagonal
    form with the given nonzero integer coefficients vanishes, or None.

    Meet-in-the-middle over a split of the coefficient list; entry signs
    are irrelevant because only squares enter.  None means "not found at
    this bound", never "anisotropic".
    """
    n = len(coeffs)
    if n == 0:
        return None
    k = n >> 1
    left, right = coeffs[:k], coeffs[k:]
    table = {}
    for xs in _grid(len(left), bound):
        v = 0
        for c, x in zip(left, xs):
            v += c * x * x
        prev = table.get(v)
        if prev is None or (not any(prev) and any(xs)):
            table[v] = xs
    for ys in _grid(len(right), bound):
        w = 0
        for c, y in zip(right, ys):
            w += c * y * y
        xs = table.get(-w)
        if xs is not None and (any(xs) or any(ys)):
            return xs + ys
    return None


def _grid(dim: int, bound: int):
    if dim == 0:
        yield ()
        return
    for rest in _grid(dim - 1, bound):
        for v in range(bound + 1):
            yield rest + (v,)


def scan_hilbert_table(classes: list, local_idx: list, table: list, place: int):
    """Compare hilbert_int against a local-square-class lookup table on
    every ordered pair of the given class representatives.

    table[i][j] holds the expected symbol for local-class indices (i, j).
    Returns (mismatch_count, first_i, first_j) with (-1, -1) when clean.
    """
    mismatches = 0
    fi = fj = -1
    n = len(classes)
    for i in range(n):
        ai = classes[i]
        row = table[local_idx[i]]
        for j in range(n):
            if hilbert_int(ai, classes[j], place) != row[local_idx[j]]:
                if mismatches == 0:
                    fi, fj = i, j
                mismatches += 1
    return mismatches, fi, fj
