"""Small exact linear algebra helpers over the rationals.

Matrices are lists of row lists holding ints or Fractions.  Everything
here is naive Gaussian elimination; sizes in this package stay tiny.
"""

from fractions import Fraction

from goa.errors import InputError


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_is_zero(a):
    return all(x == 0 for row in a for x in row)


def identity_matrix(s):
    return [[1 if i == j else 0 for j in range(s)] for i in range(s)]


def mat_pow(a, e):
    if e < 0:
        return mat_pow(mat_inverse(a), -e)
    s = len(a)
    out = identity_matrix(s)
    base = a
    while e:
        if e & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        e >>= 1
    return out


def mat_div_exact(a, d):
    """Divide every entry by d, requiring exact divisibility into ints or Fractions."""
    out = []
    for row in a:
        r = []
        for x in row:
            q = Fraction(x, d) if not isinstance(x, Fraction) else x / d
            r.append(q.numerator if q.denominator == 1 else q)
        out.append(r)
    return out


def solve_exact(a, b):
    """Solve the square system a x = b exactly; raises on singular input."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise InputError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def mat_inverse(a):
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise InputError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = []
    for r in range(n):
        row = m[r][n:]
        out.append([x.numerator if x.denominator == 1 else x for x in row])
    return out


def rank(a):
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    rk = 0
    for col in range(cols):
        piv = next((r for r in range(rk, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][col]
        m[rk] = [x * inv for x in m[rk]]
        for r in range(rows):
            if r != rk and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        rk += 1
        if rk == rows:
            break
    return rk


def solve_least_norm(a, b):
    """Solve a x = b for a possibly rectangular exact system.

    Returns (solution, residual_is_zero).  The solution sets free
    variables to zero; residual_is_zero reports whether b lies in the
    column span of a.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a, b)]
    pivots = []
    rk = 0
    for col in range(cols):
        piv = next((r for r in range(rk, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][col]
        m[rk] = [x * inv for x in m[rk]]
        for r in range(rows):
            if r != rk and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        pivots.append(col)
        rk += 1
        if rk == rows:
            break
    consistent = all(m[r][cols] == 0 for r in range(rk, rows))
    x = [Fraction(0)] * cols
    for r, col in enumerate(pivots):
        x[col] = m[r][cols]
    return x, consistent
