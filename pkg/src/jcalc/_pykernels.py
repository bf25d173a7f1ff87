"""Pure-Python versions of the hot kernels.

Letters are encoded as nonzero signed integers: ``+i`` is ``x_i`` and ``-i``
is ``x_i^-1``.  The compiled module ``jcalc._core`` exports the same names
with the same semantics.
"""

from math import comb


def reduce_code(code):
    out = []
    for a in code:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def magnus_dense(code, n, bound):
    """Truncated Magnus expansion of a letter sequence.

    Returns ``bound + 1`` lists; list ``d`` holds the ``n**d`` coefficients of
    the degree-``d`` monomials, indexed base ``n`` with the first letter most
    significant.
    """
    arr = [[0] * (n ** d) for d in range(bound + 1)]
    arr[0][0] = 1
    for a in code:
        i = abs(a) - 1
        if a > 0:
            # right multiplication by 1 + X_i
            for d in range(bound, 0, -1):
                cur, prev = arr[d], arr[d - 1]
                for idx, c in enumerate(prev):
                    if c:
                        cur[idx * n + i] += c
        else:
            # right multiplication by (1 + X_i)^-1: y_d = x_d - y_{d-1} X_i
            for d in range(1, bound + 1):
                cur, prev = arr[d], arr[d - 1]
                for idx, c in enumerate(prev):
                    if c:
                        cur[idx * n + i] -= c
    return arr


def coefficient_bound(length, bound):
    """Upper bound on any coefficient of ``magnus_dense`` for a word of this length."""
    if length == 0 or bound == 0:
        return 1
    return comb(length + bound - 1, bound)
