# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: free reduction and truncated Magnus expansion.

Same contract as :mod:`jcalc._pykernels`.  ``magnus_dense`` works in int64 and
refuses inputs whose coefficients could overflow; the dispatcher in
:mod:`jcalc._kernels` routes those to the Python version.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

from math import comb


def reduce_code(code):
    cdef Py_ssize_t m = len(code)
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t j
    cdef long a
    cdef long *stack
    if m == 0:
        return ()
    stack = <long *> malloc(m * sizeof(long))
    if stack == NULL:
        raise MemoryError()
    try:
        for j in range(m):
            a = code[j]
            if top > 0 and stack[top - 1] == -a:
                top -= 1
            else:
                stack[top] = a
                top += 1
        return tuple([stack[j] for j in range(top)])
    finally:
        free(stack)


def magnus_dense(code, int n, int bound):
    cdef Py_ssize_t length = len(code)
    if length > 0 and bound > 0 and comb(length + bound - 1, bound) >= (1 << 62):
        raise OverflowError("coefficients may exceed int64")
    cdef Py_ssize_t *offset = <Py_ssize_t *> malloc((bound + 2) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *width = <Py_ssize_t *> malloc((bound + 1) * sizeof(Py_ssize_t))
    cdef int64_t *buf = NULL
    cdef Py_ssize_t d, idx, total, w
    cdef Py_ssize_t j
    cdef long a
    cdef int i
    cdef int64_t c
    cdef int64_t *cur
    cdef int64_t *prev
    if offset == NULL or width == NULL:
        free(offset)
        free(width)
        raise MemoryError()
    try:
        offset[0] = 0
        w = 1
        for d in range(bound + 1):
            width[d] = w
            offset[d + 1] = offset[d] + w
            w *= n
        total = offset[bound + 1]
        buf = <int64_t *> malloc(total * sizeof(int64_t))
        if buf == NULL:
            raise MemoryError()
        for idx in range(total):
            buf[idx] = 0
        buf[0] = 1
        for j in range(length):
            a = code[j]
            if a > 0:
                i = a - 1
                d = bound
                while d >= 1:
                    cur = buf + offset[d]
                    prev = buf + offset[d - 1]
                    for idx in range(width[d - 1]):
                        c = prev[idx]
                        if c != 0:
                            cur[idx * n + i] += c
                    d -= 1
            else:
                i = -a - 1
                for d in range(1, bound + 1):
                    cur = buf + offset[d]
                    prev = buf + offset[d - 1]
                    for idx in range(width[d - 1]):
                        c = prev[idx]
                        if c != 0:
                            cur[idx * n + i] -= c
        return [[buf[offset[d] + idx] for idx in range(width[d])]
                for d in range(bound + 1)]
    finally:
        free(buf)
        free(offset)
        free(width)
