# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels; same contract as _kernels_py."""
from libc.stdlib cimport malloc, free as cfree


def omega_histogram(int q, add_t, mul_t, a, J, int M):
    cdef int k = len(a)
    cdef int width = k - M
    cdef int dJ = len(J) - 1
    cdef int nfree = M - dJ
    cdef int i, j, t, c, pos, found, ri
    hist = [0] * max(width, 1)
    if nfree < 0:
        return hist
    cdef int *add = <int *> malloc(q * q * sizeof(int))
    cdef int *mul = <int *> malloc(q * q * sizeof(int))
    cdef int *ca = <int *> malloc(k * sizeof(int))
    cdef int *cJ = <int *> malloc((dJ + 1) * sizeof(int))
    cdef int *r = <int *> malloc((nfree + 1) * sizeof(int))
    cdef int *m = <int *> malloc((M + 1) * sizeof(int))
    cdef long *h = <long *> malloc(max(width, 1) * sizeof(long))
    try:
        for i in range(q):
            for j in range(q):
                add[i * q + j] = add_t[i][j]
                mul[i * q + j] = mul_t[i][j]
        for i in range(k):
            ca[i] = a[i]
        for i in range(dJ + 1):
            cJ[i] = J[i]
        for i in range(nfree):
            r[i] = 0
        r[nfree] = 1
        for i in range(max(width, 1)):
            h[i] = 0
        while True:
            for i in range(M + 1):
                m[i] = 0
            for i in range(nfree + 1):
                ri = r[i]
                if ri:
                    for j in range(dJ + 1):
                        if cJ[j]:
                            m[i + j] = add[m[i + j] * q + mul[ri * q + cJ[j]]]
            found = 0
            for t in range(1, width):
                c = 0
                for i in range(M + 1):
                    if t + i >= k:
                        break
                    if m[i] and ca[t + i]:
                        c = add[c * q + mul[m[i] * q + ca[t + i]]]
                if c:
                    found = t
                    break
            h[found] += 1
            pos = 0
            while pos < nfree:
                r[pos] += 1
                if r[pos] < q:
                    break
                r[pos] = 0
                pos += 1
            if pos == nfree:
                break
        for i in range(max(width, 1)):
            hist[i] = h[i]
        return hist
    finally:
        cfree(add); cfree(mul); cfree(ca); cfree(cJ); cfree(r); cfree(m); cfree(h)
