"""Pure-Python versions of the counting kernels (reference and fallback)."""


def omega_histogram(q, add_t, mul_t, a, J, M):
    """Histogram of w0 = ord(frac(m * u)) over monic m = J * r of degree M.

    a[j] is the coefficient of pi^j in u for 1 <= j < k (a[0] is ignored),
    k = len(a).  Entry 0 counts the m with w0 >= k - M (including w0 = inf);
    entry t (1 <= t < k - M) counts w0 = t.
    """
    k = len(a)
    width = k - M
    hist = [0] * max(width, 1)
    dJ = len(J) - 1
    free = M - dJ
    if free < 0:
        return hist
    r = [0] * free + [1]
    m = [0] * (M + 1)
    while True:
        for i in range(M + 1):
            m[i] = 0
        for i, ri in enumerate(r):
            if ri:
                row = mul_t[ri]
                for j, cj in enumerate(J):
                    if cj:
                        m[i + j] = add_t[m[i + j]][row[cj]]
        found = 0
        for t in range(1, width):
            c = 0
            for i in range(M + 1):
                if t + i >= k:
                    break
                if m[i] and a[t + i]:
                    c = add_t[c][mul_t[m[i]][a[t + i]]]
            if c:
                found = t
                break
        hist[found] += 1
        # odometer over the non-leading coefficients of r
        pos = 0
        while pos < free:
            r[pos] += 1
            if r[pos] < q:
                break
            r[pos] = 0
            pos += 1
        if pos == free:
            return hist
