# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.  Contracts and draw order match ``_pykernels``."""

cimport numpy as cnp

ctypedef cnp.int64_t i64


def grow_wsm(i64[::1] deg, i64[::1] ends, i64 n, i64 m,
             const i64[::1] deltas, i64 step, i64 step_stop,
             const double[::1] u, i64 pos):
    cdef i64 nu = u.shape[0]
    cdef i64 dm, j, i, two_m, target, x, y
    with nogil:
        while step < step_stop:
            dm = deltas[step]
            if pos + 1 + 2 * dm > nu:
                break
            if m == 0:
                target = 0
            else:
                two_m = 2 * m
                i = <i64>(u[pos] * two_m)
                if i >= two_m:
                    i = two_m - 1
                pos += 1
                target = ends[i]
            ends[2 * m] = n
            ends[2 * m + 1] = target
            deg[n] = 1
            deg[target] += 1
            n += 1
            m += 1
            for j in range(dm):
                x = <i64>(u[pos] * n)
                if x >= n:
                    x = n - 1
                y = <i64>(u[pos + 1] * (n - 1))
                if y >= n - 1:
                    y = n - 2
                pos += 2
                if y >= x:
                    y += 1
                ends[2 * m] = x
                ends[2 * m + 1] = y
                deg[x] += 1
                deg[y] += 1
                m += 1
            step += 1
    return n, m, step, pos


def grow_ba(i64[::1] deg, i64[::1] ends, i64 n, i64 m, i64 w, i64 n_stop,
            const double[::1] u, i64 pos, i64[::1] chosen):
    cdef i64 nu = u.shape[0]
    cdef i64 two_m, p, got, i, cand, j, v
    cdef bint dup
    with nogil:
        while n < n_stop:
            two_m = 2 * m
            p = pos
            got = 0
            while got < w and p < nu:
                i = <i64>(u[p] * two_m)
                if i >= two_m:
                    i = two_m - 1
                p += 1
                cand = ends[i]
                dup = False
                for j in range(got):
                    if chosen[j] == cand:
                        dup = True
                        break
                if not dup:
                    chosen[got] = cand
                    got += 1
            if got < w:
                break
            for j in range(w):
                v = chosen[j]
                ends[2 * m] = n
                ends[2 * m + 1] = v
                deg[v] += 1
                m += 1
            deg[n] = w
            n += 1
            pos = p
    return n, m, pos


def advance_recurrence(double[::1] N, i64 L, i64 t, i64 t_stop,
                       const i64[::1] deltas, const double[::1] m_of_t,
                       double tiny, double[::1] p1_out):
    cdef i64 kcap = N.shape[0] - 1
    cdef double overflow = 0.0, trimmed = 0.0
    cdef double inv2m, phi, psi, kd
    cdef i64 hi, k, l, dm
    with nogil:
        while t < t_stop:
            inv2m = 1.0 / (2.0 * m_of_t[t])
            hi = L + 1 if L < kcap else kcap
            if L == kcap:
                overflow += N[kcap] * (kcap * inv2m)
            k = hi
            while k >= 2:
                kd = <double>k
                N[k] = (1.0 - kd * inv2m) * N[k] + N[k - 1] * ((kd - 1.0) * inv2m)
                k -= 1
            N[1] = (1.0 - inv2m) * N[1] + 1.0
            L = hi
            phi = 2.0 / (t + 1.0)
            psi = 1.0 - phi
            dm = deltas[t]
            for l in range(dm):
                hi = L + 1 if L < kcap else kcap
                if L == kcap:
                    overflow += phi * N[kcap]
                k = hi
                while k >= 2:
                    N[k] = psi * N[k] + phi * N[k - 1]
                    k -= 1
                N[1] = psi * N[1]
                L = hi
            while L > 1 and N[L] < tiny:
                trimmed += N[L]
                N[L] = 0.0
                L -= 1
            t += 1
            p1_out[t] = N[1] / t
    return L, overflow, trimmed
