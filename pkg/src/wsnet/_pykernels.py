"""Pure-Python kernels; same contracts and draw order as ``_ckernels.pyx``.

Arrays are mutated in place.  Each grow function stops early when the
uniform buffer cannot cover the next unit of work and reports how far it
got, so the caller can refill and resume without skipping any draw.
"""

import numpy as np


def grow_wsm(deg, ends, n, m, deltas, step, step_stop, u, pos):
    """Run node-step + edge-step for steps ``step .. step_stop - 1``.

    ``deltas[s]`` is the edge-step size of step ``s``.  Returns
    ``(n, m, step, pos)`` after the last completed step.
    """
    ulist = u.tolist()
    nu = len(ulist)
    while step < step_stop:
        dm = int(deltas[step])
        if pos + 1 + 2 * dm > nu:
            break
        # node step
        if m == 0:
            target = 0
        else:
            two_m = 2 * m
            i = int(ulist[pos] * two_m)
            if i >= two_m:
                i = two_m - 1
            pos += 1
            target = int(ends[i])
        ends[2 * m] = n
        ends[2 * m + 1] = target
        deg[n] = 1
        deg[target] += 1
        n += 1
        m += 1
        # edge step
        for _ in range(dm):
            x = int(ulist[pos] * n)
            if x >= n:
                x = n - 1
            y = int(ulist[pos + 1] * (n - 1))
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


def grow_ba(deg, ends, n, m, w, n_stop, u, pos, chosen):
    """Attach arriving nodes to ``w`` distinct degree-proportional targets.

    Targets are drawn from the graph as it was before the arrival.  An
    arrival interrupted by buffer exhaustion is not committed; ``pos`` then
    points at its first draw.  Returns ``(n, m, pos)``.
    """
    ulist = u.tolist()
    nu = len(ulist)
    while n < n_stop:
        two_m = 2 * m
        p = pos
        got = 0
        while got < w and p < nu:
            i = int(ulist[p] * two_m)
            if i >= two_m:
                i = two_m - 1
            p += 1
            cand = int(ends[i])
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
            v = int(chosen[j])
            ends[2 * m] = n
            ends[2 * m + 1] = v
            deg[v] += 1
            m += 1
        deg[n] = w
        n += 1
        pos = p
    return n, m, pos


def advance_recurrence(N, L, t, t_stop, deltas, m_of_t, tiny, p1_out):
    """Advance expected degree counts ``N`` (indexed by degree) from t to t_stop.

    Each step applies the preferential node-step update with ``m_of_t[t]``
    edges, then ``deltas[t]`` uniform edge-step updates with weight 2/(t+1).
    Mass pushed past the last index is returned as overflow; trailing
    entries below ``tiny`` are zeroed and returned as trimmed mass.
    ``p1_out[t + 1]`` receives N_1 / (t + 1).  Returns ``(L, overflow, trimmed)``.
    """
    kcap = len(N) - 1
    overflow = 0.0
    trimmed = 0.0
    while t < t_stop:
        inv2m = 1.0 / (2.0 * m_of_t[t])
        # node step
        hi = L + 1 if L < kcap else kcap
        if L == kcap:
            overflow += N[kcap] * (kcap * inv2m)
        k = np.arange(2, hi + 1, dtype=np.float64)
        N[2 : hi + 1] = (1.0 - k * inv2m) * N[2 : hi + 1] + N[1:hi] * ((k - 1.0) * inv2m)
        N[1] = (1.0 - inv2m) * N[1] + 1.0
        L = hi
        # edge step
        phi = 2.0 / (t + 1.0)
        psi = 1.0 - phi
        for _ in range(int(deltas[t])):
            hi = L + 1 if L < kcap else kcap
            if L == kcap:
                overflow += phi * N[kcap]
            N[2 : hi + 1] = psi * N[2 : hi + 1] + phi * N[1:hi]
            N[1] = psi * N[1]
            L = hi
        while L > 1 and N[L] < tiny:
            trimmed += N[L]
            N[L] = 0.0
            L -= 1
        t += 1
        p1_out[t] = N[1] / t
    return L, overflow, trimmed
