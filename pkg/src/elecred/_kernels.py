"""Inner loops that dominate search time.

Every function here takes and returns flat int64 arrays so that it compiles
under numba in nopython mode; with numba disabled they run unchanged as
Python loops.
"""

import numpy as np

from ._accel import njit


@njit
def orbit_labels(perm):
    """Label each point by the index of its cycle in ``perm``.

    Cycles are numbered in order of their least element. Returns
    ``(labels, count)``.
    """
    n = perm.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        d = start
        while labels[d] < 0:
            labels[d] = count
            d = perm[d]
        count += 1
    return labels, count


@njit
def canonical_code(sigma, alpha, labels):
    """Lexicographically least BFS code over all root darts.

    For a root ``r`` darts are renumbered in order of discovery by a
    breadth-first walk that looks at ``sigma[d]`` then ``alpha[d]``. The code
    lists, for every dart in discovery order, the new numbers of its two
    images and its label. A connected map is recovered from its code up to
    relabeling, so two rooted maps have equal codes iff they are isomorphic.
    """
    n = sigma.shape[0]
    best = np.empty(3 * n, dtype=np.int64)
    cur = np.empty(3 * n, dtype=np.int64)
    newid = np.empty(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    have_best = False
    for root in range(n):
        for i in range(n):
            newid[i] = -1
        newid[root] = 0
        order[0] = root
        found = 1
        state = 0  # -1: already smaller, 0: tied so far, 1: larger -> abandon
        if not have_best:
            state = -1
        pos = 0
        for k in range(n):
            d = order[k]
            s = sigma[d]
            if newid[s] < 0:
                newid[s] = found
                order[found] = s
                found += 1
            a = alpha[d]
            if newid[a] < 0:
                newid[a] = found
                order[found] = a
                found += 1
            cur[pos] = newid[s]
            cur[pos + 1] = newid[a]
            cur[pos + 2] = labels[d]
            if state == 0:
                for j in range(pos, pos + 3):
                    if cur[j] < best[j]:
                        state = -1
                        break
                    if cur[j] > best[j]:
                        state = 1
                        break
            pos += 3
            if state == 1:
                break
        if state == -1:
            for j in range(3 * n):
                best[j] = cur[j]
            have_best = True
    return best


@njit
def interleaved_sign_sum(first, second, sign):
    """Sum of ``sign[x] * sign[y]`` over interleaved vertex pairs.

    ``first[x] < second[x]`` are the two positions of vertex ``x`` along the
    curve; ``x`` and ``y`` interleave when exactly one of ``y``'s positions
    lies strictly between ``x``'s.
    """
    n = first.shape[0]
    total = 0
    for x in range(n):
        fx = first[x]
        sx = second[x]
        for y in range(x + 1, n):
            inside = 0
            if fx < first[y] < sx:
                inside += 1
            if fx < second[y] < sx:
                inside += 1
            if inside == 1:
                total += sign[x] * sign[y]
    return total


@njit
def dual_distances(face_of, alpha, source, nfaces):
    """Breadth-first distances in the face adjacency graph.

    Crossing the edge of dart ``d`` moves from ``face_of[d]`` to
    ``face_of[alpha[d]]`` at unit cost.
    """
    n = face_of.shape[0]
    # adjacency via dart lists grouped by face
    start = np.zeros(nfaces + 1, dtype=np.int64)
    for d in range(n):
        start[face_of[d] + 1] += 1
    for f in range(nfaces):
        start[f + 1] += start[f]
    fill = start[:-1].copy()
    darts = np.empty(n, dtype=np.int64)
    for d in range(n):
        f = face_of[d]
        darts[fill[f]] = d
        fill[f] += 1
    dist = np.full(nfaces, -1, dtype=np.int64)
    queue = np.empty(nfaces, dtype=np.int64)
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        f = queue[head]
        head += 1
        for k in range(start[f], start[f + 1]):
            g = face_of[alpha[darts[k]]]
            if dist[g] < 0:
                dist[g] = dist[f] + 1
                queue[tail] = g
                tail += 1
    return dist
