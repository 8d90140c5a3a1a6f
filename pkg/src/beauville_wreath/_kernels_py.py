"""Pure-Python kernels on integer-coded wreath elements.

An element ``(v, s)`` of C_q wr C_r is coded as ``s * q**r + sum(v[i] q**i)``.
In the central quotient (``quotient=True``) the representative is normalized
to ``v[0] == 0`` and coded as ``s * q**(r-1) + sum(v[i] q**(i-1), i >= 1)``.

These functions mirror ``_ckernels`` one for one and must return identical
results; :mod:`beauville_wreath.kernels` picks whichever is available.
"""


def code_space(q, r, quotient):
    return q ** (r - 1) * r if quotient else q ** r * r


def decode(q, r, quotient, c):
    if quotient:
        width = q ** (r - 1)
        s, rest = divmod(c, width)
        v = [0] * r
        for i in range(1, r):
            rest, v[i] = divmod(rest, q)
        return v, s
    width = q ** r
    s, rest = divmod(c, width)
    v = [0] * r
    for i in range(r):
        rest, v[i] = divmod(rest, q)
    return v, s


def encode(q, r, quotient, v, s):
    c = 0
    if quotient:
        z = v[0]
        for i in range(r - 1, 0, -1):
            c = c * q + (v[i] - z) % q
        return s * q ** (r - 1) + c
    for i in range(r - 1, -1, -1):
        c = c * q + v[i] % q
    return s * q ** r + c


def mul(q, r, quotient, a, b):
    v, s = decode(q, r, quotient, a)
    w, t = decode(q, r, quotient, b)
    u = [(v[i] + w[(i + s) % r]) % q for i in range(r)]
    return encode(q, r, quotient, u, (s + t) % r)


def inv(q, r, quotient, a):
    v, s = decode(q, r, quotient, a)
    u = [-v[(i - s) % r] % q for i in range(r)]
    return encode(q, r, quotient, u, -s % r)


def _gen_codes(q, r, quotient):
    m = (r - 1) // 2  # 0-based middle position
    v = [0] * r
    v[m] = 1
    x = encode(q, r, quotient, v, 0)
    y = encode(q, r, quotient, [0] * r, 1 % r)
    return x, y


def closure_size(q, r, quotient, gens, limit):
    """Size of ``<gens>``, or the first count exceeding ``limit``."""
    n = code_space(q, r, quotient)
    seen = bytearray(n)
    seen[0] = 1
    queue = [0]
    count = 1
    head = 0
    while head < len(queue):
        a = queue[head]
        head += 1
        for g in gens:
            b = mul(q, r, quotient, a, g)
            if not seen[b]:
                seen[b] = 1
                count += 1
                if count > limit:
                    return count
                queue.append(b)
    return count


def class_labels(q, r, quotient):
    """For every code, the least code in its conjugacy class."""
    n = code_space(q, r, quotient)
    x, y = _gen_codes(q, r, quotient)
    conjugators = [(inv(q, r, quotient, x), x), (inv(q, r, quotient, y), y)]
    labels = [-1] * n
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = start
        stack = [start]
        while stack:
            a = stack.pop()
            for gi, g in conjugators:
                b = mul(q, r, quotient, mul(q, r, quotient, gi, a), g)
                if labels[b] < 0:
                    labels[b] = start
                    stack.append(b)
    return labels
