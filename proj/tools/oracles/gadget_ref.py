#!/usr/bin/env python3
"""Reference for the power-of-two block decoder.

A block is c_j = s * 2^(j-1) + e_j mod q, j = 1..k, k = ceil(log2 q), q odd.
The decoder forms
    d_j = centered(2 c_j - c_{j+1})            ( = 2 e_j - e_{j+1} when small)
    w   = centered(sum_j q_j c_j),  q_j = bit j-1 of q   ( = sum_j q_j e_j )
    D   = sum_{i=1}^{k-1} d_i * floor(q / 2^i)
and then e_1 = (w + D) / q must divide exactly; e_{j+1} = 2 e_j - d_j;
s = c_1 - e_1 mod q.  This file re-derives that algebra independently and
checks it against exhaustive minimum-norm decoding on small moduli.
"""

import random


def centered(x, q):
    x %= q
    return x - q if x > q // 2 else x


def encode(q, k, s, e):
    return [(s * pow(2, j, q) + e[j]) % q for j in range(k)]


def decode(q, k, c):
    d = [centered(2 * c[j] - c[j + 1], q) for j in range(k - 1)]
    w = centered(sum(((q >> j) & 1) * c[j] for j in range(k)), q)
    big = w + sum(d[i - 1] * (q >> i) for i in range(1, k))
    if big % q:
        return None
    e1 = big // q
    e = [e1]
    for j in range(k - 1):
        nxt = 2 * e[-1] - d[j]
        if abs(nxt) >= q:
            return None
        e.append(nxt)
    s = (c[0] - e1) % q
    return s, e


def brute(q, k, c):
    best = None
    for s in range(q):
        e = [centered(c[j] - s * pow(2, j, q), q) for j in range(k)]
        n2 = sum(x * x for x in e)
        if best is None or n2 < best[0]:
            best = (n2, s, e)
    return best[1], best[2]


def main():
    # Pinned toy vectors at q = 25 (k = 5).
    assert encode(25, 5, 3, [0] * 5) == [3, 6, 12, 24, 23]
    assert decode(25, 5, [3, 6, 12, 24, 23]) == (3, [0, 0, 0, 0, 0])
    assert encode(25, 5, 7, [1, -1, 0, 1, 0]) == [8, 13, 3, 7, 12]
    assert decode(25, 5, [8, 13, 3, 7, 12]) == (7, [1, -1, 0, 1, 0])
    assert brute(25, 5, [8, 13, 3, 7, 12]) == (7, [1, -1, 0, 1, 0])
    print("pinned toy vectors: ok")

    rnd = random.Random(11)
    for q, k, emax in [(25, 5, 1), (841, 10, 3)]:
        for _ in range(300):
            s = rnd.randrange(q)
            e = [rnd.randint(-emax, emax) for _ in range(k)]
            c = encode(q, k, s, e)
            got = decode(q, k, c)
            assert got == (s, e), (q, s, e, got)
            bs, be = brute(q, k, c)
            assert (bs, be) == (s, e), (q, s, e, bs, be)
        print(f"small-error round trip + brute force agree at q={q}: ok")

    # Larger modulus: algorithmic decode on errors within the sum bound.
    q, k = 101 * 101, 14
    for _ in range(500):
        s = rnd.randrange(q)
        e = [rnd.randint(-8, 8) for _ in range(k)]
        c = encode(q, k, s, e)
        assert decode(q, k, c) == (s, e)
    print("round trip at q=10201: ok")

    # Adversarial: any successful decode is a valid decomposition.
    hits = 0
    for _ in range(500):
        c = [rnd.randrange(q) for _ in range(k)]
        got = decode(q, k, c)
        if got is not None:
            hits += 1
            s, e = got
            assert encode(q, k, s, e) == c
    print(f"adversarial consistency at q=10201: ok ({hits} decodable)")


if __name__ == "__main__":
    main()
