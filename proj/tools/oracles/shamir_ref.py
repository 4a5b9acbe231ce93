#!/usr/bin/env python3
"""Reference for Shamir sharing and the dual-code parity check.

Shares are evaluations of a degree <= t polynomial at points 1..n, secret at
zero.  A vector is a valid share vector iff it is orthogonal to every column
of the parity matrix H[i][j] = v_{i+1} * (i+1)^j, j = 0..n-t-2, where
v_i = prod_{k != i} (i - k)^{-1} mod p.
"""


def parity(p, n, t):
    cols = n - t - 1
    h = [[0] * cols for _ in range(n)]
    for i in range(1, n + 1):
        d = 1
        for k in range(1, n + 1):
            if k != i:
                d = d * ((i - k) % p) % p
        v = pow(d, -1, p)
        for j in range(cols):
            h[i - 1][j] = v * pow(i, j, p) % p
    return h

def lagrange_at_zero(p, points):
    lam = []
    for i in points:
        num, den = 1, 1
        for j in points:
            if j != i:
                num = num * (j % p) % p
                den = den * ((j - i) % p) % p
        lam.append(num * pow(den, -1, p) % p)
    return lam

def share(p, coeffs, n):
    return [sum(c * pow(x, e, p) for e, c in enumerate(coeffs)) % p
            for x in range(1, n + 1)]


def main():
    # The two pinned booklet examples.
    assert share(7, [3, 2], 2) == [5, 0]
    assert lagrange_at_zero(7, [1, 2]) == [2, 6]
    assert [row[0] for row in parity(7, 3, 1)] == [4, 6, 4]

    # Mid-size parity matrix, frozen into the unit tests.
    h = parity(101, 6, 2)
    print("H(101, 6, 2) rows:")
    for row in h:
        print(row)

    # Exhaustive duality at p=5, n=4, t=1: codeword <=> parity-orthogonal.
    p, n, t = 5, 4, 1
    h = parity(p, n, t)
    code = set()
    for a0 in range(p):
        for a1 in range(p):
            code.add(tuple(share(p, [a0, a1], n)))
    for vec_id in range(p ** n):
        v = [(vec_id // p ** i) % p for i in range(n)]
        ortho = all(sum(v[i] * h[i][j] for i in range(n)) % p == 0
                    for j in range(n - t - 1))
        assert ortho == (tuple(v) in code), v
    print("exhaustive duality p=5 n=4 t=1: ok")

    # Big-prime round trip.
    p = (1 << 61) - 1
    import random
    rnd = random.Random(7)
    for _ in range(20):
        coeffs = [rnd.randrange(p) for _ in range(4)]  # t = 3
        sh = share(p, coeffs, 9)
        pts = rnd.sample(range(1, 10), 4)
        lam = lagrange_at_zero(p, pts)
        got = sum(l * sh[i - 1] for l, i in zip(lam, pts)) % p
        assert got == coeffs[0]
    print("round trip p=2^61-1: ok")


if __name__ == "__main__":
    main()
