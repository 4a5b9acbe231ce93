#!/usr/bin/env python3
"""Reference for parameter derivation.

Mirrors the production chain bit for bit (same fixed-point ln enclosure, same
integer floors/ceils, same feasibility search), and checks each derived
quantity against a direct mpmath evaluation of its defining formula.  Prints
the frozen ledgers for the desk tier (n=8, t=3, v=16, rep=16) and the toy
tier (n=4, t=1, v=2, rep=16), plus the monotone prime sweep.
"""

import math

import mpmath as mp

mp.mp.dps = 60

LN2_Q120 = 921350637599661305226344307672478454


def ln_q96_bounds(n):
    """Bit-exact mirror of the production ln enclosure (Q96, mid +/- 4)."""
    assert n >= 2
    s = n.bit_length() - 1
    num = n - (1 << s)
    den = n + (1 << s)
    z = ((num << 96) // den) << 24
    zsq = (z * z) >> 120
    pw = z
    total = z
    for k in range(1, 40):
        pw = (pw * zsq) >> 120
        total += pw // (2 * k + 1)
    mid = (s * LN2_Q120 + 2 * total) >> 24
    return mid - 4, mid + 4


def ceil_sqrt(x):
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def ceil_log2(x):
    assert x >= 1
    return (x - 1).bit_length()


def chain(n, t, v, lam, p):
    """All derived quantities for candidate modulus root p (not nec. prime)."""
    q = p * p
    k = (q - 1).bit_length()
    u0 = v
    u = v * (k + 1)
    alpha_q = ceil_sqrt(v)
    r_w = ceil_log2(u) + 1
    beta_q_x2 = ceil_sqrt(u) * ceil_log2(u) * (2 * alpha_q + 1)

    b_key_s2 = v * alpha_q * alpha_q
    b_key_e2 = u * alpha_q * alpha_q
    lk_lo, lk_hi = ln_q96_bounds(lam * (u + v))
    a2_key = lam * (b_key_s2 + b_key_e2)
    sigma_key = math.isqrt((25 * a2_key * lk_hi) >> 98) + 1
    b_key_star2 = 4 * (u + v) * sigma_key * sigma_key
    tkey = math.isqrt(b_key_star2)

    le_lo, le_hi = ln_q96_bounds(lam * n * (u + 1))
    a2_enc_x4 = lam * n * (v * beta_q_x2 * beta_q_x2 + 4 * u * r_w * r_w)
    sigma_enc = math.isqrt((a2_enc_x4 * le_hi) >> 98) + 1
    b_enc_f = math.isqrt(4 * sigma_enc * sigma_enc * (u + 1)
                         * (tkey + 2) * (tkey + 2)) + 1

    ld_lo, ld_hi = ln_q96_bounds(lam * (u + v + 1))
    a2_dec = lam * (2 * b_key_star2 + b_enc_f * b_enc_f)
    sigma_dec = math.isqrt((a2_dec * ld_hi) >> 96) + 1
    b_dec_star2 = 4 * (u + v + 1) * sigma_dec * sigma_dec

    def lnm(lo):
        t1 = (1 << 192) // lo
        t2 = (12 * t1 * t1) >> 96
        return t1 + t2

    return dict(n=n, t=t, v=v, lambda_rep=lam, p=p, q=q, u=u, k=k, u0=u0,
                alpha_q=alpha_q, beta_q_x2=beta_q_x2, r_w=r_w,
                sigma_key=sigma_key, sigma_enc=sigma_enc, sigma_dec=sigma_dec,
                b_key_star2=b_key_star2, b_enc_f=b_enc_f,
                b_dec_star2=b_dec_star2, tkey=tkey,
                lnm_key_q96=lnm(lk_lo), lnm_enc_q96=lnm(le_lo),
                lnm_dec_q96=lnm(ld_lo))


def feasible(n, t, v, lam, p, max_q_bits=128):
    if p <= n:
        return False
    q = p * p
    if q.bit_length() > max_q_bits or q >= 1 << 125:
        return False
    c = chain(n, t, v, lam, p)
    cl2p = ceil_log2(p)
    su, sv = ceil_sqrt(c["u"]), ceil_sqrt(v)
    checks = [
        16 * v * cl2p * c["b_key_star2"] <= q,
        2 * c["b_enc_f"] < p,
        2 * su * c["r_w"] * (c["tkey"] + 1) + sv * c["beta_q_x2"]
        < 2 * c["b_enc_f"],
        4 * c["b_dec_star2"] < q,
        16 * v * cl2p * c["b_dec_star2"] <= q,
        2 * su * c["r_w"] * (c["tkey"] + 1) + c["beta_q_x2"] < p,
    ]
    return all(checks)


def is_prime(x):
    if x < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if x % sp == 0:
            return x == sp
    d, r = x - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        y = pow(a, d, x)
        if y in (1, x - 1):
            continue
        for _ in range(r - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def derive(n, t, v, lam, max_q_bits=128):
    assert 2 * t < n
    x = 5
    while not feasible(n, t, v, lam, x, max_q_bits):
        x *= 2
        if (x * x).bit_length() > max_q_bits:
            raise ValueError("infeasible at cap")
    lo, hi = x // 2, x
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if feasible(n, t, v, lam, mid, max_q_bits):
            hi = mid
        else:
            lo = mid
    p = hi
    while not (is_prime(p) and feasible(n, t, v, lam, p, max_q_bits)):
        p += 1
        if (p * p).bit_length() > max_q_bits:
            raise ValueError("infeasible at cap")
    return chain(n, t, v, lam, p)


def crosscheck(c):
    """Direct mpmath evaluation of each formula, one-sided + tight band."""
    lam, n, v, u = c["lambda_rep"], c["n"], c["v"], c["u"]
    lk = mp.log(lam * (u + v))
    want = mp.mpf(2.5) * mp.sqrt(lam * (c["v"] + u) * c["alpha_q"] ** 2) \
        * mp.sqrt(lk)
    assert want <= c["sigma_key"] <= want * (1 + 1e-3) + 2, c["sigma_key"]
    le = mp.log(lam * n * (u + 1))
    want = mp.sqrt(lam * n * (v * (mp.mpf(c["beta_q_x2"]) / 2) ** 2
                              + u * c["r_w"] ** 2)) * mp.sqrt(le)
    assert want <= c["sigma_enc"] <= want * (1 + 1e-3) + 2
    bstar = 2 * mp.sqrt(u + v) * c["sigma_key"]
    assert abs(c["tkey"] - bstar) <= 1
    want = 2 * c["sigma_enc"] * mp.sqrt(u + 1) * (bstar + 1)
    assert want <= c["b_enc_f"] <= want * (1 + 1e-3) + 4
    ld = mp.log(lam * (u + v + 1))
    want = mp.sqrt(lam * (2 * mp.mpf(c["b_key_star2"])
                          + mp.mpf(c["b_enc_f"]) ** 2)) * mp.sqrt(ld)
    assert want <= c["sigma_dec"] <= want * (1 + 1e-3) + 2
    lnm_true = 1 / lk + 12 / lk ** 2
    assert abs(c["lnm_key_q96"] / mp.mpf(2) ** 96 - lnm_true) < 1e-12


def show(c, tag):
    print(f"--- {tag} ---")
    for key in ("n", "t", "v", "lambda_rep", "p", "q", "u", "k", "u0",
                "alpha_q", "beta_q_x2", "r_w", "sigma_key", "sigma_enc",
                "sigma_dec", "b_key_star2", "b_enc_f", "b_dec_star2",
                "lnm_key_q96", "lnm_enc_q96", "lnm_dec_q96"):
        print(f"{key} = {c[key]}")
    print(f"log2_q = {math.log2(c['q']):.3f}")


def main():
    desk = derive(8, 3, 16, 16)
    crosscheck(desk)
    show(desk, "desk n=8 t=3 v=16 rep=16")

    toy = derive(4, 1, 2, 16)
    crosscheck(toy)
    show(toy, "toy n=4 t=1 v=2 rep=16")

    ps = [derive(n, 1, 16, 16)["p"] for n in range(4, 33)]
    assert all(a <= b for a, b in zip(ps, ps[1:])), ps
    print("sweep n=4..32 (t=1, v=16, rep=16) monotone: ok")
    print("sweep p endpoints:", ps[0], ps[-1])


if __name__ == "__main__":
    main()
