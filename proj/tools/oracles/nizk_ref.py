#!/usr/bin/env python3
"""Independent reference for the non-interactive challenge layer.

Pins, against hashlib's SHAKE256:
  * the CRS fingerprint: SHAKE256("lpvss-crs-v1" || ledger || A) -> 32 bytes,
    where the ledger is twenty u128 little-endian fields in fixed order and
    A is row-major 16-byte little-endian residues;
  * challenge derivation: SHAKE256("lpvss-chal-v1" || lang_byte ||
    fingerprint || u64_be(len(stmt)) || stmt || u64_be(len(firsts)) ||
    firsts), squeezed to ceil(lam/8) bytes; bit j of the challenge string is
    (byte[j >> 3] >> (j & 7)) & 1;
  * an avalanche crosscheck: flipping one payload byte moves about half the
    challenge bits.

Run from this directory:  python3 nizk_ref.py
"""

import hashlib
import sys

import params_ref

MASK128 = (1 << 128) - 1


def le16(x):
    return int(x).to_bytes(16, "little")


def ledger_bytes(c):
    fields = [
        c["n"], c["t"], c["v"], c["lambda_rep"],
        c["p"], c["u"], c["k"], c["u0"],
        c["alpha_q"], c["beta_q_x2"], c["r_w"],
        c["sigma_key"] << 32, c["sigma_enc"] << 32, c["sigma_dec"] << 32,
        c["b_key_star2"], c["b_enc_f"], c["b_dec_star2"],
        c["lnm_key_q96"], c["lnm_enc_q96"], c["lnm_dec_q96"],
    ]
    return b"".join(le16(f) for f in fields)


def synthetic_matrix(c):
    q = c["q"]
    rows, cols = c["v"], c["u"]
    return [[(i * 1000003 + j * 7919 + 12345) % q for j in range(cols)]
            for i in range(rows)]


def fingerprint(c, a):
    h = hashlib.shake_256()
    h.update(b"lpvss-crs-v1")
    h.update(ledger_bytes(c))
    for row in a:
        for x in row:
            h.update(le16(x))
    return h.digest(32)


def derive_challenges(fp, lang, stmt, firsts, lam):
    h = hashlib.shake_256()
    h.update(b"lpvss-chal-v1")
    h.update(bytes([lang]))
    h.update(fp)
    h.update(len(stmt).to_bytes(8, "big"))
    h.update(stmt)
    h.update(len(firsts).to_bytes(8, "big"))
    h.update(firsts)
    raw = h.digest((lam + 7) // 8)
    return raw, [(raw[j >> 3] >> (j & 7)) & 1 for j in range(lam)]


def main():
    c = params_ref.derive(5, 2, 2, 16)
    a = synthetic_matrix(c)
    fp = fingerprint(c, a)
    print("toy fingerprint:", fp.hex())

    stmt, firsts = b"statement-alpha", b"firsts-beta"
    raw16, bits16 = derive_challenges(fp, 0, stmt, firsts, 16)
    print("key lam=16 bytes:", raw16.hex())
    print("key lam=16 bits:", "".join(map(str, bits16)))
    raw80, _ = derive_challenges(fp, 0, stmt, firsts, 80)
    print("key lam=80 bytes:", raw80.hex())

    for lang, name in ((1, "share"), (2, "dec")):
        raw, _ = derive_challenges(fp, lang, stmt, firsts, 16)
        print("%s lam=16 bytes: %s" % (name, raw.hex()))

    # Distinct languages / payloads must not collide on these goldens.
    outs = {derive_challenges(fp, lang, stmt, firsts, 16)[0] for lang in (0, 1, 2)}
    assert len(outs) == 3
    assert derive_challenges(fp, 0, stmt + b"x", firsts, 16)[0] != raw16
    assert derive_challenges(fp, 0, stmt, firsts + b"x", 16)[0] != raw16

    # Avalanche crosscheck: flip each byte of a longer payload once; the
    # challenge-bit Hamming distance should average about lam/2el.
    lam = 64
    base, bbits = derive_challenges(fp, 2, stmt * 10, firsts, lam)
    total, trials = 0, 0
    for pos in range(len(stmt) * 10):
        mutated = bytearray(stmt * 10)
        mutated[pos] ^= 0x5A
        _, mbits = derive_challenges(fp, 2, bytes(mutated), firsts, lam)
        total += sum(x != y for x, y in zip(bbits, mbits))
        trials += 1
    mean = total / trials
    print("avalanche mean bits flipped (of %d): %.3f" % (lam, mean))
    assert abs(mean - lam / 2) < 3 * (lam ** 0.5) / 2, mean
    print("all nizk reference checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
