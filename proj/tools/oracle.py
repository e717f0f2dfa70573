#!/usr/bin/env python3
"""Independent reference computations for the values frozen in the C++ tests.

Stdlib only. Run it and compare the printout with the constants in
tests/test_keygen.cpp, tests/test_key_hierarchy.cpp and tests/test_analysis.cpp.
"""

import hashlib
import hmac
from fractions import Fraction

M64 = (1 << 64) - 1
RESEED = 0x9E3779B97F4A7C15


def feeder_step(x, y, i, j, inner):
    y2 = (y * x + y + x) & M64
    x_raw = ((x * y2 + i) * (1024 + i) * (i * j)) & M64
    nx = x_raw if x_raw else RESEED
    j2, i2 = j + 1, i
    if j2 > inner:
        j2, i2 = 1, i + 1
    return (nx, y2, i2, j2), x_raw >> 62


def prf(key, label, *fields):
    msg = bytes([len(label)]) + label.encode() + b"".join(fields)
    return hmac.new(key, msg, hashlib.sha256).digest()


def be(v, n):
    return v.to_bytes(n, "big")


def auth_vector(lte_k, sqn, snid, rand):
    ak = prf(lte_k, "ak", rand)[:6]
    mac = prf(lte_k, "mac", rand, be(sqn, 6))[:8]
    ck = prf(lte_k, "ck", rand)
    ik = prf(lte_k, "ik", rand)
    res = prf(lte_k, "res", rand)[:8]
    concealed = bytes(a ^ b for a, b in zip(be(sqn, 6), ak))
    autn = concealed + b"\x80\x00" + mac
    k_asme = prf(ck + ik, "asme", be(snid, 4), concealed)
    return autn, res, k_asme


def key_tree(k_asme, count):
    enb = prf(k_asme, "enb", be(count, 4))
    return {
        "k_enb": enb,
        "k_nas_int": prf(k_asme, "nas-int"),
        "k_rrc_enc": prf(enb, "rrc-enc"),
        "nh1": prf(k_asme, "nh", enb),
    }


def pyramid(n):
    half = [8 * (k + 1) for k in range(n // 2)]
    return half + [8 * (n // 2 + 1)] + half[::-1]


def position_time(w, n, e=26):
    return 2**w * n * n * e * n


def main():
    print("feeder (1,1,1,1):", feeder_step(1, 1, 1, 1, 5))
    s = (0xDEADBEEF, 0x12345679, 1, 1)
    for _ in range(8):
        s, sel = feeder_step(*s, 5)
        print(f"  x={s[0]:016x} y={s[1]:016x} i={s[2]} j={s[3]} sel={sel}")

    lte_k = bytes(range(32))
    rand = b"\xa5" * 16
    autn, res, k_asme = auth_vector(lte_k, 0x21, 0x00F110, rand)
    print("autn", autn.hex())
    print("xres", res.hex())
    print("k_asme", k_asme.hex())
    for name, v in key_tree(k_asme, 3).items():
        print(name, v.hex())

    w5, w7 = pyramid(5), pyramid(7)
    print("capacity/usable 5x5:", 5 * sum(w5), 4 * sum(w5))
    print("capacity/usable 7x7:", 7 * sum(w7), 6 * sum(w7))
    print("position_time(32, 5x5):", position_time(32, 5))
    print("breach 5x5:", sum(position_time(w, 5) for w in w5))
    print("breach 7x7:", sum(position_time(w, 7) for w in w7))
    print("25-cell total:", sum(position_time(w5[c], 5) for _ in range(5) for c in range(5)))
    print("unique keys:", (5 - 1) * 5 * 2 * 26)
    print("grid complexity exponents:", 5 * sum(w5), 7 * sum(w7))
    print("throughput(7, 2^256, 3*2^200):", Fraction(7 * 2**256, 3 * 2**200))


if __name__ == "__main__":
    main()
