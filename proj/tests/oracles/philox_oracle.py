"""Independent Philox4x32-10 and PhiloxStream reference, used to pin test values."""
from mpmath import mp, mpf, erfinv, sqrt

M0, M1 = 0xD2511F53, 0xCD9E8D57
W0, W1 = 0x9E3779B9, 0xBB67AE85
MASK = 0xFFFFFFFF


def philox(ctr, key):
    c = list(ctr)
    k = list(key)
    for r in range(10):
        if r:
            k = [(k[0] + W0) & MASK, (k[1] + W1) & MASK]
        p0 = M0 * c[0]
        p1 = M1 * c[2]
        c = [((p1 >> 32) ^ c[1] ^ k[0]) & MASK, p1 & MASK,
             ((p0 >> 32) ^ c[3] ^ k[1]) & MASK, p0 & MASK]
    return c


def uniform(seed, stream, draw):
    block = draw >> 1
    out = philox([block & MASK, block >> 32, stream & MASK, stream >> 32],
                 [seed & MASK, seed >> 32])
    h = (draw & 1) * 2
    bits = (out[h] << 32) | out[h + 1]
    return ((bits >> 11) + 0.5) / 2**53


def normal(p):
    mp.dps = 40
    return sqrt(2) * erfinv(2 * mpf(p) - 1)


if __name__ == "__main__":
    print([hex(x) for x in philox([0] * 4, [0, 0])])
    print([hex(x) for x in philox([MASK] * 4, [MASK, MASK])])
    print([hex(x) for x in philox([0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344],
                                  [0xa4093822, 0x299f31d0])])
    for seed, stream in ((42, 0), (42, 7), (2**40 + 3, 2**33 + 1)):
        for d in range(4):
            u = uniform(seed, stream, d)
            print(seed, stream, d, repr(u), mp.nstr(normal(u), 20))
