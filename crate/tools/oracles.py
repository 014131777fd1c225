"""Independent reference values frozen into the integration tests.

Everything here is recomputed from definitions with Python integers, fractions and mpmath;
nothing is shared with the Rust implementation.
"""
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from mpmath import mp, mpf, mpc, exp, pi, sqrt, quad, besselj, expjpi

mp.dps = 30


def e(x):
    return exp(2j * pi * x)


def r_brute(ell, n):
    m = isqrt(n)
    return sum(1 for v in product(range(-m, m + 1), repeat=ell) if sum(t * t for t in v) == n)


def tau_table(n_max):
    # q * prod (1 - q^m)^24 by repeated multiplication with plain integers.
    poly = [0] * (n_max + 1)
    poly[0] = 1
    for m in range(1, n_max + 1):
        for _ in range(24):
            for k in range(n_max, m - 1, -1):
                poly[k] -= poly[k - m]
    return [0] + poly[:n_max]  # tau[n] = coefficient of q^(n-1)


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a, n):
    res, m, p = 1, n, 3
    while m > 1:
        if m % p == 0:
            m //= p
            res *= legendre(a, p)
        else:
            p += 2
    return res


def gauss(a, b, q):
    return sum(e(mpf(a * x * x + b * x) / q) for x in range(q))


def kloost(m, n, q):
    return sum(e(mpf(m * a + n * pow(a, -1, q)) / q) for a in range(1, q + 1) if gcd(a, q) == 1).real


def salie(m, n, p):
    return sum(legendre(a, p) * e(mpf(m * a + n * pow(a, -1, p)) / p) for a in range(1, p))


def twisted(b1, b2, h, u, q):
    s = mpc(0)
    for a in range(1, q + 1):
        if gcd(a, q) != 1:
            continue
        ai = pow(a, -1, q) if q > 1 else 0
        s += gauss(a, b1, q) * gauss(a, b2, q) * e(mpf(a * h + ai * u) / q)
    return s


def ramp(s):
    s = mpf(s)
    if s <= 0:
        return mpf(0)
    if s >= 1:
        return mpf(1)
    return 1 / (1 + exp(1 / s - 1 / (1 - s)))


def window(x, X, D):
    t = mpf(x) / X
    return ramp(D * (t - mpf(1) / 2)) * ramp(D * (1 - t))


def jutila_l2(D, Q, h, delta):
    lo, hi = -(-Q // (8 * D)), Q // (4 * D)
    primes = [p for p in range(max(lo, 2), hi + 1) if all(p % d for d in range(2, isqrt(p) + 1)) and gcd(p, 2 * D * h) == 1]
    mods = [4 * D * p for p in primes]
    L = sum(sum(1 for a in range(q) if gcd(a, q) == 1) for q in mods)
    ev = []
    for q in mods:
        for a in range(q):
            if gcd(a, q) != 1:
                continue
            c = Fraction(a, q)
            for sh in (-1, 0, 1):
                l, r = max(c - delta + sh, Fraction(0)), min(c + delta + sh, Fraction(1))
                if r > l:
                    ev += [(l, 1), (r, -1)]
    ev.sort()
    norm = 1 / (2 * delta * L)
    x, cnt, l2 = Fraction(0), 0, Fraction(0)
    for t, d in ev:
        v = cnt * norm
        l2 += (t - x) * (1 - v) ** 2
        x, cnt = t, cnt + d
    l2 += 1 - x
    return mods, L, l2


def main():
    print("# representation counts")
    for ell, n in [(2, 25), (2, 65), (3, 2), (3, 50), (3, 99), (4, 100), (5, 30), (6, 17)]:
        print(f"    ({ell}, {n}, {r_brute(ell, n)}),")
    print("# jacobi")
    for a, n in [(3, 7), (2, 7), (5, 21), (-1, 15), (10, 33), (7, 45), (123, 997), (2, 999)]:
        print(f"    ({a}, {n}, {jacobi(a, n)}),")
    tau = tau_table(1000)
    print("# tau")
    for n in [2, 3, 10, 100, 997, 1000]:
        print(f"    ({n}, {tau[n]}),")
    print("# gauss (a, b, q, re, im)")
    for a, b, q in [(1, 0, 3), (1, 0, 5), (2, 1, 7), (3, 2, 15), (5, 1, 9), (1, 1, 8), (7, 3, 12), (11, 0, 49)]:
        g = gauss(a, b, q)
        print(f"    ({a}, {b}, {q}, {float(g.real)!r}, {float(g.imag)!r}),")
    print("# kloosterman (m, n, q, value)")
    for m, n, q in [(1, 1, 3), (1, 1, 7), (2, 3, 11), (1, 5, 12), (3, 3, 25), (4, 7, 97)]:
        print(f"    ({m}, {n}, {q}, {float(kloost(m, n, q))!r}),")
    print("# salie (m, n, p, re, im)")
    for m, n, p in [(1, 1, 5), (1, 3, 7), (2, 5, 13), (0, 1, 11)]:
        t = salie(m, n, p)
        print(f"    ({m}, {n}, {p}, {float(t.real)!r}, {float(t.imag)!r}),")
    print("# twisted (b1, b2, h, u, q, re, im)")
    for b1, b2, h, u, q in [(0, 0, 1, 1, 5), (1, 2, 3, 1, 12), (2, 0, 5, 3, 9), (1, 1, 1, 0, 8), (3, 1, 2, 7, 15)]:
        c = twisted(b1, b2, h, u, q)
        print(f"    ({b1}, {b2}, {h}, {u}, {q}, {float(c.real)!r}, {float(c.imag)!r}),")
    tau = tau_table(1200)
    lam = lambda n: mpf(tau[n]) / mpf(n) ** mpf(5.5)
    print("# shifted direct (ell, h, X, value)")
    for ell, h, X in [(2, 1, 1000), (3, 5, 500), (4, 101, 300)]:
        rr = [r_brute(ell, n) if n <= 300 or ell == 2 else None for n in range(0, X + 1)] if ell != 3 else None
        if ell == 3:
            rr = [0] * (X + 1)
            m = isqrt(X)
            for v in product(range(-m, m + 1), repeat=3):
                s = sum(t * t for t in v)
                if s <= X:
                    rr[s] += 1
        elif ell == 2:
            rr = [0] * (X + 1)
            m = isqrt(X)
            for v in product(range(-m, m + 1), repeat=2):
                s = v[0] ** 2 + v[1] ** 2
                if s <= X:
                    rr[s] += 1
        val = sum(lam(n + h) * rr[n] for n in range(1, X + 1))
        print(f"    ({ell}, {h}, {X}.0, {float(val)!r}),")
    print("# smoothed (ell=2, h, X, Delta, value)")
    for h, X, D in [(1, 400, 16), (7, 400, 8)]:
        rr = [0] * (X + 1)
        m = isqrt(X)
        for v in product(range(-m, m + 1), repeat=2):
            s = v[0] ** 2 + v[1] ** 2
            if s <= X:
                rr[s] += 1
        val = sum(lam(n + h) * rr[n] * window(n, X, D) for n in range(1, X + 1))
        print(f"    ({h}, {X}.0, {D}.0, {float(val)!r}),")
    print("# transform W (ell, X, Delta, y, value)")
    for ell, X, D, y in [(2, 100, 8, 0.01), (3, 100, 8, 0.05), (4, 200, 16, 0.02)]:
        s = mpf(ell) / 2 - 1
        f = lambda x: window(x, X, D) * x ** (s / 2) * besselj(s, 4 * pi * sqrt(x * y))
        pts = [mpf(X) / 2 + k * mpf(X) / 2 / 40 for k in range(41)]
        val = quad(f, pts)
        print(f"    ({ell}, {X}.0, {D}.0, {y!r}, {float(val)!r}),")
    print("# jutila exact (Q, L, l2)")
    for Q in [40, 80]:
        mods, L, l2 = jutila_l2(1, Q, 1, Fraction(1, Q))
        print(f"    ({Q}.0, {L}, {float(l2)!r}),  // moduli {mods}")
    print("# farey arc count for Q = 200")
    print(1 + sum(sum(1 for a in range(1, q) if gcd(a, q) == 1) for q in range(2, 201)) )


if __name__ == "__main__":
    main()
