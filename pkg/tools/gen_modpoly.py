#!/usr/bin/env python3
"""Regenerate the modular polynomial tables shipped in src/smallendo/data/.

Maintenance script, not installed with the package.  Phi_l(X, j(tau)) has
roots j(l*tau) and j((tau+a)/l) for a = 0..l-1.  The power sums of those
roots have exact integer q-expansions obtainable from the q-expansion of
j alone (summing over a kills all fractional powers of q), Newton's
identities turn the power sums into elementary symmetric functions, and
each of those is a polynomial in j, recovered by cancelling the pole at
infinity term by term.  All arithmetic is exact.

Each generated table is validated against the Kronecker congruence
Phi_l(x, y) = (x^l - y)(x - y^l) mod l, and the l = 2, 3 tables against
the classical published polynomials, before anything is written.
"""

import sys
import time
from pathlib import Path

from gmpy2 import mpz

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "smallendo" / "data"
LEVELS = [2, 3, 5, 7, 11, 13]

# Classical Phi_2 and Phi_3, symmetric storage {(i, j): c} with i >= j.
PHI2_KNOWN = {
    (3, 0): 1,
    (2, 2): -1,
    (2, 1): 1488,
    (2, 0): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000,
    (0, 0): -157464000000000,
}
PHI3_KNOWN = {
    (4, 0): 1,
    (3, 3): -1,
    (3, 2): 2232,
    (3, 1): -1069956,
    (3, 0): 36864000,
    (2, 2): 2587918086,
    (2, 1): 8900222976000,
    (2, 0): 452984832000000,
    (1, 1): -770845966336000000,
    (1, 0): 1855425871872000000000,
}


def pack(coeffs, width):
    """Pack nonnegative ints < 2^width into one big integer, little-endian."""
    vals = [mpz(c) for c in coeffs]
    shift = width
    while len(vals) > 1:
        nxt = []
        for i in range(0, len(vals) - 1, 2):
            nxt.append(vals[i] | (vals[i + 1] << shift))
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
        shift *= 2
    return vals[0]


def unpack(n, width, count):
    if count == 1:
        return [n]
    half = count // 2
    lo = n & ((mpz(1) << (width * half)) - 1)
    hi = n >> (width * half)
    return unpack(lo, width, half) + unpack(hi, width, count - half)


def mul_pos(a, b, n_out):
    """Truncated product of nonnegative-coefficient series (Kronecker trick)."""
    if not a or not b:
        return []
    width = (max(a).bit_length() + max(b).bit_length()
             + min(len(a), len(b)).bit_length() + 1)
    full = min(len(a) + len(b) - 1, n_out)
    prod = pack(a, width) * pack(b, width)
    prod &= (mpz(1) << (width * full)) - 1
    return unpack(prod, width, full)


def eta_unit(n_terms):
    """prod (1 - q^n)^24 up to q^(n_terms-1); unit series, constant term 1."""
    e1 = [mpz(0)] * n_terms
    e1[0] = mpz(1)
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= n_terms and g2 >= n_terms:
            break
        s = mpz(-1) ** k
        if g1 < n_terms:
            e1[g1] += s
        if g2 < n_terms:
            e1[g2] += s
        k += 1
    # Signed but tiny; square up to ^24 with naive signed products.
    def smul(x, y):
        out = [mpz(0)] * n_terms
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            top = n_terms - i
            for j in range(min(len(y), top)):
                if y[j]:
                    out[i + j] += xi * y[j]
        return out

    e2 = smul(e1, e1)
    e4 = smul(e2, e2)
    e8 = smul(e4, e4)
    e16 = smul(e8, e8)
    return smul(e16, e8)


def series_inverse(u, n_terms):
    """Inverse of a unit integer series (constant term 1)."""
    inv = [mpz(0)] * n_terms
    inv[0] = mpz(1)
    for n in range(1, n_terms):
        acc = mpz(0)
        for k in range(1, n + 1):
            if u[k]:
                acc += u[k] * inv[n - k]
        inv[n] = -acc
    return inv


def eisenstein_e4(n_terms):
    sig3 = [mpz(0)] * n_terms
    for d in range(1, n_terms):
        d3 = mpz(d) ** 3
        for m in range(d, n_terms, d):
            sig3[m] += d3
    e4 = [240 * c for c in sig3]
    e4[0] = mpz(1)
    return e4


def j_invariant_series(n_max):
    """Coefficients of j(tau) for exponents -1..n_max (list index n+1)."""
    n_terms = n_max + 2
    e4 = eisenstein_e4(n_terms)
    num = mul_pos(mul_pos(e4, e4, n_terms), e4, n_terms)
    unit = eta_unit(n_terms)
    inv = series_inverse(unit, n_terms)
    # inv has mixed signs in principle, but for eta^-24 all coefficients
    # are positive (partition-like counts); verify before using mul_pos.
    assert all(c > 0 for c in inv), "eta^-24 series not positive?"
    j = mul_pos(num, inv, n_terms)
    assert j[0] == 1 and j[1] == 744 and j[2] == 196884 and j[3] == 21493760
    return j


def smul_dict(a, b, cap):
    out = {}
    for ea, ca in a.items():
        if ca == 0:
            continue
        for eb, cb in b.items():
            e = ea + eb
            if e > cap or cb == 0:
                continue
            out[e] = out.get(e, 0) + ca * cb
    return out


def modular_polynomial(l, margin=4):
    cap = margin + l * l + 2 * l + 2
    n_j = l * cap + l + 2
    j = j_invariant_series(n_j)  # exponents -1 .. n_j

    # j^k for k = 1..l+1, exponents -k .. n_j (index n+k).
    jpow = {1: j}
    for k in range(2, l + 2):
        jpow[k] = mul_pos(jpow[k - 1], j, n_j + k + 1)

    # Power sums s_k = j(l t)^k + sum_a j((t+a)/l)^k, exponents -k*l .. cap.
    def power_sum(k):
        ck = jpow[k]

        def coeff(n):
            return ck[n + k] if -k <= n <= n_j else mpz(0)

        s = {}
        for n in range(-k, cap // l + 1):
            e = l * n
            if e <= cap:
                s[e] = s.get(e, mpz(0)) + coeff(n)
        for m in range(-k, cap + 1):
            if l * m >= -k:
                c = coeff(l * m)
                if c:
                    s[m] = s.get(m, mpz(0)) + l * c
        return s

    s = {k: power_sum(k) for k in range(1, l + 2)}

    # Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i.
    e = {0: {0: mpz(1)}}
    for k in range(1, l + 2):
        acc = {}
        for i in range(1, k + 1):
            term = smul_dict(e[k - i], s[i], cap)
            sign = 1 if i % 2 == 1 else -1
            for ex, c in term.items():
                acc[ex] = acc.get(ex, 0) + sign * c
        ek = {}
        for ex, c in acc.items():
            if c == 0:
                continue
            q, r = divmod(c, k)
            assert r == 0, f"Newton identity not divisible at l={l} k={k}"
            ek[ex] = q
        e[k] = ek

    # Reduce each e_k to a polynomial in j by clearing the pole at infinity.
    def reduce_to_poly(series, k):
        S = dict(series)
        low = min((ex for ex, c in S.items() if c), default=0)
        assert low >= -(l + 1), f"pole too deep at l={l} k={k}: {low}"
        P = [mpz(0)] * (l + 2)
        for m in range(l + 1, -1, -1):
            c = S.get(-m, mpz(0))
            P[m] = c
            if c and m > 0:
                jm = jpow[m]
                for n in range(-m, margin + 1):
                    S[n] = S.get(n, mpz(0)) - c * jm[n + m]
            elif c:
                S[0] = S.get(0, mpz(0)) - c
        for ex in range(-(l + 1), margin + 1):
            assert S.get(ex, 0) == 0, f"reduction residue at l={l} k={k} q^{ex}"
        return P

    # Phi(X, Y) = sum_k (-1)^k e_k(Y) X^(l+1-k).
    phi = [[mpz(0)] * (l + 2) for _ in range(l + 2)]
    for k in range(l + 2):
        P = reduce_to_poly(e[k], k)
        sign = 1 if k % 2 == 0 else -1
        for m in range(l + 2):
            phi[l + 1 - k][m] = sign * P[m]
    return phi


def validate(l, phi):
    deg = l + 1
    for i in range(deg + 1):
        for j in range(deg + 1):
            assert phi[i][j] == phi[j][i], f"asymmetric at l={l} ({i},{j})"
    assert phi[deg][0] == 1, f"not monic at l={l}"
    assert all(phi[deg][j] == 0 for j in range(1, deg + 1))
    assert phi[l][l] == -1, f"Kronecker term at l={l}: {phi[l][l]}"
    # Kronecker congruence: Phi_l(x,y) = (x^l - y)(x - y^l) mod l.
    kron = [[0] * (deg + 1) for _ in range(deg + 1)]
    kron[deg][0] = 1
    kron[0][deg] = 1
    kron[l][l] = -1
    kron[1][1] += 1 * (-1) * (-1)  # (-y)(x)*... expanded: + x*y term sign
    # (x^l - y)(x - y^l) = x^(l+1) - x^l y^l - x y + y^(l+1)
    kron[1][1] = -1
    for i in range(deg + 1):
        for j in range(deg + 1):
            assert (phi[i][j] - kron[i][j]) % l == 0, \
                f"Kronecker congruence fails at l={l} ({i},{j})"
    table = {(i, j): int(phi[i][j])
             for i in range(deg + 1) for j in range(i + 1)
             if phi[i][j] != 0}
    if l == 2:
        assert table == PHI2_KNOWN, "phi2 mismatch with published polynomial"
    if l == 3:
        assert table == PHI3_KNOWN, "phi3 mismatch with published polynomial"
    return table


def write_table(l, table):
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    path = DATA_DIR / f"phi{l}.txt"
    lines = [f"{i} {j} {c}" for (i, j), c in sorted(table.items(), reverse=True)]
    path.write_text("\n".join(lines) + "\n")
    return path


def main():
    levels = [int(a) for a in sys.argv[1:]] or LEVELS
    for l in levels:
        t0 = time.time()
        phi = modular_polynomial(l)
        table = validate(l, phi)
        path = write_table(l, table)
        print(f"phi{l}: {len(table)} entries, {time.time() - t0:.1f}s -> {path}")


if __name__ == "__main__":
    main()
