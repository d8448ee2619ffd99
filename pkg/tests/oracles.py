"""Independent brute-force oracles used to derive expected test values.

Everything here deliberately avoids the package's own sign/elimination
machinery: signs come from literal bubble-sort transposition counting, ranks
from textbook dense elimination, and basis counts from exhaustive
enumeration over exponent boxes.
"""

from fractions import Fraction


def sorted_letters(alg, mono):
    """A monomial as the sorted word of its generator indices (with multiplicity)."""
    out = []
    for i, e in enumerate(mono.exps):
        out.extend([i] * e)
    return out


def merge_sign_oracle(alg, m1, m2):
    """(sign, exps) of a monomial product by bubble-sorting the concatenation.

    Swapping two adjacent odd letters contributes -1; two equal odd letters
    make the product zero.  Independent of DGAlgebra.mono_mul.
    """
    word = sorted_letters(alg, m1) + sorted_letters(alg, m2)
    parity = alg.parvec
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a > b:
                if parity[a] and parity[b]:
                    sign = -sign
                word[k], word[k + 1] = b, a
                changed = True
    for k in range(len(word) - 1):
        if word[k] == word[k + 1] and parity[word[k]]:
            return None
    exps = [0] * len(alg.gens)
    for i in word:
        exps[i] += 1
    return sign, tuple(exps)


def tensor_sign_oracle(degrees_u, degrees_v):
    """Sign of (u_1⊗...⊗u_m)(v_1⊗...⊗v_m) by moving each v_i left step by step."""
    sign = 1
    for i in range(len(degrees_v)):
        for j in range(i + 1, len(degrees_u)):
            if degrees_v[i] % 2 and degrees_u[j] % 2:
                sign = -sign
    return sign


def count_monomials_oracle(degrees, parities, target):
    """Number of exponent vectors with given degree, odd exponents <= 1."""
    count = 0

    def rec(i, remaining):
        nonlocal count
        if i == len(degrees):
            if remaining == 0:
                count += 1
            return
        max_e = 1 if parities[i] else (remaining // degrees[i] if degrees[i] else 0)
        for e in range(max_e + 1):
            if e * degrees[i] <= remaining:
                rec(i + 1, remaining - e * degrees[i])

    rec(0, target)
    return count


def dense_rank_oracle(rows, p=None):
    """Textbook Gaussian elimination rank, over ℚ (p=None) or F_p."""
    if not rows or not rows[0]:
        return 0
    m = [[Fraction(x) if p is None else x % p for x in row] for row in rows]
    nr, nc = len(m), len(m[0])
    rank = 0
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = (Fraction(1) / m[r][c]) if p is None else pow(m[r][c], -1, p)
        m[r] = [(x * inv) if p is None else (x * inv % p) for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                if p is None:
                    m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
                else:
                    m[i] = [(a - fac * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        rank += 1
        if r == nr:
            break
    return rank
