"""Small finite fields with full arithmetic tables, plus exact matrix and
subspace operations over them.

Field elements are integers 0..q-1 encoding coefficient vectors in base p
(constant coefficient first).  The modulus is the lexicographically
smallest monic irreducible of the right degree, and mu is the smallest
generator of the multiplicative group, so every construction is
reproducible.  Tables make arithmetic O(1); intended for q <= 128.
"""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def factor_prime_power(q: int):
    """(p, f) with q = p^f, or raise."""
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            while q % p == 0:
                q //= p
                f += 1
            if q != 1:
                raise ValueError("not a prime power")
            return p, f
    raise ValueError("not a prime power")


def _poly_mulmod(a, b, modulus, p):
    """Product of coefficient lists, reduced mod the monic modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    f = len(modulus) - 1
    for i in range(len(out) - 1, f - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(f):
                out[i - f + j] = (out[i - f + j] - c * modulus[j]) % p
    return out[:f] + [0] * (f - len(out))


def _is_irreducible(modulus, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    f = len(modulus) - 1
    if modulus[0] == 0:
        return False
    for d in range(1, f // 2 + 1):
        for code in range(p**d):
            div = []
            c = code
            for _ in range(d):
                div.append(c % p)
                c //= p
            div.append(1)
            # long division of modulus by div
            rem = list(modulus)
            for i in range(len(rem) - 1, d - 1, -1):
                coef = rem[i]
                if coef:
                    rem[i] = 0
                    for j in range(d):
                        rem[i - d + j] = (rem[i - d + j] - coef * div[j]) % p
            if not any(rem):
                return False
    return True


@lru_cache(maxsize=None)
def Fq(q: int) -> "Field":
    return Field(q)


class Field:
    """GF(q) with precomputed addition/multiplication/inverse tables."""

    def __init__(self, q: int):
        p, f = factor_prime_power(q)
        if q > 512:
            raise ValueError("table-based fields capped at q = 512")
        self.q = q
        self.p = p
        self.f = f
        if f == 1:
            modulus = [0, 1]
        else:
            modulus = None
            for code in range(p**f):
                cand = []
                c = code
                for _ in range(f):
                    cand.append(c % p)
                    c //= p
                cand.append(1)
                if _is_irreducible(cand, p):
                    modulus = cand
                    break
            assert modulus is not None
        self.modulus = tuple(modulus)

        def decode(x):
            coeffs = []
            for _ in range(f):
                coeffs.append(x % p)
                x //= p
            return coeffs

        def encode(coeffs):
            val = 0
            for c in reversed(coeffs[:f]):
                val = val * p + (c % p)
            return val

        self.add = [[encode([(a + b) % p for a, b in zip(decode(x), decode(y))])
                     for y in range(q)] for x in range(q)]
        self.mul = [[encode(_poly_mulmod(decode(x), decode(y), modulus, p))
                     for y in range(q)] for x in range(q)]
        self.neg = [self.add[x].index(0) for x in range(q)]
        self.inv = [0] * q
        for x in range(1, q):
            self.inv[x] = self.mul[x].index(1)
        self.frob = [self.pow(x, p) for x in range(q)]
        self.mu = self._find_generator()

    def _find_generator(self):
        q = self.q
        target = q - 1
        primes = [r for r in range(2, target + 1) if is_prime(r) and target % r == 0]
        for x in range(1, q):
            if all(self.pow(x, target // r) != 1 for r in primes) and target > 1:
                return x
        return 1

    def pow(self, x, k):
        result = 1
        base = x
        while k:
            if k & 1:
                result = self.mul[result][base]
            base = self.mul[base][base]
            k >>= 1
        return result

    def sub(self, x, y):
        return self.add[x][self.neg[y]]

    def element_order(self, x):
        if x == 0:
            raise ValueError("zero has no multiplicative order")
        k, acc = 1, x
        while acc != 1:
            acc = self.mul[acc][x]
            k += 1
        return k


# ---------------------------------------------------------------------------
# matrices and subspaces (tuples of tuples of field codes)


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F, A, B):
    n, m, k = len(A), len(B[0]), len(B)
    add, mul = F.add, F.mul
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = 0
            for t in range(k):
                acc = add[acc][mul[Ai[t]][B[t][j]]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F, A, v):
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            acc = add[acc][mul[a][x]]
        out.append(acc)
    return tuple(out)


def vec_add(F, u, v):
    return tuple(F.add[a][b] for a, b in zip(u, v))


def vec_scale(F, c, v):
    return tuple(F.mul[c][x] for x in v)


def mat_transpose(A):
    return tuple(zip(*A))


def mat_det(F, A):
    n = len(A)
    m = [list(row) for row in A]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = F.neg[det]
        det = F.mul[det][m[col][col]]
        inv = F.inv[m[col][col]]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = F.mul[m[r][col]][inv]
                for c in range(col, n):
                    m[r][c] = F.sub(m[r][c], F.mul[factor][m[col][c]])
    return det


def mat_inv(F, A):
    n = len(A)
    m = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = F.inv[m[col][col]]
        m[col] = [F.mul[inv][x] for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [F.sub(x, F.mul[factor][y]) for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def rref(F, rows):
    """Reduced row echelon form; returns tuple of nonzero rows (canonical)."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = F.inv[m[r][c]]
        m[r] = [F.mul[inv][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [F.sub(x, F.mul[factor][y]) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    out = [tuple(row) for row in m[:r] if any(row)]
    return tuple(out)


def subspace_canonical(F, vectors):
    """Canonical form (RREF basis) of the span of the given vectors."""
    return rref(F, [v for v in vectors if any(v)])


def subspace_dim(canon):
    return len(canon)


def gram_matrix(F, form, vectors):
    out = []
    for u in vectors:
        row = []
        fu = mat_vec(F, form, u)
        for v in vectors:
            acc = 0
            for a, b in zip(fu, v):
                acc = F.add[acc][F.mul[a][b]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def bilinear(F, form, u, v):
    fu = mat_vec(F, form, u)
    acc = 0
    for a, b in zip(fu, v):
        acc = F.add[acc][F.mul[a][b]]
    return acc


def is_square(F, x):
    if x == 0:
        return True
    return F.pow(x, (F.q - 1) // 2) == 1 if F.p != 2 else True


def frobenius_vec(F, v):
    return tuple(F.frob[x] for x in v)


def frobenius_subspace(F, canon):
    return subspace_canonical(F, [frobenius_vec(F, v) for v in canon])


def all_vectors(F, n):
    q = F.q
    total = q**n
    for code in range(total):
        v = []
        c = code
        for _ in range(n):
            v.append(c % q)
            c //= q
        yield tuple(v)
