"""Small finite fields F_{p^n} and exact linear algebra over them.

Field elements are integers in [0, q).  The base-p digits of an element,
least significant first, are the coefficients of its residue polynomial,
so 0 and 1 are always the additive and multiplicative identities.
Multiplication runs through discrete log tables built once per field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

FIELD_SIZE_CAP = 4096
GL_ENUM_CAP = 10**6

Matrix = Tuple[Tuple[int, ...], ...]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def factorize(m: int) -> dict:
    """Prime factorization {prime: exponent} by trial division."""
    out: dict = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def split_prime_power(q: int) -> Tuple[int, int]:
    """Return (p, n) with q = p^n, or raise if q is not a prime power."""
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, n),) = fac.items()
    return p, n


# ---- polynomial helpers over the prime field (coefficient lists, little-endian) ----

def _ptrim(f: List[int]) -> List[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pdivmod(num: List[int], den: List[int], p: int) -> Tuple[List[int], List[int]]:
    num = list(num)
    dd = len(den) - 1
    lead_inv = pow(den[-1], p - 2, p)
    quot = [0] * max(0, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = (num[i] * lead_inv) % p
        if c:
            quot[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * dc) % p
    return quot, _ptrim(num)


def _irreducible_over_prime(f: List[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for m in range(p**d):
            den = [(m // p**j) % p for j in range(d)] + [1]
            _, rem = _pdivmod(f, den, p)
            if not rem:
                return False
    return True


class Fq:
    """The finite field with q = p^n elements.

    The modulus is the irreducible monic degree-n polynomial whose
    coefficient tuple, read from the x^(n-1) term down, is smallest; the
    stored generator is the smallest element of multiplicative order q-1.
    Both choices are deterministic so encodings are stable across runs.
    """

    def __init__(self, p: int, n: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("degree must be >= 1")
        q = p**n
        if q > FIELD_SIZE_CAP:
            raise ValueError(f"field order {q} exceeds cap {FIELD_SIZE_CAP}")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = self._find_modulus()
        self._exp, self._log = self._build_log_tables()
        self.generator = self._exp[1] if q > 2 else 1

    def __repr__(self) -> str:
        return f"Fq({self.p}^{self.n})" if self.n > 1 else f"Fq({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Fq) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self) -> int:
        return hash(("Fq", self.p, self.n))

    # -- construction internals --

    def _find_modulus(self) -> Tuple[int, ...]:
        p, n = self.p, self.n
        if n == 1:
            return (0, 1)
        for m in range(p**n):
            low = [(m // p ** (n - 1 - i)) % p for i in range(n)]
            low.reverse()
            f = low + [1]
            if _irreducible_over_prime(f, p):
                return tuple(f)
        raise RuntimeError("no irreducible modulus found")  # unreachable for prime p

    def digits(self, a: int) -> Tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return tuple(out)

    def _undigits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        p = self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, rem = _pdivmod(prod, list(self.modulus), p)
        rem += [0] * (self.n - len(rem))
        return self._undigits(rem)

    def _slow_pow(self, a: int, e: int) -> int:
        out, base = 1, a
        while e:
            if e & 1:
                out = self._slow_mul(out, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return out

    def _build_log_tables(self) -> Tuple[List[int], List[int]]:
        q = self.q
        if q == 2:
            return [1], [0, 0]
        prime_divs = list(factorize(q - 1))
        gen = None
        for u in range(1, q):
            if all(self._slow_pow(u, (q - 1) // ell) != 1 for ell in prime_divs):
                gen = u
                break
        assert gen is not None, "multiplicative group of a field is cyclic"
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._slow_mul(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        return exp, log

    # -- arithmetic --

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        return self._undigits(
            [(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))]
        )

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        return self._undigits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log base the stored generator; a must be a unit."""
        if a == 0:
            raise ZeroDivisionError("log of 0")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)] if self.q > 2 else 1


_FIELD_CACHE: dict = {}


def field_make(p: int, n: int = 1) -> Fq:
    key = (p, n)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Fq(p, n)
    return _FIELD_CACHE[key]


def field_of_order(q: int) -> Fq:
    p, n = split_prime_power(q)
    return field_make(p, n)


def embed_map(F: Fq, E: Fq) -> List[int]:
    """Embedding F -> E for F = p^n, E = p^m with n | m, as a lookup list.

    Maps the polynomial basis of F onto powers of the smallest root of F's
    modulus inside E, which makes the embedding deterministic.
    """
    if F.p != E.p or E.n % F.n != 0:
        raise ValueError(f"no embedding of {F} into {E}")
    if F.n == E.n:
        return list(range(F.q))
    root = None
    for z in E.elements():
        acc = 0
        for c in reversed(F.modulus):
            acc = E.add(E.mul(acc, z), c % E.p)
        if acc == 0:
            root = z
            break
    assert root is not None, "modulus splits in any extension of its own field"
    powers = [E.pow(root, i) if i else 1 for i in range(F.n)]
    table = []
    for a in F.elements():
        img = 0
        for c, w in zip(F.digits(a), powers):
            img = E.add(img, E.mul(c % E.p, w))
        table.append(img)
    return table


# ---- polynomials over Fq (little-endian coefficient tuples) ----

def poly_trim(f: Sequence[int]) -> Tuple[int, ...]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def poly_deg(f: Sequence[int]) -> int:
    f = poly_trim(f)
    return len(f) - 1


def poly_eval(F: Fq, f: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(list(f)):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_mul(F: Fq, f: Sequence[int], g: Sequence[int]) -> Tuple[int, ...]:
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(out)


def poly_divmod(F: Fq, num: Sequence[int], den: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    num, den = list(poly_trim(num)), poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    dd = len(den) - 1
    lead_inv = F.inv(den[-1])
    quot = [0] * max(0, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = F.mul(num[i], lead_inv)
        if c:
            quot[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] = F.sub(num[i - dd + j], F.mul(c, dc))
    return poly_trim(quot), poly_trim(num)


def poly_gcd(F: Fq, f: Sequence[int], g: Sequence[int]) -> Tuple[int, ...]:
    a, b = poly_trim(f), poly_trim(g)
    while b:
        _, r = poly_divmod(F, a, b)
        a, b = b, r
    if a:
        lead_inv = F.inv(a[-1])
        a = tuple(F.mul(c, lead_inv) for c in a)
    return a


# ---- matrices as tuples of row tuples ----

def mat_from_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix rows")
    return out


def mat_identity(k: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def mat_mul(F: Fq, A: Matrix, B: Matrix) -> Matrix:
    if len(A[0]) != len(B):
        raise ValueError("matrix shape mismatch")
    bt = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                acc = F.add(acc, F.mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_scalar(F: Fq, c: int, k: int) -> Matrix:
    return tuple(tuple(c if i == j else 0 for j in range(k)) for i in range(k))


def mat_trace(F: Fq, A: Matrix) -> int:
    acc = 0
    for i in range(len(A)):
        acc = F.add(acc, A[i][i])
    return acc


def _eliminate(F: Fq, rows: List[List[int]], reduce_up: bool) -> Tuple[List[List[int]], List[int]]:
    """In-place Gaussian elimination, first-nonzero pivoting; returns pivot columns."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        targets = range(n_rows) if reduce_up else range(r + 1, n_rows)
        for i in targets:
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def mat_rank(F: Fq, A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    _, pivots = _eliminate(F, [list(r) for r in A], reduce_up=False)
    return len(pivots)


def column_rank(F: Fq, A: Matrix) -> int:
    """Column rank (= row rank) via Gaussian elimination."""
    return mat_rank(F, A)


def mat_rref(F: Fq, A: Matrix) -> Matrix:
    """Reduced row echelon form with zero rows dropped; canonical per row space."""
    if not A or not A[0]:
        return ()
    rows, pivots = _eliminate(F, [list(r) for r in A], reduce_up=True)
    return tuple(tuple(r) for r in rows[: len(pivots)])


def mat_inv(F: Fq, A: Matrix) -> Matrix:
    k = len(A)
    if any(len(r) != k for r in A):
        raise ValueError("inverse needs a square matrix")
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    rows, pivots = _eliminate(F, aug, reduce_up=True)
    if len(pivots) < k or pivots != list(range(k)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r[k:]) for r in rows)


def mat_det(F: Fq, A: Matrix) -> int:
    k = len(A)
    rows = [list(r) for r in A]
    det = 1
    for c in range(k):
        pr = next((i for i in range(c, k) if rows[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = F.neg(det)
        det = F.mul(det, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, k):
            if rows[i][c] != 0:
                f = F.mul(rows[i][c], inv)
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return det


def mat_is_invertible(F: Fq, A: Matrix) -> bool:
    return len(A) == len(A[0]) and mat_rank(F, A) == len(A)


def perm_matrix(pi: Sequence[int]) -> Matrix:
    n = len(pi)
    return tuple(tuple(1 if j == pi[i] else 0 for j in range(n)) for i in range(n))


def apply_perm_to_cols(M: Matrix, pi: Sequence[int]) -> Matrix:
    """Right action M -> M P_pi: the entry in column j moves to column pi[j]."""
    out = []
    for row in M:
        new = [0] * len(row)
        for j, x in enumerate(row):
            new[pi[j]] = x
        out.append(tuple(new))
    return tuple(out)


def glk_order(q: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= q**k - q**i
    return out


def enumerate_glk(F: Fq, k: int, cap: int = GL_ENUM_CAP) -> Iterator[Matrix]:
    """Yield every invertible k x k matrix over F exactly once."""
    if glk_order(F.q, k) > cap:
        raise ValueError(f"|GL_{k}(F_{F.q})| exceeds cap {cap}")
    for entries in itertools.product(F.elements(), repeat=k * k):
        M = tuple(entries[i * k : (i + 1) * k] for i in range(k))
        if mat_is_invertible(F, M):
            yield M


def fix_size_formula(k: int, r: int, q: int) -> int:
    """Size of the left-multiplication stabilizer of a rank-r k x n matrix."""
    if not 0 <= r <= k:
        raise ValueError(f"rank {r} out of range for k={k}")
    out = 1
    for i in range(r, k):
        out *= q**k - q**i
    return out


def orbit_size_formula(k: int, r: int, q: int) -> int:
    if not 0 <= r <= k:
        raise ValueError(f"rank {r} out of range for k={k}")
    out = 1
    for i in range(r):
        out *= q**k - q**i
    return out


def fix_group_elements(F: Fq, M: Matrix, cap: int = GL_ENUM_CAP) -> List[Matrix]:
    """All S in GL_k with S M = M, by exhaustive enumeration."""
    return [S for S in enumerate_glk(F, len(M), cap) if mat_mul(F, S, M) == M]


@dataclass(frozen=True)
class FixOrbitReport:
    rank: int
    fix_size: int
    orbit_size: int
    fix_formula: int
    group_order: int


def fix_orbit_report(F: Fq, M: Matrix, cap: int = GL_ENUM_CAP) -> FixOrbitReport:
    k = len(M)
    r = column_rank(F, M)
    fix = len(fix_group_elements(F, M, cap))
    order = glk_order(F.q, k)
    return FixOrbitReport(
        rank=r,
        fix_size=fix,
        orbit_size=order // fix,
        fix_formula=fix_size_formula(k, r, F.q),
        group_order=order,
    )


# ---- JSON round trip ----

def mat_to_json(F: Fq, M: Matrix) -> dict:
    return {"q": F.q, "p": F.p, "n": F.n, "rows": [list(r) for r in M]}


def mat_from_json(obj: dict) -> Tuple[Fq, Matrix]:
    F = field_make(int(obj["p"]), int(obj["n"]))
    if F.q != int(obj["q"]):
        raise ValueError("inconsistent field parameters in matrix JSON")
    M = mat_from_rows(obj["rows"])
    if any(not 0 <= x < F.q for row in M for x in row):
        raise ValueError("matrix entry out of field range")
    return F, M
