"""A single finite field F_{p^K} with all of its subfields.

Elements are integers 0..p^K-1 encoding coefficient vectors in base p with
respect to a primitive polynomial; multiplication goes through log/exp
tables.  Working inside one big field makes the embeddings F_q -> F_{q^n}
and the Frobenius automatic.
"""

from __future__ import annotations

import functools
import itertools
import math


class FieldError(ValueError):
    pass


MAX_FIELD_SIZE = 1 << 20


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e; raises for non prime powers."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not _is_prime(p):
                break
            return p, e
    raise FieldError(f"{q} is not a prime power")


class GF:
    """The field with p**K elements."""

    def __init__(self, p: int, K: int):
        if not _is_prime(p) or K < 1:
            raise FieldError("need a prime p and K >= 1")
        if p ** K > MAX_FIELD_SIZE:
            raise FieldError(f"field of size {p}^{K} exceeds the enumeration cap")
        self.p, self.K = p, K
        self.size = p ** K
        self.poly, self.exp = self._primitive_tables()
        self.log = [0] * self.size
        for i, a in enumerate(self.exp[: self.size - 1]):
            self.log[a] = i
        self._neg = [self._digit_map(a, lambda d: (-d) % p) for a in range(self.size)]
        self._add_table = None
        if p != 2 and self.size <= 1024:
            self._add_table = [[self._add_digits(a, b) for b in range(self.size)] for a in range(self.size)]

    # -- construction -------------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.K):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _undigits(self, ds) -> int:
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def _digit_map(self, a, f) -> int:
        return self._undigits([f(d) for d in self._digits(a)])

    def _add_digits(self, a: int, b: int) -> int:
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _primitive_tables(self):
        p, K, n = self.p, self.K, self.p ** self.K
        for tail in itertools.product(range(p), repeat=K):
            if tail[0] == 0:
                continue
            # x^K = -(tail[0] + tail[1] x + ...)
            red = [(-c) % p for c in tail]
            exp = [0] * n
            cur = [1] + [0] * (K - 1)
            ok = True
            for i in range(n - 1):
                val = self._undigits(cur)
                if i > 0 and val == 1:
                    ok = False
                    break
                exp[i] = val
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c + top * r) % p for c, r in zip(cur, red)]
            if ok and self._undigits(cur) == 1:
                exp[n - 1] = 1
                return tuple(tail) + (1,), exp
        raise FieldError("no primitive polynomial found")

    # -- arithmetic ---------------------------------------------------------

    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.size - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(-self.log[a]) % (self.size - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.size - 1)]

    def from_int(self, c: int) -> int:
        """Image of an integer in the prime field."""
        return c % self.p

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        if a == 0:
            return 0
        return self.exp[(self.log[a] * pow(self.p, k, self.size - 1)) % (self.size - 1)]

    def is_prime_field_element(self, a: int) -> bool:
        return a < self.p

    # -- subfields ----------------------------------------------------------

    @functools.lru_cache(maxsize=None)
    def subfield(self, d: int) -> tuple[int, ...]:
        """Elements of F_{p^d}, sorted."""
        if self.K % d:
            raise FieldError(f"F_{self.p}^{d} is not a subfield of F_{self.p}^{self.K}")
        step = (self.size - 1) // (self.p ** d - 1)
        return tuple(sorted([0] + [self.exp[i * step] for i in range(self.p ** d - 1)]))

    def in_subfield(self, a: int, d: int) -> bool:
        return self.frob(a, d) == a

    def trace(self, a: int, d: int, e: int = 1) -> int:
        """Tr_{F_{p^d}/F_{p^e}}(a) for a in F_{p^d}."""
        if d % e:
            raise FieldError("trace needs e | d")
        total = 0
        x = a
        for _ in range(d // e):
            total = self.add(total, x)
            x = self.frob(x, e)
        return total

    def absolute_trace(self, a: int, d: int) -> int:
        """Tr_{F_{p^d}/F_p}(a) as an integer mod p."""
        t = self.trace(a, d, 1)
        if t >= self.p:
            raise FieldError("trace left the prime field; a is not in F_{p^d}")
        return t

    def norm(self, a: int, d: int, e: int = 1) -> int:
        total = 1
        x = a
        for _ in range(d // e):
            total = self.mul(total, x)
            x = self.frob(x, e)
        return total

    def nonsquare(self, d: int) -> int:
        """Smallest nonsquare of F_{p^d} (p odd)."""
        if self.p == 2:
            raise FieldError("every element of a field of characteristic 2 is a square")
        qd = self.p ** d
        for a in self.subfield(d):
            if a and self.pow(a, (qd - 1) // 2) != 1:
                return a
        raise FieldError("no nonsquare found")

    def __repr__(self):
        return f"GF({self.p}^{self.K})"


@functools.lru_cache(maxsize=None)
def field_for(q: int, degrees: tuple[int, ...]) -> tuple[GF, int]:
    """A field containing F_{q^n} for every n in ``degrees``; returns (field, e) with q = p^e."""
    p, e = prime_power(q)
    K = e * math.lcm(*degrees)
    return GF(p, K), e
