"""Exact arithmetic contexts: rationals, large prime fields, and GF(2^k).

Three modes are supported, all deterministic given a seed:

* exact rationals (``fractions.Fraction``) -- the slow reference context;
* a random large prime field, used as a characteristic-zero proxy;
* a binary extension field GF(2^k) with k >= 61, for characteristic 2.

Field elements are plain Python objects (``Fraction`` or ``int``); a field
object supplies the operations, so the linear algebra elsewhere is written
once against this small interface.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ShiftlabError

PRIME_LOW = 1 << 50
PRIME_HIGH = 1 << 62
DEFAULT_BINARY_DEGREE = 63


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (enough for our 62-bit range)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, low: int = PRIME_LOW, high: int = 1 << 51) -> int:
    """A random prime in [low, high). The default range keeps products below
    2^102 so the vectorized mulmod in the shifting engine stays exact."""
    while True:
        candidate = rng.randrange(low | 1, high, 2)
        if is_probable_prime(candidate):
            return candidate


class RationalField:
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def from_int(i):
        return Fraction(i)

    @staticmethod
    def random_element(rng: random.Random):
        # 20-bit positive integers: small enough that exact elimination on
        # desk-scale inputs does not blow up.
        return Fraction(rng.randrange(1, 1 << 20))

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


class PrimeField:
    characteristic = 0  # declared: used as a char-0 proxy

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ShiftlabError(f"modulus {p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    @staticmethod
    def is_zero(a):
        return a == 0

    def from_int(self, i):
        return i % self.p

    def random_element(self, rng: random.Random):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


def _gf2_polymul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials given as bit masks."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def _gf2_polymod(a: int, modulus: int) -> int:
    dm = modulus.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= modulus << (a.bit_length() - 1 - dm)
    return a


def _gf2_is_irreducible(modulus: int) -> bool:
    """Rabin irreducibility test for a GF(2) polynomial."""
    k = modulus.bit_length() - 1
    if k < 1:
        return False

    def sqmod(x):
        # square a polynomial by spacing its bits, then reduce
        y = 0
        for i in range(x.bit_length()):
            if (x >> i) & 1:
                y |= 1 << (2 * i)
        return _gf2_polymod(y, modulus)

    # x^(2^k) == x (mod modulus)
    t = 2
    for _ in range(k):
        t = sqmod(t)
    if t != 2:
        return False
    # for each prime divisor q of k: gcd(x^(2^(k/q)) - x, modulus) == 1
    def prime_divisors(m):
        out, d = [], 2
        while d * d <= m:
            if m % d == 0:
                out.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            out.append(m)
        return out

    def polygcd(x, y):
        while y:
            x, y = y, _gf2_polymod(x, y)
        return x

    for q in prime_divisors(k):
        t = 2
        for _ in range(k // q):
            t = sqmod(t)
        g = polygcd(modulus, t ^ 2)
        if g != 1:
            return False
    return True


def find_binary_modulus(degree: int) -> int:
    """Deterministically pick an irreducible polynomial of the given degree
    over GF(2), preferring sparse (trinomial/pentanomial) shapes."""
    top = 1 << degree
    for a in range(1, degree):
        cand = top | (1 << a) | 1
        if _gf2_is_irreducible(cand):
            return cand
    for a in range(3, degree):
        for b in range(2, a):
            for c in range(1, b):
                cand = top | (1 << a) | (1 << b) | (1 << c) | 1
                if _gf2_is_irreducible(cand):
                    return cand
    raise ShiftlabError(f"no sparse irreducible polynomial of degree {degree} found")


class BinaryField:
    """GF(2^k) with elements as bit masks of polynomials.

    Multiplication spreads each operand's bits into 7-bit slots so a single
    big-integer product computes the carry-less convolution; slot counts stay
    below 2^7 for k <= 127, so the low bit of each slot is the XOR we want.
    """

    characteristic = 2

    _SLOT = 7

    def __init__(self, degree: int = DEFAULT_BINARY_DEGREE, modulus: int | None = None):
        if degree < 61:
            raise ShiftlabError("binary extension degree must be >= 61")
        if degree > 127:
            raise ShiftlabError("binary extension degree capped at 127")
        self.degree = degree
        self.modulus = modulus if modulus is not None else find_binary_modulus(degree)
        if self.modulus.bit_length() - 1 != degree or not _gf2_is_irreducible(self.modulus):
            raise ShiftlabError("defining polynomial is not irreducible of the stated degree")
        self.zero = 0
        self.one = 1
        s = self._SLOT
        self._spread_byte = [
            sum(((byte >> i) & 1) << (s * i) for i in range(8)) for byte in range(256)
        ]
        self._compress_chunk = {
            pattern: byte for byte, pattern in enumerate(self._spread_byte)
        }
        self._chunk_mask = (1 << (8 * s)) - 1

    def _spread(self, a: int) -> int:
        out, shift = 0, 0
        s8 = 8 * self._SLOT
        while a:
            out |= self._spread_byte[a & 0xFF] << shift
            a >>= 8
            shift += s8
        return out

    def _compress(self, packed: int) -> int:
        out, shift = 0, 0
        mask = self._chunk_mask
        table = self._compress_chunk
        while packed:
            out |= table[packed & mask] << shift
            packed >>= 8 * self._SLOT
            shift += 8
        return out

    def _parity_mask(self, nbits: int) -> int:
        s = self._SLOT
        return sum(1 << (s * i) for i in range(nbits))

    def mul(self, a, b):
        if not a or not b:
            return 0
        prod = self._spread(a) * self._spread(b)
        nbits = a.bit_length() + b.bit_length() - 1
        prod &= self._parity_mask(nbits)
        return _gf2_polymod(self._compress(prod), self.modulus)

    def add(self, a, b):
        return a ^ b

    sub = add

    @staticmethod
    def neg(a):
        return a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^k)")
        # extended Euclid on polynomials
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            d = r0.bit_length() - r1.bit_length()
            if d < 0:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            r0 ^= r1 << d
            s0 ^= s1 << d
        if r0 != 1:
            raise ShiftlabError("modulus not irreducible (gcd != 1)")
        return _gf2_polymod(s0, self.modulus)

    @staticmethod
    def is_zero(a):
        return a == 0

    def from_int(self, i):
        # embed integers via their residue mod 2
        return i & 1

    def random_element(self, rng: random.Random):
        return rng.getrandbits(self.degree)

    def __repr__(self):
        return f"BinaryField(degree={self.degree})"

    def __eq__(self, other):
        return isinstance(other, BinaryField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("BinaryField", self.modulus))


@dataclass(frozen=True)
class FieldSpec:
    """Declared arithmetic context for shifting and homology.

    mode is one of "exact", "prime", "binary". The prime proxy declares
    characteristic 0 even though it computes modulo p.
    """

    mode: str
    p: int | None = None
    degree: int | None = None

    def __post_init__(self):
        if self.mode not in ("exact", "prime", "binary"):
            raise ShiftlabError(f"unknown field mode {self.mode!r}")
        if self.mode == "prime":
            if self.p is None or not is_probable_prime(self.p):
                raise ShiftlabError("prime mode requires a prime modulus")
            if not (PRIME_LOW <= self.p < PRIME_HIGH):
                raise ShiftlabError("prime modulus must lie in [2^50, 2^62)")
        if self.mode == "binary" and (self.degree is None or self.degree < 61):
            raise ShiftlabError("binary mode requires degree >= 61")

    @property
    def characteristic(self) -> int:
        return 2 if self.mode == "binary" else 0

    def field(self):
        if self.mode == "exact":
            return RationalField()
        if self.mode == "prime":
            return PrimeField(self.p)
        return _binary_field_cached(self.degree)

    @staticmethod
    def exact_rational() -> "FieldSpec":
        return FieldSpec("exact")

    @staticmethod
    def prime_proxy(seed: int = 0) -> "FieldSpec":
        rng = random.Random(f"prime-proxy:{seed}")
        return FieldSpec("prime", p=random_prime(rng))

    @staticmethod
    def binary_extension(degree: int = DEFAULT_BINARY_DEGREE) -> "FieldSpec":
        return FieldSpec("binary", degree=degree)

    @staticmethod
    def for_characteristic(char: int, mode: str = "proxy", seed: int = 0) -> "FieldSpec":
        """The CLI-facing choice: --char {0,2} with --mode {proxy,exact}."""
        if char == 2:
            return FieldSpec.binary_extension()
        if char != 0:
            raise ShiftlabError("only characteristics 0 and 2 are supported")
        if mode == "exact":
            return FieldSpec.exact_rational()
        return FieldSpec.prime_proxy(seed)

    def describe(self) -> dict:
        return {"mode": self.mode, "characteristic": self.characteristic,
                "p": self.p, "degree": self.degree}


_BINARY_CACHE: dict[int, BinaryField] = {}


def _binary_field_cached(degree: int) -> BinaryField:
    if degree not in _BINARY_CACHE:
        _BINARY_CACHE[degree] = BinaryField(degree)
    return _BINARY_CACHE[degree]
