"""Coefficient rings: integers, rationals, residue rings and prime fields.

Scalars are plain Python objects: ``int`` for Z, ``fractions.Fraction`` for Q,
and ints in ``[0, n)`` for Z/n and F_p.  A :class:`Ring` value describes which
ring the numbers live in and knows how to canonicalize, invert and serialize
them; arithmetic itself uses native ``+``/``*`` followed by :meth:`Ring.canon`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

try:  # exact rational scalar: gmpy2 is much faster, Fraction is always there
    from gmpy2 import mpq as rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    rational = Fraction

from .errors import NotInvertible

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


@dataclass(frozen=True)
class Ring:
    """Descriptor of a coefficient ring.

    ``kind`` is one of ``"Z"``, ``"Q"``, ``"Zn"``, ``"Fp"``; ``modulus`` is the
    residue modulus for the last two and ``None`` otherwise.
    """

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind in ("Z", "Q"):
            if self.modulus is not None:
                raise ValueError(f"ring {self.kind} takes no modulus")
        elif self.kind == "Zn":
            if self.modulus is None or self.modulus < 2:
                raise ValueError("Z/n requires n >= 2")
        elif self.kind == "Fp":
            if self.modulus is None or not is_prime(self.modulus):
                raise ValueError(f"F_p requires a prime, got {self.modulus}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # -- classification ----------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "Fp")

    @property
    def is_modular(self) -> bool:
        return self.kind in ("Zn", "Fp")

    # -- scalar helpers -----------------------------------------------------

    @property
    def zero(self):
        return rational(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return rational(1) if self.kind == "Q" else 1

    def canon(self, x):
        """Canonical representative of ``x`` (reduces residues, keeps Q exact)."""
        if self.kind == "Q":
            return rational(x)
        if not isinstance(x, int):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            x = int(x)
        return x % self.modulus if self.kind != "Z" else x

    def is_unit(self, x) -> bool:
        x = self.canon(x)
        if self.kind == "Z":
            return x in (1, -1)
        if self.kind == "Q":
            return x != 0
        import math

        return math.gcd(x, self.modulus) == 1

    def inv(self, x):
        """Multiplicative inverse; raises NotInvertible for non-units."""
        x = self.canon(x)
        if not self.is_unit(x):
            raise NotInvertible(f"{x} is not a unit in {self}")
        if self.kind == "Z":
            return x
        if self.kind == "Q":
            return rational(1) / x
        return pow(x, -1, self.modulus)

    # -- serialization ------------------------------------------------------

    def label(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Q":
            return "Q"
        return f"{self.kind}:{self.modulus}"

    def format_scalar(self, x) -> str:
        x = self.canon(x)
        if self.kind == "Q" and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        if self.kind == "Q":
            return str(x.numerator)
        return str(x)

    def parse_scalar(self, s: str):
        s = s.strip()
        if self.kind == "Q":
            return self.canon(Fraction(s))  # Fraction validates the "p/q" syntax strictly
        if "/" in s:
            raise ValueError(f"fractional scalar {s!r} in non-rational ring {self.label()}")
        return self.canon(int(s))

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return self.label()


ZZ = Ring("Z")
QQ = Ring("Q")


def integers_mod(n: int) -> Ring:
    return Ring("Zn", n)


def prime_field(p: int) -> Ring:
    return Ring("Fp", p)


def ring_from_label(label: str) -> Ring:
    """Inverse of :meth:`Ring.label`; accepts ``Z``, ``Q``, ``Fp:<p>``, ``Zn:<n>``."""
    label = label.strip()
    if label == "Z":
        return ZZ
    if label == "Q":
        return QQ
    if ":" in label:
        kind, _, mod = label.partition(":")
        if kind in ("Fp", "Zn"):
            return Ring(kind, int(mod))
    raise ValueError(f"unknown ring label {label!r}")
