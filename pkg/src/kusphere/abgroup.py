"""Symbolic abelian groups: free, cyclic, p-adic integers and divisible summands.

Text grammar, one summand per token joined by `` + ``::

    0 | Z | Z^r | Z/n | Zp^ | Q | Q/Z | Qp/Zp

Cyclic orders are split into prime-power summands. Canonical order is
free, then p-adic integers by p, then cyclic by ascending order, then
divisible (Q, Q/Z, Qp/Zp by p). Repeated summands are written out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from . import arith
from .errors import InputError, ParseError
from .exactla import primary_parts

_DIV_RANK = {"Q": (0, 0), "Q/Z": (1, 0)}


@lru_cache(maxsize=4096)
def _cyclic_key(n: int):
    """Primary parts sort by prime, then by order."""
    p = 2
    while n % p:
        p += 1
    return p, n


def _div_key(token: str):
    if token in _DIV_RANK:
        return _DIV_RANK[token]
    return (2, int(token[1:token.index("/")]))


@dataclass(frozen=True)
class AbGroupExpr:
    free_rank: int = 0
    profinite: tuple[int, ...] = ()
    cyclic: tuple[int, ...] = ()
    divisible: tuple[str, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InputError("free rank must be nonnegative")
        cyc = []
        for n in self.cyclic:
            if n < 1:
                raise InputError(f"bad cyclic order {n}")
            if n > 1:
                cyc.extend(primary_parts(n))
        for p in self.profinite:
            if not arith.is_prime(p):
                raise InputError(f"Z{p}^ needs a prime")
        for t in self.divisible:
            _div_key(t)
        object.__setattr__(self, "cyclic", tuple(sorted(cyc, key=_cyclic_key)))
        object.__setattr__(self, "profinite", tuple(sorted(self.profinite)))
        object.__setattr__(self, "divisible", tuple(sorted(self.divisible, key=_div_key)))

    # constructors

    @classmethod
    def zero(cls) -> AbGroupExpr:
        return cls()

    @classmethod
    def free(cls, r: int = 1) -> AbGroupExpr:
        return cls(free_rank=r)

    @classmethod
    def cyclic_group(cls, n: int) -> AbGroupExpr:
        return cls(cyclic=(n,))

    @classmethod
    def padic(cls, p: int) -> AbGroupExpr:
        return cls(profinite=(p,))

    @classmethod
    def q_mod_z(cls) -> AbGroupExpr:
        return cls(divisible=("Q/Z",))

    @classmethod
    def prufer(cls, p: int) -> AbGroupExpr:
        return cls(divisible=(f"Q{p}/Z{p}",))

    @classmethod
    def from_tokens(cls, tokens) -> AbGroupExpr:
        parts = [parse_summand(t) for t in tokens]
        return cls(sum(x.free_rank for x in parts),
                   tuple(p for x in parts for p in x.profinite),
                   tuple(n for x in parts for n in x.cyclic),
                   tuple(t for x in parts for t in x.divisible))

    @classmethod
    def parse(cls, text: str) -> AbGroupExpr:
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        pos = 0
        for part in text.split("+"):
            tok = part.strip()
            try:
                out = out + parse_summand(tok)
            except InputError as exc:
                raise ParseError(str(exc), text, pos) from None
            pos += len(part) + 1
        return out

    # algebra

    def __add__(self, other: AbGroupExpr) -> AbGroupExpr:
        return AbGroupExpr(
            self.free_rank + other.free_rank,
            self.profinite + other.profinite,
            self.cyclic + other.cyclic,
            self.divisible + other.divisible,
        )

    def __mul__(self, k: int) -> AbGroupExpr:
        """Direct sum of k copies."""
        if k < 0:
            raise InputError("multiplicity must be nonnegative")
        return AbGroupExpr(self.free_rank * k, self.profinite * k, self.cyclic * k, self.divisible * k)

    __rmul__ = __mul__

    def summands(self) -> list[str]:
        out = []
        if self.free_rank:
            out.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        out += [f"Z{p}^" for p in self.profinite]
        out += [f"Z/{n}" for n in self.cyclic]
        out += list(self.divisible)
        return out

    def tokens(self) -> list[str]:
        """One token per indecomposable summand (free rank spelled out)."""
        return ["Z"] * self.free_rank + self.summands()[1 if self.free_rank else 0:]

    def __str__(self):
        return " + ".join(self.summands()) or "0"

    def __repr__(self):
        return f"AbGroupExpr({str(self)!r})"

    @property
    def is_zero(self) -> bool:
        return not (self.free_rank or self.profinite or self.cyclic or self.divisible)

    @property
    def is_finite(self) -> bool:
        return not (self.free_rank or self.profinite or self.divisible)

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InputError(f"{self} is infinite")
        return prod(self.cyclic)

    @property
    def exponent(self) -> int:
        if not self.is_finite:
            raise InputError(f"{self} is infinite")
        out = 1
        for n in self.cyclic:
            out = out * n // gcd(out, n)
        return out

    def p_part(self, p: int) -> AbGroupExpr:
        """The p-primary torsion summands."""
        return AbGroupExpr(cyclic=tuple(n for n in self.cyclic if n % p == 0))

    def count(self, token: str) -> int:
        return self.tokens().count(token)

    def tensor(self, other: AbGroupExpr) -> AbGroupExpr:
        out = AbGroupExpr()
        for a in self.tokens():
            for b in other.tokens():
                out = out + tensor_summands(a, b)
        return out


_CYC = re.compile(r"Z/(\d+)$")
_FREE = re.compile(r"Z(?:\^(\d+))?$")
_PADIC = re.compile(r"Z(\d+)\^$")
_PRUFER = re.compile(r"Q(\d+)/Z(\d+)$")


def parse_summand(tok: str) -> AbGroupExpr:
    tok = tok.strip()
    if tok == "0":
        return AbGroupExpr()
    if m := _CYC.match(tok):
        n = int(m.group(1))
        if n < 2:
            raise InputError(f"{tok}: order must be at least 2")
        return AbGroupExpr(cyclic=(n,))
    if m := _FREE.match(tok):
        return AbGroupExpr(free_rank=int(m.group(1) or 1))
    if m := _PADIC.match(tok):
        p = int(m.group(1))
        if not arith.is_prime(p):
            raise InputError(f"{tok}: {p} is not prime")
        return AbGroupExpr(profinite=(p,))
    if tok in ("Q", "Q/Z"):
        return AbGroupExpr(divisible=(tok,))
    if m := _PRUFER.match(tok):
        p, p2 = int(m.group(1)), int(m.group(2))
        if p != p2 or not arith.is_prime(p):
            raise InputError(f"{tok}: expected Qp/Zp for a prime p")
        return AbGroupExpr(divisible=(tok,))
    raise InputError(f"unknown summand {tok!r}")


@lru_cache(maxsize=None)
def _kind(tok: str):
    if tok == "Z":
        return "free", None
    if m := _CYC.match(tok):
        return "cyclic", int(m.group(1))
    if m := _PADIC.match(tok):
        return "padic", int(m.group(1))
    if tok == "Q":
        return "rational", None
    if tok == "Q/Z":
        return "qz", None
    if m := _PRUFER.match(tok):
        return "prufer", int(m.group(1))
    raise InputError(f"unknown summand {tok!r}")


def tensor_summands(a: str, b: str) -> AbGroupExpr:
    """a (x) b for two indecomposable summand tokens."""
    ka, va = _kind(a)
    kb, vb = _kind(b)
    if ka == "free":
        return parse_summand(b)
    if kb == "free":
        return parse_summand(a)
    if ka == "cyclic" and kb == "cyclic":
        return AbGroupExpr(cyclic=(gcd(va, vb),))
    if ka == "cyclic" or kb == "cyclic":
        n, (k, v) = (va, (kb, vb)) if ka == "cyclic" else (vb, (ka, va))
        if k == "padic":
            return AbGroupExpr(cyclic=(arith.q_part(n, v),))
        # finite (x) divisible vanishes
        return AbGroupExpr()
    if {ka, kb} <= {"qz", "prufer", "rational"} and not (ka == kb == "rational"):
        # torsion divisible (x) divisible vanishes; Q (x) torsion vanishes
        return AbGroupExpr()
    if ka == kb == "rational":
        return AbGroupExpr(divisible=("Q",))
    raise InputError(f"tensor product {a} (x) {b} is not supported")


@lru_cache(maxsize=None)
def summand_modulus(tok: str) -> int:
    """Integer modulus for matrix entries in a summand: n for Z/n, else 0."""
    k, v = _kind(tok)
    return v if k == "cyclic" else 0


@lru_cache(maxsize=1 << 16)
def hom_allowed(src: str, dst: str, entry: int) -> bool:
    """Whether multiplication by ``entry`` defines a map src -> dst of summands."""
    ks, vs = _kind(src)
    kd, vd = _kind(dst)
    if kd == "cyclic":
        entry %= vd
        if ks == "cyclic":
            return entry * vs % vd == 0
        if ks == "padic":
            return entry == 0 or arith.prime_power_decomposition(vd)[0] == vs
        return ks == "free" or entry == 0
    if ks == "cyclic":
        return entry == 0 or kd in ("qz", "prufer")
    return True
