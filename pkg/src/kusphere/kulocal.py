"""Homotopy Mackey functors of the K-local equivariant sphere.

Per-prime pieces are assembled here: the classical K(1)-local homotopy at
each prime, the finite sum of those away from q, and the cokernel functors
that carry the q-primary part.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import arith
from .abgroup import AbGroupExpr
from .errors import ConsistencyError, InputError
from .mackey import (
    MackeyFunctor,
    coker_mackey,
    direct_sum,
    rq_mackey,
    ru_functor,
    tensor_with,
    zero_functor_like,
)
from .qgroups import AbelianQGroup, parse_group
from .repring import character_labels, multiply, transfer_of_one

EXTERNAL_MARKER = "external: BGS"


def pi_nonequivariant_local(n: int, p: int) -> AbGroupExpr:
    """Homotopy of the sphere localized at mod p K-theory, in degree n."""
    if not arith.is_prime(p):
        raise InputError(f"{p} is not prime")
    if p == 2:
        if n == 0:
            return AbGroupExpr.padic(2) + AbGroupExpr.cyclic_group(2)
        if n == -1:
            return AbGroupExpr.padic(2)
        r = n % 8
        if r == 1:
            return AbGroupExpr(cyclic=(2, 2))
        if r in (0, 2):
            return AbGroupExpr.cyclic_group(2)
        if n % 4 == 3:
            k = (n + 1) // 4
            return AbGroupExpr.cyclic_group(2 ** (arith.vq(k, 2) + 3))
        return AbGroupExpr()
    if n in (0, -1):
        return AbGroupExpr.padic(p)
    if n % 2:
        k = (n + 1) // 2
        if k % (p - 1) == 0:
            return AbGroupExpr.cyclic_group(p ** (arith.vq(k, p) + 1))
    return AbGroupExpr()


def _check_odd_prime(q: int):
    if q == 2 or not arith.is_prime(q):
        raise InputError(f"q = {q} must be an odd prime")


def pi_ku_local_away_from_q(n: int, q: int) -> AbGroupExpr:
    """Sum over primes p != q of the p-local groups in odd degree n != -1.

    An odd prime p contributes only when (p - 1) divides k = (n + 1) / 2,
    so the sum is finite.
    """
    _check_odd_prime(q)
    if n % 2 == 0 or n == -1:
        raise InputError(f"n = {n} must be odd and different from -1")
    k = abs((n + 1) // 2)
    out = pi_nonequivariant_local(n, 2)
    for p in range(3, k + 2):
        if p != q and arith.is_prime(p):
            out = out + pi_nonequivariant_local(n, p)
    return out


def _resolve_ell(G: AbelianQGroup, ell: int | None) -> int:
    if ell is None:
        return arith.smallest_primitive_root(G.order)
    if ell % G.q == 0 or not arith.is_primitive_mod(ell, G.order):
        raise InputError(f"l = {ell} is not primitive mod |G| = {G.order}")
    return ell


def local_homotopy_mackey(G: AbelianQGroup, n: int, p: int, ell: int | None = None,
                          bound: int | None = None) -> MackeyFunctor:
    """The homotopy Mackey functor in degree n after localizing at p."""
    if not arith.is_prime(p):
        raise InputError(f"{p} is not prime")
    ell = _resolve_ell(G, ell)
    rq = rq_mackey(G, ell, bound)
    meta = {"functor": "local", "n": n, "p": p, "ell": ell}
    if p != G.q:
        return tensor_with(rq, pi_nonequivariant_local(n, p), meta)
    if n == 0:
        return tensor_with(rq, AbGroupExpr.padic(p), meta)
    if n % 2 == 0:
        return zero_functor_like(rq, meta)
    M = coker_mackey(G, ell, (n + 1) // 2, bound=bound)
    M.meta.update(meta)
    return M


@dataclass(frozen=True)
class HomotopyQuery:
    group: AbelianQGroup
    n: int
    ell: int | None = None
    bound: int | None = None

    def __post_init__(self):
        if isinstance(self.group, str):
            object.__setattr__(self, "group", parse_group(self.group))
        _check_odd_prime(self.group.q)
        object.__setattr__(self, "ell", _resolve_ell(self.group, self.ell))


def homotopy_mackey(query: HomotopyQuery) -> MackeyFunctor:
    """Dispatch on the degree:

    n = 0        RQ (x) (Z + Z/2), imported
    n = -1       0
    n = -2       integral cok at d = 0, tensored with Q/Z
    n even       RQ (x) Z/2 if n = 0, 2 mod 8, else 0
    n = 2k - 1   RQ (x) (homotopy away from q)  +  cok at d = k
    """
    G, n, ell, bound = query.group, query.n, query.ell, query.bound
    meta = {"functor": "homotopy", "n": n, "ell": ell, "group": G.name}
    rq = rq_mackey(G, ell, bound)
    if n == 0:
        meta["provenance"] = EXTERNAL_MARKER
        return tensor_with(rq, AbGroupExpr.parse("Z + Z/2"), meta)
    if n == -1:
        return zero_functor_like(rq, meta)
    if n == -2:
        cok = coker_mackey(G, ell, 0, mode="integral", bound=bound)
        return tensor_with(cok, AbGroupExpr.q_mod_z(), meta)
    if n % 2 == 0:
        if n % 8 in (0, 2):
            return tensor_with(rq, AbGroupExpr.cyclic_group(2), meta)
        return zero_functor_like(rq, meta)
    k = (n + 1) // 2
    away = tensor_with(rq, pi_ku_local_away_from_q(n, G.q))
    cok = coker_mackey(G, ell, k, bound=bound)
    out = direct_sum(away, cok, meta)
    out.meta["away"] = str(pi_ku_local_away_from_q(n, G.q))
    return out


def homotopy(group, n: int, ell: int | None = None) -> MackeyFunctor:
    return homotopy_mackey(HomotopyQuery(group, n, ell))


@dataclass
class IdealIdentity:
    """Trail of the evaluation of q = sum_K tr_K(1) - tr_L(1) tr_R(1) in RU(C_q x C_q)."""

    q: int
    transfers: dict[str, str] = field(default_factory=dict)
    steps: list[tuple[str, str]] = field(default_factory=list)
    value: int = 0


def _poly(vec, labels) -> str:
    parts = []
    for c, lab in zip(vec, labels):
        if not c:
            continue
        mono = "" if lab == "1" else lab
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else "+"
            parts.append(f"{coef} {mono}")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {abs(c)}{mono}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def transfer_ideal_certificate(q: int) -> IdealIdentity:
    """Evaluate the identity expressing q through transfers from order-q subgroups."""
    _check_odd_prime(q)
    G = AbelianQGroup(q, (1, 1))
    ru = ru_functor(G, G.order)
    lat = ru.lattice
    top = lat.top
    labels = character_labels(top)
    order_q = [K for K in lat if K.order == q]
    left = lat.generated_by((1, 0))
    right = lat.generated_by((0, 1))
    out = IdealIdentity(q)
    total = [0] * top.order
    for K in order_q:
        t = transfer_of_one(top, K)
        out.transfers[lat.name(K)] = _poly(t, labels)
        total = [a + b for a, b in zip(total, t)]
    out.steps.append(("sum of tr_K(1)", _poly(total, labels)))
    prod_ = multiply(top, transfer_of_one(top, left), transfer_of_one(top, right))
    out.steps.append((f"tr_{lat.name(left)}(1) * tr_{lat.name(right)}(1)", _poly(prod_, labels)))
    result = [a - b for a, b in zip(total, prod_)]
    out.steps.append(("difference", _poly(result, labels)))
    if result != [q] + [0] * (top.order - 1):
        raise ConsistencyError(f"transfer identity evaluates to {_poly(result, labels)}, not {q}")
    out.value = q
    return out
