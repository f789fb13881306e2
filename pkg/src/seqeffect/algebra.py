"""The sequential effect algebra E0.

Elements are ``f(p, q, m)`` or ``g(p, q, m)`` with ``p, q`` in I0 and ``m`` an
integer, subject to ``m >= 0`` whenever ``p = q = 0``. The two injections
``f`` and ``g`` are modelled by a branch tag, so equality is structural.

``oplus`` is partial and returns ``None`` where the sum is not defined.
``seq`` is total and commutative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from operator import add as _iadd, itemgetter, sub as _isub
from typing import Iterator

from seqeffect._version import __version__
from seqeffect.poly import (
    AlgebraConfig,
    AlgebraError,
    ConfigMismatchError,
    SignRuleError,
    TruncPoly,
    _sub,
    count_polys,
    enumerate_polys,
    format_poly,
    _kernel,
    monomial,
    parse_poly,
    poly_add,
    poly_sub_checked,
    poly_zero,
)
from seqeffect.window import SampleWindow


class MembershipError(AlgebraError):
    """``p = q = 0`` together with ``m < 0``."""


class Branch(str, Enum):
    F = "f"
    G = "g"

    def __str__(self):
        return self.value

    @property
    def other(self) -> Branch:
        return Branch.G if self is Branch.F else Branch.F


class Element(tuple):
    """``f(p, q, m)`` or ``g(p, q, m)``; a tuple ``(branch, p, q, m)``."""

    __slots__ = ()

    branch = property(itemgetter(0))
    p = property(itemgetter(1))
    q = property(itemgetter(2))
    m = property(itemgetter(3))

    def __new__(cls, branch, p: TruncPoly, q: TruncPoly, m: int):
        branch = Branch(branch)
        if not isinstance(p, TruncPoly) or not isinstance(q, TruncPoly):
            raise TypeError("p and q must be TruncPoly values")
        if len(p) != len(q):
            raise ConfigMismatchError(f"mixed configs: n={len(p) + 1} and n={len(q) + 1}")
        if isinstance(m, bool) or not isinstance(m, int):
            raise TypeError(f"m must be an int, got {m!r}")
        return _new(branch, p, q, m)

    def __getnewargs__(self):
        return tuple(self)

    @property
    def cfg(self) -> AlgebraConfig:
        return self[1].cfg

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)}, n={len(self[1]) + 1})"

    def sort_key(self) -> tuple:
        """Canonical order: F before G, then p, q lexicographically, then m."""
        return (self[0] is Branch.G, tuple(self[1]), tuple(self[2]), self[3])


_F, _G = Branch.F, Branch.G


def _new(branch: Branch, p: TruncPoly, q: TruncPoly, m: int) -> Element:
    # Membership is enforced here, the single construction path.
    if m < 0 and not any(p) and not any(q):
        raise MembershipError(f"m must be >= 0 when p = q = 0, got m={m}")
    return tuple.__new__(Element, (branch, p, q, m))


def _check(a: Element, b: Element) -> None:
    if len(a[1]) != len(b[1]):
        raise ConfigMismatchError(f"mixed configs: n={len(a[1]) + 1} and n={len(b[1]) + 1}")


def zero(cfg: AlgebraConfig) -> Element:
    z = poly_zero(cfg)
    return _new(_F, z, z, 0)


def one(cfg: AlgebraConfig) -> Element:
    z = poly_zero(cfg)
    return _new(_G, z, z, 0)


def make(cfg: AlgebraConfig, branch, p: TruncPoly, q: TruncPoly, m: int) -> Element:
    if p.cfg != cfg or q.cfg != cfg:
        raise ConfigMismatchError(f"polynomials do not belong to n={cfg.n}")
    return Element(branch, p, q, m)


def oplus(a: Element, b: Element) -> Element | None:
    """Orthosum ``a ⊕ b``; ``None`` when it is not defined.

    f ⊕ f adds componentwise. f(p1,q1,m1) ⊕ g(p2,q2,m2) = g(p2-p1, q2-q1, m2-m1)
    provided both differences lie in I0 and, when both differences vanish,
    m2 >= m1. g ⊕ g is never defined.
    """
    _check(a, b)
    ba, pa, qa, ma = a
    bb, pb, qb, mb = b
    if ba is _F and bb is _F:
        return _new(_F, poly_add(pa, pb), poly_add(qa, qb), ma + mb)
    if ba is _G:
        if bb is _G:
            return None
        pa, qa, ma, pb, qb, mb = pb, qb, mb, pa, qa, ma
    dp = poly_sub_checked(pb, pa)
    if dp is None:
        return None
    dq = poly_sub_checked(qb, qa)
    if dq is None:
        return None
    if mb < ma and not any(dp) and not any(dq):
        return None
    return _new(_G, dp, dq, mb - ma)


def orthosupplement(a: Element) -> Element:
    ba, pa, qa, ma = a
    return tuple.__new__(Element, (_G if ba is _F else _F, pa, qa, ma))


def _diff(a: tuple, b: tuple) -> TruncPoly:
    d = tuple(map(_isub, a, b))
    for k in d:
        if k:
            if k < 0:
                raise SignRuleError(f"first nonzero coefficient must be positive: {list(d)}")
            break
    return tuple.__new__(TruncPoly, d)


def seq(a: Element, b: Element) -> Element:
    """Sequential product ``a ∘ b`` (total, commutative).

    f∘f = f(F(p1,p2), F(q1,q2), G(p1,p2) + G(q1,q2))
    f∘g = f(p1 - F(p1,p2), q1 - F(q1,q2), m1 - G(p1,p2) - G(q1,q2))
    g∘g = g(p1 + p2 - F(p1,p2), q1 + q2 - F(q1,q2), m1 + m2 - G(p1,p2) - G(q1,q2))
    """
    ba, pa, qa, ma = a
    bb, pb, qb, mb = b
    if len(pa) != len(pb):
        _check(a, b)
    if ba is _G and bb is _F:
        ba, pa, qa, ma, bb, pb, qb, mb = bb, pb, qb, mb, ba, pa, qa, ma
    mul = _kernel(len(pa))
    fp, gp = mul(pa, pb)
    fq, gq = mul(qa, qb)
    if ba is _F:
        if bb is _F:
            p, q, m = fp, fq, gp + gq
        else:
            p, q, m = _diff(pa, fp), _diff(qa, fq), ma - gp - gq
    else:
        p = _diff(tuple(map(_iadd, pa, pb)), fp)
        q = _diff(tuple(map(_iadd, qa, qb)), fq)
        m = ma + mb - gp - gq
    if m < 0 and not any(p) and not any(q):
        raise MembershipError(f"m must be >= 0 when p = q = 0, got m={m}")
    return tuple.__new__(Element, (ba, p, q, m))


def le(a: Element, b: Element) -> bool:
    """``a <= b``, i.e. ``a ⊕ c = b`` for some ``c``, decided in closed form."""
    _check(a, b)
    if a[0] is not b[0]:
        return a[0] is _F
    if a[0] is _G:
        # g(p1,q1,m1) <= g(p2,q2,m2) mirrors f(p2,q2,m2) <= f(p1,q1,m1)
        a, b = b, a
    dp = poly_sub_checked(b[1], a[1])
    if dp is None:
        return False
    dq = poly_sub_checked(b[2], a[2])
    if dq is None:
        return False
    if not any(dp) and not any(dq):
        return b[3] >= a[3]
    return True


def ominus(b: Element, a: Element) -> Element:
    """The unique ``c`` with ``a ⊕ c = b``; raises if ``a <= b`` fails."""
    if not le(a, b):
        raise AlgebraError(f"{a} <= {b} does not hold")
    if a.branch is Branch.F and b.branch is Branch.F:
        return _new(_F, _sub(b.p, a.p), _sub(b.q, a.q), b.m - a.m)
    if a.branch is Branch.F:
        return _new(_G, poly_add(a.p, b.p), poly_add(a.q, b.q), a.m + b.m)
    return _new(_F, _sub(a.p, b.p), _sub(a.q, b.q), a.m - b.m)


def power(a: Element, k: int) -> Element:
    """``a ∘ a ∘ ... ∘ a`` with ``k >= 1`` factors."""
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"exponent must be an int, got {k!r}")
    if k < 1:
        raise AlgebraError(f"exponent must be >= 1, got {k}")
    out = a
    for _ in range(k - 1):
        out = seq(out, a)
    return out


# -- enumeration --------------------------------------------------------------

def count_elements(cfg: AlgebraConfig, W: int, M: int, branches=(Branch.F, Branch.G)) -> int:
    polys = count_polys(cfg.width, W)
    per_branch = (polys * polys - 1) * (2 * M + 1) + (M + 1)
    return per_branch * len(tuple(branches))


def enumerate_elements(
    cfg: AlgebraConfig, W: int, M: int, branches=(Branch.F, Branch.G)
) -> Iterator[Element]:
    """Every element with ``|k_i| <= W`` and ``|m| <= M``, in canonical order."""
    if W < 0 or M < 0:
        raise AlgebraError(f"degenerate window: W={W}, M={M}")
    polys = enumerate_polys(cfg, W)
    order = sorted(branches, key=lambda b: b is Branch.G)
    for branch in order:
        for p, q in product(polys, polys):
            lo = 0 if (p.is_zero() and q.is_zero()) else -M
            for m in range(lo, M + 1):
                yield _new(branch, p, q, m)


def enumerate_roots(c: Element, k: int, window: SampleWindow) -> list[Element]:
    """All window elements ``e`` with ``power(e, k) == c``, in canonical order."""
    if k < 2:
        raise AlgebraError(f"root order must be >= 2, got {k}")
    # g ∘ g is always g, so an f-branch target has no g-branch roots.
    branches = (Branch.F,) if c.branch is Branch.F else (Branch.F, Branch.G)
    return [e for e in enumerate_elements(c.cfg, window.W, window.M, branches) if power(e, k) == c]


# -- root certificate ---------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    lhs: str
    rhs: str
    holds: bool

    def as_dict(self) -> dict:
        return {"relation": self.name, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


@dataclass(frozen=True)
class RootCertificate:
    n: int
    a: Element
    b: Element
    c: Element
    relations: tuple[Relation, ...]
    version: str = __version__
    roots: tuple[Element, ...] | None = field(default=None)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.relations)

    def failures(self) -> list[Relation]:
        return [r for r in self.relations if not r.holds]

    def as_dict(self) -> dict:
        d = {
            "n": self.n,
            "version": self.version,
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "relations": [r.as_dict() for r in self.relations],
        }
        if self.roots is not None:
            d["roots_of_c"] = [str(e) for e in self.roots]
        d["verdict"] = "pass" if self.ok else "fail"
        return d


def certify(cfg: AlgebraConfig, roots_window: SampleWindow | None = None) -> RootCertificate:
    """Recompute and check the root relations for ``a = f(x,0,0)``, ``b = f(0,x,0)``.

    Checked: a != b; a^k != b^k and a^k, b^k != c for k < n; a^n = b^n = c != 0;
    a^(n+1) = b^(n+1) = 0; and the strict chains a > a^2 > ... > a^(n+1), same for b.
    A failing relation is recorded, never dropped.
    """
    n = cfg.n
    z = poly_zero(cfg)
    x = monomial(cfg, 1)
    a = Element(Branch.F, x, z, 0)
    b = Element(Branch.F, z, x, 0)
    c = Element(Branch.F, z, z, 1)
    nil = zero(cfg)

    pa = {1: a}
    pb = {1: b}
    for k in range(2, n + 2):
        pa[k] = seq(pa[k - 1], a)
        pb[k] = seq(pb[k - 1], b)

    rels: list[Relation] = []

    def rel(name, lhs, rhs, holds):
        rels.append(Relation(name, str(lhs), str(rhs), bool(holds)))

    rel("a != b", a, b, a != b)
    for k in range(1, n):
        rel(f"a^{k} != b^{k}", pa[k], pb[k], pa[k] != pb[k])
    for k in range(1, n):
        rel(f"a^{k} != c", pa[k], c, pa[k] != c)
        rel(f"b^{k} != c", pb[k], c, pb[k] != c)
    rel(f"a^{n} == c", pa[n], c, pa[n] == c)
    rel(f"b^{n} == c", pb[n], c, pb[n] == c)
    rel("c != 0", c, nil, c != nil)
    rel(f"a^{n + 1} == 0", pa[n + 1], nil, pa[n + 1] == nil)
    rel(f"b^{n + 1} == 0", pb[n + 1], nil, pb[n + 1] == nil)
    for name, pw in (("a", pa), ("b", pb)):
        for k in range(1, n + 1):
            lo, hi = pw[k + 1], pw[k]
            rel(f"{name}^{k + 1} < {name}^{k}", lo, hi, le(lo, hi) and lo != hi)

    roots = None
    if roots_window is not None:
        roots = tuple(enumerate_roots(c, n, roots_window))
    return RootCertificate(n=n, a=a, b=b, c=c, relations=tuple(rels), roots=roots)


# -- text form ----------------------------------------------------------------

def format_element(e: Element) -> str:
    """``f([k1,...];[k1,...];m)``"""
    return f"{e.branch.value}({format_poly(e.p)};{format_poly(e.q)};{e.m})"


_ELEMENT = re.compile(r"^\s*([fg])\s*\(([^;()]*);([^;()]*);\s*(-?\d+)\s*\)\s*$")


def parse_element(text: str, cfg: AlgebraConfig) -> Element:
    m = _ELEMENT.match(text)
    if not m:
        raise AlgebraError(f"cannot parse element {text!r}")
    branch, p, q, mm = m.groups()
    return Element(Branch(branch), parse_poly(p, cfg), parse_poly(q, cfg), int(mm))
