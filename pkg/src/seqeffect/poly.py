"""Truncated integer polynomials without constant term (the set I0).

A polynomial ``k_1 x + ... + k_{n-1} x^{n-1}`` is stored as the dense tuple
``(k_1, ..., k_{n-1})``. Members of I0 obey the sign rule: either every
coefficient is zero or the lowest-degree nonzero coefficient is positive.

Python integers are unbounded, so none of the arithmetic here can wrap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence


class AlgebraError(ValueError):
    """Base class for invalid values and operands."""


class ConfigMismatchError(AlgebraError):
    """Operands belong to different truncation parameters."""


class SignRuleError(AlgebraError):
    """Coefficients violate the I0 sign rule."""


@dataclass(frozen=True, slots=True)
class AlgebraConfig:
    """Truncation parameter ``n`` of one instance of the construction."""

    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise TypeError(f"n must be an int, got {type(self.n).__name__}")
        if self.n < 2:
            raise AlgebraError(f"n must be >= 2, got {self.n}")

    @property
    def width(self) -> int:
        """Number of stored coefficients (degrees 1..n-1)."""
        return self.n - 1


def satisfies_sign_rule(coeffs: Sequence[int]) -> bool:
    for k in coeffs:
        if k:
            return k > 0
    return True


_CONFIGS: dict[int, AlgebraConfig] = {}


def _cfg_for_width(width: int) -> AlgebraConfig:
    cfg = _CONFIGS.get(width)
    if cfg is None:
        cfg = _CONFIGS[width] = AlgebraConfig(width + 1)
    return cfg


class TruncPoly(tuple):
    """An immutable element of I0: the tuple ``(k_1, ..., k_{n-1})``.

    The configuration is carried by the length, so polynomials of different
    ``n`` never compare equal and mixing them is detected cheaply. Being a
    tuple, a ``TruncPoly`` also compares equal to its plain coefficient tuple.
    """

    __slots__ = ()

    def __new__(cls, cfg: AlgebraConfig, coeffs: Iterable[int]):
        coeffs = tuple(coeffs)
        if len(coeffs) != cfg.width:
            raise AlgebraError(
                f"expected {cfg.width} coefficients for n={cfg.n}, got {len(coeffs)}"
            )
        for k in coeffs:
            if isinstance(k, bool) or not isinstance(k, int):
                raise TypeError(f"coefficients must be ints, got {k!r}")
        return cls._trusted(coeffs)

    @classmethod
    def _trusted(cls, coeffs: tuple[int, ...]) -> TruncPoly:
        # Length and integrality are the caller's responsibility; the sign
        # rule is still enforced so no unchecked value escapes.
        for k in coeffs:
            if k:
                if k < 0:
                    raise SignRuleError(
                        f"first nonzero coefficient must be positive: {list(coeffs)}"
                    )
                break
        return tuple.__new__(cls, coeffs)

    def __getnewargs__(self):
        return (self.cfg, tuple(self))

    @property
    def cfg(self) -> AlgebraConfig:
        return _cfg_for_width(len(self))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self):
        return f"TruncPoly(n={len(self) + 1}, {list(self)})"

    def __str__(self):
        return format_poly(self)

    def __bool__(self):
        return any(self)

    def __add__(self, other):
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return poly_add(self, other)

    __radd__ = None

    def is_zero(self) -> bool:
        return not any(self)

    def degree_of_lowest_term(self) -> int | None:
        for i, k in enumerate(self, start=1):
            if k:
                return i
        return None


@dataclass(frozen=True, slots=True)
class FullProduct:
    """Untruncated product of two or three I0 polynomials.

    ``coeffs[d]`` is the coefficient of ``x**d`` for ``d`` in ``0..3(n-1)``.
    """

    cfg: AlgebraConfig
    coeffs: tuple[int, ...]

    def truncated(self) -> TruncPoly:
        """Degrees 1..n-1 of the product."""
        return TruncPoly(self.cfg, self.coeffs[1 : self.cfg.n])

    def degree_n(self) -> int:
        return self.coeffs[self.cfg.n]


def _same_cfg(*polys: TruncPoly) -> AlgebraConfig:
    width = len(polys[0])
    for p in polys[1:]:
        if len(p) != width:
            raise ConfigMismatchError(f"mixed configs: n={width + 1} and n={len(p) + 1}")
    return _cfg_for_width(width)


def poly_zero(cfg: AlgebraConfig) -> TruncPoly:
    return TruncPoly._trusted((0,) * cfg.width)


def monomial(cfg: AlgebraConfig, i: int) -> TruncPoly:
    """The monomial ``x**i`` for ``1 <= i <= n-1``."""
    if not 1 <= i <= cfg.width:
        raise AlgebraError(f"degree {i} outside 1..{cfg.width} for n={cfg.n}")
    coeffs = [0] * cfg.width
    coeffs[i - 1] = 1
    return TruncPoly._trusted(tuple(coeffs))


def poly_add(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    if len(a) != len(b):
        _same_cfg(a, b)
    return TruncPoly._trusted(tuple(map(int.__add__, a, b)))


def poly_sub_checked(a: TruncPoly, b: TruncPoly) -> TruncPoly | None:
    """Return ``a - b`` if it lies in I0, else ``None``.

    ``None`` is an ordinary answer here: it is what makes the orthosum partial.
    """
    if len(a) != len(b):
        _same_cfg(a, b)
    diff = tuple(map(int.__sub__, a, b))
    for k in diff:
        if k:
            if k < 0:
                return None
            break
    return tuple.__new__(TruncPoly, diff)


def _sub(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    # For differences the algebra guarantees to lie in I0; a violation
    # still raises SignRuleError.
    if len(a) != len(b):
        _same_cfg(a, b)
    return TruncPoly._trusted(tuple(map(int.__sub__, a, b)))


def _mul2_loop(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[TruncPoly, int]:
    # Index i holds degree i+1: degree i+j+2 <= n-1 means i+j <= n-3, and the
    # x**n coefficient pairs index i with index n-2-i (= width-1-i).
    width = len(a)
    trunc = [0] * width
    top = 0
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(width - 1 - i):
            y = b[j]
            if y:
                trunc[i + j + 1] += x * y
        top += x * b[width - 1 - i]
    return TruncPoly._trusted(tuple(trunc)), top


_UNROLL_MAX = 12


@lru_cache(maxsize=None)
def _kernel(width: int):
    """Straight-line version of :func:`_mul2_loop` for one width."""
    if width > _UNROLL_MAX:
        return _mul2_loop
    a = [f"a{i}" for i in range(width)]
    b = [f"b{i}" for i in range(width)]
    terms = ["0"]
    for d in range(1, width):
        terms.append("+".join(f"{a[i]}*{b[d - 1 - i]}" for i in range(d)))
    top = "+".join(f"{a[i]}*{b[width - 1 - i]}" for i in range(width))
    unpack = f"    {','.join(a)}, = a\n    {','.join(b)}, = b\n"
    src = (
        "def kernel(a, b):\n"
        + unpack
        + f"    return _trusted(({','.join(terms)},)), {top}\n"
    )
    ns = {"_trusted": TruncPoly._trusted}
    exec(src, ns)
    return ns["kernel"]


def _mul2(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[TruncPoly, int]:
    """``(F, G)`` of two same-width coefficient tuples."""
    return _kernel(len(a))(a, b)


def map_FG(p1: TruncPoly, p2: TruncPoly) -> tuple[TruncPoly, int]:
    """``(map_F(p1, p2), map_G(p1, p2))`` computed in one pass."""
    if len(p1) != len(p2):
        _same_cfg(p1, p2)
    return _mul2(p1, p2)


def map_F(p1: TruncPoly, p2: TruncPoly) -> TruncPoly:
    """Product of ``p1`` and ``p2`` keeping total degrees ``<= n-1``."""
    return map_FG(p1, p2)[0]


def map_G(p1: TruncPoly, p2: TruncPoly) -> int:
    """Coefficient of ``x**n`` in the product of ``p1`` and ``p2``."""
    return map_FG(p1, p2)[1]


def _triple_terms(p1: TruncPoly, p2: TruncPoly, p3: TruncPoly) -> Iterator[tuple[int, int]]:
    for i, x in enumerate(p1, start=1):
        if not x:
            continue
        for j, y in enumerate(p2, start=1):
            if not y:
                continue
            for m, z in enumerate(p3, start=1):
                if z:
                    yield i + j + m, x * y * z


def map_F3(p1: TruncPoly, p2: TruncPoly, p3: TruncPoly) -> TruncPoly:
    """Triple product of ``p1, p2, p3`` keeping total degrees ``<= n-1``."""
    cfg = _same_cfg(p1, p2, p3)
    out = [0] * cfg.width
    for d, term in _triple_terms(p1, p2, p3):
        if d <= cfg.width:
            out[d - 1] += term
    return TruncPoly._trusted(tuple(out))


def map_G3(p1: TruncPoly, p2: TruncPoly, p3: TruncPoly) -> int:
    """Coefficient of ``x**n`` in the triple product of ``p1, p2, p3``."""
    cfg = _same_cfg(p1, p2, p3)
    return sum(term for d, term in _triple_terms(p1, p2, p3) if d == cfg.n)


def oracle_full_product(ps: Sequence[TruncPoly]) -> FullProduct:
    """Schoolbook product of 2 or 3 polynomials with nothing discarded.

    Serves as an independent reference for the truncating maps: degrees
    ``1..n-1`` must equal F (or F3) and degree ``n`` must equal G (or G3).
    """
    if len(ps) not in (2, 3):
        raise AlgebraError(f"oracle takes 2 or 3 factors, got {len(ps)}")
    cfg = _same_cfg(*ps)
    acc = [1]  # the constant polynomial 1, indexed by degree
    for p in ps:
        full = [0, *p]
        nxt = [0] * (len(acc) + len(full) - 1)
        for i, x in enumerate(acc):
            for j, y in enumerate(full):
                nxt[i + j] += x * y
        acc = nxt
    size = 3 * cfg.width + 1
    acc.extend([0] * (size - len(acc)))
    return FullProduct(cfg, tuple(acc))


def enumerate_polys(cfg: AlgebraConfig, bound: int) -> list[TruncPoly]:
    """All members of I0 with every ``|k_i| <= bound``, in lexicographic order."""
    if bound < 0:
        raise AlgebraError(f"coefficient bound must be >= 0, got {bound}")
    rng = range(-bound, bound + 1)
    return [
        tuple.__new__(TruncPoly, c)
        for c in product(rng, repeat=cfg.width)
        if satisfies_sign_rule(c)
    ]


def count_polys(width: int, bound: int) -> int:
    """Size of :func:`enumerate_polys` without materializing it."""
    # zero, plus: first nonzero at index i has `bound` positive choices and
    # (2*bound+1) free choices for each later slot.
    return 1 + sum(bound * (2 * bound + 1) ** (width - 1 - i) for i in range(width))


# -- text forms ---------------------------------------------------------------

def format_poly(p: TruncPoly) -> str:
    """Bracketed coefficient list, e.g. ``[1,0,-2]``."""
    return "[" + ",".join(map(str, p)) + "]"


_BRACKET = re.compile(r"^\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]$")
_TERM = re.compile(r"([+-])?\s*(\d+)?\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str, cfg: AlgebraConfig) -> TruncPoly:
    """Parse ``[k1,...,k_{n-1}]`` or a sum of monomials like ``x - 2x^2 + x^3``.

    A bare ``0`` is accepted as the zero polynomial. Constant terms are rejected.
    """
    s = text.strip()
    if not s:
        raise AlgebraError("empty polynomial")
    m = _BRACKET.match(s)
    if m:
        return TruncPoly(cfg, (int(t) for t in m.group(1).split(",")))
    if s == "0":
        return poly_zero(cfg)
    coeffs = [0] * cfg.width
    pos = 0
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos == len(s):
            break
        m = _TERM.match(s, pos)
        sign, num, xpart, exp = m.group(1), m.group(2), m.group(3), m.group(4)
        if m.end() == pos or (sign is None and not first) or xpart is None:
            if xpart is None and num is not None:
                raise AlgebraError(f"constant term not allowed in {text!r}")
            raise AlgebraError(f"cannot parse polynomial {text!r} at offset {pos}")
        deg = int(exp) if exp is not None else 1
        if not 1 <= deg <= cfg.width:
            raise AlgebraError(f"degree {deg} outside 1..{cfg.width} in {text!r}")
        k = int(num) if num is not None else 1
        coeffs[deg - 1] += -k if sign == "-" else k
        pos = m.end()
        first = False
    return TruncPoly(cfg, coeffs)
