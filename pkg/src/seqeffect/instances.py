"""Instance-agnostic interface for (sequential) effect algebras.

The axiom harness only talks to :class:`SeaInstance`. Three families are
provided: E0 itself, the unit interval with exact rationals (a known-good
calibration fixture), and deliberately corrupted variants of E0 used to show
that the harness can fail.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator

from seqeffect import algebra as e0
from seqeffect.algebra import Branch, Element, _new
from seqeffect.poly import (
    AlgebraConfig,
    AlgebraError,
    TruncPoly,
    _sub,
    map_FG,
    poly_add,
    poly_sub_checked,
)
from seqeffect.window import SampleWindow


class SeaInstance(ABC):
    """A carrier with 0, 1, partial ⊕, total ∘ and orthosupplement.

    Implementations must be pure. ``le`` and ``ominus`` have existential
    defaults built from ``oplus`` and :meth:`witness_candidates`.
    """

    name: str = "abstract"

    def __init__(self):
        if self.zero == self.one:
            raise AlgebraError(f"{self.name}: 0 and 1 must be distinct")

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def oplus(self, a, b) -> Any | None: ...

    @abstractmethod
    def seq(self, a, b) -> Any: ...

    @abstractmethod
    def orthosupplement(self, a) -> Any: ...

    @abstractmethod
    def enumerate(self, window: SampleWindow) -> Iterator[Any]:
        """Every element of the window exactly once, canonical order."""

    @abstractmethod
    def count(self, window: SampleWindow) -> int:
        """Cardinality of :meth:`enumerate` for the window."""

    @abstractmethod
    def sample(self, rng: random.Random, window: SampleWindow) -> Any: ...

    def sampler(self, rng: random.Random, window: SampleWindow) -> Callable[[], Any]:
        """A zero-argument drawing function equivalent to repeated :meth:`sample`."""
        return lambda: self.sample(rng, window)

    @abstractmethod
    def witness_candidates(self, a, b) -> Iterable[Any]:
        """A finite set guaranteed to contain ``c`` with ``a ⊕ c = b`` if one exists."""

    @abstractmethod
    def format(self, a) -> str: ...

    @abstractmethod
    def parse(self, text: str) -> Any: ...

    def le(self, a, b) -> bool:
        return self.ominus(b, a) is not None

    def ominus(self, b, a):
        """Some ``c`` with ``a ⊕ c = b``, or ``None``."""
        for c in self.witness_candidates(a, b):
            if self.oplus(a, c) == b:
                return c
        return None

    def describe(self) -> dict:
        return {"instance": self.name}


class E0Instance(SeaInstance):
    def __init__(self, cfg: AlgebraConfig):
        self.cfg = cfg
        self.name = "E0"
        self._zero = e0.zero(cfg)
        self._one = e0.one(cfg)
        self._witness_cache: dict[tuple[int, int], list[Element]] = {}
        super().__init__()

    def __reduce__(self):
        return (type(self), (self.cfg,))

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    # bound directly so the harness skips a wrapper frame per operation
    oplus = staticmethod(e0.oplus)
    seq = staticmethod(e0.seq)
    orthosupplement = staticmethod(e0.orthosupplement)
    le = staticmethod(e0.le)

    def ominus(self, b, a):
        return e0.ominus(b, a) if e0.le(a, b) else None

    def enumerate(self, window):
        return e0.enumerate_elements(self.cfg, window.W, window.M)

    def count(self, window):
        return e0.count_elements(self.cfg, window.W, window.M)

    def sample(self, rng, window):
        return sample_element(rng, self.cfg, window.W, window.M)

    def sampler(self, rng, window):
        table = _repaired_table(self.cfg.width, window.W)
        if table is None:
            return super().sampler(rng, window)
        r = rng.random
        size = len(table)
        M = window.M
        span = 2 * M + 1
        F, G = Branch.F, Branch.G

        def draw():
            # same draw sequence as sample_element
            branch = F if r() < 0.5 else G
            p = table[int(r() * size)]
            q = table[int(r() * size)]
            if any(p) or any(q):
                return _new(branch, p, q, int(r() * span) - M)
            return _new(branch, p, q, int(r() * (M + 1)))

        return draw

    def witness_candidates(self, a, b):
        # A witness c = b ⊖ a has coefficients bounded by the sum of the
        # operands' coefficient magnitudes and |m_c| <= |m_a| + |m_b|.
        W = max(map(abs, a.p.coeffs + a.q.coeffs)) + max(map(abs, b.p.coeffs + b.q.coeffs))
        M = abs(a.m) + abs(b.m)
        key = (W, M)
        if key not in self._witness_cache:
            self._witness_cache[key] = list(e0.enumerate_elements(self.cfg, W, M))
        return self._witness_cache[key]

    def format(self, a):
        return e0.format_element(a)

    def parse(self, text):
        return e0.parse_element(text, self.cfg)

    def describe(self):
        return {"instance": self.name, "n": self.cfg.n}


_TABLE_LIMIT = 1 << 16


@lru_cache(maxsize=64)
def _repaired_table(width: int, W: int) -> tuple[TruncPoly, ...] | None:
    # Every raw vector in [-W, W]^width mapped to its sign-repaired polynomial;
    # a uniform index into it reproduces the per-coefficient draw exactly.
    if (2 * W + 1) ** width > _TABLE_LIMIT:
        return None
    out = []
    for c in product(range(-W, W + 1), repeat=width):
        lead = next((k for k in c if k), 0)
        out.append(TruncPoly._trusted(tuple(-k for k in c) if lead < 0 else c))
    return tuple(out)


def sample_poly(rng: random.Random, cfg: AlgebraConfig, W: int) -> TruncPoly:
    """Uniform coefficients in [-W, W], negated if the leading one is negative."""
    table = _repaired_table(cfg.width, W)
    if table is not None:
        return table[int(rng.random() * len(table))]
    span = 2 * W + 1
    r = rng.random
    coeffs = [int(r() * span) - W for _ in range(cfg.width)]
    for k in coeffs:
        if k:
            if k < 0:
                coeffs = [-c for c in coeffs]
            break
    return TruncPoly._trusted(tuple(coeffs))


def sample_element(rng: random.Random, cfg: AlgebraConfig, W: int, M: int) -> Element:
    """Uniform branch, sampled p and q, ``m`` uniform on its legal range."""
    r = rng.random
    branch = Branch.F if r() < 0.5 else Branch.G
    table = _repaired_table(cfg.width, W)
    if table is not None:
        size = len(table)
        p = table[int(r() * size)]
        q = table[int(r() * size)]
    else:
        p = sample_poly(rng, cfg, W)
        q = sample_poly(rng, cfg, W)
    if any(p) or any(q):
        m = int(r() * (2 * M + 1)) - M
    else:
        m = int(r() * (M + 1))
    return _new(branch, p, q, m)


class FuzzyInstance(SeaInstance):
    """The unit interval: ``a ⊕ b = a + b`` when ``<= 1``, ``a ∘ b = ab``.

    Windows are the grid ``{k/denominator}``; ``W`` and ``M`` are ignored.
    """

    def __init__(self, denominator: int = 12):
        if denominator < 1:
            raise AlgebraError("denominator must be >= 1")
        self.denominator = denominator
        self.name = "fuzzy"
        super().__init__()

    def __reduce__(self):
        return (type(self), (self.denominator,))

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def oplus(self, a, b):
        s = a + b
        return s if s <= 1 else None

    def seq(self, a, b):
        return a * b

    def orthosupplement(self, a):
        return 1 - a

    def le(self, a, b):
        return a <= b

    def ominus(self, b, a):
        return b - a if a <= b else None

    def enumerate(self, window):
        d = self.denominator
        return (Fraction(k, d) for k in range(d + 1))

    def count(self, window):
        return self.denominator + 1

    def sample(self, rng, window):
        return Fraction(rng.randint(0, self.denominator), self.denominator)

    def witness_candidates(self, a, b):
        return list(self.enumerate(None))

    def format(self, a):
        return str(a)

    def parse(self, text):
        return Fraction(text)

    def describe(self):
        return {"instance": self.name, "denominator": self.denominator}


MUTATIONS = ("drop-G-term", "swap-F-args-one-side", "off-by-one-m")


class MutantInstance(E0Instance):
    """E0 with one operation rule deliberately corrupted.

    ``drop-G-term``
        f ∘ f forgets the G contribution to ``m``.
    ``swap-F-args-one-side``
        in f ∘ g the p-component starts from the g-side polynomial instead of
        the f-side one (the q-component is left intact).
    ``off-by-one-m``
        f ⊕ g yields ``m2 - m1 + 1``.
    """

    def __init__(self, cfg: AlgebraConfig, mutation: str):
        if mutation not in MUTATIONS:
            raise AlgebraError(f"unknown mutation {mutation!r}; choose from {', '.join(MUTATIONS)}")
        self.mutation = mutation
        super().__init__(cfg)
        self.name = f"E0-mutant[{mutation}]"

    def __reduce__(self):
        return (type(self), (self.cfg, self.mutation))

    def oplus(self, a, b):
        if self.mutation != "off-by-one-m":
            return e0.oplus(a, b)
        r = e0.oplus(a, b)
        if r is None or r.branch is Branch.F:
            return r
        return Element(Branch.G, r.p, r.q, r.m + 1)

    def seq(self, a, b):
        e0._check(a, b)
        if a.branch is Branch.G and b.branch is Branch.F:
            a, b = b, a
        if self.mutation == "drop-G-term" and a.branch is Branch.F and b.branch is Branch.F:
            fp, _ = map_FG(a.p, b.p)
            fq, _ = map_FG(a.q, b.q)
            return Element(Branch.F, fp, fq, 0)
        if self.mutation == "swap-F-args-one-side" and a.branch is Branch.F and b.branch is Branch.G:
            fp, gp = map_FG(a.p, b.p)
            fq, gq = map_FG(a.q, b.q)
            return Element(Branch.F, _sub(b.p, fp), _sub(a.q, fq), a.m - gp - gq)
        return e0.seq(a, b)

    # le/ominus fall back to the existential search so they see the mutated ⊕
    le = SeaInstance.le
    ominus = SeaInstance.ominus

    def witness_candidates(self, a, b):
        # The mutated ⊕ agrees with E0 up to a +1 shift of m on g-results, so
        # any witness is the E0 difference of b or of b shifted back by one.
        targets = [b]
        if self.mutation == "off-by-one-m" and b.branch is Branch.G:
            try:
                targets.append(Element(Branch.G, b.p, b.q, b.m - 1))
            except AlgebraError:
                pass
        return [e0.ominus(t, a) for t in targets if e0.le(a, t)]

    def describe(self):
        return {"instance": self.name, "n": self.cfg.n, "mutation": self.mutation}


def instance_e0(cfg: AlgebraConfig) -> E0Instance:
    return E0Instance(cfg)


def instance_fuzzy(denominator: int = 12) -> FuzzyInstance:
    return FuzzyInstance(denominator)


def instance_mutant(base: E0Instance, mutation: str) -> MutantInstance:
    if not isinstance(base, E0Instance):
        raise AlgebraError("mutations are defined for E0 instances only")
    if not mutation:
        raise AlgebraError("a mutation tag is required")
    return MutantInstance(base.cfg, mutation)
