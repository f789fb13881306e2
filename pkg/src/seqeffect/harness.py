"""Axiom verification over finite windows of an effect-algebra instance.

Every check is a predicate over a small tuple of elements (or of I0
polynomials for the I0 identities) that returns ``None`` when the law holds
and a short reason when it does not. The driver feeds it either every tuple
of a window (exhaustive) or independently drawn tuples (sampled), and
condenses the outcome into a :class:`CheckReport`.

Sampled runs are split into fixed-size chunks with their own derived seeds,
so results do not depend on how many worker processes are used.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, product
from typing import Callable, Sequence

from seqeffect.algebra import Element
from seqeffect.instances import E0Instance, SeaInstance, sample_poly
from seqeffect.poly import (
    AlgebraError,
    TruncPoly,
    count_polys,
    enumerate_polys,
    format_poly,
    map_F,
    map_F3,
    map_G,
    map_G3,
    oracle_full_product,
    parse_poly,
    poly_add,
    poly_sub_checked,
    poly_zero,
    satisfies_sign_rule,
)
from seqeffect.window import DEFAULT_SEED, SampleWindow

__all__ = [
    "CHUNK",
    "CheckReport",
    "DEFAULT_CAP",
    "EA_SUITE",
    "FULL_SUITE",
    "LEMMA_SUITE",
    "ORDER_SUITE",
    "SEA_SUITE",
    "SampleWindow",
    "SuiteReport",
    "UnknownAxiomError",
    "WindowTooLargeError",
    "check_axiom",
    "check_lemma1",
    "default_suite",
    "enumerate_window",
    "replay",
    "run_suite",
]

DEFAULT_CAP = 10**6
CHUNK = 10_000
MAX_WITNESSES = 5


class WindowTooLargeError(AlgebraError):
    """The window holds more elements than the configured cap."""


class UnknownAxiomError(AlgebraError):
    pass


# -- predicates over elements -------------------------------------------------
# Each takes the instance first and returns None on success.

def _ea1(I, a, b):
    if I.oplus(a, b) != I.oplus(b, a):
        return "a ⊕ b != b ⊕ a"


def _ea2(I, a, b, c):
    bc = I.oplus(b, c)
    right = None if bc is None else I.oplus(a, bc)
    ab = I.oplus(a, b)
    left = None if ab is None else I.oplus(ab, c)
    if right is not None and left != right:
        return "a ⊕ (b ⊕ c) defined but (a ⊕ b) ⊕ c differs or is undefined"
    if left is not None and left != right:
        return "(a ⊕ b) ⊕ c defined but a ⊕ (b ⊕ c) differs or is undefined"


def _ea3(I, a, *candidates):
    one = I.one
    comp = I.orthosupplement(a)
    if I.oplus(a, comp) != one:
        return "a ⊕ a' != 1"
    for x in candidates:
        if x != comp and I.oplus(a, x) == one:
            return "a second element sums with a to 1"


def _ea4(I, a):
    if I.oplus(a, I.one) is not None and a != I.zero:
        return "a ⊕ 1 defined for a != 0"


def _sea1(I, a, b, c):
    bc = I.oplus(b, c)
    if bc is None:
        return None
    s = I.oplus(I.seq(a, b), I.seq(a, c))
    if s is None:
        return "b ⊥ c but a∘b, a∘c not orthogonal"
    if s != I.seq(a, bc):
        return "a ∘ (b ⊕ c) != a∘b ⊕ a∘c"


def _sea2(I, a):
    if I.seq(I.one, a) != a:
        return "1 ∘ a != a"


def _sea3(I, a, b):
    ab = I.seq(a, b)
    if ab == I.zero and ab != I.seq(b, a):
        return "a ∘ b = 0 but b ∘ a != a ∘ b"


def _sea4(I, a, b, c):
    if I.seq(a, b) != I.seq(b, a):
        return None
    bc = I.orthosupplement(b)
    if I.seq(a, bc) != I.seq(bc, a):
        return "a|b but not a|b'"
    if I.seq(a, I.seq(b, c)) != I.seq(I.seq(a, b), c):
        return "a|b but a ∘ (b ∘ c) != (a ∘ b) ∘ c"


def _sea5(I, a, b, c):
    if I.seq(c, a) != I.seq(a, c) or I.seq(c, b) != I.seq(b, c):
        return None
    ab = I.seq(a, b)
    if I.seq(c, ab) != I.seq(ab, c):
        return "c|a, c|b but not c|(a ∘ b)"
    s = I.oplus(a, b)
    if s is not None and I.seq(c, s) != I.seq(s, c):
        return "c|a, c|b, a ⊥ b but not c|(a ⊕ b)"


def _ord_refl(I, a):
    if not I.le(a, a):
        return "a <= a fails"


def _ord_antisym(I, a, b):
    if I.le(a, b) and I.le(b, a) and a != b:
        return "a <= b <= a with a != b"


def _ord_trans(I, a, b, c):
    if I.le(a, b) and I.le(b, c) and not I.le(a, c):
        return "a <= b <= c but not a <= c"


def _ord_bounds(I, a):
    if not I.le(I.zero, a):
        return "0 <= a fails"
    if not I.le(a, I.one):
        return "a <= 1 fails"


def _ord_perp(I, a, b):
    if (I.oplus(a, b) is not None) != I.le(a, I.orthosupplement(b)):
        return "a ⊥ b disagrees with a <= b'"


def _le_oracle(I, a, b, c=None):
    if c is None:
        # exhaustive form: search the whole witness window
        exists = any(I.oplus(a, w) == b for w in I.witness_candidates(a, b))
        if exists != I.le(a, b):
            return f"le says {I.le(a, b)}, witness search says {exists}"
        return None
    # sampled form: (a, b) random, c a random summand
    s = I.oplus(a, c)
    if s is not None and not I.le(a, s):
        return "a ⊕ c defined but a <= a ⊕ c fails"
    if I.le(a, b):
        w = I.ominus(b, a)
        if w is None or I.oplus(a, w) != b:
            return "a <= b but no verified witness c with a ⊕ c = b"


# -- predicates over I0 -------------------------------------------------------

def _lem1(p1, p2):
    if map_F(p1, p2) != map_F(p2, p1) or map_G(p1, p2) != map_G(p2, p1):
        return "F or G not symmetric"


def _lem2(p1, p2, p3):
    s = poly_add(p2, p3)
    if map_F(p1, s) != poly_add(map_F(p1, p2), map_F(p1, p3)):
        return "F not additive in the second argument"
    if map_G(p1, s) != map_G(p1, p2) + map_G(p1, p3):
        return "G not additive in the second argument"


def _lem3(p):
    z = poly_zero(p.cfg)
    if not map_F(z, p).is_zero() or not map_F(p, z).is_zero():
        return "F(0, p) != 0"
    if map_G(z, p) != 0 or map_G(p, z) != 0:
        return "G(0, p) != 0"


def _lem4(p1, p2):
    if not map_F(p1, p2).is_zero():
        return None
    g = map_G(p1, p2)
    if g < 0:
        return "F = 0 but G < 0"
    if p1.is_zero() or p2.is_zero():
        return None
    n = p1.cfg.n
    d1, d2 = p1.degree_of_lowest_term(), p2.degree_of_lowest_term()
    if d1 + d2 < n:
        return "F = 0 although lowest degrees sum below n"
    expected = p1.coeffs[d1 - 1] * p2.coeffs[d2 - 1] if d1 + d2 == n else 0
    if g != expected:
        return "G differs from the product of leading coefficients"


def _lem5(p1, p2):
    f = map_F(p1, p2)
    d = poly_sub_checked(p1, f)
    if d is None:
        return "p1 - F(p1, p2) not in I0"
    if (p1 == f) != p1.is_zero():
        return "p1 = F(p1, p2) disagrees with p1 = 0"
    if not p1.is_zero():
        i = p1.degree_of_lowest_term()
        if d.degree_of_lowest_term() != i or d.coeffs[i - 1] != p1.coeffs[i - 1]:
            return "leading term of p1 - F(p1, p2) differs from that of p1"


def _lem6(p1, p2, p3):
    f12 = map_F(p1, p2)
    if map_F(f12, p3) != map_F3(p1, p2, p3):
        return "F(F(p1, p2), p3) != F3(p1, p2, p3)"
    if map_G(f12, p3) != map_G3(p1, p2, p3):
        return "G(F(p1, p2), p3) != G3(p1, p2, p3)"


def _lem7(p1, p2):
    raw = tuple(x + y for x, y in zip(p1.coeffs, p2.coeffs))
    if not satisfies_sign_rule(raw):
        return "p1 + p2 not in I0"
    if (not any(raw)) != (p1.is_zero() and p2.is_zero()):
        return "p1 + p2 = 0 disagrees with p1 = p2 = 0"


def _lem_closure(p1, p2):
    if not satisfies_sign_rule(map_F(p1, p2).coeffs):
        return "F(p1, p2) not in I0"


def _lem_oracle(p1, p2, p3):
    full2 = oracle_full_product([p1, p2])
    if full2.truncated() != map_F(p1, p2) or full2.degree_n() != map_G(p1, p2):
        return "F/G disagree with the full product of p1, p2"
    full3 = oracle_full_product([p1, p2, p3])
    if full3.truncated() != map_F3(p1, p2, p3) or full3.degree_n() != map_G3(p1, p2, p3):
        return "F3/G3 disagree with the full product of p1, p2, p3"


@dataclass(frozen=True)
class _Check:
    arity: int
    fn: Callable
    domain: str = "element"  # or "poly"
    note: str = ""


CHECKS: dict[str, _Check] = {
    "EA1": _Check(2, _ea1),
    "EA2": _Check(3, _ea2),
    "EA3": _Check(1, _ea3, note="uniqueness within witness window"),
    "EA4": _Check(1, _ea4),
    "SEA1": _Check(3, _sea1),
    "SEA2": _Check(1, _sea2),
    "SEA3": _Check(2, _sea3),
    "SEA4": _Check(3, _sea4),
    "SEA5": _Check(3, _sea5),
    "LEM1-1": _Check(2, _lem1, "poly"),
    "LEM1-2": _Check(3, _lem2, "poly"),
    "LEM1-3": _Check(1, _lem3, "poly"),
    "LEM1-4": _Check(2, _lem4, "poly"),
    "LEM1-5": _Check(2, _lem5, "poly"),
    "LEM1-6": _Check(3, _lem6, "poly"),
    "LEM1-7": _Check(2, _lem7, "poly"),
    "LEM1-closure": _Check(2, _lem_closure, "poly"),
    "LEM1-oracle": _Check(3, _lem_oracle, "poly"),
    "ORD-refl": _Check(1, _ord_refl),
    "ORD-antisym": _Check(2, _ord_antisym),
    "ORD-trans": _Check(3, _ord_trans),
    "ORD-bounds": _Check(1, _ord_bounds),
    "ORD-perp": _Check(2, _ord_perp),
    "LE-oracle": _Check(2, _le_oracle),
}

EA_SUITE = ("EA1", "EA2", "EA3", "EA4")
SEA_SUITE = ("SEA1", "SEA2", "SEA3", "SEA4", "SEA5")
LEMMA_SUITE = (
    "LEM1-1", "LEM1-2", "LEM1-3", "LEM1-4", "LEM1-5", "LEM1-6", "LEM1-7",
    "LEM1-closure", "LEM1-oracle",
)
ORDER_SUITE = ("ORD-refl", "ORD-antisym", "ORD-trans", "ORD-bounds", "ORD-perp", "LE-oracle")
FULL_SUITE = EA_SUITE + SEA_SUITE + LEMMA_SUITE + ORDER_SUITE


def default_suite(inst: SeaInstance) -> tuple[str, ...]:
    """Everything applicable: the I0 identities only make sense for E0-based instances."""
    if isinstance(inst, E0Instance):
        return FULL_SUITE
    return EA_SUITE + SEA_SUITE + ORDER_SUITE


# -- reports ------------------------------------------------------------------

@dataclass
class CheckReport:
    axiom: str
    trials: int
    violation_count: int = 0
    witnesses: list[list[str]] = field(default_factory=list)
    reasons: list[str] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        d = {
            "axiom": self.axiom,
            "trials": self.trials,
            "violations": self.violation_count,
            "witnesses": [
                {"elements": w, "reason": r} for w, r in zip(self.witnesses, self.reasons)
            ],
        }
        if self.note:
            d["note"] = self.note
        d["verdict"] = self.verdict
        return d

    def line(self) -> str:
        s = f"{self.axiom:<13} {self.verdict.upper():<4}  trials={self.trials}"
        if self.note:
            s += f"  ({self.note})"
        if not self.passed:
            s += f"  violations={self.violation_count}"
            s += f"\n    witness: {', '.join(self.witnesses[0])}  [{self.reasons[0]}]"
        return s


@dataclass
class SuiteReport:
    instance: dict
    window: SampleWindow
    reports: list[CheckReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def as_dict(self) -> dict:
        return {
            **self.instance,
            "window": self.window.as_dict(),
            "reports": [r.as_dict() for r in self.reports],
            "verdict": "pass" if self.passed else "fail",
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        head = ", ".join(f"{k}={v}" for k, v in self.instance.items())
        win = ", ".join(f"{k}={v}" for k, v in self.window.as_dict().items())
        lines = [f"# {head}; window {win}"]
        lines += [r.line() for r in self.reports]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


# -- driver -------------------------------------------------------------------

def enumerate_window(inst: SeaInstance, window: SampleWindow, cap: int = DEFAULT_CAP):
    """Every element of the window exactly once, canonical order."""
    size = inst.count(window)
    if size > cap:
        raise WindowTooLargeError(f"window holds {size} elements, cap is {cap}")
    return inst.enumerate(window)


def _poly_window(inst: SeaInstance, window: SampleWindow, cap: int) -> list[TruncPoly]:
    size = count_polys(inst.cfg.width, window.W)
    if size > cap:
        raise WindowTooLargeError(f"window holds {size} polynomials, cap is {cap}")
    return enumerate_polys(inst.cfg, window.W)


def _lookup(axiom: str) -> _Check:
    try:
        return CHECKS[axiom]
    except KeyError:
        raise UnknownAxiomError(f"unknown axiom id {axiom!r}") from None


def _evaluate(inst, chk: _Check, args):
    try:
        if chk.domain == "poly":
            return chk.fn(*args)
        return chk.fn(inst, *args)
    except AlgebraError as exc:
        # an operation rejecting in-window operands is itself a failure
        return f"error: {exc}"


def _format(inst, chk: _Check, args) -> list[str]:
    if chk.domain == "poly":
        return [format_poly(p) for p in args]
    return [inst.format(a) for a in args]


def _sampled_args(inst, axiom: str, chk: _Check, draw: Callable, window: SampleWindow):
    if axiom == "EA3":
        a = draw()
        comp = inst.orthosupplement(a)
        x1, x2, y = draw(), draw(), draw()
        cands = [x1, x2]
        above = inst.oplus(comp, y)
        if above is not None:
            cands.append(above)
        if inst.le(y, comp):
            below = inst.ominus(comp, y)
            if below is not None:
                cands.append(below)
        return (a, *cands)
    if axiom == "LE-oracle":
        return (draw(), draw(), draw())
    if chk.arity == 3:
        return (draw(), draw(), draw())
    if chk.arity == 2:
        return (draw(), draw())
    return (draw(),)


@dataclass
class _Partial:
    trials: int = 0
    count: int = 0
    witnesses: list = field(default_factory=list)
    reasons: list = field(default_factory=list)

    def record(self, inst, chk, args, reason):
        self.count += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(_format(inst, chk, args))
            self.reasons.append(reason)

    def merge(self, other: _Partial):
        self.trials += other.trials
        self.count += other.count
        room = MAX_WITNESSES - len(self.witnesses)
        self.witnesses += other.witnesses[:room]
        self.reasons += other.reasons[:room]


def _chunk_seed(seed: int, axiom: str, index: int) -> str:
    return f"{seed}:{axiom}:{index}"


def _run_sampled_chunk(inst, axiom, window, index, size) -> _Partial:
    chk = _lookup(axiom)
    rng = random.Random(_chunk_seed(window.seed, axiom, index))
    if chk.domain == "poly":
        cfg, W = inst.cfg, window.W
        draw = lambda: sample_poly(rng, cfg, W)  # noqa: E731
    else:
        draw = inst.sampler(rng, window)
    out = _Partial(trials=size)
    if chk.domain == "element" and axiom not in ("EA3", "LE-oracle"):
        # hot path: plain independent draws, no per-trial dispatch
        fn, arity = chk.fn, chk.arity
        for _ in range(size):
            if arity == 3:
                args = (draw(), draw(), draw())
            elif arity == 2:
                args = (draw(), draw())
            else:
                args = (draw(),)
            try:
                reason = fn(inst, *args)
            except AlgebraError as exc:
                reason = f"error: {exc}"
            if reason is not None:
                out.record(inst, chk, args, reason)
        return out
    for _ in range(size):
        args = _sampled_args(inst, axiom, chk, draw, window)
        reason = _evaluate(inst, chk, args)
        if reason is not None:
            out.record(inst, chk, args, reason)
    return out


def _run_exhaustive_chunk(inst, axiom, window, start, stop, cap) -> _Partial:
    chk = _lookup(axiom)
    if chk.domain == "poly":
        pool = _poly_window(inst, window, cap)
    else:
        pool = list(enumerate_window(inst, window, cap))
    out = _Partial()
    heads = pool[start:stop]
    if axiom == "EA3":
        for a in heads:
            out.trials += 1
            reason = _evaluate(inst, chk, (a, *pool))
            if reason is not None:
                # report the offending pair rather than the whole window
                comp = inst.orthosupplement(a)
                bad = [x for x in pool if x != comp and inst.oplus(a, x) == inst.one]
                out.record(inst, chk, (a, *bad[:1]), reason)
        return out
    for head in heads:
        for rest in product(pool, repeat=chk.arity - 1):
            args = (head, *rest)
            out.trials += 1
            reason = _evaluate(inst, chk, args)
            if reason is not None:
                out.record(inst, chk, args, reason)
    return out


def _tasks(inst, axiom, window, cap):
    chk = _lookup(axiom)
    if window.exhaustive:
        if chk.domain == "poly":
            size = count_polys(inst.cfg.width, window.W)
        else:
            size = inst.count(window)
        if size > cap:
            raise WindowTooLargeError(f"window holds {size} elements, cap is {cap}")
        # split on the first coordinate so large arity-3 checks parallelize
        step = max(1, min(size, -(-size // 16)))
        return [
            (_run_exhaustive_chunk, (inst, axiom, window, s, min(s + step, size), cap))
            for s in range(0, size, step)
        ]
    full, rest = divmod(window.trials, CHUNK)
    sizes = [CHUNK] * full + ([rest] if rest else [])
    return [(_run_sampled_chunk, (inst, axiom, window, i, n)) for i, n in enumerate(sizes)]


def _call(task):
    fn, args = task
    return fn(*args)


def run_suite(
    inst: SeaInstance,
    suite: Sequence[str] | None = None,
    window: SampleWindow | None = None,
    *,
    jobs: int = 1,
    cap: int = DEFAULT_CAP,
) -> SuiteReport:
    """Run each check in ``suite`` and collect reports in suite order.

    ``jobs > 1`` distributes chunks over worker processes; the reports are
    identical to a single-process run.
    """
    window = window or SampleWindow()
    suite = tuple(suite) if suite is not None else default_suite(inst)
    for axiom in suite:
        chk = _lookup(axiom)
        if chk.domain == "poly" and not isinstance(inst, E0Instance):
            raise UnknownAxiomError(f"{axiom} applies to E0 instances only")
    plan = [(axiom, _tasks(inst, axiom, window, cap)) for axiom in suite]
    flat = [t for _, ts in plan for t in ts]
    if jobs > 1 and len(flat) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = iter(list(pool.map(_call, flat)))
    else:
        results = map(_call, flat)
    reports = []
    for axiom, ts in plan:
        acc = _Partial()
        for part in islice(results, len(ts)):
            acc.merge(part)
        reports.append(
            CheckReport(axiom, acc.trials, acc.count, acc.witnesses, acc.reasons, CHECKS[axiom].note)
        )
    return SuiteReport(inst.describe(), window, reports)


def check_axiom(inst: SeaInstance, axiom: str, window: SampleWindow, **kw) -> CheckReport:
    return run_suite(inst, [axiom], window, **kw).reports[0]


def check_lemma1(cfg, window: SampleWindow, **kw) -> list[CheckReport]:
    """Identities LEM1-1 to LEM1-7, closure of F in I0 and the full-product oracle."""
    return run_suite(E0Instance(cfg), LEMMA_SUITE, window, **kw).reports


def replay(inst: SeaInstance, axiom: str, witness: Sequence[str]) -> str | None:
    """Re-run one check on serialized witness elements; ``None`` means it now holds."""
    chk = _lookup(axiom)
    if chk.domain == "poly":
        args = tuple(parse_poly(s, inst.cfg) for s in witness)
    else:
        args = tuple(inst.parse(s) for s in witness)
    return _evaluate(inst, chk, args)


def seed_or_default(seed: int | None) -> int:
    return DEFAULT_SEED if seed is None else seed
