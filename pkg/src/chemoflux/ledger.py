"""Exact-rational catalog of the interpolation-exponent bookkeeping.

The a priori estimates behind the solver's monitored functionals chain
Gagliardo-Nirenberg/Sobolev interpolations whose exponents are rational
functions of the diffusion parameter `a` (written alpha elsewhere) and, for
the iterated-norm bounds, of a free integrability index `p`.  Each catalog entry
pins one such step: its validity region, the window/identity checks its
exponents must satisfy there, and (where the entry asserts an inequality
between norms) the dilation-scaling bookkeeping of both sides.

Everything here is computed in fractions.Fraction.  Floats are rejected at
the boundary: a single float would silently turn exact window checks into
approximate ones.

Scaling bookkeeping (space dimension 3, mass-normalized densities): under
n -> n(lambda x),

    ||n||_q^e          -> lambda^{-3e/q}
    ||grad n^s||_2^e   -> lambda^{-e/2}   (s chosen so the profile is fixed)
    ||grad c||_q^e     -> lambda^{e(1-3/q)}

`scaling_check` verifies that the lambda-exponents of both sides of an
asserted inequality agree identically as rational functions: the difference
is evaluated on a 21x21 rational grid in (a, s) with p = p_lo(a) +
(p_hi(a)-p_lo(a))*s.  Every exponent in the catalog is a ratio of polynomials
of total degree <= 4, so the difference has numerator degree far below 21 in
each variable; vanishing on the grid therefore proves the identity exactly,
it does not sample it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

DIM = 3  # space dimension of the scaling bookkeeping

Expr = Callable[[Fraction, Fraction | None], Fraction]


class CatalogError(RuntimeError):
    """An expression is undefined inside its declared region: catalog bug."""


def _rational(value, name: str) -> Fraction:
    if isinstance(value, float):
        raise TypeError(
            f"{name} must be an int or Fraction, got float {value!r}; "
            "exact window checks do not admit floating point")
    if not isinstance(value, (int, Fraction)):
        raise TypeError(f"{name} must be an int or Fraction, got {type(value).__name__}")
    return Fraction(value)


@dataclass(frozen=True)
class Check:
    """value(a, p) constrained to [lo, hi] (strict flags per side).

    lo == hi with both sides non-strict pins an exact identity.  A None bound
    leaves that side unconstrained.
    """

    name: str
    value: Expr
    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_strict: bool = True
    hi_strict: bool = True

    def holds(self, v: Fraction) -> bool:
        if self.lo is not None and (v < self.lo or (self.lo_strict and v == self.lo)):
            return False
        if self.hi is not None and (v > self.hi or (self.hi_strict and v == self.hi)):
            return False
        return True


@dataclass(frozen=True)
class ScaleFactor:
    """One norm factor: kind in {"lp", "grad_pow", "grad_c"}; `index` is the
    integrability (or power) index, `power` the exponent it carries."""

    kind: str
    index: Expr
    power: Expr

    def lam_exponent(self, a: Fraction, p: Fraction | None) -> Fraction:
        e = self.power(a, p)
        q = self.index(a, p)
        if self.kind == "lp":
            return Fraction(-DIM) * e / q
        if self.kind == "grad_pow":
            return -e / 2
        if self.kind == "grad_c":
            return e * (1 - Fraction(DIM) / q)
        raise ValueError(f"unknown scale factor kind {self.kind!r}")


@dataclass(frozen=True)
class Scaling:
    lhs: tuple[ScaleFactor, ...]
    rhs: tuple[ScaleFactor, ...]


@dataclass(frozen=True)
class LedgerEntry:
    id: str
    title: str
    alpha_lo: Fraction
    alpha_hi: Fraction | None            # None: unbounded above
    alpha_lo_strict: bool = True
    alpha_hi_strict: bool = True
    p_lo: Expr | None = None             # p window (open), as functions of a
    p_hi: Expr | None = None             # None with p_lo set: unbounded above
    checks: tuple[Check, ...] = ()
    scalings: tuple[Scaling, ...] = ()
    scan_alpha_hi: Fraction | None = None  # lattice cap for unbounded regions
    scan_p_span: Fraction = Fraction(5)    # lattice span for unbounded p windows
    note: str = ""

    @property
    def uses_p(self) -> bool:
        return self.p_lo is not None

    def contains(self, a: Fraction, p: Fraction | None) -> bool:
        if a < self.alpha_lo or (self.alpha_lo_strict and a == self.alpha_lo):
            return False
        if self.alpha_hi is not None:
            if a > self.alpha_hi or (self.alpha_hi_strict and a == self.alpha_hi):
                return False
        if self.uses_p:
            if p is None:
                raise ValueError(f"entry {self.id!r} requires a p value")
            lo = self.p_lo(a, None)
            if p <= lo:
                return False
            if self.p_hi is not None and p >= self.p_hi(a, None):
                return False
        return True


@dataclass
class CheckOutcome:
    name: str
    value: Fraction | None
    ok: bool | None
    note: str = ""


@dataclass
class CheckResult:
    entry_id: str
    alpha: Fraction
    p: Fraction | None
    status: str                      # "pass" | "fail" | "inapplicable"
    outcomes: list[CheckOutcome] = field(default_factory=list)


def check_entry(entry: LedgerEntry, alpha, p=None) -> CheckResult:
    """Evaluate every check of one entry at an exact rational point.

    Inside the region all expressions must evaluate (a vanishing denominator
    there raises CatalogError) and all bounds must hold.  Outside, the result
    is "inapplicable" and the checks are evaluated defensively as diagnostics.
    """
    a = _rational(alpha, "alpha")
    pv = None if p is None else _rational(p, "p")
    if entry.uses_p and pv is None:
        raise ValueError(f"entry {entry.id!r} requires a p value")
    inside = entry.contains(a, pv)
    outcomes = []
    ok_all = True
    for chk in entry.checks:
        try:
            v = chk.value(a, pv)
        except ZeroDivisionError:
            if inside:
                raise CatalogError(
                    f"entry {entry.id!r} check {chk.name!r}: denominator vanishes "
                    f"at interior point alpha={a}, p={pv}") from None
            outcomes.append(CheckOutcome(chk.name, None, None,
                                         "undefined (denominator vanishes)"))
            continue
        good = chk.holds(v)
        ok_all = ok_all and good
        outcomes.append(CheckOutcome(chk.name, v, good))
    if not inside:
        return CheckResult(entry.id, a, pv, "inapplicable", outcomes)
    return CheckResult(entry.id, a, pv, "pass" if ok_all else "fail", outcomes)


def scaling_check(entry: LedgerEntry) -> bool:
    """True iff every asserted inequality of the entry is dilation-consistent
    (identical lambda-exponents on both sides); vacuously true without one."""
    if not entry.scalings:
        return True
    for a, p in _identity_grid(entry, 21):
        for sc in entry.scalings:
            lhs = sum((f.lam_exponent(a, p) for f in sc.lhs), Fraction(0))
            rhs = sum((f.lam_exponent(a, p) for f in sc.rhs), Fraction(0))
            if lhs != rhs:
                return False
    return True


def _alpha_range(entry: LedgerEntry) -> tuple[Fraction, Fraction]:
    hi = entry.alpha_hi if entry.alpha_hi is not None else entry.scan_alpha_hi
    if hi is None:
        hi = entry.alpha_lo + 1
    return entry.alpha_lo, hi


def _p_window(entry: LedgerEntry, a: Fraction) -> tuple[Fraction, Fraction] | None:
    if not entry.uses_p:
        return None
    lo = entry.p_lo(a, None)
    hi = entry.p_hi(a, None) if entry.p_hi is not None else lo + entry.scan_p_span
    return lo, hi


def _identity_grid(entry: LedgerEntry, m: int):
    """Cartesian m x m rational grid in (a, s), mapped into the region."""
    a_lo, a_hi = _alpha_range(entry)
    points = []
    for i in range(1, m + 1):
        a = a_lo + (a_hi - a_lo) * Fraction(i, m + 1)
        win = _p_window(entry, a)
        if win is None:
            points.append((a, None))
            continue
        lo, hi = win
        if hi <= lo:
            continue
        for j in range(1, m + 1):
            points.append((a, lo + (hi - lo) * Fraction(j, m + 1)))
    return points


@dataclass
class ScanReport:
    entry_id: str
    interior_points: int
    interior_failures: list[tuple[Fraction, Fraction | None, str]]
    value_ranges: dict[str, tuple[Fraction, Fraction]]
    collar_points: int
    collar_inapplicable: int
    collar_bound_violations: int
    scaling_ok: bool

    @property
    def passed(self) -> bool:
        return (not self.interior_failures and self.scaling_ok
                and self.collar_inapplicable == self.collar_points)


def scan_region(entry: LedgerEntry, density: int = 100) -> ScanReport:
    """Lattice-verify an entry: interior points (plus closed endpoints) must
    all pass; a collar of points just outside each true boundary must come
    back inapplicable.  Value ranges are tracked per check, exactly.
    """
    a_lo, a_hi = _alpha_range(entry)
    step_a = (a_hi - a_lo) / (density + 1)
    alphas = [a_lo + step_a * i for i in range(1, density + 1)]
    if entry.alpha_hi is not None and not entry.alpha_hi_strict:
        alphas.append(entry.alpha_hi)
    if not entry.alpha_lo_strict:
        alphas.insert(0, entry.alpha_lo)

    interior: list[tuple[Fraction, Fraction | None]] = []
    for a in alphas:
        win = _p_window(entry, a)
        if win is None:
            interior.append((a, None))
            continue
        lo, hi = win
        if hi <= lo:
            continue
        step_p = (hi - lo) / (density + 1)
        interior.extend((a, lo + step_p * j) for j in range(1, density + 1))

    failures = []
    ranges: dict[str, tuple[Fraction, Fraction]] = {}
    for a, p in interior:
        res = check_entry(entry, a, p)
        if res.status != "pass":
            failures.extend((a, p, o.name) for o in res.outcomes if o.ok is False)
            if res.status == "inapplicable":
                failures.append((a, p, "<region/lattice mismatch>"))
        for o in res.outcomes:
            if o.value is None:
                continue
            cur = ranges.get(o.name)
            if cur is None:
                ranges[o.name] = (o.value, o.value)
            else:
                ranges[o.name] = (min(cur[0], o.value), max(cur[1], o.value))

    # collar: just outside every true (declared) boundary
    collar: list[tuple[Fraction, Fraction | None]] = []
    mid_p = None
    if entry.uses_p:
        mid_a = alphas[len(alphas) // 2]
        win = _p_window(entry, mid_a)
        mid_p = (win[0] + win[1]) / 2 if win else None
    for k in (1, 2, 3):
        a_out = entry.alpha_lo - step_a * k
        if a_out > 0:
            collar.append((a_out, mid_p))
        if entry.alpha_hi is not None:
            collar.append((entry.alpha_hi + step_a * k, mid_p))
    if entry.uses_p:
        for a in (alphas[0], alphas[len(alphas) // 2], alphas[-1]):
            win = _p_window(entry, a)
            if win is None or win[1] <= win[0]:
                continue
            lo, hi = win
            width = hi - lo
            for k in (1, 2, 3):
                collar.append((a, lo - width * Fraction(k, density + 1)))
                if entry.p_hi is not None:
                    collar.append((a, hi + width * Fraction(k, density + 1)))

    inapplicable = 0
    bound_violations = 0
    for a, p in collar:
        res = check_entry(entry, a, p)
        if res.status == "inapplicable":
            inapplicable += 1
            bound_violations += sum(1 for o in res.outcomes if o.ok is False)
    return ScanReport(
        entry_id=entry.id,
        interior_points=len(interior),
        interior_failures=failures,
        value_ranges=ranges,
        collar_points=len(collar),
        collar_inapplicable=inapplicable,
        collar_bound_violations=bound_violations,
        scaling_ok=scaling_check(entry),
    )


# ---------------------------------------------------------------------------
# the catalog

def _f(num, den=1) -> Fraction:
    return Fraction(num, den)


def _const(v: Fraction) -> Expr:
    return lambda a, p: v


def _lp(index: Expr, power: Expr) -> ScaleFactor:
    return ScaleFactor("lp", index, power)


def _grad_pow(power: Expr) -> ScaleFactor:
    # the s in ||grad n^s||_2 never enters the lambda bookkeeping
    return ScaleFactor("grad_pow", _const(Fraction(1)), power)


def _grad_c(index: Expr, power: Expr) -> ScaleFactor:
    return ScaleFactor("grad_c", index, power)


def _r2(a: Fraction, p: Fraction) -> Fraction:
    return p - a + 1


def _theta1(a, p):
    return (p + a) * (3 * p - 14 * a + 1) / (2 * (3 * p + 2 * a - 1))


def _theta2(a, p):
    return 3 * (p + a) * (p - 3 * a) / (2 * (1 + a) * (3 * p + 3 * a - 1))


def _theta3(a, p):
    r2 = _r2(a, p)
    return 3 * (p + a) * (p - 2 * a) / (r2 * (3 * p + 2 * a - 1))


def _theta4(a, p):
    r2 = _r2(a, p)
    return (p + a) * (5 * r2 - 6) / (r2 * (6 * p + 6 * a - 2))


def _theta5(a, p):
    r2 = _r2(a, p)
    return 3 * (r2 - 2) / (2 * r2)


def _r1(a, p):
    return (6 + 6 * a) / (5 + 14 * a - 3 * p)


def build_ledger() -> tuple[LedgerEntry, ...]:
    """The full catalog.  Ids are stable; tests and the CLI key on them."""
    zero, one, two = _f(0), _f(1), _f(2)
    entries = []

    # ---- degenerate-diffusion branch, low exponent window
    entries.append(LedgerEntry(
        id="case-i-low",
        title="entropy-route exponent windows on the low-diffusion branch",
        alpha_lo=_f(1, 6), alpha_hi=_f(1, 3), alpha_hi_strict=False,
        checks=(
            Check("one-minus-3a", lambda a, p: 1 - 3 * a,
                  lo=zero, lo_strict=False, hi=_f(2, 3)),
            Check("one-minus-2a", lambda a, p: 1 - 2 * a, lo=zero, hi=_f(2, 3)),
        ),
    ))
    entries.append(LedgerEntry(
        id="case-i-low-gn-2minus-alpha",
        title="interpolation of ||n||_{2-a}^{2-a} against the (1+a)/2 gradient power",
        alpha_lo=_f(1, 6), alpha_hi=_f(1, 3), alpha_hi_strict=False,
        checks=(
            Check("gn-exponent", lambda a, p: (6 - 6 * a) / (2 + 3 * a),
                  lo=_f(4, 3), lo_strict=False, hi=two),
            Check("mass-exponent", lambda a, p: (1 + 4 * a) / (2 + 3 * a),
                  lo=zero, hi=one),
        ),
        scalings=(Scaling(
            lhs=(_lp(lambda a, p: 2 - a, lambda a, p: 2 - a),),
            rhs=(_lp(_const(one), lambda a, p: (1 + 4 * a) / (2 + 3 * a)),
                 _grad_pow(lambda a, p: (6 - 6 * a) / (2 + 3 * a))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="case-i-low-gn-l2",
        title="interpolation of ||n||_2^2 against the (1+2a)/2 gradient power",
        alpha_lo=_f(1, 6), alpha_hi=_f(1, 3), alpha_hi_strict=False,
        checks=(
            Check("gn-exponent", lambda a, p: Fraction(6) / (2 + 6 * a),
                  lo=_f(3, 2), lo_strict=False, hi=two),
        ),
        scalings=(Scaling(
            lhs=(_lp(_const(two), _const(two)),),
            rhs=(_lp(_const(one), lambda a, p: (1 + 6 * a) / (2 + 6 * a)),
                 _grad_pow(lambda a, p: Fraction(6) / (2 + 6 * a))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="case-i-low-gn-6-5",
        title="interpolation of ||n||_{6/5}^2 for the fluid forcing pairing",
        alpha_lo=_f(1, 6), alpha_hi=_f(1, 3), alpha_hi_strict=False,
        checks=(
            Check("gn-exponent", lambda a, p: Fraction(2) / (2 + 6 * a),
                  lo=zero, hi=two),
            Check("q-upper-gap", lambda a, p: 3 + 6 * a - _f(6, 5), lo=zero),
        ),
        scalings=(Scaling(
            lhs=(_lp(_const(_f(6, 5)), _const(two)),),
            rhs=(_lp(_const(one), lambda a, p: (3 + 10 * a) / (2 + 6 * a)),
                 _grad_pow(lambda a, p: Fraction(2) / (2 + 6 * a))),
        ),),
    ))

    # ---- middle and high diffusion branches
    entries.append(LedgerEntry(
        id="case-i-mid",
        title="exponent windows on the middle branch",
        alpha_lo=_f(1, 3), alpha_hi=one, alpha_hi_strict=False,
        checks=(
            Check("one-minus-a", lambda a, p: 1 - a,
                  lo=zero, lo_strict=False, hi=_f(2, 3)),
            Check("gn-exponent", lambda a, p: Fraction(6) / (2 + 6 * a),
                  lo=zero, hi=two),
        ),
        scalings=(Scaling(
            lhs=(_lp(_const(two), _const(two)),),
            rhs=(_lp(_const(one), lambda a, p: (1 + 6 * a) / (2 + 6 * a)),
                 _grad_pow(lambda a, p: Fraction(6) / (2 + 6 * a))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="case-i-high",
        title="vorticity-route window on the high branch",
        alpha_lo=one, alpha_hi=None, scan_alpha_hi=_f(4),
        checks=(
            Check("vorticity-exponent", lambda a, p: Fraction(6) / (2 + 3 * a),
                  lo=zero, hi=two),
        ),
        note=("the companion L2 interpolation lacks a dilation-homogeneous "
              "exponent pair; only the exponent window is asserted here"),
    ))
    entries.append(LedgerEntry(
        id="case-i-high-gn",
        title="interpolation of ||n||_{1+a}^{1+a} on the high branch",
        alpha_lo=one, alpha_hi=two,
        checks=(
            Check("gn-exponent", lambda a, p: 6 * a / (2 + 3 * a),
                  lo=zero, hi=two),
        ),
        scalings=(Scaling(
            lhs=(_lp(lambda a, p: 1 + a, lambda a, p: 1 + a),),
            rhs=(_lp(_const(one), lambda a, p: (2 + 2 * a) / (2 + 3 * a)),
                 _grad_pow(lambda a, p: 6 * a / (2 + 3 * a))),
        ),),
        note=("region capped at 2 above by catalog policy; the window check "
              "itself holds for every positive a (6a < 4+6a), so the cap is "
              "conservative, not forced by the arithmetic"),
    ))
    entries.append(LedgerEntry(
        id="case-ii-iii-small-alpha",
        title="monotone-sensitivity branches: windows for arbitrarily small a",
        alpha_lo=zero, alpha_hi=_f(1, 6), alpha_hi_strict=False,
        checks=(
            Check("one-minus-a", lambda a, p: 1 - a, lo=zero, hi=one),
            Check("half-one-minus-a", lambda a, p: (1 - a) / 2,
                  lo=zero, hi=_f(1, 2)),
        ),
    ))

    # ---- L^p iteration, high-diffusion branch (a > 1/3)
    p_above_1a: Expr = lambda a, p: 1 + a
    entries.append(LedgerEntry(
        id="moser-high-windows",
        title="iteration absorption windows, high branch",
        alpha_lo=_f(1, 3), alpha_hi=None, scan_alpha_hi=_f(3),
        p_lo=p_above_1a,
        checks=(
            Check("delta-p",
                  lambda a, p: (2 * p * (3 * a - 1) + 3 * a) / (p * (1 + 3 * a)),
                  lo=zero, hi=two),
            Check("delta-p-prime",
                  lambda a, p: (6 * a - 1) / (1 + 3 * a) + 3 * a / (p * (1 + 3 * a)),
                  lo=zero, hi=two),
        ),
    ))
    entries.append(LedgerEntry(
        id="moser-high-gn-interp",
        title="two-endpoint interpolation feeding the high-branch iteration",
        alpha_lo=_f(1, 3), alpha_hi=None, scan_alpha_hi=_f(3),
        p_lo=p_above_1a,
        checks=(
            Check("kappa-interp",
                  lambda a, p: (1 + 2 * a) * (4 * p - 3 * a) / (2 * p * (1 + 3 * a)),
                  lo=zero, hi=two),
        ),
        scalings=(Scaling(
            lhs=(_lp(lambda a, p: 6 * p / (2 * p + 3 * a), _const(two)),),
            rhs=(_lp(_const(one),
                     lambda a, p: 2 - (1 + 2 * a) * (4 * p - 3 * a)
                     / (2 * p * (1 + 3 * a))),
                 _lp(lambda a, p: 3 + 6 * a,
                     lambda a, p: (1 + 2 * a) * (4 * p - 3 * a)
                     / (2 * p * (1 + 3 * a)))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="moser-high-interp-window",
        title="validity window of the interpolation index, high branch",
        alpha_lo=_f(1, 3), alpha_hi=None, scan_alpha_hi=_f(3),
        p_lo=p_above_1a,
        checks=(
            Check("q-above-one",
                  lambda a, p: (4 * p - 3 * a) / (2 * p + 3 * a), lo=zero),
            Check("q-below-sobolev",
                  lambda a, p: (3 + 6 * a) - 6 * p / (2 * p + 3 * a), lo=zero),
        ),
    ))
    entries.append(LedgerEntry(
        id="sobolev-grad-power",
        title="endpoint Sobolev control of ||n||_{3+6a} by the gradient power",
        alpha_lo=zero, alpha_hi=None, scan_alpha_hi=two,
        checks=(
            Check("embedding-exponent", lambda a, p: Fraction(2) / (1 + 2 * a),
                  lo=zero, hi=two),
        ),
        scalings=(Scaling(
            lhs=(_lp(lambda a, p: 3 + 6 * a, _const(one)),),
            rhs=(_grad_pow(lambda a, p: Fraction(2) / (1 + 2 * a)),),
        ),),
    ))

    # ---- L^p iteration, low-diffusion window (1/8 < a <= 1/3)
    low = dict(alpha_lo=_f(1, 8), alpha_hi=_f(1, 3), alpha_hi_strict=False)
    p_win = dict(p_lo=lambda a, p: 1 + a, p_hi=lambda a, p: 1 + 4 * a)
    entries.append(LedgerEntry(
        id="moser-window",
        title="iteration window bookkeeping on the low band: indices, "
              "conjugacy, and the five interpolation fractions",
        **low, **p_win,
        checks=(
            Check("r1-denominator", lambda a, p: 5 + 14 * a - 3 * p, lo=zero),
            Check("r1-window", _r1, lo=one, lo_strict=False, hi=_f(3)),
            Check("p-minus-3a", lambda a, p: p - 3 * a, lo=zero),
            Check("holder-conjugacy",
                  lambda a, p: (p - 3 * a) / (1 + a) + (1 + 4 * a - p) / (1 + a),
                  lo=one, hi=one, lo_strict=False, hi_strict=False),
            Check("r1-sobolev-index",
                  lambda a, p: 1 / _r1(a, p) - (1 + 4 * a - p) / (2 * (1 + a))
                  - _f(1, 3),
                  lo=zero, hi=zero, lo_strict=False, hi_strict=False),
            Check("r2-window", _r2, lo=two, hi=_f(3)),
            Check("theta1", _theta1, lo=zero, hi=one),
            Check("theta2", _theta2, lo=zero, hi=one),
            Check("theta3", _theta3, lo=zero, hi=one),
            Check("theta4", _theta4, lo=zero, hi=one),
            Check("theta5", _theta5, lo=zero, hi=one),
            Check("delta1", lambda a, p: 4 * _theta1(a, p) / (p + a),
                  lo=zero, hi=two),
            Check("delta2", lambda a, p: 4 * _theta2(a, p) / (p + a),
                  lo=zero, hi=two),
            Check("delta3", lambda a, p: 2 * _r2(a, p) * _theta3(a, p) / (p + a),
                  lo=zero, hi=two),
            Check("delta4", lambda a, p: 2 * _r2(a, p) * _theta4(a, p) / (p + a),
                  lo=zero, hi=two),
            Check("delta5", lambda a, p: _r2(a, p) * _theta5(a, p),
                  lo=zero, hi=two),
        ),
    ))
    entries.append(LedgerEntry(
        id="moser-window-gn-theta1",
        title="interpolation ||n||_{r1}^2 between L^{1+a} and L^{3p+3a}",
        **low, **p_win,
        checks=(
            Check("interp-index",
                  lambda a, p: 1 / _r1(a, p) - (1 - _theta1(a, p)) / (1 + a)
                  - _theta1(a, p) / (3 * p + 3 * a),
                  lo=zero, hi=zero, lo_strict=False, hi_strict=False),
        ),
        scalings=(Scaling(
            lhs=(_lp(_r1, _const(two)),),
            rhs=(_lp(lambda a, p: 1 + a, lambda a, p: 2 * (1 - _theta1(a, p))),
                 _lp(lambda a, p: 3 * p + 3 * a, lambda a, p: 2 * _theta1(a, p))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="moser-window-gn-theta2",
        title="interpolation at the lowered index 6 r1/(6+r1) against L^1",
        **low, **p_win,
        checks=(
            Check("q-above-one", lambda a, p: _r1(a, p) - _f(6, 5), lo=zero),
            Check("interp-index",
                  lambda a, p: (6 + _r1(a, p)) / (6 * _r1(a, p))
                  - (1 - _theta2(a, p)) - _theta2(a, p) / (3 * p + 3 * a),
                  lo=zero, hi=zero, lo_strict=False, hi_strict=False),
        ),
        scalings=(Scaling(
            lhs=(_lp(lambda a, p: 6 * _r1(a, p) / (6 + _r1(a, p)), _const(two)),),
            rhs=(_lp(_const(one), lambda a, p: 2 * (1 - _theta2(a, p))),
                 _lp(lambda a, p: 3 * p + 3 * a, lambda a, p: 2 * _theta2(a, p))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="moser-window-gn-theta3",
        title="interpolation ||n||_{r2}^{r2} between L^{1+a} and L^{3p+3a}",
        **low, **p_win,
        checks=(
            Check("interp-index",
                  lambda a, p: 1 / _r2(a, p) - (1 - _theta3(a, p)) / (1 + a)
                  - _theta3(a, p) / (3 * p + 3 * a),
                  lo=zero, hi=zero, lo_strict=False, hi_strict=False),
        ),
        scalings=(Scaling(
            lhs=(_lp(_r2, _r2),),
            rhs=(_lp(lambda a, p: 1 + a,
                     lambda a, p: _r2(a, p) * (1 - _theta3(a, p))),
                 _lp(lambda a, p: 3 * p + 3 * a,
                     lambda a, p: _r2(a, p) * _theta3(a, p))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="moser-window-gn-theta4",
        title="interpolation at the lowered index 6 r2/(6+r2) against L^1",
        **low, **p_win,
        checks=(
            Check("interp-index",
                  lambda a, p: (6 + _r2(a, p)) / (6 * _r2(a, p))
                  - (1 - _theta4(a, p)) - _theta4(a, p) / (3 * p + 3 * a),
                  lo=zero, hi=zero, lo_strict=False, hi_strict=False),
        ),
        scalings=(Scaling(
            lhs=(_lp(lambda a, p: 6 * _r2(a, p) / (6 + _r2(a, p)), _r2),),
            rhs=(_lp(_const(one), lambda a, p: _r2(a, p) * (1 - _theta4(a, p))),
                 _lp(lambda a, p: 3 * p + 3 * a,
                     lambda a, p: _r2(a, p) * _theta4(a, p))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="moser-window-gn-theta5",
        title="gradient-of-c interpolation ||grad c||_{r2}^{r2} between "
              "L^2 and L^6",
        **low, **p_win,
        checks=(
            Check("interp-index",
                  lambda a, p: 1 / _r2(a, p) - (1 - _theta5(a, p)) / 2
                  - _theta5(a, p) / 6,
                  lo=zero, hi=zero, lo_strict=False, hi_strict=False),
        ),
        scalings=(Scaling(
            lhs=(_grad_c(_r2, _r2),),
            rhs=(_grad_c(_const(two),
                         lambda a, p: _r2(a, p) * (1 - _theta5(a, p))),
                 _grad_c(_const(Fraction(6)),
                         lambda a, p: _r2(a, p) * _theta5(a, p))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="moser-low-vorticity",
        title="vorticity-route interpolation of ||n||_2^2 on the low band",
        **low,
        checks=(
            Check("gn-exponent", lambda a, p: (6 - 6 * a) / (2 + 5 * a),
                  lo=zero, hi=two),
            Check("mass-exponent",
                  lambda a, p: (1 + a) * (1 + 6 * a) / (2 + 5 * a),
                  lo=zero, hi=two),
        ),
        scalings=(Scaling(
            lhs=(_lp(_const(two), _const(two)),),
            rhs=(_lp(lambda a, p: 1 + a,
                     lambda a, p: (1 + a) * (1 + 6 * a) / (2 + 5 * a)),
                 _grad_pow(lambda a, p: (6 - 6 * a) / (2 + 5 * a))),
        ),),
    ))
    entries.append(LedgerEntry(
        id="moser-low-r1-range",
        title="sub-window of the low band where r1 stays in [2, 6]",
        **low,
        p_lo=lambda a, p: (2 + 11 * a) / 3, p_hi=lambda a, p: 1 + 4 * a,
        checks=(
            Check("r1-sub-range", _r1,
                  lo=two, lo_strict=False, hi=Fraction(6), hi_strict=False),
        ),
    ))
    entries.append(LedgerEntry(
        id="moser-low-p0",
        title="the collapsing start index p0 = 3/2 - 3a/4 of the second stage",
        **low,
        checks=(
            Check("p0-above-one", lambda a, p: _f(1, 2) - 3 * a / 4,
                  lo=zero, hi=_f(1, 2)),
            Check("p0-inside-window", lambda a, p: 19 * a / 4 - _f(1, 2),
                  lo=zero),
            Check("collapse-identity",
                  lambda a, p: (12 - 4 * (_f(3, 2) - 3 * a / 4))
                  / (2 * (_f(3, 2) - 3 * a / 4) + 3 * a),
                  lo=two, hi=two, lo_strict=False, hi_strict=False),
        ),
    ))
    entries.append(LedgerEntry(
        id="moser-low-p0-tail",
        title="second-stage absorption windows seeded at p0, low band",
        **low,
        p_lo=lambda a, p: 1 + a,
        checks=(
            Check("second-delta-p",
                  lambda a, p: 3 * a * (2 - a) / (p * (2 + a)), lo=zero, hi=two),
            Check("second-delta-p-prime",
                  lambda a, p: (16 * a - 2) / (2 + 5 * a)
                  + (6 * a + 6 * a * a) / (p * (2 + 5 * a)),
                  lo=zero, hi=two),
            Check("interp-above-p0",
                  lambda a, p: 6 * p / (2 * p + 3 * a) - (_f(3, 2) - 3 * a / 4),
                  lo=zero),
            Check("interp-below-sobolev",
                  lambda a, p: (3 * (_f(3, 2) - 3 * a / 4) + 3 * a)
                  - 6 * p / (2 * p + 3 * a),
                  lo=zero),
        ),
    ))
    ids = [e.id for e in entries]
    assert len(ids) == len(set(ids)), "duplicate catalog ids"
    return tuple(entries)


def get_entry(entry_id: str, catalog=None) -> LedgerEntry:
    catalog = build_ledger() if catalog is None else catalog
    for e in catalog:
        if e.id == entry_id:
            return e
    raise KeyError(f"no catalog entry {entry_id!r}")
