"""Sturm-Liouville weights from the Pearson equation (pa)' = pb.

For a second-order operator a(x) y'' + b(x) y' the weight making it
formally self-adjoint satisfies (pa)' = pb, i.e.

    p = exp( integral (b - a') / a dx )

The integrand is a proper rational function with denominator a, so exact
partial fractions give p in closed form.  Supported leading coefficients:

    two distinct rational roots r1 < r2   p = |x-r1|^e1 |x-r2|^e2 with
                                          e_i = b(r_i)/a'(r_i) - 1,
                                          on (r1, r2)
    c*(x^2+1)                             p = (x^2+1)^e exp(h*arctan x) with
                                          e = (b1-2c)/(2c), h = b0/c, on R
    linear, root r                        p = |x-r|^(b(r)/a1 - 1) exp((b1/a1) x),
                                          half line starting at r
    nonzero constant c                    p = exp((b1/2c) x^2 + (b0/c) x), on R

A quadratic with a double root (the x^2 normal form) or with irrational
roots is rejected: the former is deliberately unsupported, the latter
should be affinely normalized first.

Weights are stored as symbolic factor collections with exact rational
exponents and are projectively meaningful only; the constant is fixed to 1.
All evaluation is restricted to the interior of the interval of definition,
where |x - r| factors have constant sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ratpoly import Poly, rational_sqrt

__all__ = [
    "UnsupportedLeadingCoefficient",
    "PowerFactor",
    "Interval",
    "WeightExpr",
    "derive_weight",
    "pearson_check",
    "integrability",
    "boundary_vanishing",
    "PearsonVerdict",
    "IntegrabilityVerdict",
    "BoundaryVerdict",
]


class UnsupportedLeadingCoefficient(ValueError):
    """Leading coefficient outside the supported Pearson shapes."""


@dataclass(frozen=True)
class PowerFactor:
    """One factor |x - root|^exponent."""

    root: Fraction
    exponent: Fraction


@dataclass(frozen=True)
class Interval:
    """Open interval; None endpoint means unbounded on that side."""

    lo: Fraction | None
    hi: Fraction | None
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def finite(self) -> bool:
        return self.lo is not None and self.hi is not None

    def sample_floats(self, count: int) -> list[float]:
        """Deterministic interior sample points (for numeric spot checks)."""
        if count < 1:
            return []
        ticks = [(i + 1) / (count + 1) for i in range(count)]
        if self.finite:
            lo, hi = float(self.lo), float(self.hi)
            return [lo + (hi - lo) * t for t in ticks]
        if self.lo is None and self.hi is None:
            return [math.tan(math.pi * (t - 0.5)) for t in ticks]
        if self.hi is None:
            return [float(self.lo) + math.tan(math.pi * t / 2) for t in ticks]
        return [float(self.hi) - math.tan(math.pi * t / 2) for t in ticks]

    def describe(self) -> str:
        lo = str(self.lo) if self.lo is not None else "-inf"
        hi = str(self.hi) if self.hi is not None else "+inf"
        return f"({lo}, {hi})"

    def to_json(self) -> dict:
        return {
            "lo": str(self.lo) if self.lo is not None else None,
            "hi": str(self.hi) if self.hi is not None else None,
        }


@dataclass(frozen=True)
class WeightExpr:
    """Symbolic weight: constant * prod |x-r|^e * (x^2+1)^q * e^E(x) * e^(h*arctan x)."""

    constant: Fraction = Fraction(1)
    power_factors: tuple[PowerFactor, ...] = ()
    quad_exp: Fraction | None = None
    exp_poly: Poly = field(default_factory=Poly)
    arctan_coeff: Fraction = Fraction(0)
    interval: Interval = Interval(Fraction(-1), Fraction(1))

    def power_exponent_at(self, root: Fraction) -> Fraction:
        return sum(
            (pf.exponent for pf in self.power_factors if pf.root == root), Fraction(0)
        )

    def log_eval(
        self, x: float, d_lo: float | None = None, d_hi: float | None = None
    ) -> float:
        """log p(x) for x in the interval interior.

        ``d_lo``/``d_hi`` are accurate distances to the interval endpoints;
        when given, power factors rooted at an endpoint use them instead of
        the cancellation-prone x - root.  Can return -inf/+inf when a
        factor under/overflows; callers pair this with quadrature weights
        that vanish fast enough.
        """
        out = math.log(self.constant)
        for pf in self.power_factors:
            if d_lo is not None and self.interval.lo is not None and pf.root == self.interval.lo:
                dist = d_lo
            elif d_hi is not None and self.interval.hi is not None and pf.root == self.interval.hi:
                dist = d_hi
            else:
                dist = abs(x - float(pf.root))
            out += float(pf.exponent) * math.log(dist)
        if self.quad_exp is not None and self.quad_exp != 0:
            xsq = x * x
            log_quad = math.log1p(xsq) if math.isfinite(xsq) else 2.0 * math.log(abs(x))
            out += float(self.quad_exp) * log_quad
        if not self.exp_poly.is_zero():
            out += self.exp_poly.eval_float(x)
        if self.arctan_coeff != 0:
            out += float(self.arctan_coeff) * math.atan(x)
        return out

    def eval_float(self, x: float) -> float:
        return math.exp(self.log_eval(x))

    def dlog(self) -> tuple[Poly, Poly]:
        """(numerator, denominator) of p'/p as an exact rational function."""
        den = Poly.one()
        for pf in self.power_factors:
            den = den * Poly((-pf.root, 1))
        quad = Poly((1, 0, 1))
        has_quad = (self.quad_exp is not None and self.quad_exp != 0) or self.arctan_coeff != 0
        if has_quad:
            den = den * quad
        num = Poly()
        for pf in self.power_factors:
            term = Poly((pf.exponent,))
            for other in self.power_factors:
                if other is not pf:
                    term = term * Poly((-other.root, 1))
            if has_quad:
                term = term * quad
            num = num + term
        if has_quad:
            q = self.quad_exp if self.quad_exp is not None else Fraction(0)
            term = Poly((self.arctan_coeff, 2 * q))
            for pf in self.power_factors:
                term = term * Poly((-pf.root, 1))
            num = num + term
        if not self.exp_poly.is_zero():
            num = num + self.exp_poly.derivative() * den
        return num, den

    def formula(self, var: str = "x") -> str:
        parts: list[str] = []
        if self.constant != 1:
            parts.append(str(self.constant))
        for pf in self.power_factors:
            base = f"|{var} - {pf.root}|" if pf.root != 0 else f"|{var}|"
            if pf.root < 0:
                base = f"|{var} + {-pf.root}|"
            parts.append(f"{base}^({pf.exponent})")
        if self.quad_exp is not None and self.quad_exp != 0:
            parts.append(f"({var}^2+1)^({self.quad_exp})")
        if not self.exp_poly.is_zero():
            parts.append(f"exp({self.exp_poly.pretty(var)})")
        if self.arctan_coeff != 0:
            parts.append(f"exp({self.arctan_coeff}*arctan({var}))")
        return " * ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "constant": str(self.constant),
            "power_factors": [
                {"root": str(pf.root), "exp": str(pf.exponent)}
                for pf in self.power_factors
            ],
            "quad_exp": str(self.quad_exp) if self.quad_exp is not None else None,
            "exp_poly": self.exp_poly.to_strings(),
            "arctan_coeff": str(self.arctan_coeff),
            "interval": self.interval.to_json(),
            "formula": self.formula(),
        }


def derive_weight(a: Poly, b: Poly) -> WeightExpr:
    """Solve (pa)' = pb for the weight, exactly.  See the module docstring
    for the supported shapes of a."""
    if a.is_zero():
        raise UnsupportedLeadingCoefficient("leading coefficient is zero")
    if a.degree > 2:
        raise UnsupportedLeadingCoefficient("weight derivation requires deg(a) <= 2")
    if b.degree > 1:
        raise ValueError("weight derivation requires deg(b) <= 1")

    if a.degree == 2:
        a2, a1, a0 = a.coeff(2), a.coeff(1), a.coeff(0)
        disc = a1 * a1 - 4 * a2 * a0
        if disc == 0:
            raise UnsupportedLeadingCoefficient(
                "double root (x^2 normal form): weight not developed for this shape"
            )
        if disc > 0:
            root = rational_sqrt(disc)
            if root is None:
                raise UnsupportedLeadingCoefficient(
                    f"irrational roots (discriminant {disc}); normalize first"
                )
            r1 = (-a1 - root) / (2 * a2)
            r2 = (-a1 + root) / (2 * a2)
            if r1 > r2:
                r1, r2 = r2, r1
            da = a.derivative()
            factors = tuple(
                PowerFactor(r, b(r) / da(r) - 1)
                for r in (r1, r2)
                if b(r) / da(r) - 1 != 0
            )
            return WeightExpr(power_factors=factors, interval=Interval(r1, r2))
        # negative discriminant: accept only c*(x^2 + 1)
        if a1 != 0 or a0 != a2:
            raise UnsupportedLeadingCoefficient(
                "complex-root quadratic is not c*(x^2+1); normalize first"
            )
        c = a2
        b1, b0 = b.coeff(1), b.coeff(0)
        return WeightExpr(
            quad_exp=(b1 - 2 * c) / (2 * c),
            arctan_coeff=b0 / c,
            interval=Interval(None, None),
        )

    if a.degree == 1:
        a1, a0 = a.coeff(1), a.coeff(0)
        r = -a0 / a1
        b1, b0 = b.coeff(1), b.coeff(0)
        exponent = b(r) / a1 - 1
        factors = (PowerFactor(r, exponent),) if exponent != 0 else ()
        exp_poly = Poly((0, b1 / a1))
        # pick the half line on which the exponential factor decays
        if b1 / a1 > 0:
            interval = Interval(None, r)
        else:
            interval = Interval(r, None)
        return WeightExpr(power_factors=factors, exp_poly=exp_poly, interval=interval)

    # constant a
    c = a.coeff(0)
    b1, b0 = b.coeff(1), b.coeff(0)
    return WeightExpr(
        exp_poly=Poly((0, b0 / c, b1 / (2 * c))), interval=Interval(None, None)
    )


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class PearsonVerdict:
    ok: bool
    symbolic_zero: bool
    max_residual: float
    samples: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "symbolic_zero": self.symbolic_zero,
            "max_residual": self.max_residual,
            "samples": self.samples,
        }


@dataclass(frozen=True)
class IntegrabilityVerdict:
    integrable: bool
    conditions: tuple[tuple[str, bool, str], ...]  # (location, ok, detail)

    def to_json(self) -> dict:
        return {
            "integrable": self.integrable,
            "conditions": [
                {"at": loc, "ok": ok, "detail": detail}
                for loc, ok, detail in self.conditions
            ],
        }


@dataclass(frozen=True)
class BoundaryVerdict:
    vanishes: bool
    conditions: tuple[tuple[str, bool, str], ...]

    def to_json(self) -> dict:
        return {
            "vanishes": self.vanishes,
            "conditions": [
                {"at": loc, "ok": ok, "detail": detail}
                for loc, ok, detail in self.conditions
            ],
        }


def pearson_check(weight: WeightExpr, a: Poly, b: Poly) -> PearsonVerdict:
    """Verify (pa)' = pb for the symbolic weight.

    The identity divided by p is (a * p'/p + a' - b) = 0, a rational
    function with polynomial denominator; clearing it gives an exact
    polynomial identity.  A 20-point numeric residual check runs as well:
    since p > 0 on the interior, (pa)' - pb is compared to zero per unit
    weight, i.e. |a*(p'/p) + a' - b| relative to the size of its terms,
    which keeps growing exponential factors from overflowing the check.
    """
    num, den = weight.dlog()
    residual_poly = a * num + (a.derivative() - b) * den
    symbolic_zero = residual_poly.is_zero()

    xs = weight.interval.sample_floats(20)
    max_resid = 0.0
    a_d = a.derivative()
    for x in xs:
        den_f = den.eval_float(x)
        if den_f == 0:
            continue
        pa_prime_over_p = a_d.eval_float(x) + a.eval_float(x) * num.eval_float(x) / den_f
        pb_over_p = b.eval_float(x)
        scale = 1.0 + abs(pa_prime_over_p) + abs(pb_over_p)
        max_resid = max(max_resid, abs(pa_prime_over_p - pb_over_p) / scale)
    ok = symbolic_zero and max_resid < 1e-10
    return PearsonVerdict(
        ok=ok, symbolic_zero=symbolic_zero, max_residual=max_resid, samples=len(xs)
    )


def _exp_decays_at(exp_poly: Poly, toward_plus: bool) -> bool | None:
    """Does e^E(x) decay toward +inf (or -inf)?  None when E = 0."""
    if exp_poly.is_zero():
        return None
    lead = exp_poly.leading()
    deg = int(exp_poly.degree)
    if not toward_plus and deg % 2 == 1:
        lead = -lead
    return lead < 0


def integrability(
    weight: WeightExpr, interval: Interval | None = None, total_degree: int = 0
) -> IntegrabilityVerdict:
    """Is (polynomial of degree total_degree) * weight integrable over the interval?

    Finite endpoints demand every power exponent there exceed -1; infinite
    endpoints demand either a decaying exponential factor or a total
    asymptotic power below -1 (the arctan factor is bounded and plays no
    role).
    """
    iv = interval if interval is not None else weight.interval
    conditions: list[tuple[str, bool, str]] = []

    roots = sorted({pf.root for pf in weight.power_factors})
    for r in roots:
        inside_lo = iv.lo is None or iv.lo <= r
        inside_hi = iv.hi is None or r <= iv.hi
        if not (inside_lo and inside_hi):
            continue
        e = weight.power_exponent_at(r)
        ok = e > -1
        conditions.append(
            (f"x={r}", ok, f"power exponent {e} {'>' if ok else '<='} -1")
        )

    quad = 2 * weight.quad_exp if weight.quad_exp is not None else Fraction(0)
    power_sum = sum((pf.exponent for pf in weight.power_factors), Fraction(0))
    for toward_plus, present in ((False, iv.lo is None), (True, iv.hi is None)):
        if not present:
            continue
        name = "+inf" if toward_plus else "-inf"
        decay = _exp_decays_at(weight.exp_poly, toward_plus)
        if decay is True:
            conditions.append((name, True, "exponential factor decays"))
        elif decay is False:
            conditions.append((name, False, "exponential factor grows"))
        else:
            asym = total_degree + power_sum + quad
            ok = asym < -1
            conditions.append(
                (name, ok, f"asymptotic power {asym} {'<' if ok else '>='} -1")
            )

    return IntegrabilityVerdict(
        integrable=all(ok for _, ok, _ in conditions), conditions=tuple(conditions)
    )


def boundary_vanishing(
    weight: WeightExpr,
    a: Poly,
    interval: Interval | None = None,
    deg_pair: tuple[int, int] = (0, 0),
    funcs: tuple[Poly, Poly] | None = None,
) -> BoundaryVerdict:
    """Does the boundary term p*a*(u v' - u' v) vanish at the endpoints?

    Finite endpoint r: the power exponent of p*a there must be positive; if
    it is exactly zero the term still vanishes when both candidate
    functions (if supplied) vanish at r.  Infinite endpoint: a decaying
    exponential factor wins, otherwise the total asymptotic power of
    p*a*(u v' - u' v), namely deg(a) + m + n - 1 + (power and quadratic
    exponent sums), must be negative.
    """
    iv = interval if interval is not None else weight.interval
    m, n = deg_pair
    conditions: list[tuple[str, bool, str]] = []

    for endpoint in (iv.lo, iv.hi):
        if endpoint is None:
            continue
        # multiplicity of the endpoint as a root of a
        mult = 0
        reduced = a
        while not reduced.is_zero() and reduced(endpoint) == 0:
            reduced = reduced.divide_linear(endpoint)
            mult += 1
        e = weight.power_exponent_at(endpoint) + mult
        if e > 0:
            conditions.append((f"x={endpoint}", True, f"p*a exponent {e} > 0"))
        elif e == 0 and funcs is not None:
            u, v = funcs
            ok = u(endpoint) == 0 and v(endpoint) == 0
            detail = (
                "p*a finite; both functions vanish here"
                if ok
                else "p*a finite and a function is nonzero here"
            )
            conditions.append((f"x={endpoint}", ok, detail))
        else:
            conditions.append(
                (f"x={endpoint}", False, f"p*a exponent {e} <= 0")
            )

    quad = 2 * weight.quad_exp if weight.quad_exp is not None else Fraction(0)
    power_sum = sum((pf.exponent for pf in weight.power_factors), Fraction(0))
    deg_a = int(a.degree) if not a.is_zero() else 0
    for toward_plus, present in ((False, iv.lo is None), (True, iv.hi is None)):
        if not present:
            continue
        name = "+inf" if toward_plus else "-inf"
        decay = _exp_decays_at(weight.exp_poly, toward_plus)
        if decay is True:
            conditions.append((name, True, "exponential factor decays"))
        elif decay is False:
            conditions.append((name, False, "exponential factor grows"))
        else:
            asym = deg_a + m + n - 1 + power_sum + quad
            ok = asym < 0
            conditions.append(
                (name, ok, f"boundary term asymptotic power {asym} {'<' if ok else '>='} 0")
            )

    return BoundaryVerdict(
        vanishes=all(ok for _, ok, _ in conditions), conditions=tuple(conditions)
    )
