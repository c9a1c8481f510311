"""Closed forms and recursions for LG on twist knots, 2-bridge links and K(2, -1, r).

Skein coefficients are Rat2 values; invariants are reduced to Laurent2 with
``exact_div`` before they are returned.  A tilde on a coefficient (``a~``)
means the substitution t0 -> t0^-1, t1 -> t1^-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import FamilySpecError, NotAKnot, SpanViolation, Unsupported
from .poly2 import ONE, T0, T1, ZERO, Laurent2, Rat2

__all__ = [
    "TwoBridgeCode",
    "PretzelCode",
    "FamilySpec",
    "half_twist_coeffs",
    "full_twist_coeffs",
    "a1",
    "lg_two_bridge",
    "lg_twist",
    "lg_pretzel_2m1r",
    "pretzel_normal_form",
    "pretzel_genus_case",
    "family_genus",
    "parse_family",
    "lg_family",
]

U = T0 * T1
_T0I = T0 ** -1
_T1I = T1 ** -1


# ---------------------------------------------------------------------------
# codes


@dataclass(frozen=True)
class TwoBridgeCode:
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if not self.b:
            raise FamilySpecError("a 2-bridge code needs at least one entry")
        if any(x <= 0 for x in self.b):
            raise FamilySpecError(f"2-bridge entries must be positive, got {self.b}")

    @property
    def m(self) -> int:
        return len(self.b)

    def __str__(self) -> str:
        return "2bridge:" + ",".join(map(str, self.b))


@dataclass(frozen=True)
class PretzelCode:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if sum(1 for x in (self.p, self.q, self.r) if x % 2 == 0) > 1:
            raise NotAKnot(f"pretzel {self.p},{self.q},{self.r} has more than one even parameter")

    def __str__(self) -> str:
        return f"pretzel:{self.p},{self.q},{self.r}"


@dataclass(frozen=True)
class FamilySpec:
    """Parsed ``twist:n``, ``2bridge:b1,...`` or ``pretzel:p,q,r``."""

    kind: str
    code: object

    def __str__(self) -> str:
        if self.kind == "twist":
            return f"twist:{self.code}"
        return str(self.code)


_SPEC = re.compile(r"^\s*(twist|2bridge|pretzel)\s*:\s*(.*?)\s*$")


def parse_family(text: str) -> FamilySpec:
    m = _SPEC.match(text)
    if not m:
        raise FamilySpecError(f"unknown family spec {text!r}; use twist:n, 2bridge:b1,... or pretzel:p,q,r")
    kind, body = m.groups()
    try:
        nums = tuple(int(x) for x in body.split(","))
    except ValueError as exc:
        raise FamilySpecError(f"non-integer parameter in {text!r}") from exc
    if kind == "twist":
        if len(nums) != 1:
            raise FamilySpecError("twist takes exactly one integer")
        return FamilySpec("twist", nums[0])
    if kind == "2bridge":
        return FamilySpec("2bridge", TwoBridgeCode(nums))
    if len(nums) != 3:
        raise FamilySpecError("pretzel takes exactly three integers")
    return FamilySpec("pretzel", PretzelCode(*nums))


# ---------------------------------------------------------------------------
# skein coefficients


def _mono_pow(x: Laurent2, n: int) -> Laurent2:
    return x ** n


def half_twist_coeffs(n: int) -> tuple[Rat2, Rat2, Rat2]:
    """(x(n), y(n), z(n)) for n half twists, exact over a common denominator."""
    sign = -1 if n % 2 else 1
    d0 = (T0 + 1) * (T1 + 1)
    d1 = (T0 + 1) * (T0 - T1)
    d2 = (T1 + 1) * (T1 - T0)
    p0, p1 = _mono_pow(T0, n), _mono_pow(T1, n)
    x = Rat2(sign) / d0 + Rat2(p0) / d1 + Rat2(p1) / d2
    y = Rat2((T0 + T1) * sign) / d0 + Rat2(p0 * (T1 - 1)) / d1 + Rat2(p1 * (T0 - 1)) / d2
    z = Rat2(U * sign) / d0 - Rat2(p0 * T1) / d1 - Rat2(p1 * T0) / d2
    return x.reduce(), y.reduce(), z.reduce()


@lru_cache(maxsize=None)
def a1(n: int) -> Laurent2:
    """(u^n - 1)/(u - 1), u = t0 t1, as the geometric sum (valid for n < 0)."""
    if n >= 0:
        return sum((U ** k for k in range(n)), ZERO)
    return -sum((U ** k for k in range(n, 0)), ZERO)


def full_twist_coeffs(n: int, relation: str = "rel3") -> tuple[Rat2, Rat2, Rat2]:
    """Coefficients of the n-full-twist skein relations.

    ``rel3`` gives (a1(n), a2(n), a3(n)); ``rel2`` gives
    (a1(n), 1 - a1(n), 2 (t0-1)(t1-1)/(t0 t1 - 1) * (n - a1(n))).
    """
    g = a1(n)
    q = (T0 - 1) * (T1 - 1)
    if relation == "rel2":
        third = Rat2(q * 2 * (Laurent2.const(n) - g), U - 1)
        return Rat2(g), Rat2(ONE - g), third.reduce()
    if relation != "rel3":
        raise ValueError(f"unknown relation {relation!r}")
    a2 = Rat2(q * 2 * n - g * ((U + 1) * q + (U - 1)), U - 1)
    a3 = q * g + 1
    return Rat2(g), a2.reduce(), Rat2(a3)


# ---------------------------------------------------------------------------
# 2-bridge links


def lg_two_bridge(code: TwoBridgeCode | tuple[int, ...] | list[int]) -> Laurent2:
    """LG(D(b1, ..., bm)) by the full-twist recursion on the last entry.

    Even length uses a_i(b_m), odd length the tilde coefficients.  Raises
    SpanViolation if the result does not have span 2m.
    """
    if not isinstance(code, TwoBridgeCode):
        code = TwoBridgeCode(tuple(code))
    memo: dict[tuple[int, ...], Laurent2] = {}

    def coeffs(length: int, bm: int) -> tuple[Laurent2, Laurent2, Laurent2]:
        c = tuple(x.to_laurent() for x in full_twist_coeffs(bm, "rel3"))
        if length % 2:
            c = tuple(x.invert() for x in c)
        return c

    def lg(b: tuple[int, ...]) -> Laurent2:
        if not b:
            return ONE
        if b[-1] == 0:
            # D(..., b_{k-1}, 0) = D(..., b_{k-2}); D(0) is the 2-component unlink
            return ZERO if len(b) == 1 else lg(b[:-2])
        if b in memo:
            return memo[b]
        c1, c2, c3 = coeffs(len(b), b[-1])
        if len(b) == 1:
            val = c1 + c2
        else:
            shorter = b[:-2] + (b[-2] - 1,)
            val = c1 * lg(shorter) + c2 * lg(b[:-1]) + c3 * lg(b[:-2])
        memo[b] = val
        return val

    result = lg(code.b)
    if result.is_zero() or result.span() != 2 * code.m:
        got = 0 if result.is_zero() else result.span()
        raise SpanViolation(f"span of LG({code}) is {got}, expected {2 * code.m}")
    return result


# ---------------------------------------------------------------------------
# twist knots


def lg_twist(n: int) -> Laurent2:
    """LG of the twist knot K_n (K_0 unknot, K_1 trefoil, K_2 = 5_2)."""
    if n == 0:
        return ONE
    q = (T0 - 1) * (T1 - 1)
    if n >= 1:
        ui = U.invert()
        at = a1(n - 1).invert()
        qi2 = q.invert() * q.invert()
        head = (
            -(_T0I ** 2) * _T1I - _T0I * _T1I ** 2 + _T0I ** 2 + 2 * _T0I * _T1I
            + _T1I ** 2 - _T0I - _T1I + 1
        )
        middle = Rat2(qi2 * ((ui + 1) * at - 2 * (n - 1)), ui - 1).to_laurent()
        return head * (ui * at + 1) + middle + at * qi2 - ui * at
    k = -n
    g = a1(k)
    inner = g + Rat2(q * (g * (U + 1) + 2 * n), U - 1).to_laurent()
    return q.invert() * inner + q * g + 1


# ---------------------------------------------------------------------------
# pretzel knots


def lg_pretzel_2m1r(r: int) -> Laurent2:
    """LG(K(2, -1, r)) for odd r >= 1; r <= -1 is not available in closed form."""
    if r % 2 == 0:
        raise FamilySpecError(f"K(2, -1, r) needs odd r, got {r}")
    if r < 0:
        raise Unsupported(f"no closed form for K(2, -1, {r}) with r <= -1")
    if r in (1, 3):
        return ONE
    num = (
        (T0 - T1) * (U + 1)
        - T0 ** (r - 1) * (T1 - 1) * (T1 + 1)
        + T1 ** (r - 1) * (T0 - 1) * (T0 + 1)
    )
    den = (T0 + 1) * (T1 + 1) * (T0 - T1)
    result = Rat2(num, den).to_laurent()
    if result.span() != 2 * r - 6:
        raise SpanViolation(f"span of LG(K(2,-1,{r})) is {result.span()}, expected {2 * r - 6}")
    return result


def pretzel_normal_form(code: PretzelCode) -> tuple[PretzelCode, tuple[str, ...]]:
    """Rotate and mirror into the frame p >= 0 with q, r odd.

    The even parameter (if any) is rotated to the front; the code is then
    mirrored when p < 0.  With all parameters odd the first rotation with
    p >= 0 is used, mirroring only if none exists.
    """
    vals = (code.p, code.q, code.r)
    steps: list[str] = []
    evens = [k for k, v in enumerate(vals) if v % 2 == 0]
    if evens:
        k = evens[0]
    else:
        k = next((k for k, v in enumerate(vals) if v >= 0), 0)
    if k:
        vals = vals[k:] + vals[:k]
        steps.append(f"rotate:{k}")
    if vals[0] < 0:
        vals = tuple(-v for v in vals)
        steps.append("mirror")
    return PretzelCode(*vals), tuple(steps)


def _is_trivial_pair(q: int, r: int) -> bool:
    return (q, r) in ((1, -1), (-1, 1))


def pretzel_genus_case(code: PretzelCode) -> tuple[int, int]:
    """(case number, genus) in the five-case table for a normalized code."""
    p, q, r = code.p, code.q, code.r
    if p < 0 or q % 2 == 0 or r % 2 == 0:
        raise FamilySpecError(f"{code} is not in normal form (p >= 0, q and r odd)")
    if p % 2:
        rotations = ((p, q, r), (q, r, p), (r, p, q))
        if any(_is_trivial_pair(b, c) for _, b, c in rotations):
            return 1, 0
        return 2, 1
    if _is_trivial_pair(q, r) or (p, q, r) == (2, -1, 3):
        return 1, 0
    if (p, q) == (2, -1):
        return 3, (abs(r - 2) - 1) // 2
    if (q > 0 and r > 0) or (p != 2 and q == -1 and r < 0) or (q < -1 and r < 0):
        return 4, (abs(q) + abs(r)) // 2
    if (p != 2 and q == -1 and r >= 3) or (q >= 0 and r <= 0) or (q <= -3 and r >= 0):
        return 5, (abs(q) + abs(r) - 2) // 2
    raise FamilySpecError(f"no genus case matches {code}")


def family_genus(spec: FamilySpec | TwoBridgeCode | PretzelCode | int) -> tuple[int, int]:
    """(genus, number of components) for a family member.

    A bare int is read as a twist-knot index.
    """
    if isinstance(spec, FamilySpec):
        spec = spec.code
    if isinstance(spec, TwoBridgeCode):
        mu = 1 if spec.m % 2 == 0 else 2
        return (spec.m - mu + 1) // 2, mu
    if isinstance(spec, PretzelCode):
        normal, _ = pretzel_normal_form(spec)
        return pretzel_genus_case(normal)[1], 1
    if isinstance(spec, int):
        return (0 if spec == 0 else 1), 1
    raise FamilySpecError(f"cannot compute genus of {spec!r}")


def lg_family(spec: FamilySpec | str) -> Laurent2:
    """LG for any supported family spec."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    if spec.kind == "twist":
        return lg_twist(spec.code)
    if spec.kind == "2bridge":
        return lg_two_bridge(spec.code)
    normal, steps = pretzel_normal_form(spec.code)
    case, _ = pretzel_genus_case(normal)
    if case == 1:
        return ONE
    if (normal.p, normal.q) == (2, -1):
        value = lg_pretzel_2m1r(normal.r)
        return value.invert() if "mirror" in steps else value
    raise Unsupported(f"LG of {spec.code} is only available for K(2, -1, r) and unknotted codes")
