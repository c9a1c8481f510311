"""Alexander polynomial of a braid closure from the reduced Burau representation.

Delta(t) is det(I - B(b)) / (1 + t + ... + t^(n-1)) up to a unit +-t^k, with B the
reduced Burau image.  Results are normalized to the symmetric (Conway)
representative: Delta(1) = 1 for knots, leading coefficient positive for links.
"""

from __future__ import annotations

import warnings

from .braid import BraidWord, components
from .errors import AsymmetricBreadth, ZeroPolynomial
from .poly2 import Laurent1, Laurent2, exact_div

__all__ = [
    "burau_rep",
    "alexander_closure",
    "breadth",
    "normalize",
    "match_up_to_unit",
]

BurauMatrix = list[list[Laurent1]]

_ONE = Laurent1.const(1)
_ZERO = Laurent1.const(0)
_T = Laurent1.monomial(1)
_TINV = Laurent1.monomial(-1)


def _identity(m: int) -> BurauMatrix:
    return [[_ONE if i == j else _ZERO for j in range(m)] for i in range(m)]


def _generator(m: int, i: int, inverse: bool) -> BurauMatrix:
    """Reduced Burau image of sigma_i (1-based) acting on Z[t^+-1]^m, m = n - 1."""
    g = _identity(m)
    k = i - 1
    if not inverse:
        g[k][k] = -_T
        if k > 0:
            g[k][k - 1] = _T
        if k < m - 1:
            g[k][k + 1] = _ONE
    else:
        g[k][k] = -_TINV
        if k > 0:
            g[k][k - 1] = _ONE
        if k < m - 1:
            g[k][k + 1] = _TINV
    return g


def _matmul(a: BurauMatrix, b: BurauMatrix) -> BurauMatrix:
    m = len(a)
    out = [[_ZERO] * m for _ in range(m)]
    for i in range(m):
        for k in range(m):
            if a[i][k]:
                aik = a[i][k]
                row = b[k]
                for j in range(m):
                    if row[j]:
                        out[i][j] = out[i][j] + aik * row[j]
    return out


def burau_rep(b: BraidWord) -> BurauMatrix:
    """Product of reduced Burau images, in word order; size n - 1."""
    m = b.strands - 1
    out = _identity(m)
    for g in b.letters:
        out = _matmul(out, _generator(m, abs(g), g < 0))
    return out


def _lift(p: Laurent1) -> Laurent2:
    return Laurent2({(k, 0): c for k, c in p.items()})


def _drop(p: Laurent2) -> Laurent1:
    return Laurent1({i: c for (i, _), c in p.items()})


def _div(a: Laurent1, b: Laurent1) -> Laurent1:
    return _drop(exact_div(_lift(a), _lift(b)))


def _det(mat: BurauMatrix) -> Laurent1:
    """Bareiss fraction-free elimination; every division is exact."""
    a = [row[:] for row in mat]
    m = len(a)
    if m == 0:
        return _ONE
    sign = 1
    prev = _ONE
    for k in range(m - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, m) if a[r][k]), None)
            if swap is None:
                return _ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = _div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[m - 1][m - 1] if sign > 0 else -a[m - 1][m - 1]


def breadth(d: Laurent1) -> int:
    """max exponent - min exponent."""
    if d.is_zero():
        raise ZeroPolynomial("breadth of the zero polynomial")
    return d.max_degree() - d.min_degree()


def normalize(d: Laurent1, knot: bool, strict: bool = False) -> Laurent1:
    """Symmetric representative of d up to units.

    For odd breadth no integer centering exists; AsymmetricBreadth is raised
    when ``strict`` and otherwise emitted as a warning, and d is returned with
    exponents running from -(breadth // 2).
    """
    if d.is_zero():
        return d
    lo, hi = d.min_degree(), d.max_degree()
    if (lo + hi) % 2:
        msg = f"no symmetric centering for {d} (breadth {hi - lo})"
        if strict:
            raise AsymmetricBreadth(msg)
        warnings.warn(msg, AsymmetricBreadth, stacklevel=3)
        out = d.shift(-lo - (hi - lo) // 2)
    else:
        out = d.shift(-(lo + hi) // 2)
    if knot:
        if out.evaluate(1) < 0:
            out = -out
    elif out.leading_coeff() < 0:
        out = -out
    return out


def alexander_closure(b: BraidWord, strict: bool = False) -> Laurent1:
    """Conway-normalized Alexander polynomial of closure(b)."""
    n = b.strands
    if n == 1:
        return _ONE
    burau = burau_rep(b)
    m = n - 1
    diff = [[(_ONE if i == j else _ZERO) - burau[i][j] for j in range(m)] for i in range(m)]
    det = _det(diff)
    if det.is_zero():
        return _ZERO
    geometric = Laurent1.from_coeffs(0, [1] * n)
    return normalize(_div(det, geometric), components(b) == 1, strict=strict)


def match_up_to_unit(a: Laurent1, b: Laurent1) -> tuple[int, int] | None:
    """(s, k) with a == s * t^k * b, or None."""
    if a.is_zero() or b.is_zero():
        return (1, 0) if a.is_zero() and b.is_zero() else None
    k = a.min_degree() - b.min_degree()
    for s in (1, -1):
        if a == b.shift(k).scale(s):
            return s, k
    return None
