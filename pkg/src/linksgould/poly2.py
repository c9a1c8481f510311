"""Exact Laurent polynomials in one and two variables, with a thin rational layer.

``Laurent2`` is the value type of the Links-Gould invariant: an integer
combination of monomials ``t0^i t1^j`` with ``(i, j)`` in Z^2.  The grading
used throughout the package is ``deg(t0^i t1^j) = i - j``; ``span`` is the
width of the set of degrees that carry a nonzero coefficient.

``Laurent1`` carries Alexander polynomials in a single variable ``t``.
``Rat2`` is a formal quotient of two ``Laurent2`` values used for skein
coefficients whose denominators only cancel once a full invariant is
assembled.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import NotDivisible, PolynomialSyntaxError, ZeroPolynomial

__all__ = [
    "Laurent1",
    "Laurent2",
    "Rat2",
    "T0",
    "T1",
    "ONE",
    "ZERO",
    "exact_div",
    "span",
    "specialize",
    "monic_extremes",
    "ring_op",
]


def _clean(terms: Iterable[tuple[object, int]]) -> dict:
    out: dict = {}
    for key, c in terms:
        c = out.get(key, 0) + c
        if c:
            out[key] = c
        else:
            out.pop(key, None)
    return out


class Laurent2:
    """Immutable element of Z[t0^±1, t1^±1], stored as ``{(i, j): coeff}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        if terms is None:
            self._terms: dict[tuple[int, int], int] = {}
        else:
            self._terms = {(int(i), int(j)): int(c) for (i, j), c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Laurent2":
        # trusted constructor: caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "Laurent2":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "Laurent2":
        return cls._raw({(int(i), int(j)): int(c)} if c else {})

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> "Laurent2":
        return cls._raw(_clean(((int(i), int(j)), int(c)) for i, j, c in triples))

    @classmethod
    def parse(cls, text: str) -> "Laurent2":
        return cls._raw(_parse_terms(text, ("t0", "t1")))

    # -- access -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        """A copy of the term map."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self._terms.items())

    def coeff(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def to_triples(self) -> list[list[int]]:
        return [[i, j, c] for (i, j), c in sorted(self._terms.items(), key=_canonical_key2)]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce2(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return Laurent2._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent2":
        return Laurent2._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce2(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce2(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce2(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out: dict[tuple[int, int], int] = {}
        get = out.get
        for (i2, j2), c2 in b.items():
            for (i1, j1), c1 in a.items():
                k = (i1 + i2, j1 + j2)
                out[k] = get(k, 0) + c1 * c2
        return Laurent2._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent2":
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            ((i, j), c), = self._terms.items()
            if c not in (1, -1):
                raise NotDivisible("negative power of a non-unit monomial")
            return Laurent2.monomial(i * n, j * n, c ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, di: int, dj: int) -> "Laurent2":
        """Multiply by the monomial t0^di t1^dj."""
        return Laurent2._raw({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def scale(self, k: int) -> "Laurent2":
        if not k:
            return ZERO
        return Laurent2._raw({key: c * k for key, c in self._terms.items()})

    def evaluate(self, t0, t1):
        """Evaluate at numeric points; Fractions keep the result exact."""
        total = 0
        for (i, j), c in self._terms.items():
            total += c * _pow(t0, i) * _pow(t1, j)
        return total

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce2(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- degree structure ------------------------------------------------

    def degrees(self) -> tuple[int, int]:
        """(min, max) of i - j over the support."""
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        ds = [i - j for i, j in self._terms]
        return min(ds), max(ds)

    def span(self) -> int:
        lo, hi = self.degrees()
        return hi - lo

    def swap(self) -> "Laurent2":
        return Laurent2._raw({(j, i): c for (i, j), c in self._terms.items()})

    def invert(self) -> "Laurent2":
        return Laurent2._raw({(-i, -j): c for (i, j), c in self._terms.items()})

    # -- text ------------------------------------------------------------

    def __str__(self) -> str:
        items = sorted(self._terms.items(), key=_canonical_key2)
        return _format_terms(
            ((_mono2(i, j), c) for (i, j), c in items)
        )

    def __repr__(self) -> str:
        return f"Laurent2({str(self)!r})"


class Laurent1:
    """Immutable element of Z[t^±1], stored as ``{k: coeff}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms is None:
            self._terms: dict[int, int] = {}
        else:
            self._terms = {int(k): int(c) for k, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Laurent1":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "Laurent1":
        return cls._raw({0: int(c)} if c else {})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "Laurent1":
        return cls._raw({int(k): int(c)} if c else {})

    @classmethod
    def from_coeffs(cls, low: int, coeffs: Iterable[int]) -> "Laurent1":
        """Build ``sum c_r t^(low + r)`` from a dense coefficient list."""
        return cls._raw({low + r: c for r, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str) -> "Laurent1":
        raw = _parse_terms(text, ("t",))
        return cls._raw({k[0]: c for k, c in raw.items()})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms.items())

    def coeff(self, k: int) -> int:
        return self._terms.get(k, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        other = _coerce1(other)
        if other is NotImplemented:
            return other
        return Laurent1._raw(_clean(list(self._terms.items()) + list(other._terms.items())))

    __radd__ = __add__

    def __neg__(self) -> "Laurent1":
        return Laurent1._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce1(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce1(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce1(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return Laurent1._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent1":
        if n < 0:
            if len(self._terms) != 1:
                raise NotDivisible("negative power of a non-monomial")
            (k, c), = self._terms.items()
            if c not in (1, -1):
                raise NotDivisible("negative power of a non-unit monomial")
            return Laurent1.monomial(k * n, c ** (-n))
        result = Laurent1.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = _coerce1(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def shift(self, d: int) -> "Laurent1":
        return Laurent1._raw({k + d: c for k, c in self._terms.items()})

    def scale(self, s: int) -> "Laurent1":
        if not s:
            return Laurent1()
        return Laurent1._raw({k: c * s for k, c in self._terms.items()})

    def substitute_power(self, e: int) -> "Laurent1":
        """t -> t^e."""
        return Laurent1._raw({k * e: c for k, c in self._terms.items()})

    def mirror(self) -> "Laurent1":
        return self.substitute_power(-1)

    def min_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(self._terms)

    def leading_coeff(self) -> int:
        return self._terms[self.max_degree()]

    def trailing_coeff(self) -> int:
        return self._terms[self.min_degree()]

    def evaluate(self, t):
        return sum(c * _pow(t, k) for k, c in self._terms.items())

    def is_palindromic(self) -> bool:
        return self == self.mirror()

    def __str__(self) -> str:
        items = sorted(self._terms.items())
        return _format_terms(((_mono1(k), c) for k, c in items))

    def __repr__(self) -> str:
        return f"Laurent1({str(self)!r})"


ZERO = Laurent2._raw({})
ONE = Laurent2._raw({(0, 0): 1})
T0 = Laurent2._raw({(1, 0): 1})
T1 = Laurent2._raw({(0, 1): 1})


def _coerce2(x):
    if isinstance(x, Laurent2):
        return x
    if isinstance(x, int):
        return Laurent2.const(x)
    return NotImplemented


def _coerce1(x):
    if isinstance(x, Laurent1):
        return x
    if isinstance(x, int):
        return Laurent1.const(x)
    return NotImplemented


def _pow(x, k: int):
    if k >= 0:
        return x ** k
    if isinstance(x, int):
        return Fraction(1, x ** (-k))
    return 1 / x ** (-k)


# ---------------------------------------------------------------------------
# rational layer


class Rat2:
    """Formal quotient ``num / den`` of Laurent2 values (no canonical reduction)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = _coerce2(num)
        den = _coerce2(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("Rat2 expects Laurent2 or int components")
        if den.is_zero():
            raise ZeroDivisionError("Rat2 with zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def _lift(x):
        if isinstance(x, Rat2):
            return x
        if isinstance(x, (Laurent2, int)):
            return Rat2(x)
        return NotImplemented

    def __add__(self, other):
        other = Rat2._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return Rat2(self.num + other.num, self.den)
        return Rat2(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Rat2(-self.num, self.den)

    def __sub__(self, other):
        other = Rat2._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Rat2._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = Rat2._lift(other)
        if other is NotImplemented:
            return other
        return Rat2(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Rat2._lift(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero Rat2")
        return Rat2(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = Rat2._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __eq__(self, other) -> bool:
        other = Rat2._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is cross-multiplication, no canonical form

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def invert(self) -> "Rat2":
        """Substitute t0 -> t0^-1, t1 -> t1^-1."""
        return Rat2(self.num.invert(), self.den.invert())

    def swap(self) -> "Rat2":
        return Rat2(self.num.swap(), self.den.swap())

    def reduce(self) -> "Rat2":
        """Cancel the denominator when it divides the numerator exactly."""
        try:
            return Rat2(exact_div(self.num, self.den))
        except NotDivisible:
            return self

    def to_laurent(self) -> Laurent2:
        """The polynomial value; raises NotDivisible when there is none."""
        return exact_div(self.num, self.den)

    def span(self) -> int:
        """span(num) - span(den); well defined by multiplicativity of span."""
        if self.num.is_zero():
            raise ZeroPolynomial("span of zero")
        return self.num.span() - self.den.span()

    def evaluate(self, t0, t1):
        return Fraction(self.num.evaluate(t0, t1)) / Fraction(self.den.evaluate(t0, t1))

    def __repr__(self) -> str:
        return f"Rat2(({self.num}) / ({self.den}))"


# ---------------------------------------------------------------------------
# free-function surface


def ring_op(a, b, op: str):
    """Exact ``add``/``sub``/``mul`` on Laurent1, Laurent2 or Rat2 operands."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


def _min_exponents(terms: dict) -> tuple[int, int]:
    return min(i for i, _ in terms), min(j for _, j in terms)


def exact_div(num: Laurent2, den: Laurent2) -> Laurent2:
    """Return q with q * den == num, or raise NotDivisible.

    Both operands are shifted into Z[t0, t1] (the divisor so that it is not
    divisible by t0 or t1); a quotient in the Laurent ring is then an ordinary
    polynomial and single-divisor division under lex order finds it.  The
    result is verified by multiplication before it is returned.
    """
    num = _coerce2(num)
    den = _coerce2(den)
    if den.is_zero():
        raise ZeroDivisionError("exact_div by zero")
    if num.is_zero():
        return ZERO
    di, dj = _min_exponents(den._terms)
    ni, nj = _min_exponents(num._terms)
    d = {(i - di, j - dj): c for (i, j), c in den._terms.items()}
    r = {(i - ni, j - nj): c for (i, j), c in num._terms.items()}
    lead = max(d)
    lc = d[lead]
    q: dict[tuple[int, int], int] = {}
    while r:
        top = max(r)
        ei, ej = top[0] - lead[0], top[1] - lead[1]
        c, rem = divmod(r[top], lc)
        if ei < 0 or ej < 0 or rem:
            raise NotDivisible(f"{num} is not divisible by {den}")
        q[(ei, ej)] = c
        for (a, b), dc in d.items():
            k = (a + ei, b + ej)
            v = r.get(k, 0) - c * dc
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    quotient = Laurent2._raw(q).shift(ni - di, nj - dj)
    if quotient * den != num:
        raise NotDivisible("division check failed")
    return quotient


def span(p: Laurent2) -> int:
    """max(i - j) - min(i - j) over the support of p."""
    return p.span()


def specialize(p: Laurent2, mode: str):
    """Substitutions used to compare with the Alexander polynomial and to
    express mirror images.

    ``antidiag``: t1 -> -t0^-1, result a Laurent1 in t (= t0).
    ``diag``: t1 -> t0^-1, result a Laurent1.
    ``swap``: t0 <-> t1.  ``invert``: t0 -> t0^-1, t1 -> t1^-1.
    """
    if mode == "swap":
        return p.swap()
    if mode == "invert":
        return p.invert()
    if mode not in ("antidiag", "diag"):
        raise ValueError(f"unknown specialization {mode!r}")
    out: dict[int, int] = {}
    for (i, j), c in p.items():
        if mode == "antidiag" and j % 2:
            c = -c
        out[i - j] = out.get(i - j, 0) + c
    return Laurent1._raw({k: v for k, v in out.items() if v})


def monic_extremes(p: Laurent2) -> tuple[bool, tuple[int, int] | None]:
    """Monicity of an LG value in the sense used for the fiberedness test.

    Monic means: the top-degree part is a single monomial t0^(l+m) t1^(m-l)
    with coefficient 1, the bottom-degree part is its swap t0^(m-l) t1^(l+m)
    with coefficient 1, and the total exponent 2m is even.  Returns
    ``(monic, (l, m))``; the witness is None when the test fails.
    A single-term polynomial is the l = 0 case.
    """
    if p.is_zero():
        raise ZeroPolynomial("monicity of the zero polynomial")
    lo, hi = p.degrees()
    top = [(k, c) for k, c in p.items() if k[0] - k[1] == hi]
    bottom = [(k, c) for k, c in p.items() if k[0] - k[1] == lo]
    if len(top) != 1 or len(bottom) != 1:
        return False, None
    (a, b), ca = top[0]
    (a2, b2), cb = bottom[0]
    if ca != 1 or cb != 1 or (a2, b2) != (b, a) or (a + b) % 2:
        return False, None
    return True, ((a - b) // 2, (a + b) // 2)


# ---------------------------------------------------------------------------
# text format


def _canonical_key2(item):
    (i, j), _ = item
    return (i - j, i)


def _mono2(i: int, j: int) -> str:
    parts = []
    for name, e in (("t0", i), ("t1", j)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _mono1(k: int) -> str:
    if k == 0:
        return ""
    return "t" if k == 1 else f"t^{k}"


def _format_terms(items) -> str:
    chunks = []
    for mono, c in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f"{sign} {body}")
    return " ".join(chunks) if chunks else "0"


_TOKEN = re.compile(
    r"\s*(?:(?P<op>[+\-])|(?P<num>\d+)|(?P<var>[A-Za-z]+(?:_?\d+)?)"
    r"|(?P<pow>\^|\*\*)|(?P<mul>\*)|(?P<open>[({])|(?P<close>[)}]))"
)


def _tokenize(text: str):
    text = text.replace("−", "-").replace("·", "*").replace("$", "")
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        val = m.group(kind)
        toks.append((kind, val.replace("_", "") if kind == "var" else val))
        pos = m.end()
    return toks


def _parse_terms(text: str, variables: tuple[str, ...]) -> dict:
    """Parse a signed sum of monomials such as ``3 - 4*t1 + 2*t0^2*t1^-1``."""
    toks = _tokenize(text)
    if not toks:
        raise PolynomialSyntaxError("empty polynomial text")
    pos = 0
    out: dict = {}

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def read_int():
        nonlocal pos
        sign = 1
        wrapped = False
        if peek()[0] == "open":
            wrapped = True
            pos += 1
        if peek()[0] == "op":
            sign = -1 if peek()[1] == "-" else 1
            pos += 1
        kind, val = peek()
        if kind != "num":
            raise PolynomialSyntaxError(f"expected an integer exponent near token {pos}")
        pos += 1
        if wrapped:
            if peek()[0] != "close":
                raise PolynomialSyntaxError("unbalanced bracket in exponent")
            pos += 1
        return sign * int(val)

    first = True
    while pos < len(toks):
        sign = 1
        kind, val = peek()
        if kind == "op":
            sign = -1 if val == "-" else 1
            pos += 1
        elif not first:
            raise PolynomialSyntaxError(f"expected '+' or '-' near token {pos}")
        first = False
        coef = 1
        saw_any = False
        if peek()[0] == "num":
            coef = int(peek()[1])
            pos += 1
            saw_any = True
        exps = [0] * len(variables)
        while True:
            kind, val = peek()
            if kind == "mul":
                pos += 1
                kind, val = peek()
                if kind == "num":
                    coef *= int(val)
                    pos += 1
                    saw_any = True
                    continue
            if kind != "var":
                break
            if val not in variables:
                raise PolynomialSyntaxError(f"unknown variable {val!r}; expected one of {variables}")
            pos += 1
            e = 1
            if peek()[0] == "pow":
                pos += 1
                e = read_int()
            exps[variables.index(val)] += e
            saw_any = True
        if not saw_any:
            raise PolynomialSyntaxError(f"empty term near token {pos}")
        key = tuple(exps)
        v = out.get(key, 0) + sign * coef
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out
