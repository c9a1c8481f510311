"""Braid words as link presentations.

A word is a strand count plus a sequence of signed Artin generators:
``+i`` is sigma_i and ``-i`` its inverse, 1-based.  The text form is
``"n: g1 g2 ... gk"``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BraidSyntaxError, IndexOutOfRange

__all__ = [
    "BraidWord",
    "parse",
    "components",
    "writhe",
    "permutation",
    "markov_move",
    "compose",
    "random_word",
]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise IndexOutOfRange(f"a braid needs at least one strand, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise IndexOutOfRange(f"letter {g} out of range for {self.strands} strands")

    def __str__(self) -> str:
        if not self.letters:
            return f"{self.strands}:"
        return f"{self.strands}: " + " ".join(str(g) for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        return parse(text)


def parse(text: str) -> BraidWord:
    """Parse ``"n: g1 g2 ..."``; an optional ``braid:`` prefix is accepted."""
    s = text.strip()
    if s.startswith("braid:"):
        s = s[len("braid:"):].strip()
    head, sep, tail = s.partition(":")
    if not sep:
        raise BraidSyntaxError(f"missing ':' in braid {text!r}")
    try:
        n = int(head)
        letters = tuple(int(tok) for tok in tail.replace(",", " ").split())
    except ValueError as exc:
        raise BraidSyntaxError(f"non-integer token in braid {text!r}") from exc
    if n < 1:
        raise BraidSyntaxError(f"strand count must be positive in {text!r}")
    if any(g == 0 for g in letters):
        raise BraidSyntaxError(f"0 is not a generator in {text!r}")
    return BraidWord(n, letters)


def permutation(b: BraidWord) -> tuple[int, ...]:
    """Underlying permutation of the closure, as 1-based images of positions."""
    where = list(range(b.strands))  # where[s] = current position of strand s
    at = list(range(b.strands))     # at[p] = strand currently at position p
    for g in b.letters:
        i = abs(g) - 1
        s, t = at[i], at[i + 1]
        at[i], at[i + 1] = t, s
        where[s], where[t] = i + 1, i
    return tuple(where[s] + 1 for s in range(b.strands))


def components(b: BraidWord) -> int:
    perm = permutation(b)
    seen = [False] * b.strands
    count = 0
    for start in range(b.strands):
        if seen[start]:
            continue
        count += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k] - 1
    return count


def writhe(b: BraidWord) -> int:
    return sum(1 if g > 0 else -1 for g in b.letters)


def markov_move(b: BraidWord, move: str, arg: int | None = None) -> BraidWord:
    """Apply one presentation move.

    ``conjugate`` (arg = letter g): g b g^-1, same closure.
    ``stabilize`` (arg = +1/-1): append sigma_n^{+-1} in B_{n+1}, same closure.
    ``mirror``: negate every letter (mirror image).
    ``inverse``: reverse and negate (closure with reversed orientation, mirrored).
    """
    if move == "conjugate":
        if arg is None or arg == 0 or abs(arg) > b.strands - 1:
            raise IndexOutOfRange(f"cannot conjugate a {b.strands}-strand braid by {arg}")
        return BraidWord(b.strands, (arg,) + b.letters + (-arg,))
    if move == "stabilize":
        sign = 1 if arg is None or arg > 0 else -1
        return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))
    if move == "mirror":
        return BraidWord(b.strands, tuple(-g for g in b.letters))
    if move == "inverse":
        return BraidWord(b.strands, tuple(-g for g in reversed(b.letters)))
    raise ValueError(f"unknown move {move!r}")


def compose(b1: BraidWord, b2: BraidWord, mode: str) -> BraidWord:
    """Connected sum (shared strand) or split union of two closures."""
    if mode == "connected_sum":
        shift = b1.strands - 1
        strands = b1.strands + b2.strands - 1
    elif mode == "split_union":
        shift = b1.strands
        strands = b1.strands + b2.strands
    else:
        raise ValueError(f"unknown composition {mode!r}")
    moved = tuple(g + shift if g > 0 else g - shift for g in b2.letters)
    return BraidWord(strands, b1.letters + moved)


def random_word(rng: random.Random, max_strands: int = 4, max_length: int = 8,
                min_strands: int = 2) -> BraidWord:
    """Uniform-ish random word for property tests."""
    n = rng.randint(min_strands, max_strands)
    length = rng.randint(0, max_length)
    letters = tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)) if n > 1 else ()
    return BraidWord(n, letters)
