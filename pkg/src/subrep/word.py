"""Words over an integer alphabet, exact δ values, generators and periods.

Position convention
-------------------
Every position that crosses a public boundary (Run, MaxRepeat, Subrepetition,
LCE queries, CLI output) is 1-based and inclusive, so ``w[1..n]`` is the whole
word.  Compiled kernels work on the *padded* array returned by
:meth:`Word.padded`: index ``i`` of that array holds the symbol at position
``i``, index 0 holds ``-1`` and index ``n + 1`` holds ``-2``.  The two
sentinels differ from each other and from every symbol, so character scans
stop at the word borders without explicit bounds checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import AlphabetError, DeltaRangeError, EmptyFactorError, ParseError

# Denominators are kept small enough that products such as n * den stay
# inside int64 in the compiled kernels.
MAX_DELTA_DEN = 1 << 31


def alphabet_bound(n: int) -> int:
    return max(255, n)


class Word:
    """Immutable word; ``symbols`` is a read-only int64 array."""

    __slots__ = ("symbols", "__dict__")

    def __init__(self, symbols: Iterable[int] | np.ndarray = ()):
        if isinstance(symbols, (bytes, bytearray)):
            arr = np.frombuffer(bytes(symbols), dtype=np.uint8).astype(np.int64)
        else:
            arr = np.array(list(symbols) if not isinstance(symbols, np.ndarray) else symbols,
                           dtype=np.int64).reshape(-1)
        if arr.size and (arr.min() < 0 or arr.max() > alphabet_bound(arr.size)):
            raise AlphabetError(
                f"symbols must lie in [0, {alphabet_bound(arr.size)}] for n={arr.size}"
            )
        arr.setflags(write=False)
        self.symbols = arr

    @classmethod
    def from_text(cls, text: str) -> "Word":
        return cls(text.encode("utf-8"))

    @property
    def n(self) -> int:
        return int(self.symbols.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return np.array_equal(self.symbols, other.symbols)

    def __hash__(self) -> int:
        return hash(self.symbols.tobytes())

    def __repr__(self) -> str:
        return f"Word({self.text()!r})" if self.n <= 60 else f"Word(n={self.n})"

    def at(self, pos: int) -> int:
        """Symbol at 1-based position ``pos``."""
        return int(self.symbols[pos - 1])

    def factor(self, beg: int, end: int) -> tuple[int, ...]:
        """Symbols of ``w[beg..end]`` (1-based, inclusive)."""
        return tuple(int(x) for x in self.symbols[beg - 1 : end])

    def text(self) -> str:
        """Render as text when every symbol is a byte, else space-separated ints."""
        if self.n and int(self.symbols.max()) > 255:
            return " ".join(str(int(x)) for x in self.symbols)
        return bytes(self.symbols.astype(np.uint8)).decode("latin-1")

    @cached_property
    def padded(self) -> np.ndarray:
        out = np.empty(self.n + 2, dtype=np.int64)
        out[0] = -1
        out[1:-1] = self.symbols
        out[-1] = -2
        out.setflags(write=False)
        return out

    @cached_property
    def padded_reversed(self) -> np.ndarray:
        """Padded array of the reversed word."""
        out = np.empty(self.n + 2, dtype=np.int64)
        out[0] = -1
        out[1:-1] = self.symbols[::-1]
        out[-1] = -2
        out.setflags(write=False)
        return out

    def reversed(self) -> "Word":
        return Word(self.symbols[::-1])


@dataclass(frozen=True)
class RationalDelta:
    """δ = num/den in lowest terms; α = den/num is only ever used exactly."""

    num: int
    den: int

    def __post_init__(self):
        if not (isinstance(self.num, int) and isinstance(self.den, int)):
            raise DeltaRangeError("delta numerator and denominator must be integers")
        if not 0 < self.num < self.den:
            raise DeltaRangeError(f"delta {self.num}/{self.den} is not in (0, 1)")
        if Fraction(self.num, self.den).denominator != self.den:
            raise DeltaRangeError("delta must be given in lowest terms")
        if self.den > MAX_DELTA_DEN:
            raise DeltaRangeError(f"delta denominator exceeds {MAX_DELTA_DEN}")

    @classmethod
    def of(cls, value: "RationalDelta | Fraction | str | float | int | tuple[int, int]") -> "RationalDelta":
        """Parse ``"1/2"``, ``"0.5"``, a Fraction, a (num, den) pair or a float.

        Decimal strings are scaled to powers of ten, so ``"0.3"`` is exactly 3/10.
        Floats go through ``repr`` for the same reason.
        """
        if isinstance(value, RationalDelta):
            return value
        try:
            if isinstance(value, tuple):
                frac = Fraction(*value)
            elif isinstance(value, float):
                frac = Fraction(repr(value))
            else:
                frac = Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise DeltaRangeError(f"cannot parse delta {value!r}") from exc
        return cls(frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.den, self.num)

    @property
    def log2_alpha_ceil(self) -> int:
        """Least k with num * 2**k >= den."""
        k = 0
        while self.num << k < self.den:
            k += 1
        return k

    def min_copy(self, period: int) -> int:
        """Smallest copy length c with period <= α·c."""
        return max(1, -(-period * self.num // self.den))

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def load_word(raw: str | bytes | Sequence[int], mode: str = "bytes") -> Word:
    """Build a Word from raw text/bytes or from whitespace-separated integers."""
    if mode == "bytes":
        if isinstance(raw, str):
            raw = raw.encode("utf-8")
        return Word(bytes(raw))
    if mode != "ints":
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    tokens = raw.split() if isinstance(raw, str) else list(raw)
    values = []
    for tok in tokens:
        try:
            values.append(int(tok))
        except (TypeError, ValueError):
            raise ParseError(f"not an integer token: {tok!r}") from None
    bound = alphabet_bound(len(values))
    for v in values:
        if v < 0 or v > bound:
            raise AlphabetError(f"symbol {v} outside [0, {bound}]")
    return Word(values)


def _letters(seq: Iterable[int]) -> Word:
    return Word([97 + x for x in seq])


def generate(kind: str, n: int, sigma: int = 2, seed: int = 0) -> Word:
    """Deterministic test words: Fibonacci or Thue-Morse prefixes, or uniform random.

    Binary and random words with ``sigma <= 26`` use the letters a, b, c, ...;
    larger alphabets use the integers ``0..sigma-1``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if kind == "fibonacci":
        # a -> ab, b -> a
        cur = [0]
        while len(cur) < n:
            cur = [y for x in cur for y in ((0, 1) if x == 0 else (0,))]
        return _letters(cur[:n])
    if kind == "thue_morse":
        return _letters(bin(i).count("1") & 1 for i in range(n))
    if kind == "random":
        if sigma < 1:
            raise ValueError("sigma must be >= 1")
        rng = np.random.default_rng(seed)
        vals = rng.integers(0, sigma, size=n)
        if sigma <= 26:
            return Word(vals + 97)
        if sigma - 1 > alphabet_bound(n):
            raise AlphabetError(f"sigma={sigma} too large for n={n}")
        return Word(vals)
    raise ValueError(f"unknown generator {kind!r}")


def border_array(seq: Sequence[int]) -> list[int]:
    """border[k] = length of the longest proper border of seq[:k+1]."""
    border = [0] * len(seq)
    b = 0
    for i in range(1, len(seq)):
        while b and seq[i] != seq[b]:
            b = border[b - 1]
        if seq[i] == seq[b]:
            b += 1
        border[i] = b
    return border


def min_period(factor: Word | Sequence[int]) -> int:
    """Minimal period, as length minus the longest border."""
    seq = factor.symbols.tolist() if isinstance(factor, Word) else list(factor)
    if not seq:
        raise EmptyFactorError("minimal period of an empty factor")
    return len(seq) - border_array(seq)[-1]


def exponent(factor: Word | Sequence[int]) -> Fraction:
    seq = factor.symbols.tolist() if isinstance(factor, Word) else list(factor)
    return Fraction(len(seq), min_period(seq))
