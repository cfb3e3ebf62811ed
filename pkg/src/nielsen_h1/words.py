"""Reduced words in the free group F_n and the integral group ring Z[F_n].

Words are stored run-length encoded as tuples of ``(index, exponent)``
syllables with 1-based generator indices.  The text form is
``x1^2*x2^-1``; the identity renders as ``1``.
"""

import re
from functools import total_ordering


class RankMismatch(ValueError):
    pass


def _reduce_syllables(syllables):
    out = []
    for idx, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == idx:
            e = out[-1][1] + exp
            if e:
                out[-1] = (idx, e)
            else:
                out.pop()
        else:
            out.append((idx, exp))
    return tuple(out)


@total_ordering
class FreeWord:
    """A freely reduced element of F_n."""

    __slots__ = ("rank", "syllables", "_hash")

    def __init__(self, rank, syllables=()):
        if rank < 1:
            raise ValueError("rank must be positive")
        syl = []
        for idx, exp in syllables:
            if not 1 <= idx <= rank:
                raise ValueError(f"generator index {idx} out of range 1..{rank}")
            syl.append((int(idx), int(exp)))
        self.rank = rank
        self.syllables = _reduce_syllables(syl)
        self._hash = None

    @classmethod
    def _raw(cls, rank, syllables):
        # syllables already reduced
        w = object.__new__(cls)
        w.rank = rank
        w.syllables = syllables
        w._hash = None
        return w

    @classmethod
    def identity(cls, rank):
        return cls._raw(rank, ())

    @classmethod
    def generator(cls, rank, idx, exp=1):
        return cls(rank, [(idx, exp)])

    @classmethod
    def from_letters(cls, rank, letters):
        """Build from signed indices, e.g. ``[1, -2]`` is ``x1*x2^-1``."""
        return cls(rank, [(abs(a), 1 if a > 0 else -1) for a in letters])

    @classmethod
    def parse(cls, rank, text):
        return parse_word(rank, text)

    def letters(self):
        out = []
        for idx, exp in self.syllables:
            s = idx if exp > 0 else -idx
            out.extend([s] * abs(exp))
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self):
        return not self.syllables

    def _check(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __mul__(self, other):
        if not isinstance(other, FreeWord):
            return NotImplemented
        self._check(other)
        a, b = self.syllables, other.syllables
        i, j = len(a), 0
        while i > 0 and j < len(b) and a[i - 1][0] == b[j][0]:
            e = a[i - 1][1] + b[j][1]
            if e:
                return FreeWord._raw(self.rank, a[: i - 1] + ((a[i - 1][0], e),) + b[j + 1:])
            i -= 1
            j += 1
        return FreeWord._raw(self.rank, a[:i] + b[j:])

    def inverse(self):
        return FreeWord._raw(self.rank, tuple((i, -e) for i, e in reversed(self.syllables)))

    __invert__ = inverse

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = FreeWord.identity(self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exponent_sums(self):
        v = [0] * self.rank
        for idx, exp in self.syllables:
            v[idx - 1] += exp
        return v

    def substitute(self, images):
        """Replace each x_i by ``images[i-1]`` (a sequence of FreeWords)."""
        out = FreeWord.identity(images[0].rank)
        for idx, exp in self.syllables:
            out = out * images[idx - 1] ** exp
        return out

    def __eq__(self, other):
        if not isinstance(other, FreeWord):
            return NotImplemented
        return self.rank == other.rank and self.syllables == other.syllables

    def __lt__(self, other):
        return (self.rank, self.syllables) < (other.rank, other.syllables)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.syllables))
        return self._hash

    def __str__(self):
        if not self.syllables:
            return "1"
        return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.syllables)

    def __repr__(self):
        return f"FreeWord({self.rank}, '{self}')"


_TOKEN = re.compile(r"\s*x(\d+)\s*(?:\^\s*(-?\d+))?\s*")


def parse_word(rank, text):
    """Parse ``x1^2*x2^-1`` (``*`` optional, ``1`` or empty for the identity)."""
    s = text.strip()
    if s in ("", "1", "e"):
        return FreeWord.identity(rank)
    syllables = []
    for piece in s.split("*"):
        piece = piece.strip()
        if piece in ("", "1"):
            continue
        pos = 0
        while pos < len(piece):
            m = _TOKEN.match(piece, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word {text!r}")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            syllables.append((int(m.group(1)), exp))
            pos = m.end()
    return FreeWord(rank, syllables)


class GroupRingElement:
    """Finite Z-linear combination of reduced words."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        clean = {}
        for w, c in (terms or {}).items():
            if w.rank != rank:
                raise RankMismatch(f"word of rank {w.rank} in ring of rank {rank}")
            if c:
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def one(cls, rank):
        return cls(rank, {FreeWord.identity(rank): 1})

    @classmethod
    def from_word(cls, w, coeff=1):
        return cls(w.rank, {w: coeff})

    def _check(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(self.rank, out)

    def __neg__(self):
        return GroupRingElement(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.rank, {w: c * other for w, c in self.terms.items()})
        self._check(other)
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(self.rank, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def bar(self):
        """The antiautomorphism induced by w -> w^-1."""
        return GroupRingElement(self.rank, {w.inverse(): c for w, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if w.is_identity():
                parts.append(str(c))
            elif c == 1:
                parts.append(str(w))
            elif c == -1:
                parts.append(f"-{w}")
            else:
                parts.append(f"{c}*{w}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GroupRingElement({self.rank}, '{self}')"
