"""Automorphisms of F_n, Nielsen's generators P, Q, S, U and the relator catalog.

Automorphisms act on F_n from the right: an ``Automorphism`` stores the
images ``x_i^sigma`` and the product ``sigma * tau`` means "first sigma, then
tau", so ``x^(sigma tau) = (x^sigma)^tau``.  Modules (H, H^*, V) carry the
induced left action ``sigma . e_i = [x_i^(sigma^-1)]``.
"""

import json
import re
from functools import lru_cache

from . import intmat
from .words import FreeWord, RankMismatch, parse_word


class NotAnAutomorphism(ValueError):
    pass


class NotIA(ValueError):
    pass


class Automorphism:
    __slots__ = ("rank", "images", "_rho", "_hmat", "_hash")

    def __init__(self, images, check=True):
        images = tuple(images)
        if not images:
            raise ValueError("an automorphism needs at least one image")
        n = images[0].rank
        if len(images) != n:
            raise ValueError(f"{len(images)} images for rank {n}")
        for w in images:
            if w.rank != n:
                raise RankMismatch("images of differing rank")
        self.rank = n
        self.images = images
        self._rho = None
        self._hmat = None
        self._hash = None
        if check and abs(intmat.det(self.rho())) != 1:
            raise NotAnAutomorphism("abelianization is not in GL(n, Z)")

    @classmethod
    def identity(cls, n):
        return cls([FreeWord.generator(n, i) for i in range(1, n + 1)], check=False)

    @classmethod
    def parse(cls, n, texts):
        return cls([parse_word(n, t) for t in texts])

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls.parse(int(data["n"]), data["images"])

    def to_json(self):
        return {"n": self.rank, "images": [str(w) for w in self.images]}

    def image(self, i):
        return self.images[i - 1]

    def apply(self, w):
        """Right action: the image ``w^sigma``."""
        return w.substitute(self.images)

    def __mul__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return Automorphism([other.apply(w) for w in self.images], check=False)

    def rho(self):
        """Abelianization matrix; column i is the exponent-sum vector of x_i^sigma.

        With right actions rho is an anti-homomorphism:
        rho(sigma tau) = rho(tau) rho(sigma).
        """
        if self._rho is None:
            cols = [w.exponent_sums() for w in self.images]
            self._rho = intmat.transpose(cols)
        return self._rho

    def h_matrix(self):
        """Matrix of the left action on H (= rho(sigma)^-1); multiplicative."""
        if self._hmat is None:
            self._hmat = intmat.inverse_unimodular(self.rho())
        return self._hmat

    def total_length(self):
        return sum(len(w) for w in self.images)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def is_identity(self):
        return all(w.syllables == ((i + 1, 1),) for i, w in enumerate(self.images))

    def __str__(self):
        return "(" + ", ".join(str(w) for w in self.images) + ")"

    def __repr__(self):
        return f"Automorphism{self}"


def compose(sigma, tau):
    return sigma * tau


def rho(sigma):
    return sigma.rho()


def sgn(sigma):
    return intmat.det(sigma.rho())


def is_IA(sigma):
    return intmat.is_identity(sigma.rho())


# --- Nielsen generators ---------------------------------------------------

SYMBOLS = ("P", "Q", "S", "U")


def _x(n, i, e=1):
    return FreeWord.generator(n, i, e)


def nielsen_generator(symbol, n, inverse=False):
    if n < 2:
        raise ValueError("Nielsen generators need rank >= 2")
    ims = [_x(n, i) for i in range(1, n + 1)]
    if symbol == "P":
        ims[0], ims[1] = _x(n, 2), _x(n, 1)
    elif symbol == "Q":
        if inverse:
            ims = [_x(n, n)] + [_x(n, i) for i in range(1, n)]
        else:
            ims = [_x(n, i) for i in range(2, n + 1)] + [_x(n, 1)]
    elif symbol == "S":
        ims[0] = _x(n, 1, -1)
    elif symbol == "U":
        ims[0] = FreeWord(n, [(1, 1), (2, -1 if inverse else 1)])
    else:
        raise ValueError(f"unknown generator {symbol!r}")
    return Automorphism(ims, check=False)


class GenWord:
    """A word in the free group on P, Q, S, U; letters are (symbol, +-1)."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for sym, e in letters:
            if sym not in SYMBOLS:
                raise ValueError(f"unknown generator {sym!r}")
            if e not in (1, -1):
                raise ValueError("GenWord exponents must be +-1")
            out.append((sym, e))
        self.letters = tuple(out)

    @classmethod
    def parse(cls, text):
        letters = []
        for m in re.finditer(r"\s*([PQSU])\s*(?:\^\s*(-?\d+))?", text):
            k = int(m.group(2)) if m.group(2) is not None else 1
            e = 1 if k > 0 else -1
            letters.extend([(m.group(1), e)] * abs(k))
        rest = re.sub(r"[PQSU]\s*(\^\s*-?\d+)?|\s", "", text)
        if rest not in ("", "1"):
            raise ValueError(f"cannot parse generator word {text!r}")
        return cls(letters)

    def __mul__(self, other):
        return GenWord(self.letters + other.letters)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return GenWord(self.letters * k)

    def inverse(self):
        return GenWord((s, -e) for s, e in reversed(self.letters))

    def free_reduce(self):
        out = []
        for let in self.letters:
            if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
                out.pop()
            else:
                out.append(let)
        return GenWord(out)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, GenWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^-1" for s, e in self.letters)

    def __repr__(self):
        return f"GenWord('{self}')"


def gw(text):
    return GenWord.parse(text)


def commutator(a, b):
    return a * b * a.inverse() * b.inverse()


def evaluate_genword(w, n):
    gens = {(s, e): nielsen_generator(s, n, inverse=(e == -1)) for s in SYMBOLS for e in (1, -1)}
    out = Automorphism.identity(n)
    for let in w.letters:
        out = out * gens[let]
    return out


def relator_catalog(n):
    """Nielsen's relators N1-N12 for Aut F_n as (label, GenWord) pairs."""
    P, Q, S, U = gw("P"), gw("Q"), gw("S"), gw("U")
    Qi = Q.inverse()
    rels = [
        ("N1.1", P ** 2),
        ("N1.2", Q ** n),
        ("N1.3", S ** 2),
        ("N2", (Q * P) ** (n - 1)),
        ("N3", (P * S * P * U) ** 2),
    ]
    for l in range(2, n // 2 + 1):
        rels.append((f"N4.l={l}", commutator(P, Q ** -l * P * Q ** l)))
    rels += [
        ("N5.1", commutator(S, Qi * P * Q)),
        ("N5.2", commutator(S, Q * P)),
        ("N6", (P * S) ** 4),
    ]
    if n >= 3:
        rels += [
            ("N7.1", commutator(U, Q ** -2 * P * Q ** 2)),
            ("N7.2", commutator(U, Q ** -2 * U * Q ** 2)),
        ]
    rels += [
        ("N8.1", commutator(U, Q ** -2 * S * Q ** 2)),
        ("N8.2", commutator(U, S * U * S)),
        ("N9.1", commutator(U, Q * P * Qi * P * Q)),
        ("N9.2", commutator(U, P * Qi * S * U * S * Q * P)),
        ("N10", commutator(U, P * Qi * P * Q * P * U * P * Qi * P * Q * P)),
        ("N11", gw("U^-1 P U P S U S P S")),
        ("N12", (P * Qi * U * Q) ** 2 * U * Qi * U.inverse() * Q * U.inverse()),
    ]
    return rels


@lru_cache(maxsize=None)
def relator_check(n):
    """(labels of catalog words that evaluate to the identity, labels that do not)."""
    good, bad = [], []
    for label, w in relator_catalog(n):
        (good if evaluate_genword(w, n).is_identity() else bad).append(label)
    return tuple(good), tuple(bad)


def valid_relators(n):
    """The catalog entries that really are relators of Aut F_n (all of them for n >= 4)."""
    good = set(relator_check(n)[0])
    return [(label, w) for label, w in relator_catalog(n) if label in good]


# --- IA-automorphisms -----------------------------------------------------
#
# The Magnus generators K_ij, K_ijk and the inner automorphisms iota_i are
# specified by their LEFT action sigma(x) := x^(sigma^-1), the convention in
# which their Johnson images e_i^* (x) e_i ^ e_j and e_i^* (x) e_j ^ e_k are
# stated.  The stored right-action images are therefore the inverse
# substitutions.


def magnus_ia_generator(n, i, j, k=None):
    """K_ij (k is None) or K_ijk.

    Left action: K_ij(x_i) = x_j^-1 x_i x_j and
    K_ijk(x_i) = x_i x_j x_k x_j^-1 x_k^-1, other generators fixed.
    """
    idx = (i, j) if k is None else (i, j, k)
    if len(set(idx)) != len(idx) or not all(1 <= a <= n for a in idx):
        raise ValueError(f"invalid Magnus generator indices {idx} for n={n}")
    ims = [_x(n, t) for t in range(1, n + 1)]
    if k is None:
        ims[i - 1] = FreeWord(n, [(j, 1), (i, 1), (j, -1)])
    else:
        ims[i - 1] = FreeWord(n, [(i, 1), (k, 1), (j, 1), (k, -1), (j, -1)])
    return Automorphism(ims, check=False)


def ia_generators(n):
    """All K_ij (i != j) and K_ijk (j > k, i distinct), labelled."""
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                out.append(((i, j), magnus_ia_generator(n, i, j)))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, j):
                if len({i, j, k}) == 3:
                    out.append(((i, j, k), magnus_ia_generator(n, i, j, k)))
    return out


def inner_automorphism(n, i):
    """iota_i = K_1i K_2i ... K_ni (K_ii omitted): left action x -> x_i^-1 x x_i."""
    out = Automorphism.identity(n)
    for t in range(1, n + 1):
        if t != i:
            out = out * magnus_ia_generator(n, t, i)
    return out
