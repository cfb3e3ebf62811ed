"""Factor automorphisms of F_n into words in P, Q, S, U by Nielsen reduction.

The image tuple (y_1, ..., y_n) of sigma is shortened by elementary moves
y_i <- y_i y_j^e and y_i <- y_j^e y_i.  A move is left multiplication by an
elementary automorphism E (sigma' = E sigma), and every E has a fixed
generator word, checked by evaluation the first time a rank is used.  Once
all images have length one, inversions and swaps reduce sigma to the
identity, and sigma is the product of the inverse move words in order.
"""

import itertools
from functools import lru_cache

from .automorphisms import Automorphism, GenWord, NotAnAutomorphism, evaluate_genword, gw
from .words import FreeWord

# move kinds, in tie-break order
RIGHT, RIGHT_INV, LEFT, LEFT_INV = 0, 1, 2, 3


def _elementary(n, kind, i, j):
    """The automorphism E of a move acting on position i with partner j."""
    ims = [FreeWord.generator(n, t) for t in range(1, n + 1)]
    e = -1 if kind in (RIGHT_INV, LEFT_INV) else 1
    if kind in (RIGHT, RIGHT_INV):
        ims[i - 1] = FreeWord(n, [(i, 1), (j, e)])
    else:
        ims[i - 1] = FreeWord(n, [(j, e), (i, 1)])
    return Automorphism(ims, check=False)


def _conj(word, by):
    return by.inverse() * word * by


class MoveDictionary:
    """Generator words for transpositions, inversions and transvections at rank n."""

    def __init__(self, n):
        self.n = n
        P, Q, S, U = gw("P"), gw("Q"), gw("S"), gw("U")
        # adjacent transposition (k k+1)
        adjacent = {k: _conj(P, Q ** (k - 1)) for k in range(1, n)}
        self.transposition = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                w = adjacent[i]
                for m in range(i + 1, j):
                    # (i m+1) = (m m+1)(i m)(m m+1)
                    w = adjacent[m] * w * adjacent[m]
                self.transposition[i, j] = self.transposition[j, i] = w
        self.inversion = {1: S}
        for k in range(2, n + 1):
            self.inversion[k] = _conj(S, self.transposition[1, k])
        self.moves = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                # conjugating R_ab by the transposition t gives R_t(a),t(b)
                w = U
                a, b = 1, 2
                if a != i:
                    w = _conj(w, self.transposition[a, i])
                    a, b = i, (a if b == i else b)
                if b != j:
                    w = _conj(w, self.transposition[b, j])
                r = w.free_reduce()
                ri = _conj(r, self.inversion[j]).free_reduce()
                li = _conj(r, self.inversion[i]).free_reduce()
                le = _conj(ri, self.inversion[i]).free_reduce()
                self.moves[RIGHT, i, j] = r
                self.moves[RIGHT_INV, i, j] = ri
                self.moves[LEFT_INV, i, j] = li
                self.moves[LEFT, i, j] = le

    def verify(self):
        n = self.n
        for (i, j), w in self.transposition.items():
            ims = [FreeWord.generator(n, t) for t in range(1, n + 1)]
            ims[i - 1], ims[j - 1] = ims[j - 1], ims[i - 1]
            if evaluate_genword(w, n) != Automorphism(ims, check=False):
                raise AssertionError(f"bad transposition word for ({i} {j})")
        for k, w in self.inversion.items():
            ims = [FreeWord.generator(n, t) for t in range(1, n + 1)]
            ims[k - 1] = FreeWord.generator(n, k, -1)
            if evaluate_genword(w, n) != Automorphism(ims, check=False):
                raise AssertionError(f"bad inversion word for {k}")
        for (kind, i, j), w in self.moves.items():
            if evaluate_genword(w, n) != _elementary(n, kind, i, j):
                raise AssertionError(f"bad move word {(kind, i, j)}")


@lru_cache(maxsize=None)
def move_dictionary(n):
    d = MoveDictionary(n)
    d.verify()
    return d


# --- reduction on signed-letter tuples --------------------------------------


def _mul_len(a, b):
    """Length of the reduced product of letter tuples a, b."""
    c = 0
    la, lb = len(a), len(b)
    while c < la and c < lb and a[la - 1 - c] == -b[c]:
        c += 1
    return la + lb - 2 * c


def _mul(a, b):
    c = 0
    la, lb = len(a), len(b)
    while c < la and c < lb and a[la - 1 - c] == -b[c]:
        c += 1
    return a[: la - c] + b[c:]


def _inv(a):
    return tuple(-x for x in reversed(a))


def _apply_move(ys, kind, i, j):
    ys = list(ys)
    yj = ys[j - 1] if kind in (RIGHT, LEFT) else _inv(ys[j - 1])
    if kind in (RIGHT, RIGHT_INV):
        ys[i - 1] = _mul(ys[i - 1], yj)
    else:
        ys[i - 1] = _mul(yj, ys[i - 1])
    return tuple(ys)


def _best_move(ys):
    """Strictly length-reducing move with the largest gain; ties -> smallest (i, j, kind)."""
    n = len(ys)
    best = None
    for i in range(1, n + 1):
        yi = ys[i - 1]
        for j in range(1, n + 1):
            if i == j:
                continue
            yj = ys[j - 1]
            yji = _inv(yj)
            for kind, new in ((RIGHT, _mul_len(yi, yj)), (RIGHT_INV, _mul_len(yi, yji)),
                              (LEFT, _mul_len(yj, yi)), (LEFT_INV, _mul_len(yji, yi))):
                gain = len(yi) - new
                if gain > 0 and (best is None or gain > best[0]):
                    best = (gain, kind, i, j)
    return best


def _neutral_moves(ys):
    n = len(ys)
    for i, j in itertools.permutations(range(1, n + 1), 2):
        for kind in (RIGHT, RIGHT_INV, LEFT, LEFT_INV):
            new = _apply_move(ys, kind, i, j)
            if len(new[i - 1]) == len(ys[i - 1]) and new[i - 1]:
                yield (kind, i, j), new


def _escape_plateau(ys, depth=3):
    """Breadth-first search over length-preserving moves for a state that reduces."""
    frontier = [(ys, [])]
    seen = {ys}
    for _ in range(depth):
        nxt = []
        for state, path in frontier:
            for move, new in _neutral_moves(state):
                if new in seen:
                    continue
                seen.add(new)
                if _best_move(new) is not None:
                    return new, path + [move]
                nxt.append((new, path + [move]))
        frontier = nxt
    return None


def nielsen_moves(sigma):
    """Moves (kind, i, j) reducing sigma's images to length one, plus the final tuple."""
    ys = tuple(tuple(w.letters()) for w in sigma.images)
    moves = []
    while True:
        if any(not y for y in ys):
            raise NotAnAutomorphism("an image reduced to the identity")
        best = _best_move(ys)
        if best is not None:
            _, kind, i, j = best
            ys = _apply_move(ys, kind, i, j)
            moves.append((kind, i, j))
            continue
        if sum(len(y) for y in ys) == len(ys):
            return moves, ys
        escaped = _escape_plateau(ys)
        if escaped is None:
            raise NotAnAutomorphism(
                f"Nielsen reduction stalls at total length {sum(len(y) for y in ys)}")
        ys, path = escaped
        moves.extend(path)


def factorize(sigma):
    """A GenWord w with evaluate_genword(w, n) == sigma."""
    n = sigma.rank
    d = move_dictionary(n)
    moves, ys = nielsen_moves(sigma)
    # E_k ... E_1 sigma = pi (signed permutation); then reduce pi to the identity
    ys = [y[0] for y in ys]
    if sorted(abs(a) for a in ys) != list(range(1, n + 1)):
        raise NotAnAutomorphism("residue is not a signed permutation")
    pieces = [d.moves[m].inverse() for m in moves]
    tail = []
    for i in range(1, n + 1):
        if ys[i - 1] < 0:
            ys[i - 1] = -ys[i - 1]
            tail.append(d.inversion[i])
    for i in range(1, n + 1):
        if ys[i - 1] != i:
            j = ys.index(i) + 1
            ys[i - 1], ys[j - 1] = ys[j - 1], ys[i - 1]
            tail.append(d.transposition[i, j])
    # T_m..T_1 E_k..E_1 sigma = 1, so sigma = E_1^-1..E_k^-1 T_1^-1..T_m^-1
    word = GenWord()
    for p in pieces:
        word = word * p
    for t in tail:
        word = word * t.inverse()
    return word.free_reduce()


def invert_automorphism(sigma):
    return evaluate_genword(factorize(sigma).inverse(), sigma.rank)
