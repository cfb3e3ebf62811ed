"""Smith normal form over Z with unimodular witnesses.

Dense Python-int arithmetic; the matrices handed to it here are at most a
few hundred rows.  Every result is checked by re-multiplication.
"""

from dataclasses import dataclass

from . import intmat


class SNFVerificationError(AssertionError):
    pass


@dataclass
class SNFResult:
    """U A V = D with D diagonal, d_1 | d_2 | ..., and U, V unimodular.

    ``U_inv`` is U^-1, kept because lifting quotient generators needs it.
    """

    A: list
    D: list
    U: list
    V: list
    U_inv: list

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def invariant_factors(self):
        return [d for d in self.diagonal if d]

    @property
    def rank(self):
        return len(self.invariant_factors)

    def verify(self):
        m = len(self.A)
        n = len(self.A[0]) if m else len(self.V)
        if m and intmat.matmul(intmat.matmul(self.U, self.A), self.V) != self.D:
            raise SNFVerificationError("U A V != D")
        if abs(intmat.det(self.U)) != 1 or abs(intmat.det(self.V)) != 1:
            raise SNFVerificationError("witness is not unimodular")
        if intmat.matmul(self.U, self.U_inv) != intmat.identity(m):
            raise SNFVerificationError("U_inv is not the inverse of U")
        for i in range(m):
            for j in range(n):
                if i != j and self.D[i][j]:
                    raise SNFVerificationError("D is not diagonal")
        diag = self.diagonal
        for a, b in zip(diag, diag[1:]):
            if a < 0 or (a == 0 and b != 0) or (a and b % a):
                raise SNFVerificationError(f"divisibility chain broken at {a}, {b}")
        return True


def smith_normal_form(A, verify=True):
    A = [list(map(int, r)) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(r) for r in A]
    U = intmat.identity(m)
    Ui = intmat.identity(m)
    V = intmat.identity(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i != j:
            for r in D:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q row_src
        if q:
            D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
            for r in Ui:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        if q:
            for r in D:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            piv = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    if row[j] and (piv is None or abs(row[j]) < abs(D[piv[0]][piv[1]])):
                        piv = (i, j)
                        if abs(row[j]) == 1:
                            break
                if piv and abs(D[piv[0]][piv[1]]) == 1:
                    break
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for r in Ui:
                r[t] = -r[t]
        if all(D[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break

    res = SNFResult(A, D, U, V, Ui)
    if verify:
        res.verify()
    return res
