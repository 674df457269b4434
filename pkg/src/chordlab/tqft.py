"""Positive-boundary two-dimensional TQFT over exact fields.

A finite-dimensional commutative Frobenius algebra without counit (unital
product m, cocommutative coproduct Delta that is a map of modules) determines
one operation per connected cobordism type: mu_{p,q}(g) : A^{tensor p} ->
A^{tensor q}, computed through the normal form

    mu_{p,q}(g) = Delta^(q-1) o H^g o m^(p-1),   H = m o Delta.

All arithmetic is exact: rationals (fractions.Fraction) or a prime field.
Operations with q = 0 do not exist in a positive-boundary theory (the counit
is obstructed); counit_solve analyzes whether a counit happens to exist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .chord import ChordDiagram
from .errors import ChordLabError, NoOutgoing

__all__ = [
    "Rationals",
    "PrimeField",
    "FrobeniusAlgebra",
    "OperationMatrix",
    "AxiomReport",
    "check_axioms",
    "mu",
    "verify_gluing",
    "operation_from_diagram",
    "counit_solve",
    "degree_shift",
    "pd2",
    "st2",
    "zero_coproduct_algebra",
    "builtin_algebra",
]


# ---------------------------------------------------------------------------
# ground fields
# ---------------------------------------------------------------------------

class Rationals:
    """Arbitrary-precision rational field; elements are Fraction."""

    name = "Q"

    def of(self, x) -> Fraction:
        return Fraction(x)

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def serialize(self, a) -> str:
        f = Fraction(a)
        return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(
            f.numerator
        )

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The field of integers modulo a prime; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def of(self, x) -> int:
        if isinstance(x, Fraction):
            return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def parse(self, text: str) -> int:
        return int(text) % self.p

    def serialize(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# dense exact matrices (row-major lists of lists)
# ---------------------------------------------------------------------------

def _zeros(F, rows, cols):
    return [[F.zero] * cols for _ in range(rows)]

def _identity(F, n):
    M = _zeros(F, n, n)
    for i in range(n):
        M[i][i] = F.one
    return M

def _matmul(F, A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    assert len(A[0]) == inner
    C = _zeros(F, rows, cols)
    for i in range(rows):
        Ai = A[i]
        Ci = C[i]
        for k in range(inner):
            a = Ai[k]
            if a == F.zero:
                continue
            Bk = B[k]
            for j in range(cols):
                Ci[j] = F.add(Ci[j], F.mul(a, Bk[j]))
    return C

def _kron(F, A, B):
    ra, ca, rb, cb = len(A), len(A[0]), len(B), len(B[0])
    C = _zeros(F, ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if a == F.zero:
                continue
            for k in range(rb):
                for l in range(cb):
                    C[i * rb + k][j * cb + l] = F.mul(a, B[k][l])
    return C

def _mat_eq(A, B):
    return len(A) == len(B) and all(ra == rb for ra, rb in zip(A, B))

def _mat_sub(F, A, B):
    return [
        [F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)
    ]


def _solve(F, A, b):
    """One solution x of Ax = b over F by Gaussian elimination, or None."""
    rows, cols = len(A), len(A[0])
    M = [list(A[i]) + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != F.zero), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != F.zero:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != F.zero:
            return None
    x = [F.zero] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def _is_invertible(F, A):
    n = len(A)
    M = [list(row) for row in A]
    for c in range(n):
        pivot = next((i for i in range(c, n) if M[i][c] != F.zero), None)
        if pivot is None:
            return False
        M[c], M[pivot] = M[pivot], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, x) for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != F.zero:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return True


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusAlgebra:
    """Commutative Frobenius algebra without counit over an exact field.

    product[i][j][k] is the e_k coefficient of e_i * e_j; coproduct[i][j][k]
    is the e_j (x) e_k coefficient of Delta(e_i); unit is the coefficient
    vector of 1.  degrees/ambient_n are optional grading data.
    """

    field_: object
    basis: tuple[str, ...]
    product: tuple            # d x d x d structure constants
    coproduct: tuple          # d x d x d structure constants
    unit: tuple
    degrees: tuple | None = None
    ambient_n: int | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def m_matrix(self):
        """d x d^2 matrix of the product in the tensor basis."""
        F, d = self.field_, self.dim
        M = _zeros(F, d, d * d)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    M[k][i * d + j] = self.product[i][j][k]
        return M

    def delta_matrix(self):
        """d^2 x d matrix of the coproduct."""
        F, d = self.field_, self.dim
        M = _zeros(F, d * d, d)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    M[j * d + k][i] = self.coproduct[i][j][k]
        return M

    def unit_matrix(self):
        """d x 1 matrix sending the field generator to the unit."""
        return [[u] for u in self.unit]


def _swap_matrix(F, d):
    M = _zeros(F, d * d, d * d)
    for i in range(d):
        for j in range(d):
            M[j * d + i][i * d + j] = F.one
    return M


@dataclass
class AxiomReport:
    passed: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(self.passed.values())


def _first_mismatch(A, B):
    for i, (ra, rb) in enumerate(zip(A, B)):
        for j, (a, b) in enumerate(zip(ra, rb)):
            if a != b:
                return (i, j, a, b)
    return None


def check_axioms(A: FrobeniusAlgebra) -> AxiomReport:
    """Verify the Frobenius axioms; on failure record a witness entry
    (matrix row, column, left value, right value)."""
    F, d = A.field_, A.dim
    m = A.m_matrix()
    D = A.delta_matrix()
    u = A.unit_matrix()
    I = _identity(F, d)
    swap = _swap_matrix(F, d)
    report = AxiomReport()

    def check(name, L, R):
        ok = _mat_eq(L, R)
        report.passed[name] = ok
        if not ok:
            report.witnesses[name] = _first_mismatch(L, R)

    check("associativity", _matmul(F, m, _kron(F, m, I)),
          _matmul(F, m, _kron(F, I, m)))
    check("commutativity", _matmul(F, m, swap), m)
    check("unit", _matmul(F, m, _kron(F, u, I)), I)
    check("coassociativity", _matmul(F, _kron(F, D, I), D),
          _matmul(F, _kron(F, I, D), D))
    check("cocommutativity", _matmul(F, swap, D), D)
    # Delta(a*b) = a*Delta(b) and Delta(a*b) = Delta(a)*b, acting on the
    # outer tensor factors
    dm = _matmul(F, D, m)
    check("module_left", dm,
          _matmul(F, _kron(F, m, I), _kron(F, I, D)))
    check("module_right", dm,
          _matmul(F, _kron(F, I, m), _kron(F, D, I)))

    if A.degrees is not None:
        n = A.ambient_n
        ok_m = all(
            A.product[i][j][k] == F.zero
            or A.degrees[i] + A.degrees[j] - n == A.degrees[k]
            for i in range(d) for j in range(d) for k in range(d)
        )
        ok_d = all(
            A.coproduct[i][j][k] == F.zero
            or A.degrees[j] + A.degrees[k] == A.degrees[i] - n
            for i in range(d) for j in range(d) for k in range(d)
        )
        report.passed["graded_product"] = ok_m
        report.passed["graded_coproduct"] = ok_d
    return report


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def degree_shift(p: int, q: int, g: int, n: int) -> int:
    """Degree change of mu_{p,q}(g) on a grading with ambient dimension n."""
    return -(2 * g - 2 + p + q) * n


@dataclass(frozen=True)
class OperationMatrix:
    p: int
    q: int
    genus: int
    matrix: tuple            # d^q rows x d^p columns
    degree_shift: int | None = None

    def rows(self):
        return [list(r) for r in self.matrix]


def _m_power(A, p):
    """Matrix of the iterated product A^{tensor p} -> A (p = 0: the unit)."""
    F, d = A.field_, A.dim
    if p == 0:
        return A.unit_matrix()
    M = _identity(F, d)
    for _ in range(p - 1):
        M = _matmul(F, A.m_matrix(), _kron(F, M, _identity(F, d)))
    return M


def _delta_power(A, q):
    """Matrix of the iterated coproduct A -> A^{tensor q} (q >= 1)."""
    F, d = A.field_, A.dim
    M = _identity(F, d)
    for _ in range(q - 1):
        M = _matmul(F, _kron(F, M, _identity(F, d)), A.delta_matrix())
    return M


def mu(A: FrobeniusAlgebra, p: int, q: int, g: int) -> OperationMatrix:
    """The operation of the connected genus-g cobordism from p to q circles.

    Computed as Delta^(q-1) o H^g o m^(p-1) with handle operator H = m o
    Delta.  q = 0 is rejected: a positive-boundary theory has no counit, so
    operations exist only for surfaces with at least one outgoing boundary.
    """
    if q < 1:
        raise NoOutgoing(
            "mu_{p,0}(g) does not exist: every component of the surface must "
            "have a positive number of outgoing boundary components, and the "
            "would-be counit (disk on an outgoing circle) is obstructed"
        )
    if p < 0 or g < 0:
        raise ChordLabError("p and g must be non-negative")
    F = A.field_
    H = _matmul(F, A.m_matrix(), A.delta_matrix())
    M = _m_power(A, p)
    for _ in range(g):
        M = _matmul(F, H, M)
    M = _matmul(F, _delta_power(A, q), M)
    shift = None
    if A.degrees is not None:
        shift = degree_shift(p, q, g, A.ambient_n)
    return OperationMatrix(
        p=p, q=q, genus=g,
        matrix=tuple(tuple(row) for row in M),
        degree_shift=shift,
    )


def verify_gluing(A, p, q, r, g1, g2):
    """Exact check of mu_{q,r}(g2) o mu_{p,q}(g1) = mu_{p,r}(g1+g2+q-1).

    Returns (True, None) or (False, difference matrix).
    """
    F = A.field_
    lhs = _matmul(F, mu(A, q, r, g2).rows(), mu(A, p, q, g1).rows())
    rhs = mu(A, p, r, g1 + g2 + q - 1).rows()
    if _mat_eq(lhs, rhs):
        return True, None
    return False, _mat_sub(F, lhs, rhs)


def operation_from_diagram(c: ChordDiagram, A: FrobeniusAlgebra) -> OperationMatrix:
    """The operation a chord diagram induces; it depends only on the type."""
    top = c.top_type()
    return mu(A, top.p, top.q, top.genus)


def counit_solve(A: FrobeniusAlgebra):
    """Solve (theta (x) id) o Delta = id for a counit theta.

    Returns (theta, pairing_nondegenerate) when a counit exists, else None.
    The pairing is theta o m.
    """
    F, d = A.field_, A.dim
    # unknowns theta_j; equations: sum_j coproduct[i][j][k] theta_j = delta_ik
    rows, rhs = [], []
    for i in range(d):
        for k in range(d):
            rows.append([A.coproduct[i][j][k] for j in range(d)])
            rhs.append(F.one if i == k else F.zero)
    theta = _solve(F, rows, rhs)
    if theta is None:
        return None
    pairing = [
        [
            sum_field(F, (F.mul(A.product[i][j][k], theta[k]) for k in range(d)))
            for j in range(d)
        ]
        for i in range(d)
    ]
    return tuple(theta), _is_invertible(F, pairing)


def sum_field(F, items):
    total = F.zero
    for x in items:
        total = F.add(total, x)
    return total


# ---------------------------------------------------------------------------
# built-in algebras
# ---------------------------------------------------------------------------

def _constants(F, d, entries):
    """Dense d x d x d tuple from {(i,j,k): value}."""
    return tuple(
        tuple(
            tuple(F.of(entries.get((i, j, k), 0)) for k in range(d))
            for j in range(d)
        )
        for i in range(d)
    )


def pd2(field_=None) -> FrobeniusAlgebra:
    """Rank-2 algebra {1, x}, x^2 = 0, Delta(1) = 1(x)x + x(x)1,
    Delta(x) = x(x)x.  Has a counit with nondegenerate pairing."""
    F = field_ or Rationals()
    product = _constants(F, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
    coprod = _constants(F, 2, {(0, 0, 1): 1, (0, 1, 0): 1, (1, 1, 1): 1})
    return FrobeniusAlgebra(
        field_=F, basis=("1", "x"), product=product, coproduct=coprod,
        unit=(F.one, F.zero),
    )


def st2(field_=None) -> FrobeniusAlgebra:
    """Graded rank-2 algebra {1 (deg 2), x (deg 0)}, x^2 = 0,
    Delta(1) = x(x)x, Delta(x) = 0, ambient dimension 2.  No counit."""
    F = field_ or Rationals()
    product = _constants(F, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
    coprod = _constants(F, 2, {(0, 1, 1): 1})
    return FrobeniusAlgebra(
        field_=F, basis=("1", "x"), product=product, coproduct=coprod,
        unit=(F.one, F.zero), degrees=(2, 0), ambient_n=2,
    )


def zero_coproduct_algebra(field_=None) -> FrobeniusAlgebra:
    """pd2's algebra with Delta = 0; no counit can exist."""
    F = field_ or Rationals()
    product = _constants(F, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
    coprod = _constants(F, 2, {})
    return FrobeniusAlgebra(
        field_=F, basis=("1", "x"), product=product, coproduct=coprod,
        unit=(F.one, F.zero),
    )


def builtin_algebra(name: str, field_=None) -> FrobeniusAlgebra:
    table = {"pd2": pd2, "st2": st2, "zero": zero_coproduct_algebra}
    if name not in table:
        raise ChordLabError(f"unknown builtin algebra {name!r}")
    return table[name](field_)
