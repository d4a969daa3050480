"""Prime-field arithmetic and exact linear algebra.

Everything here is deterministic and exact: elements are residues mod a
prime q, inverses come from Fermat's little theorem, and the elimination
routines always take the first nonzero pivot in row order.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import DuplicateNodes, SingularMatrix

MAX_MODULUS = 2**31  # keeps products of two residues inside 64-bit range

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n below 3.3 * 10**24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_prime_at_least(n: int) -> int:
    """Smallest prime >= n (and >= 2)."""
    c = max(2, n)
    while not is_prime(c):
        c += 1
    return c


class PrimeField:
    """The field of integers modulo a prime q, with 2 <= q < 2**31."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not isinstance(q, int) or not is_prime(q):
            raise ValueError(f"modulus must be prime, got {q!r}")
        if q >= MAX_MODULUS:
            raise ValueError(
                f"modulus {q} exceeds the supported bound {MAX_MODULUS}"
            )
        self.q = q

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.q, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self) -> Iterator[FieldElement]:
        return (FieldElement(v, self) for v in range(self.q))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"


class FieldElement:
    """A residue in a PrimeField, with the usual operator overloads."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.q
        self.field = field

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            assert other.field == self.field, "elements from different fields"
            return other
        if isinstance(other, int):
            return FieldElement(other, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value + o.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value - o.value, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(o.value - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o.value, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, exponent: int):
        assert exponent >= 0, "negative exponents: use inverse() explicitly"
        return FieldElement(pow(self.value, exponent, self.field.q), self.field)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, self.field.q - 2, self.field.q), self.field)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value}"


class FieldMatrix:
    """A dense matrix of FieldElements, stored row-major."""

    __slots__ = ("field", "n_rows", "n_cols", "entries")

    def __init__(self, field: PrimeField, n_rows: int, n_cols: int,
                 entries: Sequence[FieldElement]):
        assert len(entries) == n_rows * n_cols
        self.field = field
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries = list(entries)

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence]) -> "FieldMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        flat = []
        for row in rows:
            assert len(row) == n_cols, "ragged rows"
            for e in row:
                flat.append(e if isinstance(e, FieldElement) else field(e))
        return cls(field, n_rows, n_cols, flat)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FieldMatrix":
        return cls.from_rows(
            field, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    def entry(self, i: int, j: int) -> FieldElement:
        return self.entries[i * self.n_cols + j]

    def row(self, i: int) -> list[FieldElement]:
        return self.entries[i * self.n_cols:(i + 1) * self.n_cols]

    def column(self, j: int) -> list[FieldElement]:
        return [self.entry(i, j) for i in range(self.n_rows)]

    def rows(self) -> list[list[FieldElement]]:
        return [self.row(i) for i in range(self.n_rows)]

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix.from_rows(
            self.field, [self.column(j) for j in range(self.n_cols)]
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (self.field == other.field
                and self.n_rows == other.n_rows
                and self.n_cols == other.n_cols
                and self.entries == other.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self.rows())
        return f"FieldMatrix({self.n_rows}x{self.n_cols}: {body})"


def mat_mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    assert a.field == b.field and a.n_cols == b.n_rows
    q = a.field.q
    out = []
    for i in range(a.n_rows):
        arow = a.row(i)
        for j in range(b.n_cols):
            acc = 0
            for k in range(a.n_cols):
                acc += arow[k].value * b.entry(k, j).value
            out.append(FieldElement(acc % q, a.field))
    return FieldMatrix(a.field, a.n_rows, b.n_cols, out)


def _eliminate(rows: list[list[int]], q: int) -> tuple[list[list[int]], list[int]]:
    """Row echelon form over F_q; returns (rows, pivot column list).

    Pivot choice is always the first row (top to bottom) with a nonzero
    entry in the current column, so the result is deterministic.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    pivots = []
    r = 0
    for col in range(n_cols):
        piv = None
        for i in range(r, n_rows):
            if rows[i][col] % q != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], q - 2, q)
        rows[r] = [(e * inv) % q for e in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][col] % q != 0:
                factor = rows[i][col]
                rows[i] = [(a - factor * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def mat_rank(m: FieldMatrix) -> int:
    rows = [[e.value for e in m.row(i)] for i in range(m.n_rows)]
    if not rows:
        return 0
    _, pivots = _eliminate(rows, m.field.q)
    return len(pivots)


def mat_solve(a: FieldMatrix, b: Sequence) -> list[FieldElement]:
    """Solve the square system a * x = b; raises SingularMatrix otherwise."""
    assert a.n_rows == a.n_cols, "mat_solve needs a square matrix"
    field = a.field
    q = field.q
    n = a.n_rows
    if len(b) != n:
        raise SingularMatrix(f"rhs length {len(b)} does not match size {n}")
    rhs = [e.value if isinstance(e, FieldElement) else e % q for e in b]
    rows = [[a.entry(i, j).value for j in range(n)] + [rhs[i]] for i in range(n)]
    rows, pivots = _eliminate(rows, q)
    if pivots != list(range(n)):
        raise SingularMatrix("coefficient matrix is singular")
    return [FieldElement(rows[i][n], field) for i in range(n)]


def mat_inverse(a: FieldMatrix) -> FieldMatrix:
    assert a.n_rows == a.n_cols
    n = a.n_rows
    cols = []
    for j in range(n):
        e_j = [1 if i == j else 0 for i in range(n)]
        cols.append(mat_solve(a, e_j))
    return FieldMatrix.from_rows(a.field, cols).transpose()


def vandermonde(nodes: Sequence[FieldElement], height: int) -> FieldMatrix:
    """Matrix with entry (i, j) = nodes[j] ** i, for i in range(height).

    The nodes must be pairwise distinct; any collision makes downstream
    interpolation ill-posed, so it is rejected here.
    """
    vals = [n.value for n in nodes]
    if len(set(vals)) != len(vals):
        raise DuplicateNodes(f"evaluation points collide: {vals}")
    field = nodes[0].field
    rows = []
    power = [field.one for _ in nodes]
    for _ in range(height):
        rows.append(list(power))
        power = [p * x for p, x in zip(power, nodes)]
    return FieldMatrix.from_rows(field, rows)
