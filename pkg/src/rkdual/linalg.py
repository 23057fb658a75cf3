"""Exact sparse matrices, Smith normal form, and bounded chain complexes.

Matrices are stored as sparse triplets with deterministic iteration order;
the Smith normal form is the classical pivot/clear/divide algorithm, adequate
for the desk-scale inputs this package targets.  Chain complexes are graded
families of free modules with explicit differentials; homology, mapping
cones and cone-acyclicity (the certificate used for "chain equivalence" of
bounded free complexes over Z, Q and Z/p) live here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import Ring


class Matrix:
    """A sparse matrix over an exact ring.

    Entries are held in a dict keyed by (row, col); zeros are never stored.
    Out-of-range access raises rather than zero-extending.
    """

    __slots__ = ("ring", "nrows", "ncols", "_data", "_rowmap")

    def __init__(self, ring: Ring, nrows: int, ncols: int, data=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimensions")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self._data = {}
        self._rowmap = None
        if data:
            for (i, j), v in data.items():
                self._check_index(i, j)
                v = ring.coerce(v)
                if not ring.is_zero(v):
                    self._data[(i, j)] = v

    def _check_index(self, i, j):
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(
                f"entry ({i},{j}) outside {self.nrows}x{self.ncols} matrix")

    @classmethod
    def zero(cls, ring, nrows, ncols):
        return cls(ring, nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, {(i, i): ring.one for i in range(n)})

    @classmethod
    def from_rows(cls, ring, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                data[(i, j)] = v
        return cls(ring, nrows, ncols, data)

    @classmethod
    def diagonal(cls, ring, values, nrows=None, ncols=None):
        n = len(values)
        m = cls(ring, nrows if nrows is not None else n,
                ncols if ncols is not None else n)
        for i, v in enumerate(values):
            v = ring.coerce(v)
            if not ring.is_zero(v):
                m._data[(i, i)] = v
        return m

    def entry(self, i, j):
        self._check_index(i, j)
        return self._data.get((i, j), self.ring.zero)

    def entries(self):
        """Nonzero entries in deterministic (row, col) order."""
        for key in sorted(self._data):
            yield key, self._data[key]

    def _rows(self):
        if self._rowmap is None:
            rm = {}
            for (i, j), v in self._data.items():
                rm.setdefault(i, []).append((j, v))
            self._rowmap = rm
        return self._rowmap

    def column(self, j):
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} outside matrix")
        out = [(i, v) for (i, jj), v in self._data.items() if jj == j]
        out.sort()
        return out

    def to_rows(self):
        z = self.ring.zero
        rows = [[z] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self._data.items():
            rows[i][j] = v
        return rows

    def transpose(self):
        return Matrix(self.ring, self.ncols, self.nrows,
                      {(j, i): v for (i, j), v in self._data.items()})

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows or self.ring != other.ring:
            raise ValueError("incompatible matrix product")
        ring = self.ring
        acc = {}
        brows = other._rows()
        for (i, k), a in self._data.items():
            row = brows.get(k)
            if not row:
                continue
            for j, b in row:
                key = (i, j)
                c = ring.add(acc.get(key, ring.zero), ring.mul(a, b))
                if ring.is_zero(c):
                    acc.pop(key, None)
                else:
                    acc[key] = c
        return Matrix(ring, self.nrows, other.ncols, acc)

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("incompatible matrix sum")
        ring = self.ring
        acc = dict(self._data)
        for key, v in other._data.items():
            c = ring.add(acc.get(key, ring.zero), v)
            if ring.is_zero(c):
                acc.pop(key, None)
            else:
                acc[key] = c
        return Matrix(ring, self.nrows, self.ncols, acc)

    def __sub__(self, other):
        return self + other.scale(self.ring.coerce(-1))

    def __neg__(self):
        return self.scale(self.ring.coerce(-1))

    def scale(self, c):
        ring = self.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return Matrix(ring, self.nrows, self.ncols)
        return Matrix(ring, self.nrows, self.ncols,
                      {k: ring.mul(c, v) for k, v in self._data.items()})

    def is_zero(self):
        return not self._data

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self._data == other._data)

    def __repr__(self):
        return f"Matrix({self.ring}, {self.nrows}x{self.ncols}, {len(self._data)} nonzero)"


def smith_normal_form(mat: Matrix):
    """Invariant factors and rank of a matrix over Z, Q or Z/p.

    Returns ``(factors, rank)`` with each factor dividing the next and
    normalized to its canonical associate (positive over Z, 1 over a field).
    """
    ring = mat.ring
    m, n = mat.nrows, mat.ncols
    A = mat.to_rows()
    factors = []
    t = 0

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]

    while t < m and t < n:
        # deterministic pivot: smallest |value| over Z, first nonzero over a field
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if ring.is_zero(v):
                    continue
                if ring.is_field:
                    pivot = (i, j)
                    break
                if pivot is None or abs(v) < abs(A[pivot[0]][pivot[1]]):
                    pivot = (i, j)
            if pivot is not None and ring.is_field:
                break
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        while True:
            if ring.kind == "Z" and A[t][t] < 0:
                A[t] = [-x for x in A[t]]
            progress = False
            for i in range(t + 1, m):
                if ring.is_zero(A[i][t]):
                    continue
                q, _ = ring.divmod(A[i][t], A[t][t])
                if not ring.is_zero(q):
                    trow = A[t]
                    A[i] = [ring.sub(x, ring.mul(q, y)) for x, y in zip(A[i], trow)]
                if not ring.is_zero(A[i][t]):
                    swap_rows(t, i)      # strictly smaller pivot
                    progress = True
                    break
            if progress:
                continue
            for j in range(t + 1, n):
                if ring.is_zero(A[t][j]):
                    continue
                q, _ = ring.divmod(A[t][j], A[t][t])
                if not ring.is_zero(q):
                    for row in A:
                        row[j] = ring.sub(row[j], ring.mul(q, row[t]))
                if not ring.is_zero(A[t][j]):
                    swap_cols(t, j)
                    progress = True
                    break
            if progress:
                continue
            # pivot row and column are clear; enforce divisibility over Z
            if ring.kind == "Z":
                p = A[t][t]
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    A[t] = [ring.add(x, y) for x, y in zip(A[t], A[bad])]
                    continue
            break
        factors.append(ring.normalize_factor(A[t][t]))
        t += 1
    return tuple(factors), t


def rank(mat: Matrix) -> int:
    return smith_normal_form(mat)[1]


class ChainComplexError(ValueError):
    pass


class ChainComplex:
    """A bounded complex of finitely generated free modules.

    ``spaces`` maps a degree to its rank, ``diff`` maps a degree q to the
    matrix of d_q : C_q -> C_{q-1}.  Optional per-degree basis names make
    reports readable.
    """

    __slots__ = ("ring", "spaces", "diff", "names")

    def __init__(self, ring, spaces, diff, names=None):
        self.ring = ring
        self.spaces = {q: n for q, n in spaces.items() if n}
        self.diff = {}
        self.names = dict(names) if names else {}
        for q, mat in diff.items():
            if mat.is_zero():
                continue
            if mat.ncols != self.rank(q) or mat.nrows != self.rank(q - 1):
                raise ChainComplexError(
                    f"differential at degree {q} has shape "
                    f"{mat.nrows}x{mat.ncols}, expected "
                    f"{self.rank(q - 1)}x{self.rank(q)}")
            self.diff[q] = mat

    def degrees(self):
        return sorted(self.spaces)

    def rank(self, q) -> int:
        return self.spaces.get(q, 0)

    def total_rank(self) -> int:
        return sum(self.spaces.values())

    def d(self, q) -> Matrix:
        mat = self.diff.get(q)
        if mat is None:
            return Matrix.zero(self.ring, self.rank(q - 1), self.rank(q))
        return mat

    def validate(self):
        """Check d∘d = 0, reporting the first failing degree."""
        for q in self.degrees():
            if not (self.d(q) * self.d(q + 1)).is_zero():
                raise ChainComplexError(
                    f"d∘d != 0 starting from degree {q + 1}")
        return self

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in self.spaces.items())


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def describe(self, ring: Ring) -> str:
        if self.betti == 0 and not self.torsion:
            return "0"
        if ring.kind == "Z":
            free = "Z"
        elif ring.kind == "Q":
            free = "Q"
        else:
            free = f"Z/{ring.p}"
        parts = []
        if self.betti == 1:
            parts.append(free)
        elif self.betti > 1:
            parts.append(f"{free}^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts)


def homology(cx: ChainComplex, check: bool = True):
    """Per-degree homology of a bounded free complex.

    Over Z the value at q is (betti, invariant factors of the incoming
    differential that are not units); over Q and Z/p torsion is empty.
    """
    if check:
        cx.validate()
    degs = cx.degrees()
    if not degs:
        return {}
    ring = cx.ring
    snf = {}

    def snf_at(q):
        if q not in snf:
            snf[q] = smith_normal_form(cx.d(q))
        return snf[q]

    out = {}
    for q in range(min(degs), max(degs) + 1):
        _, r_out = snf_at(q)
        fac_in, r_in = snf_at(q + 1)
        betti = cx.rank(q) - r_out - r_in
        torsion = tuple(f for f in fac_in if not ring.is_unit(f))
        out[q] = HomologyGroup(betti, torsion)
    return out


def is_acyclic(cx: ChainComplex) -> bool:
    return all(h.is_trivial() for h in homology(cx).values())


class ChainMap:
    """A degree-d map of chain complexes: d^D f = (-1)^d f d^C."""

    __slots__ = ("src", "tgt", "degree", "comps")

    def __init__(self, src, tgt, comps, degree=0):
        self.src = src
        self.tgt = tgt
        self.degree = degree
        self.comps = {}
        for q, mat in comps.items():
            if mat.ncols != src.rank(q) or mat.nrows != tgt.rank(q + degree):
                raise ChainComplexError(
                    f"component at degree {q} has shape "
                    f"{mat.nrows}x{mat.ncols}, expected "
                    f"{tgt.rank(q + degree)}x{src.rank(q)}")
            if not mat.is_zero():
                self.comps[q] = mat

    @classmethod
    def identity(cls, cx):
        return cls(cx, cx, {q: Matrix.identity(cx.ring, cx.rank(q))
                            for q in cx.degrees()})

    def component(self, q) -> Matrix:
        mat = self.comps.get(q)
        if mat is None:
            return Matrix.zero(self.src.ring, self.tgt.rank(q + self.degree),
                               self.src.rank(q))
        return mat

    def validate(self):
        sign = self.src.ring.coerce((-1) ** (self.degree % 2))
        for q in set(self.src.degrees()) | set(self.comps):
            lhs = self.tgt.d(q + self.degree) * self.component(q)
            rhs = (self.component(q - 1) * self.src.d(q)).scale(sign)
            if lhs != rhs:
                raise ChainComplexError(f"not a chain map at degree {q}")
        return self

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        comps = {}
        for q in other.src.degrees():
            comps[q] = self.component(q + other.degree) * other.component(q)
        return ChainMap(other.src, self.tgt, comps,
                        degree=self.degree + other.degree)

    def is_zero(self):
        return all(m.is_zero() for m in self.comps.values())


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone of a degree-0 chain map f: C -> D.

    Cone_q = C_{q-1} (+) D_q with d(c, x) = (-d c, f c + d x).
    """
    if f.degree != 0:
        raise ChainComplexError("mapping cone needs a degree-0 chain map")
    C, D = f.src, f.tgt
    ring = C.ring
    spaces = {}
    for q in set(d + 1 for d in C.degrees()) | set(D.degrees()):
        n = C.rank(q - 1) + D.rank(q)
        if n:
            spaces[q] = n
    diff = {}
    for q in spaces:
        nc, nd = C.rank(q - 1), D.rank(q)
        rows_c, rows_d = C.rank(q - 2), D.rank(q - 1)
        data = {}
        dC = C.d(q - 1)
        for (i, j), v in dC._data.items():
            data[(i, j)] = ring.neg(v)
        for (i, j), v in f.component(q - 1)._data.items():
            data[(rows_c + i, j)] = v
        for (i, j), v in D.d(q)._data.items():
            data[(rows_c + i, nc + j)] = v
        diff[q] = Matrix(ring, rows_c + rows_d, nc + nd, data)
    return ChainComplex(ring, spaces, diff)


def is_cone_acyclic(f: ChainMap) -> bool:
    """True iff the mapping cone of f has vanishing homology in every degree.

    For bounded complexes of finitely generated free modules over Z, Q or
    Z/p this is equivalent to f being a chain equivalence.  Rejects inputs
    that are not chain maps.
    """
    f.validate()
    return is_acyclic(mapping_cone(f))
