"""Dual cells, the cell structure a control map induces on its source, and
the identification of its cellular chain complex with the dual of cochains.

For a simplex T of X and a face s of pi(T), the dual cell is the set of
strictly decreasing chains in the subdivision that start inside T and end
over s; it has dimension dim T - dim s, its interior consists of the chains
starting exactly at T and ending exactly over s, and the interiors of all
cells partition the subdivision.  The cellular chain complex is the blocked
tensor of X-chains with K-cochains; a basis cell T⊗s* has the boundary

    d[T_s]  =  sum_{S<T} [T,S] [S_s]  +  (-1)^{1+dim T - dim s} sum_{s<r} [r,s] [T_r]

with all coefficients +-1 on codimension-one cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix, homology
from .rkcore import RKComplex, RKMap, delta_chain, dual_star, epsilon
from .duality import Dualizer, tensor_k, tensor_map_left
from .simplicial import (DerivedComplex, InputError, KSpace, KSpaceMap,
                         barycentric_subdivision, incidence_canonical,
                         simplex_name)


def dual_cone(sigma, derived: DerivedComplex):
    """Chains of the subdivision whose smallest entry contains sigma."""
    sset = set(sigma)
    out = [c for c in derived.prime.all_simplices() if sset <= set(c[-1])]
    return tuple(out)


def dual_cell(sigma, tau, derived: DerivedComplex):
    """Chains with smallest entry containing sigma and largest inside tau;
    empty unless sigma <= tau."""
    sset, tset = set(sigma), set(tau)
    out = [c for c in derived.prime.all_simplices()
           if sset <= set(c[-1]) and set(c[0]) <= tset]
    return tuple(out)


@dataclass
class DualCell:
    """One cell of the induced structure: the pair (T, sigma) with its chain
    set, split into interior, inner boundary and outer boundary."""

    T: tuple
    sigma: tuple
    simplices: tuple
    interior: frozenset
    inner_boundary: frozenset
    outer_boundary: frozenset

    @property
    def dim(self):
        return (len(self.T) - 1) - (len(self.sigma) - 1)

    def top_dim_reached(self) -> bool:
        return max(len(c) - 1 for c in self.simplices) == self.dim if self.simplices else False

    @property
    def name(self):
        return f"({simplex_name(self.T)}|{simplex_name(self.sigma)})"


class BallComplex:
    """All dual cells of a K-space, with the combinatorial certificates.

    ``check`` verifies: the dimension count dim T_s = dim T - dim s, the
    partition of the subdivision by open cells, the Euler characteristic
    chain X_K ~ X' ~ X, and the boundary decomposition of each cell into
    inner and outer parts.
    """

    def __init__(self, ks: KSpace, derived: DerivedComplex | None = None):
        self.ks = ks
        self.derived = derived or barycentric_subdivision(ks.X)
        self.cells = {}
        pi = ks.pi
        chains = tuple(self.derived.prime.all_simplices())
        info = [(c, c[0], pi.image(c[-1])) for c in chains]
        for T in ks.X.all_simplices():
            tset = set(T)
            for sigma in ks.K.closure(pi.image(T)):
                members = tuple(c for c, c0, clast in info
                                if set(c0) <= tset and set(sigma) <= set(clast))
                interior, inner, outer = set(), set(), set()
                for c in members:
                    if pi.image(c[-1]) != sigma:
                        inner.add(c)
                    if c[0] != T:
                        outer.add(c)
                    if pi.image(c[-1]) == sigma and c[0] == T:
                        interior.add(c)
                self.cells[(T, sigma)] = DualCell(
                    T, sigma, members, frozenset(interior),
                    frozenset(inner), frozenset(outer))

    def cell(self, T, sigma) -> DualCell:
        return self.cells[(T, sigma)]

    def census(self):
        out = {}
        for cell in self.cells.values():
            out[cell.dim] = out.get(cell.dim, 0) + 1
        return out

    def euler_characteristic(self):
        return sum((-1) ** d * n for d, n in self.census().items())

    def check(self):
        failures = []
        # dimension count and nonemptiness
        for cell in self.cells.values():
            if not cell.simplices or not cell.top_dim_reached():
                failures.append(f"{cell.name}: dimension {cell.dim} not realized")
        # open-cell partition of the subdivision
        seen = {}
        for c in self.derived.prime.all_simplices():
            key = (c[0], self.ks.pi.image(c[-1]))
            if key not in self.cells:
                failures.append(f"chain {simplex_name(c)} has no carrier cell")
                continue
            if c not in self.cells[key].interior:
                failures.append(f"chain {simplex_name(c)} missed its interior")
            seen[key] = seen.get(key, 0) + 1
        for (T, sigma), cell in self.cells.items():
            if len(cell.interior) != seen.get((T, sigma), 0):
                failures.append(f"{cell.name}: interior overcounted")
        # boundary decomposition: members minus interior = union of inner and
        # outer cells, each themselves cells of the complex
        for (T, sigma), cell in self.cells.items():
            inner = set()
            for rho in self.ks.K.star(sigma):
                if rho != sigma and (T, rho) in self.cells:
                    inner.update(self.cells[(T, rho)].simplices)
            outer = set()
            for S in self.ks.X.closure(T):
                if S != T and (S, sigma) in self.cells:
                    outer.update(self.cells[(S, sigma)].simplices)
            if inner != set(cell.inner_boundary):
                failures.append(f"{cell.name}: inner boundary mismatch")
            if outer != set(cell.outer_boundary):
                failures.append(f"{cell.name}: outer boundary mismatch")
            if set(cell.simplices) - set(cell.interior) != inner | outer:
                failures.append(f"{cell.name}: boundary decomposition fails")
        # Euler characteristics agree
        chi_x = self.ks.X.euler_characteristic()
        chi_prime = self.derived.prime.euler_characteristic()
        if not (self.euler_characteristic() == chi_prime == chi_x):
            failures.append("Euler characteristics disagree")
        return failures


class OrientationPair:
    """Oriented bases for the chains of K and of X.

    ``bk`` and ``bx`` map a simplex to +-1 against its canonical ordering.
    A valid pair satisfies the compatibility identity: whenever pi is
    injective on the vertices of T with image s, the pushforward of the
    basis element of T is (-1)^{dim s} times the basis element of s.
    """

    def __init__(self, ks: KSpace, bk=None, bx=None):
        self.ks = ks
        self.bk = {s: 1 for s in ks.K.all_simplices()}
        self.bx = {s: 1 for s in ks.X.all_simplices()}
        if bk:
            self.bk.update(bk)
        if bx:
            self.bx.update(bx)

    @classmethod
    def standard(cls, ks: KSpace) -> "OrientationPair":
        """Lexicographic on K; on X, pull the image ordering back through pi
        and twist by (-1)^dim; lexicographic where pi degenerates."""
        bx = {}
        for T in ks.X.all_simplices():
            if ks.pi.is_injective_on(T):
                image, s = ks.pi.chain_image(T)
                bx[T] = s * (-1 if (len(image) - 1) % 2 else 1)
            else:
                bx[T] = 1
        return cls(ks, None, bx)

    @classmethod
    def lexicographic(cls, ks: KSpace) -> "OrientationPair":
        return cls(ks)

    def validate(self):
        for T in self.ks.X.all_simplices():
            if not self.ks.pi.is_injective_on(T):
                continue
            image, s = self.ks.pi.chain_image(T)
            want = self.bk[image] * (-1 if (len(image) - 1) % 2 else 1)
            if self.bx[T] * s != want:
                raise InputError(
                    f"orientation of {simplex_name(T)} breaks the "
                    f"pushforward-compatibility identity")
        return self

    def pullback_sign(self, T) -> int:
        """Sign of the basis element of T against the orientation pulled
        back through pi; requires pi injective on T."""
        image, s = self.ks.pi.chain_image(T)
        return self.bx[T] * s * self.bk[image]


@dataclass
class CellularComplex:
    """The cellular chain complex of the induced cell structure, as the
    blocked tensor of X-chains with K-cochains, plus the cell dictionary."""

    rk: RKComplex
    ball: BallComplex
    orientation: OrientationPair
    cells: dict = field(default_factory=dict)   # generator name -> (T, sigma)

    def cell_of(self, gen_name):
        return self.cells[gen_name]


def cellular_chain_complex(ks: KSpace, ring, orientation: OrientationPair,
                           ball: BallComplex | None = None,
                           check_display: bool = True) -> CellularComplex:
    """Build the cellular complex and verify its boundary formula.

    The generic blocked-tensor differential of each basis cell is compared
    against the incidence display (outer faces [T,S][S_s], inner cofaces
    with the extra sign), and every nonzero coefficient is checked to be a
    unit sitting on a codimension-one cell.
    """
    orientation.validate()
    dx = delta_chain(ks, ring, orientation.bx)
    dstark = Dualizer(ks.K, ring, orientation.bk).dstar_k
    rk = tensor_k(dx, dstark)
    ball = ball or BallComplex(ks)
    cells = {}
    for q in rk.degrees():
        for g in rk.gens_at(q):
            _, gl, gr = g.data
            T = gl.data[1]
            sigma = gr.data[1].data[1]
            cells[g.name] = (T, sigma)
            if (T, sigma) not in ball.cells:
                raise InputError(f"generator {g.name} is not a cell")
    cx = CellularComplex(rk, ball, orientation, cells)
    if check_display:
        errors = verify_boundary_display(ks, cx)
        if errors:
            raise InputError("; ".join(errors))
    return cx


def verify_boundary_display(ks: KSpace, cx: CellularComplex):
    """Check the incidence form of the cellular boundary, and that nonzero
    coefficients are units on codimension-one cells only."""
    rk = cx.rk
    ring = rk.ring
    bx, bk = cx.orientation.bx, cx.orientation.bk
    failures = []
    for q in rk.degrees():
        gens_lo = rk.gens_at(q - 1)
        pos = rk._index.get(q - 1, {})
        for j, g in enumerate(rk.gens_at(q)):
            T, sigma = cx.cells[g.name]
            expect = {}
            for i, S in ks.X.facets(T):
                if not rk.leq(sigma, ks.pi.image(S)):
                    continue
                coeff = bx[T] * bx[S] * (-1 if i % 2 else 1)
                name = f"<{simplex_name(S)}>⊗<{simplex_name(sigma)}>*"
                expect[name] = expect.get(name, 0) + coeff
            sign_inner = (-1) ** ((1 + len(T) - len(sigma)) % 2)
            for rho in ks.K.star(sigma):
                if len(rho) != len(sigma) + 1 or not rk.leq(rho, ks.pi.image(T)):
                    continue
                coeff = (sign_inner * bk[rho] * bk[sigma]
                         * incidence_canonical(rho, sigma))
                name = f"<{simplex_name(T)}>⊗<{simplex_name(rho)}>*"
                expect[name] = expect.get(name, 0) + coeff
            expect = {n: c for n, c in expect.items() if c}
            got = {gens_lo[i].name: v for (i, jj), v in rk.d(q).entries() if jj == j}
            want = {n: ring.coerce(c) for n, c in expect.items()}
            if got != want:
                failures.append(f"boundary display fails at {g.name}")
            for name, v in got.items():
                if not ring.is_unit(v):
                    failures.append(f"non-unit boundary coefficient at {g.name}")
                TT, ss = cx.cells[name]
                if (len(TT) - len(ss)) != (len(T) - len(sigma)) - 1:
                    failures.append(f"boundary of {g.name} hits a non-facet cell")
    return failures


def verify_cellular_homology(ks: KSpace, cx: CellularComplex):
    """Homology of the assembled cellular complex equals homology of X."""
    from .simplicial import chain_complex
    ring = cx.rk.ring
    cell_h = homology(cx.rk.underlying())
    simp_h = homology(chain_complex(ks.X, ring))
    degrees = set(q for q, h in cell_h.items() if not h.is_trivial())
    degrees |= set(q for q, h in simp_h.items() if not h.is_trivial())
    return all(cell_h.get(q, simp_h.get(q)) == simp_h.get(q, cell_h.get(q))
               for q in degrees), cell_h, simp_h


@dataclass
class CellularIso:
    """The degreewise bijection from the dual of cochains onto the cellular
    complex, with the complexes it connects."""

    map: RKMap
    dx: RKComplex
    dstar_x: RKComplex
    source: RKComplex       # dual of cochains, tensored with K-cochains
    target: CellularComplex
    dualizer: Dualizer


def cellular_iso(ks: KSpace, ring, orientation: OrientationPair,
                 cellular: CellularComplex | None = None) -> CellularIso:
    """The identification of the dual of X-cochains with the cellular
    complex: the double-dual collapse tensored with the identity."""
    dx = delta_chain(ks, ring, orientation.bx)
    dstar_x = dual_star(dx)
    dz = Dualizer(ks.K, ring, orientation.bk)
    cellular = cellular or cellular_chain_complex(ks, ring, orientation)
    phi = tensor_map_left(epsilon(dx), dz.dstar_k)
    if not phi.tgt.same_shape(cellular.rk):
        raise InputError("cellular complex was built with another orientation")
    phi = RKMap(phi.src, cellular.rk, dict(phi.comps))
    return CellularIso(phi, dx, dstar_x, phi.src, cellular, dz)


def induced_chain_map(fmap: KSpaceMap, ring, or_src: OrientationPair,
                      or_tgt: OrientationPair) -> RKMap:
    """Pushforward on labeled chains; kills simplices the map degenerates."""
    fmap.validate()
    dx_src = delta_chain(fmap.src, ring, or_src.bx)
    dx_tgt = delta_chain(fmap.tgt, ring, or_tgt.bx)
    comps = {}
    for q in dx_src.degrees():
        data = {}
        for j, g in enumerate(dx_src.gens_at(q)):
            S = g.data[1]
            out = fmap.f.chain_image(S)
            if out is None:
                continue
            image, s = out
            coeff = or_src.bx[S] * s * or_tgt.bx[image]
            data[(dx_tgt.index_of(q, f"<{simplex_name(image)}>"), j)] = coeff
        comps[q] = Matrix(ring, dx_tgt.rank(q), dx_src.rank(q), data)
    return RKMap(dx_src, dx_tgt, comps)


def induced_cell_map(fmap: KSpaceMap, ring, or_src: OrientationPair,
                     or_tgt: OrientationPair) -> RKMap:
    """The chain map of cellular complexes induced by a map of K-spaces:
    push forward the X-chain factor, keep the K-cochain factor."""
    if or_src.bk != or_tgt.bk:
        raise InputError("K-space map needs one orientation of K on both sides")
    push = induced_chain_map(fmap, ring, or_src, or_tgt)
    dstark = Dualizer(fmap.src.K, ring, or_src.bk).dstar_k
    return tensor_map_left(push, dstark)
