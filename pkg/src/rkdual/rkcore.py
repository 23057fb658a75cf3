"""Complexes of free modules blocked over the face poset of a control complex.

A blocked module assigns every basis generator a label, a simplex of K; a
blocked map may only move generators upward in the face order (or downward,
for complexes carried by the opposite order).  The star dual, the evaluation
isomorphism to the double dual, blocked Hom, and the geometric chain/cochain
complexes of a K-space are all built here.

Sign conventions, fixed once and used everywhere:

* dual differential      d*_{-q} = (-1)^{q+1} (d_{q+1})^T
* double-dual collapse   eps(g**) = (-1)^q g   for g of degree q
* Hom differential       d(f)    = d∘f - (-1)^{|f|} f∘d
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import ChainComplex, ChainComplexError, ChainMap, Matrix, homology
from .simplicial import (InputError, KSpace, SimplicialComplex, SimplicialMap,
                         control_kspace, derived_kspace, simplex_name)


@dataclass(frozen=True)
class Generator:
    """A named basis element carrying a label in K.

    ``data`` records how the generator was built (simplex, dual, tensor or
    hom of earlier generators), so later constructions can chase bases
    without parsing names.
    """

    name: str
    label: tuple
    data: tuple


def simplex_generator(s, label) -> Generator:
    return Generator("<" + simplex_name(s) + ">", label, ("simplex", s))


def dual_generator(g: Generator) -> Generator:
    return Generator(g.name + "*", g.label, ("dual", g))


def tensor_generator(gl: Generator, gr: Generator) -> Generator:
    return Generator(gl.name + "⊗" + gr.name, gr.label, ("tensor", gl, gr))


def hom_generator(q: int, ga: Generator, gb: Generator) -> Generator:
    return Generator("[" + ga.name + "→" + gb.name + "]", ga.label,
                     ("hom", q, ga, gb))


class RKComplex:
    """A bounded complex of labeled free modules over (K, <=) or (K, >=).

    ``gens`` maps a degree to its tuple of generators; ``diff`` maps q to
    the matrix of d_q against those bases.  The support condition (every
    differential component moves labels upward in the complex's order) and
    d∘d = 0 are checked by :meth:`validate`.
    """

    __slots__ = ("ring", "K", "op", "gens", "diff", "_index")

    def __init__(self, ring, K: SimplicialComplex, op: bool, gens, diff):
        self.ring = ring
        self.K = K
        self.op = bool(op)
        self.gens = {q: tuple(gs) for q, gs in gens.items() if gs}
        self.diff = {}
        self._index = {q: {g.name: i for i, g in enumerate(gs)}
                       for q, gs in self.gens.items()}
        for q, gs in self.gens.items():
            if len(self._index[q]) != len(gs):
                raise ChainComplexError(f"duplicate generator names at degree {q}")
        for q, mat in diff.items():
            if mat.is_zero():
                continue
            if mat.ncols != self.rank(q) or mat.nrows != self.rank(q - 1):
                raise ChainComplexError(
                    f"differential at degree {q} has bad shape")
            self.diff[q] = mat

    def degrees(self):
        return sorted(self.gens)

    def rank(self, q) -> int:
        return len(self.gens.get(q, ()))

    def total_rank(self) -> int:
        return sum(len(gs) for gs in self.gens.values())

    def gens_at(self, q):
        return self.gens.get(q, ())

    def index_of(self, q, name) -> int:
        return self._index[q][name]

    def d(self, q) -> Matrix:
        mat = self.diff.get(q)
        if mat is None:
            return Matrix.zero(self.ring, self.rank(q - 1), self.rank(q))
        return mat

    def leq(self, a, b) -> bool:
        """a <= b in this complex's order on K."""
        if self.op:
            return set(b) <= set(a)
        return set(a) <= set(b)

    def labels(self):
        out = set()
        for gs in self.gens.values():
            out.update(g.label for g in gs)
        return out

    def same_shape(self, other) -> bool:
        """Same K, order and generators; used to splice separately built maps."""
        return (isinstance(other, RKComplex) and self.ring == other.ring
                and self.K == other.K and self.op == other.op
                and self.degrees() == other.degrees()
                and all(tuple(g.name for g in self.gens_at(q))
                        == tuple(g.name for g in other.gens_at(q))
                        for q in self.degrees()))

    def underlying(self) -> ChainComplex:
        names = {q: tuple(g.name for g in gs) for q, gs in self.gens.items()}
        return ChainComplex(self.ring, {q: len(gs) for q, gs in self.gens.items()},
                            dict(self.diff), names)

    def validate(self, check_d2=True):
        for q in self.degrees():
            tgt = self.gens_at(q - 1)
            src = self.gens_at(q)
            for (i, j), _ in self.d(q).entries():
                if not self.leq(src[j].label, tgt[i].label):
                    raise ChainComplexError(
                        f"support violated by d at degree {q}: "
                        f"{src[j].name} -> {tgt[i].name}")
        if check_d2:
            self.underlying().validate()
        return self

    def piece(self, sigma) -> ChainComplex:
        """The diagonal complex of one label: sigma-generators with the
        diagonal blocks of the differential."""
        spaces, diff, names = {}, {}, {}
        picks = {}
        for q, gs in self.gens.items():
            picks[q] = [i for i, g in enumerate(gs) if g.label == sigma]
            if picks[q]:
                spaces[q] = len(picks[q])
                names[q] = tuple(gs[i].name for i in picks[q])
        for q in spaces:
            rows = picks.get(q - 1, [])
            if not rows:
                continue
            rpos = {i: a for a, i in enumerate(rows)}
            cpos = {j: b for b, j in enumerate(picks[q])}
            data = {}
            for (i, j), v in self.d(q).entries():
                if i in rpos and j in cpos:
                    data[(rpos[i], cpos[j])] = v
            diff[q] = Matrix(self.ring, len(rows), len(picks[q]), data)
        return ChainComplex(self.ring, spaces, diff, names)

    def restrict(self, subset) -> ChainComplex:
        """Assemble the plain complex carried by a full label subset.

        Keeps generators labeled in ``subset`` and the differential
        components between them; raises unless the subset is full, which is
        what guarantees d∘d = 0 for the restriction.
        """
        subset = set(tuple(s) for s in subset)
        if not is_full(self.K, subset):
            raise InputError("label subset is not full")
        spaces, diff, names = {}, {}, {}
        picks = {}
        for q, gs in self.gens.items():
            picks[q] = [i for i, g in enumerate(gs) if g.label in subset]
            if picks[q]:
                spaces[q] = len(picks[q])
                names[q] = tuple(gs[i].name for i in picks[q])
        for q in spaces:
            rows = picks.get(q - 1, [])
            if not rows:
                continue
            rpos = {i: a for a, i in enumerate(rows)}
            cpos = {j: b for b, j in enumerate(picks[q])}
            data = {}
            for (i, j), v in self.d(q).entries():
                if i in rpos and j in cpos:
                    data[(rpos[i], cpos[j])] = v
            diff[q] = Matrix(self.ring, len(rows), len(picks[q]), data)
        return ChainComplex(self.ring, spaces, diff, names).validate()

    def __repr__(self):
        ranks = {q: self.rank(q) for q in self.degrees()}
        order = "op" if self.op else "std"
        return f"RKComplex({self.ring}, {order}, ranks={ranks})"


def is_full(K: SimplicialComplex, subset) -> bool:
    """Full means: everything between two members is a member.

    The between-condition quantifies over pairs drawn from the subset
    itself, which makes stars and their complements full.
    """
    subset = set(tuple(s) for s in subset)
    for s in subset:
        if not K.has(s):
            raise InputError(f"{simplex_name(s)} is not a simplex of K")
    for rho in subset:
        rset = set(rho)
        for tau in subset:
            tset = set(tau)
            if not rset <= tset:
                continue
            for sigma in K.all_simplices():
                if rset <= set(sigma) <= tset and sigma not in subset:
                    return False
    return True


class RKMap:
    """A degree-d map of blocked complexes respecting the support condition."""

    __slots__ = ("src", "tgt", "degree", "comps")

    def __init__(self, src: RKComplex, tgt: RKComplex, comps, degree=0):
        if src.K != tgt.K or src.op != tgt.op or src.ring != tgt.ring:
            raise ChainComplexError("blocked map needs matching sides")
        self.src = src
        self.tgt = tgt
        self.degree = degree
        self.comps = {}
        for q, mat in comps.items():
            if mat.ncols != src.rank(q) or mat.nrows != tgt.rank(q + degree):
                raise ChainComplexError(f"component at degree {q} has bad shape")
            if not mat.is_zero():
                self.comps[q] = mat

    @classmethod
    def identity(cls, cx: RKComplex) -> "RKMap":
        return cls(cx, cx, {q: Matrix.identity(cx.ring, cx.rank(q))
                            for q in cx.degrees()})

    def component(self, q) -> Matrix:
        mat = self.comps.get(q)
        if mat is None:
            return Matrix.zero(self.src.ring, self.tgt.rank(q + self.degree),
                               self.src.rank(q))
        return mat

    def to_chain_map(self) -> ChainMap:
        return ChainMap(self.src.underlying(), self.tgt.underlying(),
                        dict(self.comps), degree=self.degree)

    def validate(self, chain=True):
        for q in self.degrees_hit():
            src = self.src.gens_at(q)
            tgt = self.tgt.gens_at(q + self.degree)
            for (i, j), _ in self.component(q).entries():
                if not self.src.leq(src[j].label, tgt[i].label):
                    raise ChainComplexError(
                        f"support violated at degree {q}: "
                        f"{src[j].name} -> {tgt[i].name}")
        if chain:
            self.to_chain_map().validate()
        return self

    def degrees_hit(self):
        return sorted(set(self.src.degrees()) | set(self.comps))

    def compose(self, other: "RKMap") -> "RKMap":
        """self ∘ other; the middle complexes must have the same shape."""
        if not self.src.same_shape(other.tgt):
            raise ChainComplexError("composition through mismatched complexes")
        comps = {}
        for q in other.src.degrees():
            comps[q] = self.component(q + other.degree) * other.component(q)
        return RKMap(other.src, self.tgt, comps, degree=self.degree + other.degree)

    def scale(self, c) -> "RKMap":
        return RKMap(self.src, self.tgt,
                     {q: m.scale(c) for q, m in self.comps.items()}, self.degree)

    def add(self, other: "RKMap") -> "RKMap":
        comps = {}
        for q in set(self.comps) | set(other.comps):
            comps[q] = self.component(q) + other.component(q)
        return RKMap(self.src, self.tgt, comps, self.degree)

    def diagonal_component(self, sigma) -> ChainMap:
        """The chain map between the sigma-pieces."""
        if self.degree != 0:
            raise ChainComplexError("diagonal components need degree 0")
        src_piece = self.src.piece(sigma)
        tgt_piece = self.tgt.piece(sigma)
        comps = {}
        for q in src_piece.degrees():
            rows = [i for i, g in enumerate(self.tgt.gens_at(q))
                    if g.label == sigma]
            cols = [j for j, g in enumerate(self.src.gens_at(q))
                    if g.label == sigma]
            rpos = {i: a for a, i in enumerate(rows)}
            cpos = {j: b for b, j in enumerate(cols)}
            data = {}
            for (i, j), v in self.component(q).entries():
                if i in rpos and j in cpos:
                    data[(rpos[i], cpos[j])] = v
            comps[q] = Matrix(self.src.ring, len(rows), len(cols), data)
        return ChainMap(src_piece, tgt_piece, comps)

    def is_bijection_on_bases(self) -> bool:
        """Exactly one +-1 entry per row and per column in every degree."""
        for q in self.degrees_hit():
            mat = self.component(q)
            if mat.nrows != mat.ncols:
                return False
            seen_r, seen_c = set(), set()
            for (i, j), v in mat.entries():
                if not self.src.ring.is_unit(v):
                    return False
                if i in seen_r or j in seen_c:
                    return False
                seen_r.add(i)
                seen_c.add(j)
            if len(seen_r) != mat.nrows:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, RKMap) and self.degree == other.degree
                and self.src.same_shape(other.src)
                and self.tgt.same_shape(other.tgt)
                and all(self.component(q) == other.component(q)
                        for q in set(self.degrees_hit()) | set(other.degrees_hit())))

    def __repr__(self):
        return f"RKMap(degree={self.degree})"


@dataclass
class ShortExactSequence:
    """0 -> C' -i-> C -j-> C'' -> 0 with label-diagonal maps."""

    i: RKMap
    j: RKMap

    def validate(self):
        if not self.i.tgt.same_shape(self.j.src):
            raise ChainComplexError("sequence maps do not compose")
        if self.i.degree != 0 or self.j.degree != 0:
            raise ChainComplexError("sequence maps must have degree 0")
        for f in (self.i, self.j):
            f.validate()
            for q in f.degrees_hit():
                src = f.src.gens_at(q)
                tgt = f.tgt.gens_at(q)
                for (a, b), _ in f.component(q).entries():
                    if src[b].label != tgt[a].label:
                        raise ChainComplexError("sequence map is not label-diagonal")
        if not all(m.is_zero() for m in self.j.compose(self.i).comps.values()):
            raise ChainComplexError("j∘i != 0")
        # per-label, per-degree exactness of the module sequences
        ring = self.i.src.ring
        labels = (self.i.src.labels() | self.i.tgt.labels()
                  | self.j.tgt.labels())
        for sigma in sorted(labels):
            ip = self.i.diagonal_component(sigma)
            jp = self.j.diagonal_component(sigma)
            for q in set(ip.src.degrees()) | set(jp.src.degrees()) | set(jp.tgt.degrees()):
                three = ChainComplex(
                    ring,
                    {2: ip.src.rank(q), 1: jp.src.rank(q), 0: jp.tgt.rank(q)},
                    {2: ip.component(q), 1: jp.component(q)})
                if not all(h.is_trivial() for h in homology(three).values()):
                    raise ChainComplexError(
                        f"not exact at label {simplex_name(sigma)}, degree {q}")
        return self


def dual_star(C: RKComplex) -> RKComplex:
    """The blocked dual: (C*)_{-q}(s) = C_q(s)* over the opposite order,
    with differential (-1)^{q+1} (d_{q+1})^T."""
    gens = {-q: tuple(dual_generator(g) for g in gs)
            for q, gs in C.gens.items()}
    diff = {}
    for q in C.degrees():
        mat = C.diff.get(q + 1)
        if mat is None:
            continue
        sign = C.ring.coerce((-1) ** ((q + 1) % 2))
        diff[-q] = mat.transpose().scale(sign)
    return RKComplex(C.ring, C.K, not C.op, gens, diff)


def dual_star_map(f: RKMap) -> RKMap:
    """The dual of a degree-0 blocked map: f*(y*) = y*∘f (transpose)."""
    if f.degree != 0:
        raise ChainComplexError("only degree-0 maps are dualized")
    src = dual_star(f.tgt)
    tgt = dual_star(f.src)
    comps = {}
    for q in f.degrees_hit():
        comps[-q] = f.component(q).transpose()
    return RKMap(src, tgt, comps)


def double_dual(C: RKComplex) -> RKComplex:
    return dual_star(dual_star(C))


def epsilon(C: RKComplex) -> RKMap:
    """The evaluation isomorphism C** -> C, (-1)^q on degree-q generators."""
    dd = double_dual(C)
    comps = {}
    for q in C.degrees():
        sign = C.ring.coerce((-1) ** (q % 2))
        comps[q] = Matrix.identity(C.ring, C.rank(q)).scale(sign)
    return RKMap(dd, C, comps)


def epsilon_inverse(C: RKComplex) -> RKMap:
    """C -> C**; the same diagonal signs."""
    dd = double_dual(C)
    comps = {}
    for q in C.degrees():
        sign = C.ring.coerce((-1) ** (q % 2))
        comps[q] = Matrix.identity(C.ring, C.rank(q)).scale(sign)
    return RKMap(C, dd, comps)


def hom_rk(A: RKComplex, B: RKComplex) -> RKComplex:
    """Blocked Hom(A, B), a complex over the opposite order.

    Degree-p generators are the maps a -> b with a in A_q, b in B_{q+p} and
    label(b) >= label(a); such a generator is labeled by label(a).  The
    differential is d(f) = d∘f - (-1)^{|f|} f∘d.
    """
    if A.op or B.op or A.K != B.K:
        raise ChainComplexError("blocked Hom needs two complexes over (K, <=)")
    ring = A.ring
    gens = {}
    for qa in A.degrees():
        for qb in B.degrees():
            p = qb - qa
            bucket = gens.setdefault(p, [])
            for ga in A.gens_at(qa):
                for gb in B.gens_at(qb):
                    if A.leq(ga.label, gb.label):
                        bucket.append(hom_generator(qa, ga, gb))
    gens = {p: tuple(gs) for p, gs in gens.items() if gs}
    result = RKComplex(ring, A.K, True, gens, {})
    diff = {}
    for p in result.degrees():
        tgt = result.gens.get(p - 1)
        if not tgt:
            continue
        tpos = result._index[p - 1]
        data = {}
        sign = ring.coerce((-1) ** (p % 2))
        for j, g in enumerate(result.gens_at(p)):
            _, q, ga, gb = g.data
            # postcompose with d_B
            for i_b, v in B.d(q + p).column(B.index_of(q + p, gb.name)):
                gb2 = B.gens_at(q + p - 1)[i_b]
                if A.leq(ga.label, gb2.label):
                    name = hom_generator(q, ga, gb2).name
                    i = tpos[name]
                    data[(i, j)] = ring.add(data.get((i, j), ring.zero), v)
            # precompose with d_A, Koszul sign
            row = A.d(q + 1)._rows().get(A.index_of(q, ga.name), ())
            for j_a, v in row:
                ga2 = A.gens_at(q + 1)[j_a]
                name = hom_generator(q + 1, ga2, gb).name
                i = tpos[name]
                data[(i, j)] = ring.sub(data.get((i, j), ring.zero),
                                        ring.mul(sign, v))
        diff[p] = Matrix(ring, len(tgt), result.rank(p), data)
    return RKComplex(ring, A.K, True, gens, diff)


def hom_post_map(A: RKComplex, g: RKMap) -> RKMap:
    """Hom(A, g): Hom(A, g.src) -> Hom(A, g.tgt) for a degree-0 map g."""
    if g.degree != 0:
        raise ChainComplexError("only degree-0 maps are pushed through Hom")
    src = hom_rk(A, g.src)
    tgt = hom_rk(A, g.tgt)
    comps = {}
    for p in src.degrees():
        tpos = tgt._index.get(p, {})
        data = {}
        for j, gen in enumerate(src.gens_at(p)):
            _, q, ga, gb = gen.data
            for i_b, v in g.component(q + p).column(g.src.index_of(q + p, gb.name)):
                gb2 = g.tgt.gens_at(q + p)[i_b]
                if A.leq(ga.label, gb2.label):
                    data[(tpos[hom_generator(q, ga, gb2).name], j)] = v
        comps[p] = Matrix(src.ring, tgt.rank(p), src.rank(p), data)
    return RKMap(src, tgt, comps)


def simplicial_rk(ring, K: SimplicialComplex, op: bool, cx: SimplicialComplex,
                  label_of, basis=None) -> RKComplex:
    """A simplicial chain complex as a blocked complex over K.

    One generator per simplex of ``cx``; orientation signs against the
    canonical ordering come from ``basis`` (default +1 everywhere).
    """
    gens, diff = {}, {}
    for p in range(0, cx.dim + 1):
        ss = cx.simplices_of_dim(p)
        if ss:
            gens[p] = tuple(simplex_generator(s, label_of(s)) for s in ss)
    for p in range(1, cx.dim + 1):
        src = cx.simplices_of_dim(p)
        tgt = {s: i for i, s in enumerate(cx.simplices_of_dim(p - 1))}
        if not src or not tgt:
            continue
        data = {}
        for j, s in enumerate(src):
            s_sign = basis.get(s, 1) if basis else 1
            for i, face in cx.facets(s):
                f_sign = basis.get(face, 1) if basis else 1
                data[(tgt[face], j)] = s_sign * f_sign * (-1 if i % 2 else 1)
        diff[p] = Matrix(ring, len(tgt), len(src), data)
    return RKComplex(ring, K, op, gens, diff)


@dataclass
class DeltaComplexes:
    """The three geometric complexes of a K-space, plus their subdivisions."""

    dx: RKComplex            # chains of X, labels pushed forward, opposite order
    dstar_x: RKComplex       # cochains of X = dual of dx
    dx_prime: RKComplex      # chains of the subdivision X'
    derived_x: object
    derived_k: object
    ks_prime: KSpace


def delta_chain(ks: KSpace, ring, basis=None) -> RKComplex:
    """Chains of X labeled by the image simplex, over the opposite order."""
    return simplicial_rk(ring, ks.K, True, ks.X, ks.pi.image, basis)


def delta_star_k(K: SimplicialComplex, ring, basis=None) -> RKComplex:
    """Cochains of K itself, blocked over K by the underlying simplex."""
    return dual_star(delta_chain(control_kspace(K), ring, basis))


def delta_complexes(ks: KSpace, ring, basis=None) -> DeltaComplexes:
    """Chains, cochains and subdivision chains of a K-space.

    A chain generator of the subdivision <Q0,...,Qp> is labeled by the image
    of its smallest entry Qp.
    """
    dx = delta_chain(ks, ring, basis)
    dstar_x = dual_star(dx)
    derived_x, derived_k, ks_prime = derived_kspace(ks)
    dx_prime = simplicial_rk(ring, ks.K, False, derived_x.prime,
                             lambda chain: ks.pi.image(chain[-1]))
    return DeltaComplexes(dx, dstar_x, dx_prime, derived_x, derived_k, ks_prime)


def maximal_label_ses(C: RKComplex):
    """Split off the generators at a maximal-dimension label.

    Returns (SES, label): C' is the subcomplex of generators labeled by a
    label of maximum dimension among those present, C'' the quotient.  Used
    to exercise the induction step that reduces a general complex to one
    concentrated at a single simplex.  Returns None when C has at most one
    label.
    """
    labels = sorted(C.labels(), key=lambda s: (len(s), s))
    if len(labels) < 2:
        return None
    top = labels[-1]
    keep = {q: [i for i, g in enumerate(C.gens_at(q)) if g.label == top]
            for q in C.degrees()}
    drop = {q: [i for i, g in enumerate(C.gens_at(q)) if g.label != top]
            for q in C.degrees()}

    def subcomplex(picks):
        gens, diff = {}, {}
        for q, idxs in picks.items():
            if idxs:
                gens[q] = tuple(C.gens_at(q)[i] for i in idxs)
        for q, idxs in picks.items():
            rows = picks.get(q - 1, [])
            if not idxs or not rows:
                continue
            rpos = {i: a for a, i in enumerate(rows)}
            cpos = {j: b for b, j in enumerate(idxs)}
            data = {}
            for (i, j), v in C.d(q).entries():
                if i in rpos and j in cpos:
                    data[(rpos[i], cpos[j])] = v
            diff[q] = Matrix(C.ring, len(rows), len(idxs), data)
        return RKComplex(C.ring, C.K, C.op, gens, diff)

    sub = subcomplex(keep)
    quo = subcomplex(drop)
    inc = {}
    for q, idxs in keep.items():
        data = {(i, a): C.ring.one for a, i in enumerate(idxs)}
        inc[q] = Matrix(C.ring, C.rank(q), len(idxs), data)
    prj = {}
    for q, idxs in drop.items():
        data = {(a, i): C.ring.one for a, i in enumerate(idxs)}
        prj[q] = Matrix(C.ring, len(idxs), C.rank(q), data)
    ses = ShortExactSequence(RKMap(sub, C, inc), RKMap(C, quo, prj))
    return ses.validate(), top


@dataclass
class ClemReport:
    """Per-label verdicts for the contractible-star computation of a closed
    maximal simplex."""

    S: tuple
    verdicts: dict
    passed: bool


def check_lemma_clem(K: SimplicialComplex, S, ring) -> ClemReport:
    """Cochains of the closed simplex S, assembled over each star.

    For a maximal S the star-assembly is acyclic at every other label, and
    at S itself it is one copy of the ring in degree -dim S.
    """
    S = K.canonical(S)
    if any(set(S) < set(t) for t in K.star(S)):
        raise InputError(f"{simplex_name(S)} is not maximal")
    X = SimplicialComplex([v for v in K.vertices if v in set(S)], [S])
    ks = KSpace(X, K, SimplicialMap(X, K, {v: v for v in X.vertices}))
    dstar = dual_star(delta_chain(ks, ring))
    verdicts = {}
    ok = True
    for sigma in K.all_simplices():
        sub = dstar.restrict(set(K.star(sigma)))
        if sigma == S:
            want_deg = -(len(S) - 1)
            good = (sub.total_rank() == 1 and sub.rank(want_deg) == 1)
            verdicts[sigma] = ("rank one at top degree", good)
        elif set(sigma) <= set(S):
            good = all(h.is_trivial() for h in homology(sub).values())
            verdicts[sigma] = ("acyclic", good)
        else:
            good = sub.total_rank() == 0
            verdicts[sigma] = ("zero", good)
        ok = ok and good
    return ClemReport(S, verdicts, ok)
