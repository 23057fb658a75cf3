"""The flag-sum cap product into the barycentric subdivision.

A flag is a strictly decreasing chain of simplices; its sign is the product
of consecutive incidence numbers, which only depends on the orientations of
the two endpoints.  Capping a simplex against a dual cochain sums the top
flags of the corresponding dual cell with these signs, landing in chains of
the subdivision; the same recipe sends each cell of the induced cell
structure to a fundamental cycle of its dual cell, giving a label-by-label
equivalence from the cellular complex to subdivision chains.

Convention: a zero-length flag has sign +1, so a 0-cell goes to its
barycenter vertex with coefficient (-1)^dim times the orientation
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix, smith_normal_form
from .rkcore import RKMap, delta_complexes
from .duality import Dualizer, projection_map, tensor_r
from .simplicial import (DerivedComplex, InputError, KSpace,
                         barycentric_subdivision, incidence_canonical,
                         simplex_name)
from .ballcomplex import (BallComplex, CellularComplex, CellularIso,
                          OrientationPair, cellular_chain_complex,
                          cellular_iso)


def flag_sign(flag, first_sign=1, last_sign=1) -> int:
    """Product of consecutive incidence numbers along a flag.

    Interior entries carry canonical orientations (their contribution
    cancels); the endpoint orientations enter through the two sign
    arguments.  A zero-length flag has sign +1.  Raises if consecutive
    entries are not codimension-one incident.
    """
    total = first_sign * last_sign
    for a, b in zip(flag, flag[1:]):
        inc = incidence_canonical(a, b)
        if inc == 0:
            raise InputError(
                f"flag entries {simplex_name(a)} > {simplex_name(b)} are not "
                f"codimension-one incident")
        total *= inc
    return total


def _saturated_flags(facets_of, top, keep, is_bottom):
    """Descending codimension-one chains from ``top`` whose entries satisfy
    ``keep``, stopping at entries satisfying ``is_bottom``."""
    out = []

    def descend(prefix):
        last = prefix[-1]
        if is_bottom(last):
            out.append(tuple(prefix))
            return
        for _, face in facets_of(last):
            if keep(face):
                prefix.append(face)
                descend(prefix)
                prefix.pop()

    if keep(top):
        descend([top])
    return out


def cap_product(cx, derived: DerivedComplex, tau, sigma, basis=None):
    """Cap a basis simplex against a dual basis cochain of one complex.

    Returns the chain in the subdivision as a dict flag -> coefficient:
    zero unless sigma <= tau, else the signed sum of the top flags of the
    dual cell of sigma inside tau, with overall sign (-1)^{dim sigma}.
    The output does not change under a change of oriented basis.
    """
    tau = cx.canonical(tau)
    sigma = cx.canonical(sigma)
    if not set(sigma) <= set(tau):
        return {}
    b = basis or {}
    s_tau = b.get(tau, 1)
    s_sigma = b.get(sigma, 1)
    sset = set(sigma)
    flags = _saturated_flags(
        cx.facets, tau,
        keep=lambda s: sset <= set(s),
        is_bottom=lambda s: s == sigma)
    overall = -1 if (len(sigma) - 1) % 2 else 1
    out = {}
    for flag in flags:
        out[flag] = overall * flag_sign(flag, s_tau, s_sigma)
    return out


@dataclass
class CapReport:
    """Verdicts for the chain-map property of the cap product on one
    complex: the full matrix identity, the three face-wise identities, and
    the sign-reversing pairing of interior faces."""

    complex_name: str
    full_identity: bool
    face_first: bool
    face_last: bool
    face_interior: bool
    pairing: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return (self.full_identity and self.face_first and self.face_last
                and self.face_interior and self.pairing)


def _face_part(chain, i):
    """Drop the i-th entry of every flag in a chain, without the (-1)^i."""
    out = {}
    for flag, c in chain.items():
        face = flag[:i] + flag[i + 1:]
        out[face] = out.get(face, 0) + c
    return {k: v for k, v in out.items() if v}


def verify_cap_chain_map(cx, ring, basis=None, name="K") -> CapReport:
    """Check that capping commutes with the differentials.

    The full identity is checked as matrices between the tensor of chains
    with cochains and the subdivision chains; the first-face, last-face and
    interior-face identities are checked pair by pair, the last one through
    its perfect sign-reversing pairing.
    """
    from .rkcore import delta_chain, delta_star_k
    from .simplicial import KSpace, chain_complex, identity_map

    derived = barycentric_subdivision(cx)
    ks = KSpace(cx, cx, identity_map(cx))
    dxk = delta_chain(ks, ring, basis)
    dstark = delta_star_k(cx, ring, basis)
    domain_rk = tensor_r(dxk, dstark)
    domain = domain_rk.underlying()
    target = chain_complex(derived.prime, ring)
    tpos = {}
    for p in target.degrees():
        tpos[p] = {derived.prime.simplices_of_dim(p)[i]: i
                   for i in range(target.rank(p))}

    # cap matrices per degree
    pairs = {q: [(g.data[1].data[1], g.data[2].data[1].data[1])
                 for g in domain_rk.gens_at(q)]
             for q in domain_rk.degrees()}
    cap = {}
    for q, lst in pairs.items():
        data = {}
        for j, (tau, sigma) in enumerate(lst):
            for flag, c in cap_product(cx, derived, tau, sigma, basis).items():
                data[(tpos[q][flag], j)] = c
        cap[q] = Matrix(ring, target.rank(q), domain.rank(q), data)

    report = CapReport(name, True, True, True, True, True)
    for q in domain.degrees():
        lhs = target.d(q) * cap[q]
        rhs = cap.get(q - 1, Matrix.zero(ring, target.rank(q - 1),
                                         domain.rank(q - 1))) * domain.d(q)
        if lhs != rhs:
            report.full_identity = False
            report.failures.append(f"full identity fails in degree {q}")

    b = basis or {}
    for tau in cx.all_simplices():
        for sigma in cx.closure(tau):
            p = len(tau) - len(sigma)
            if p == 0:
                continue
            chain = cap_product(cx, derived, tau, sigma, basis)
            # first face: drop the top of every flag = cap the boundary
            want = {}
            for i, rho in cx.facets(tau):
                coeff = b.get(tau, 1) * b.get(rho, 1) * (-1 if i % 2 else 1)
                for flag, c in cap_product(cx, derived, rho, sigma, basis).items():
                    want[flag] = want.get(flag, 0) + coeff * c
            want = {k: v for k, v in want.items() if v}
            if _face_part(chain, 0) != want:
                report.face_first = False
                report.failures.append(
                    f"first-face identity fails at ({simplex_name(tau)},"
                    f"{simplex_name(sigma)})")
            # last face, against the cochain differential
            sign_l = (-1) ** (p % 2)
            lhs = {k: sign_l * v for k, v in _face_part(chain, p).items()}
            want = {}
            cod = (-1) ** ((len(sigma) - 1 + 1) % 2)
            for rho in cx.star(sigma):
                if len(rho) != len(sigma) + 1:
                    continue
                coeff = (cod * b.get(rho, 1) * b.get(sigma, 1)
                         * incidence_canonical(rho, sigma))
                for flag, c in cap_product(cx, derived, tau, rho, basis).items():
                    want[flag] = want.get(flag, 0) + coeff * c
            sign_t = (-1) ** ((len(tau) - 1) % 2)
            want = {k: sign_t * v for k, v in want.items() if v}
            if lhs != {k: v for k, v in want.items() if v}:
                report.face_last = False
                report.failures.append(
                    f"last-face identity fails at ({simplex_name(tau)},"
                    f"{simplex_name(sigma)})")
            # interior faces vanish through a perfect sign-reversing pairing
            for i in range(1, p):
                if _face_part(chain, i):
                    report.face_interior = False
                    report.failures.append(
                        f"interior face {i} fails at ({simplex_name(tau)},"
                        f"{simplex_name(sigma)})")
                groups = {}
                for flag, c in chain.items():
                    groups.setdefault(flag[:i] + flag[i + 1:], []).append(c)
                for face, cs in groups.items():
                    if len(cs) != 2 or cs[0] + cs[1] != 0:
                        report.pairing = False
                        report.failures.append(
                            f"pairing fails at ({simplex_name(tau)},"
                            f"{simplex_name(sigma)}), face {simplex_name(face)}")
    return report


def _top_flags(ks: KSpace, T, rho):
    """Saturated flags from T ending on a simplex mapping onto rho."""
    rset = set(rho)
    return _saturated_flags(
        ks.X.facets, T,
        keep=lambda s: rset <= set(ks.pi.image(s)),
        is_bottom=lambda s: len(s) == len(rho) and ks.pi.image(s) == rho)


@dataclass
class CellChainData:
    """The cell-to-subdivision chain map with everything it connects."""

    map: RKMap
    cellular: CellularComplex
    dx_prime: object            # RKComplex of subdivision chains
    deltas: object              # DeltaComplexes
    orientation: OrientationPair


def fundamental_cycle_map(ks: KSpace, ring, orientation: OrientationPair,
                          cellular: CellularComplex | None = None,
                          deltas=None) -> CellChainData:
    """The monomorphism from the cellular complex into subdivision chains.

    A basis cell T⊗rho* of degree q goes to the signed sum of the top flags
    of its dual cell: each flag T = S_0 > ... > S_q with S_q mapping onto
    rho contributes (-1)^{dim rho} times its sign, endpoints oriented by the
    basis of X on top and the orientation pulled back from rho at the
    bottom.  For q = 0 this is the barycenter vertex with coefficient
    (-1)^{dim T} times the orientation comparison.
    """
    orientation.validate()
    deltas = deltas or delta_complexes(ks, ring, orientation.bx)
    cellular = cellular or cellular_chain_complex(ks, ring, orientation)
    dxp = deltas.dx_prime
    bx, bk = orientation.bx, orientation.bk
    comps = {}
    for q in cellular.rk.degrees():
        data = {}
        for j, g in enumerate(cellular.rk.gens_at(q)):
            T, rho = cellular.cells[g.name]
            overall = -1 if (len(rho) - 1) % 2 else 1
            for flag in _top_flags(ks, T, rho):
                bottom = flag[-1]
                _, parity = ks.pi.chain_image(bottom)
                coeff = overall * flag_sign(flag, bx[T], bk[rho] * parity)
                name = "<" + simplex_name(flag) + ">"
                data[(dxp.index_of(q, name), j)] = coeff
        comps[q] = Matrix(ring, dxp.rank(q), cellular.rk.rank(q), data)
    cmap = RKMap(cellular.rk, dxp, comps)
    cmap.validate()
    return CellChainData(cmap, cellular, dxp, deltas, orientation)


def verify_cap_factorization(ks: KSpace, ring, data: CellChainData) -> bool:
    """The defining property of the cell map: capping in X after pulling
    cochains back through pi agrees with the cell map after projecting the
    full tensor onto the blocked one."""
    orientation = data.orientation
    bx, bk = orientation.bx, orientation.bk
    derived_x = data.deltas.derived_x
    dx = data.deltas.dx
    dstark = Dualizer(ks.K, ring, bk).dstar_k
    proj = projection_map(dx, dstark)
    full = proj.src
    rhs = data.map.compose(proj)
    dxp = data.dx_prime
    comps = {}
    for q in full.degrees():
        dmat = {}
        for j, g in enumerate(full.gens_at(q)):
            T = g.data[1].data[1]
            rho = g.data[2].data[1].data[1]
            for S in ks.X.simplices_of_dim(len(rho) - 1):
                out = ks.pi.chain_image(S)
                if out is None or out[0] != rho:
                    continue
                pullback = bk[rho] * bx[S] * out[1]
                for flag, c in cap_product(ks.X, derived_x, T, S, bx).items():
                    name = "<" + simplex_name(flag) + ">"
                    key = (dxp.index_of(q, name), j)
                    dmat[key] = dmat.get(key, ring.zero) + ring.coerce(pullback * c)
        comps[q] = Matrix(ring, dxp.rank(q), full.rank(q), dmat)
    lhs = RKMap(full, dxp, comps)
    return lhs == rhs


@dataclass
class FundamentalCycleReport:
    verdicts: dict
    passed: bool


def verify_fundamental_cycles(ks: KSpace, data: CellChainData,
                              ball: BallComplex | None = None) -> FundamentalCycleReport:
    """Each cell maps to a fundamental cycle of its dual cell: every top
    flag appears with a unit coefficient and nothing else in that degree,
    and the boundary is supported on the inner and outer boundary flags."""
    ball = ball or data.cellular.ball
    rk = data.cellular.rk
    dxp = data.dx_prime
    ring = rk.ring
    verdicts = {}
    for q in rk.degrees():
        mat = data.map.component(q)
        bmat = dxp.d(q) * mat
        for j, g in enumerate(rk.gens_at(q)):
            T, rho = data.cellular.cells[g.name]
            cell = ball.cell(T, rho)
            tops = set(c for c in cell.simplices if len(c) - 1 == cell.dim)
            support = {}
            for (i, jj), v in mat.entries():
                if jj == j:
                    support[dxp.gens_at(q)[i].data[1]] = v
            ok = set(support) == tops and all(ring.is_unit(v)
                                              for v in support.values())
            boundary_flags = set(cell.inner_boundary) | set(cell.outer_boundary)
            for (i, jj), v in bmat.entries():
                if jj == j and dxp.gens_at(q - 1)[i].data[1] not in boundary_flags:
                    ok = False
            verdicts[cell.name] = ok
    return FundamentalCycleReport(verdicts, all(verdicts.values()))


def is_monomorphism(f: RKMap) -> bool:
    """Injective in every degree: full column rank."""
    for q in f.src.degrees():
        mat = f.component(q)
        if smith_normal_form(mat)[1] != mat.ncols:
            return False
    return True


@dataclass
class EquivalenceSuite:
    """Cone-acyclicity reports for the cell map, its composite with the
    cellular identification, and the induced map on duals."""

    cells_to_subdivision: object
    dual_to_subdivision: object
    subdivision_dual_to_cochains: object
    monomorphism: bool

    @property
    def passed(self):
        return (self.cells_to_subdivision.passed
                and self.dual_to_subdivision.passed
                and self.subdivision_dual_to_cochains.passed
                and self.monomorphism)


def verify_equivalences(ks: KSpace, ring, orientation: OrientationPair,
                        data: CellChainData | None = None,
                        iso: CellularIso | None = None) -> EquivalenceSuite:
    """Label-by-label cone acyclicity for the three composite equivalences."""
    from .duality import verify_diagonal_equivalence

    data = data or fundamental_cycle_map(ks, ring, orientation)
    iso = iso or cellular_iso(ks, ring, orientation, data.cellular)
    rep_cx = verify_diagonal_equivalence(data.map, "cells to subdivision")
    composite = data.map.compose(iso.map)
    rep_phi = verify_diagonal_equivalence(composite, "dual to subdivision")
    dz = iso.dualizer
    t_of_composite = dz.map(composite)
    e_map = dz.double_dual_map(iso.dstar_x)
    final = e_map.compose(t_of_composite)
    rep_final = verify_diagonal_equivalence(final, "subdivision dual to cochains")
    return EquivalenceSuite(rep_cx, rep_phi, rep_final, is_monomorphism(data.map))
