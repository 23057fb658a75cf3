"""Document ingestion and the check pipeline behind the CLI.

Every theorem the package implements is exercised here as a named check on
a concrete K-space; the verify command runs the full battery.  Checks never
raise on mathematical failure: they record a failed verdict with details so
a run reports every broken property at once.  Malformed input raises
:class:`InputError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import Ring
from .linalg import ChainComplexError, homology
from .simplicial import (InputError, KSpace, SimplicialComplex, chain_complex,
                         control_kspace, control_map, derived_kspace,
                         kspace_identity, simplex_name, validate_kspace)
from .rkcore import (RKMap, check_lemma_clem, delta_complexes, dual_star_map,
                     is_full, maximal_label_ses)
from .duality import (Dualizer, hom_dual_iso, projection_map,
                      verify_e_equivalence)
from .ballcomplex import (BallComplex, OrientationPair, cellular_chain_complex,
                          cellular_iso, induced_cell_map, induced_chain_map,
                          verify_boundary_display, verify_cellular_homology)
from .capproduct import (fundamental_cycle_map, is_monomorphism,
                          verify_cap_chain_map, verify_cap_factorization,
                          verify_equivalences, verify_fundamental_cycles)
from .report import Report, homology_table
from . import corpus


@dataclass
class Document:
    """A parsed input document: named complexes, K-spaces and a ring."""

    complexes: dict
    kspaces: list                     # (name, KSpace)
    ring: Ring
    checks: list = field(default_factory=list)


def parse_document(payload: dict) -> Document:
    if not isinstance(payload, dict):
        raise InputError("document must be a JSON object")
    complexes = {}
    raw_cx = payload.get("complexes")
    if not isinstance(raw_cx, dict) or not raw_cx:
        raise InputError("document needs a non-empty 'complexes' table")
    for name in sorted(raw_cx):
        entry = raw_cx[name]
        if not isinstance(entry, dict) or "simplices" not in entry:
            raise InputError(f"complex {name!r} needs a 'simplices' list")
        vertices = entry.get("vertices")
        simplices = entry["simplices"]
        if not all(isinstance(s, list) and s for s in simplices):
            raise InputError(f"complex {name!r} has a malformed simplex")
        complexes[name] = SimplicialComplex.build(vertices, simplices)
    kspaces = []
    raw_maps = payload.get("maps") or {}
    for name in sorted(raw_maps):
        entry = raw_maps[name]
        for key in ("source", "target", "vertices"):
            if key not in entry:
                raise InputError(f"map {name!r} needs '{key}'")
        for side in ("source", "target"):
            if entry[side] not in complexes:
                raise InputError(f"map {name!r} references unknown complex "
                                 f"{entry[side]!r}")
        ks = validate_kspace(complexes[entry["source"]],
                             complexes[entry["target"]], entry["vertices"])
        kspaces.append((name, ks))
    if not kspaces:
        for name in sorted(complexes):
            cx = complexes[name]
            kspaces.append((name, control_kspace(cx)))
    ring = Ring.parse(payload.get("ring", "Z"))
    checks = list(payload.get("checks", []))
    return Document(complexes, kspaces, ring, checks)


def _guard(report: Report, name: str, target: str, fn):
    """Run a check body; exceptions become failed checks, not crashes."""
    try:
        passed, details = fn()
    except (ChainComplexError, InputError) as exc:
        report.add(name, target, False, error=str(exc))
        return False
    report.add(name, target, passed, **details)
    return passed


COMPLEX_KEYS = ("chains", "cochains", "subdivision-chains", "cell-chains",
                "dual", "double-dual")


@dataclass
class KSpaceData:
    """Everything the checks need, built once per K-space and ring."""

    ks: KSpace
    ring: Ring
    orientation: OrientationPair
    deltas: object
    dualizer: Dualizer
    ball: BallComplex
    cellular: object
    iso: object
    cell_data: object
    tc: object
    t2: object

    @classmethod
    def build(cls, ks: KSpace, ring: Ring) -> "KSpaceData":
        orientation = OrientationPair.standard(ks)
        deltas = delta_complexes(ks, ring, orientation.bx)
        dualizer = Dualizer(ks.K, ring, orientation.bk)
        ball = BallComplex(ks, deltas.derived_x)
        cellular = cellular_chain_complex(ks, ring, orientation, ball,
                                          check_display=False)
        iso = cellular_iso(ks, ring, orientation, cellular)
        cell_data = fundamental_cycle_map(ks, ring, orientation, cellular,
                                          deltas)
        tc = dualizer.object(deltas.dstar_x).tc
        t2 = dualizer.square(deltas.dstar_x)
        return cls(ks, ring, orientation, deltas, dualizer, ball, cellular,
                   iso, cell_data, tc, t2)

    def complexes(self):
        return {
            "chains": self.deltas.dx,
            "cochains": self.deltas.dstar_x,
            "subdivision-chains": self.deltas.dx_prime,
            "cell-chains": self.cellular.rk,
            "dual": self.tc,
            "double-dual": self.t2,
        }


def check_soundness(report: Report, target: str, data: KSpaceData):
    """d∘d = 0 and the support condition for the six standard complexes."""
    for key, cx in data.complexes().items():
        def body(cx=cx):
            cx.validate()
            return True, {}
        _guard(report, f"soundness/d-squared-and-support/{key}", target, body)


def check_derived(report: Report, target: str, data: KSpaceData):
    def body():
        derived_kspace(data.ks)[2].pi.validate()
        return True, {}
    _guard(report, "soundness/derived-control-map", target, body)

    def chi_body():
        chi = data.ks.X.euler_characteristic()
        ok = data.deltas.derived_x.prime.euler_characteristic() == chi
        return ok, {"chi": chi}
    _guard(report, "soundness/subdivision-euler", target, chi_body)


def check_assembly(report: Report, target: str, data: KSpaceData):
    """Stars and their complements are full, and splice exactly."""
    ks, ring = data.ks, data.ring
    dx = data.deltas.dx

    def body():
        from .linalg import ChainMap, Matrix
        all_simplices = set(ks.K.all_simplices())
        for sigma in ks.K.all_simplices():
            star = set(ks.K.star(sigma))
            rest = all_simplices - star
            if not is_full(ks.K, star) or (rest and not is_full(ks.K, rest)):
                return False, {"label": simplex_name(sigma)}
            sub = dx.restrict(rest) if rest else None
            total = dx.underlying()
            quo = dx.restrict(star)
            if sub is not None:
                if sub.total_rank() + quo.total_rank() != total.total_rank():
                    return False, {"label": simplex_name(sigma)}
                # inclusion and projection are chain maps
                inc, prj = {}, {}
                for q in total.degrees():
                    keep = [i for i, g in enumerate(dx.gens_at(q))
                            if g.label in rest]
                    drop = [i for i, g in enumerate(dx.gens_at(q))
                            if g.label in star]
                    inc[q] = Matrix(ring, total.rank(q), len(keep),
                                    {(i, a): ring.one for a, i in enumerate(keep)})
                    prj[q] = Matrix(ring, len(drop), total.rank(q),
                                    {(a, i): ring.one for a, i in enumerate(drop)})
                ChainMap(sub, total, inc).validate()
                ChainMap(total, quo, prj).validate()
        return True, {}
    _guard(report, "assembly/star-splitting", target, body)


def check_lemmas(report: Report, target: str, data: KSpaceData):
    maximal = [s for s in data.ks.K.all_simplices()
               if all(not set(s) < set(t) for t in data.ks.K.star(s))]
    for S in maximal:
        def body(S=S):
            rep = check_lemma_clem(data.ks.K, S, data.ring)
            bad = sorted(simplex_name(s) for s, (_, ok) in rep.verdicts.items()
                         if not ok)
            return rep.passed, ({"failures": bad} if bad else {})
        _guard(report, f"assembly/contractible-star/{simplex_name(S)}",
               target, body)


def check_tensor(report: Report, target: str, data: KSpaceData):
    dx = data.deltas.dx
    dstark = data.dualizer.dstar_k

    def proj_body():
        proj = projection_map(dx, dstark)
        proj.validate()
        # kernel is spanned exactly by the non-star pairs
        for q in proj.src.degrees():
            kept = set(j for (_, j), _ in proj.component(q).entries())
            if len(kept) != proj.tgt.rank(q):
                return False, {"degree": q}
        return True, {}
    _guard(report, "tensor/projection-epimorphism", target, proj_body)

    def psi_body():
        psi = hom_dual_iso(dx, dstark)
        psi.validate()
        return psi.is_bijection_on_bases(), {}
    _guard(report, "tensor/hom-dual-isomorphism", target, psi_body)


def check_duality(report: Report, target: str, data: KSpaceData):
    dz = data.dualizer
    dstar_x = data.deltas.dstar_x

    def ident_body():
        lhs = dz.map(RKMap.identity(dstar_x))
        return lhs == RKMap.identity(data.tc), {}
    _guard(report, "duality/functor-identity", target, ident_body)

    split = maximal_label_ses(dstar_x)
    if split is not None:
        ses, top = split

        def exact_body():
            dz.sequence(ses)
            return True, {"split-label": simplex_name(top)}
        _guard(report, "duality/exactness", target, exact_body)

        def rows_body():
            e_sub = dz.double_dual_map(ses.i.src)
            e_tot = dz.double_dual_map(ses.i.tgt)
            e_quo = dz.double_dual_map(ses.j.tgt)
            ok = (e_tot.compose(dz.map(dz.map(ses.i))) == ses.i.compose(e_sub)
                  and e_quo.compose(dz.map(dz.map(ses.j)))
                  == ses.j.compose(e_tot))
            return ok, {}
        _guard(report, "double-dual/natural-rows", target, rows_body)

    def defining_body():
        _, _, ev = dz.evaluation(dstar_x)
        ev.validate()
        iso = dz.hom_to_square(dstar_x)
        iso.validate()
        e = dz.double_dual_map(dstar_x)
        return (e.compose(iso) == ev and iso.is_bijection_on_bases()), {}
    _guard(report, "double-dual/defining-identity", target, defining_body)

    def natural_body():
        ks = data.ks
        fmap = control_map(ks)
        or_k = OrientationPair.standard(fmap.tgt)
        push = induced_chain_map(fmap, data.ring, data.orientation, or_k)
        pullback = dual_star_map(push)
        e_x = dz.double_dual_map(pullback.tgt)
        e_k = dz.double_dual_map(pullback.src)
        lhs = e_x.compose(dz.map(dz.map(pullback)))
        rhs = pullback.compose(e_k)
        return lhs == rhs, {}
    _guard(report, "double-dual/naturality", target, natural_body)

    for key in ("cochains", "subdivision-chains", "cell-chains"):
        cx = data.complexes()[key]

        def equiv_body(cx=cx):
            rep = verify_e_equivalence(cx, dz)
            return rep.passed, ({"failures": rep.failures()}
                                if not rep.passed else {})
        _guard(report, f"double-dual/equivalence/{key}", target, equiv_body)


def check_cells(report: Report, target: str, data: KSpaceData):
    def ball_body():
        failures = data.ball.check()
        return not failures, ({"failures": failures[:5]} if failures else {})
    _guard(report, "cells/ball-structure", target, ball_body)

    def cones_body():
        from .ballcomplex import dual_cell, dual_cone
        dk = data.deltas.derived_k
        K = data.ks.K
        for sigma in K.all_simplices():
            cone = set(dual_cone(sigma, dk))
            union = set()
            for tau in K.star(sigma):
                union.update(dual_cell(sigma, tau, dk))
            if cone != union:
                return False, {"label": simplex_name(sigma)}
            for tau in K.all_simplices():
                if not set(sigma) <= set(tau):
                    if dual_cell(sigma, tau, dk):
                        return False, {"label": simplex_name(sigma)}
        return True, {}
    _guard(report, "cells/dual-cones", target, cones_body)

    def census_body():
        return True, {"census": {str(d): n
                                 for d, n in sorted(data.ball.census().items())}}
    _guard(report, "cells/census", target, census_body)

    def display_body():
        failures = verify_boundary_display(data.ks, data.cellular)
        return not failures, ({"failures": failures[:5]} if failures else {})
    _guard(report, "cells/boundary-display", target, display_body)

    def homology_body():
        ok, cell_h, _ = verify_cellular_homology(data.ks, data.cellular)
        return ok, {"homology": homology_table(cell_h, data.ring)}
    _guard(report, "cells/homology", target, homology_body)

    def iso_body():
        data.iso.map.validate()
        return data.iso.map.is_bijection_on_bases(), {}
    _guard(report, "cells/identification-isomorphism", target, iso_body)

    def dual_h_body():
        got = homology(data.tc.underlying())
        want = homology(chain_complex(data.ks.X, data.ring))
        keys = set(q for q, h in got.items() if not h.is_trivial())
        keys |= set(q for q, h in want.items() if not h.is_trivial())
        ok = all(got.get(q) == want.get(q) for q in keys)
        return ok, {"homology": homology_table(got, data.ring)}
    _guard(report, "cells/dual-homology", target, dual_h_body)


def check_cap(report: Report, target: str, data: KSpaceData):
    def k_body():
        rep = verify_cap_chain_map(data.ks.K, data.ring,
                                   basis=data.orientation.bk)
        return rep.passed, ({"failures": rep.failures[:5]}
                            if not rep.passed else {})
    _guard(report, "cap/chain-map-and-pairing/control", target, k_body)

    def fact_body():
        return verify_cap_factorization(data.ks, data.ring, data.cell_data), {}
    _guard(report, "cap/factorization", target, fact_body)

    def mono_body():
        return is_monomorphism(data.cell_data.map), {}
    _guard(report, "cap/monomorphism", target, mono_body)

    def cycles_body():
        rep = verify_fundamental_cycles(data.ks, data.cell_data, data.ball)
        bad = sorted(k for k, ok in rep.verdicts.items() if not ok)
        return rep.passed, ({"failures": bad[:5]} if bad else {})
    _guard(report, "cap/fundamental-cycles", target, cycles_body)


def check_equivalences(report: Report, target: str, data: KSpaceData):
    suite = verify_equivalences(data.ks, data.ring, data.orientation,
                                data.cell_data, data.iso)
    for rep in (suite.cells_to_subdivision, suite.dual_to_subdivision,
                suite.subdivision_dual_to_cochains):
        report.add(f"equivalences/{rep.name.replace(' ', '-')}", target,
                   rep.passed,
                   **({"failures": rep.failures()} if not rep.passed else {}))


def check_naturality(report: Report, target: str, data: KSpaceData):
    ring = data.ring

    def ident_body():
        fid = induced_cell_map(kspace_identity(data.ks), ring,
                               data.orientation, data.orientation)
        return fid == RKMap.identity(data.cellular.rk), {}
    _guard(report, "naturality/identity-map", target, ident_body)

    def square_body():
        fmap = control_map(data.ks)
        or_k = OrientationPair.standard(fmap.tgt)
        fk = induced_cell_map(fmap, ring, data.orientation, or_k)
        fk.validate()
        iso_y = cellular_iso(fmap.tgt, ring, or_k)
        push = induced_chain_map(fmap, ring, data.orientation, or_k)
        pullback = dual_star_map(push)
        lhs = iso_y.map.compose(data.dualizer.map(pullback))
        rhs = fk.compose(data.iso.map)
        return lhs == rhs, {}
    _guard(report, "naturality/control-square", target, square_body)


CHECK_GROUPS = (
    ("soundness", (check_soundness, check_derived)),
    ("assembly", (check_assembly, check_lemmas)),
    ("tensor", (check_tensor,)),
    ("duality", (check_duality,)),
    ("cells", (check_cells,)),
    ("cap", (check_cap,)),
    ("equivalences", (check_equivalences,)),
    ("naturality", (check_naturality,)),
)


def verify_kspace(report: Report, name: str, ks: KSpace, ring: Ring,
                  groups=None):
    data = KSpaceData.build(ks, ring)
    for group, fns in CHECK_GROUPS:
        if groups is not None and group not in groups:
            continue
        for fn in fns:
            fn(report, name, data)
    return data


def quick_sweep_kspace(report: Report, name: str, ks: KSpace, ring: Ring):
    """The random-sweep battery: differential soundness for all six
    complexes, the cell-structure combinatorics, and the identification."""
    data = KSpaceData.build(ks, ring)
    check_soundness(report, name, data)
    check_derived(report, name, data)

    def ball_body():
        failures = data.ball.check()
        return not failures, ({"failures": failures[:5]} if failures else {})
    _guard(report, "cells/ball-structure", name, ball_body)

    def iso_body():
        data.iso.map.validate()
        return data.iso.map.is_bijection_on_bases(), {}
    _guard(report, "cells/identification-isomorphism", name, iso_body)
    return data


def cell_incidence_lines(cellular) -> list:
    """One line per cell: ``id dim sign:boundary_id ...`` with the signed
    boundary matching the cellular boundary display."""
    rk = cellular.rk
    lines = []
    for q in rk.degrees():
        mat = rk.d(q)
        cols = {}
        for (i, j), v in mat.entries():
            cols.setdefault(j, []).append((i, v))
        for j, g in enumerate(rk.gens_at(q)):
            T, sigma = cellular.cells[g.name]
            cell_id = f"({simplex_name(T)}|{simplex_name(sigma)})"
            terms = []
            for i, v in cols.get(j, ()):
                TT, ss = cellular.cells[rk.gens_at(q - 1)[i].name]
                bid = f"({simplex_name(TT)}|{simplex_name(ss)})"
                sign = "+1" if v == rk.ring.one else str(v)
                terms.append(f"{sign}:{bid}")
            terms.sort(key=lambda t: t.split(":", 1)[1])
            dim = (len(T) - 1) - (len(sigma) - 1)
            lines.append(" ".join([cell_id, str(dim)] + terms))
    return lines


def run_command(command: str, payload: dict | None, *, ring_override=None,
                seed=0, count=100, document_name=None) -> Report:
    """Execute one CLI command against a parsed document payload."""
    doc = parse_document(payload) if payload is not None else None
    ring = Ring.parse(ring_override) if ring_override else (
        doc.ring if doc else Ring.integers())
    report = Report(command, str(ring), document_name)

    if command == "validate":
        for name in sorted(doc.complexes):
            cx = doc.complexes[name]
            report.tables[f"complex/{name}"] = {
                "vertices": len(cx.vertices),
                "simplices": sum(1 for _ in cx.all_simplices()),
                "dim": cx.dim,
                "euler": cx.euler_characteristic(),
            }
        for name, ks in doc.kspaces:
            def body(ks=ks):
                derived_kspace(ks)[2].pi.validate()
                return True, {}
            _guard(report, "validate/kspace", name, body)
    elif command == "subdivide":
        for name in sorted(doc.complexes):
            cx = doc.complexes[name]
            from .simplicial import barycentric_subdivision
            derived = barycentric_subdivision(cx)
            counts = {str(p): len(derived.prime.simplices_of_dim(p))
                      for p in range(derived.prime.dim + 1)}
            report.tables[f"subdivision/{name}"] = counts
            report.add("subdivide/euler-preserved", name,
                       derived.prime.euler_characteristic()
                       == cx.euler_characteristic())
    elif command == "homology":
        for name in sorted(doc.complexes):
            cx = chain_complex(doc.complexes[name], ring)
            def body(cx=cx, name=name):
                groups = homology(cx)
                report.tables[f"homology/{name}"] = homology_table(groups, ring)
                return True, {}
            _guard(report, "homology/computed", name, body)
    elif command == "ball-complex":
        for name, ks in doc.kspaces:
            def body(ks=ks, name=name):
                ball = BallComplex(ks)
                failures = ball.check()
                report.tables[f"cells/{name}"] = {
                    str(d): n for d, n in sorted(ball.census().items())}
                return not failures, ({"failures": failures[:5]}
                                      if failures else {})
            _guard(report, "cells/ball-structure", name, body)
    elif command == "dualize":
        for name, ks in doc.kspaces:
            def body(ks=ks, name=name):
                data = KSpaceData.build(ks, ring)
                tc = data.tc
                ranks = {str(q): tc.rank(q) for q in tc.degrees()}
                by_label = {}
                for q in tc.degrees():
                    for g in tc.gens_at(q):
                        key = simplex_name(g.label)
                        by_label[key] = by_label.get(key, 0) + 1
                diffs = {}
                for q in tc.degrees():
                    entries = [[i, j, str(v)] for (i, j), v in tc.d(q).entries()]
                    if entries:
                        diffs[str(q)] = entries
                report.tables[f"dual/{name}"] = {
                    "ranks": ranks, "ranks-by-label": by_label,
                    "differentials": diffs}
                tc.validate()
                return True, {}
            _guard(report, "dualize/sound", name, body)
    elif command == "verify":
        groups = None
        if doc.checks and "all" not in doc.checks:
            groups = set(doc.checks)
        for name, ks in doc.kspaces:
            verify_kspace(report, name, ks, ring, groups)
    elif command == "random":
        rng_spaces = corpus.random_kspaces(seed, count)
        for idx, ks in enumerate(rng_spaces):
            quick_sweep_kspace(report, f"seed{seed}/{idx}", ks, ring)
        report.tables["sweep"] = {"seed": seed, "count": count}
    elif command == "emit-cells":
        for name, ks in doc.kspaces:
            def body(ks=ks, name=name):
                orientation = OrientationPair.standard(ks)
                cellular = cellular_chain_complex(ks, ring, orientation)
                report.tables[f"cells/{name}"] = cell_incidence_lines(cellular)
                return True, {}
            _guard(report, "emit-cells/built", name, body)
    else:
        raise InputError(f"unknown command {command!r}")
    return report
