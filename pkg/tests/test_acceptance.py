"""The acceptance gate: every criterion, exact arithmetic, one line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
pass lines.  Everything is an exact integer statement; there are no
tolerances to tune.
"""

import json
import time

import pytest

from rkdual.linalg import homology
from rkdual.rings import Ring, ZZ
from rkdual.rkcore import delta_complexes
from rkdual.simplicial import SimplicialComplex, control_map, kspace_identity
from rkdual.duality import Dualizer, verify_e_equivalence
from rkdual.ballcomplex import (OrientationPair, cellular_chain_complex,
                                cellular_iso, induced_cell_map,
                                induced_chain_map)
from rkdual.rkcore import dual_star_map
from rkdual.capproduct import (verify_cap_chain_map, verify_equivalences,
                            verify_fundamental_cycles)
from rkdual.corpus import CORPUS_NAMES, corpus_kspace, document, random_kspaces
from rkdual.checks import KSpaceData
from rkdual.cli import main

GF2 = Ring.prime_field(2)


def announce(number, text, passed):
    print(f"criterion {number} ({text}): {'PASS' if passed else 'FAIL'}")
    assert passed


@pytest.fixture(scope="module")
def corpus_data():
    return {name: KSpaceData.build(corpus_kspace(name), ZZ)
            for name in CORPUS_NAMES}


def test_criterion_1_differential_soundness(corpus_data):
    started = time.monotonic()
    ok = True
    for name, data in corpus_data.items():
        for cx in data.complexes().values():
            cx.validate()
    for ks in random_kspaces(0, 100):
        data = KSpaceData.build(ks, ZZ)
        for cx in data.complexes().values():
            cx.validate()
    elapsed = time.monotonic() - started
    ok = ok and elapsed < 30.0
    announce(1, f"d∘d = 0 on corpus and 100 random K-spaces in "
                f"{elapsed:.2f}s < 30s", ok)


def test_criterion_2_cellular_identification(corpus_data):
    ok = True
    for name, data in corpus_data.items():
        data.iso.map.validate()
        ok = ok and data.iso.map.is_bijection_on_bases()
    expected = {"hex": {0: (1, ()), 1: (1, ())},
                "id2": {0: (1, ())},
                "circ3": {0: (1, ()), 1: (1, ())}}
    for name, want in expected.items():
        got = {q: (h.betti, h.torsion)
               for q, h in homology(corpus_data[name].tc.underlying()).items()
               if not h.is_trivial()}
        ok = ok and got == want
    announce(2, "dual of cochains is the cellular complex, with the right "
                "homology", ok)


def test_criterion_3_double_dual_equivalence(corpus_data):
    ok = True
    for name in CORPUS_NAMES:
        for ring in (ZZ, GF2):
            ks = corpus_kspace(name)
            orientation = OrientationPair.standard(ks)
            dc = delta_complexes(ks, ring, orientation.bx)
            dz = Dualizer(ks.K, ring, orientation.bk)
            cell = cellular_chain_complex(ks, ring, orientation,
                                          check_display=False)
            for cx in (dc.dstar_x, dc.dx_prime, cell.rk):
                rep = verify_e_equivalence(cx, dz)
                ok = ok and rep.passed
    announce(3, "double-dual collapse has acyclic cones over Z and Z/2", ok)


def test_criterion_4_cap_chain_map():
    ok = True
    for maximal in (("ab",), ("abc",), ("abcd",), ("ab", "bc", "ac")):
        cx = SimplicialComplex.build(None, [list(s) for s in maximal])
        rep = verify_cap_chain_map(cx, ZZ)
        ok = (ok and rep.full_identity and rep.face_first and rep.face_last
              and rep.face_interior and rep.pairing)
    announce(4, "cap product is a chain map with a perfect interior-face "
                "pairing", ok)


def test_criterion_5_fundamental_cycles(corpus_data):
    ok = True
    for name, data in corpus_data.items():
        rep = verify_fundamental_cycles(data.ks, data.cell_data, data.ball)
        ok = ok and rep.passed
    announce(5, "every cell maps to a unit-coefficient fundamental cycle",
             ok)


def test_criterion_6_composite_equivalences(corpus_data):
    ok = True
    for name, data in corpus_data.items():
        suite = verify_equivalences(data.ks, ZZ, data.orientation,
                                    data.cell_data, data.iso)
        ok = ok and suite.passed
    announce(6, "cell map and both composites are equivalences over Z", ok)


def test_criterion_7_cell_structure_combinatorics(corpus_data):
    ok = True
    for name, data in corpus_data.items():
        ok = ok and not data.ball.check()
    census = {name: corpus_data[name].ball.census()
              for name in ("edge", "id2", "hex")}
    ok = ok and census["edge"] == {0: 3, 1: 2}
    ok = ok and census["id2"] == {0: 7, 1: 9, 2: 3}
    ok = ok and census["hex"] == {0: 12, 1: 12}
    announce(7, "cell dimensions, interior partition, Euler counts and "
                "censuses", ok)


def test_criterion_8_naturality(corpus_data):
    ok = True
    for name in CORPUS_NAMES:
        data = corpus_data[name]
        fid = induced_cell_map(kspace_identity(data.ks), ZZ,
                               data.orientation, data.orientation)
        from rkdual.rkcore import RKMap
        ok = ok and fid == RKMap.identity(data.cellular.rk)
        fmap = control_map(data.ks)
        or_k = OrientationPair.standard(fmap.tgt)
        fk = induced_cell_map(fmap, ZZ, data.orientation, or_k)
        iso_y = cellular_iso(fmap.tgt, ZZ, or_k)
        pullback = dual_star_map(
            induced_chain_map(fmap, ZZ, data.orientation, or_k))
        lhs = iso_y.map.compose(data.dualizer.map(pullback))
        rhs = fk.compose(data.iso.map)
        ok = ok and lhs == rhs
    announce(8, "identification commutes with induced maps (identity and "
                "control)", ok)


def test_criterion_9_deterministic_reports(tmp_path):
    path = tmp_path / "hex.json"
    path.write_text(json.dumps(document("hex")), encoding="utf-8")
    outs = []
    for i in (1, 2):
        out = tmp_path / f"report{i}.json"
        code = main(["verify", str(path), "--format", "json",
                     "--out", str(out)])
        assert code == 0
        outs.append(out.read_bytes())
    announce(9, "repeated verify runs are byte-identical", outs[0] == outs[1])
