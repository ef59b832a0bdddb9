"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import time
from pathlib import Path

import pytest

import support
from hopfribbon.catalog import GROUPS, catalog_ids, cyclic_group, get_entry, group_algebra
from hopfribbon.cli import DEFAULT_MAX_DIM, EXIT_THEOREM, emit, main
from hopfribbon.double import double, factorizable, verify_quasitriangular
from hopfribbon.hopf import HopfAlgebra, validate_axioms
from hopfribbon.linalg import ExactArray, Field
from hopfribbon.ribbon import modular_verdict

GOLDEN = Path(__file__).parent / "golden"
ALL = catalog_ids()


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def report(number: int, text: str):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] {number} {text}")
    return report


def _qc2_mutations():
    table, names = cyclic_group(2)
    h = group_algebra(table, Field.rational(), name="QC2", labels=names)
    parts = ("mult", "unit", "comult", "counit", "antipode")
    for attr in parts:
        arr = getattr(h, attr)
        for idx in itertools.product(*(range(s) for s in arr.shape)):
            num = arr.num.copy()
            num[idx] += arr.den
            fields = {a: getattr(h, a) for a in parts}
            fields[attr] = ExactArray(arr.field, num, arr.den)
            yield HopfAlgebra("QC2-mutated", h.field, h.basis, **fields)


def test_criterion_1_axiom_suite(criterion):
    with criterion(1, "axiom suite on the catalog, QC2 single-constant mutations caught, < 1 s per entry"):
        for cid in ALL:
            h = support.algebra(cid)
            t0 = time.perf_counter()
            rep = validate_axioms(h)
            elapsed = time.perf_counter() - t0
            assert rep.ok, (cid, [str(f) for f in rep.failures])
            assert elapsed < 1.0, (cid, elapsed)
        count = 0
        for bad in _qc2_mutations():
            rep = validate_axioms(bad)
            assert not rep.ok
            assert all(f.axiom and f.witness is not None for f in rep.failures)
            count += 1
        assert count == 24


def test_criterion_2_double_correctness(criterion):
    with criterion(2, "doubles of dim(H) <= 9 validate and are quasitriangular; S^2 = Ad(u); time limits"):
        for cid in support.SMALL_IDS:
            t0 = time.perf_counter()
            qt = double(support.algebra(cid))
            assert qt.validation is not None and qt.validation.ok, cid
            rep = verify_quasitriangular(qt)
            elapsed = time.perf_counter() - t0
            assert rep.ok, (cid, [str(f) for f in rep.failures])
            assert {"hexagon_left", "hexagon_right", "braiding_naturality",
                    "r_invertible_left", "s2_conjugation_by_u"} <= set(rep.checked)
            D = qt.algebra
            for i in range(qt.dim):
                e = D.basis_element(i)
                assert D.S(D.S(e)).equals(D.product(D.product(qt.u, e), qt.u_inverse)), (cid, i)
            limit = 30.0 if qt.dim <= 16 else 300.0
            assert elapsed < limit, (cid, elapsed)


def test_criterion_3_factorizable(criterion):
    with criterion(3, "every catalog double is factorizable"):
        failures = [cid for cid in ALL if not factorizable(support.qt(cid))]
        assert failures == []


def test_criterion_4_double_unimodular(criterion):
    with criterion(4, "the distinguished character of every catalog double is the counit"):
        for cid in ALL:
            D = support.qt(cid).algebra
            assert support.double_radford(cid).alpha.equals(D.counit), cid


def test_criterion_5_radford_s4(criterion):
    with criterion(5, "S^4 formula holds on every catalog entry and every catalog double"):
        for cid in ALL:
            assert support.radford(cid).s4.ok, cid
            assert support.double_radford(cid).s4.ok, cid


def test_criterion_6_bijection(criterion):
    with criterion(6, "square-root pairs correspond bijectively to ribbon elements; CLI never exits 3"):
        for cid in ALL:
            rep = support.report(cid)
            assert rep.bijection_verified, cid
            assert len(rep.kr_pairs) == rep.ribbon_count, cid
        for cid in ALL:
            if support.algebra(cid).dim > DEFAULT_MAX_DIM:
                continue
            with contextlib.redirect_stdout(io.StringIO()):
                assert main(["classify", cid]) != EXIT_THEOREM, cid


def _group_formula(label: str) -> int:
    table, _ = GROUPS[label]()
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    ells = [z for z in range(n)
            if table[z][z] == e and all(table[z][g] == table[g][z] for g in range(n))]
    homs = sum(
        1 for s in itertools.product([1, -1], repeat=n)
        if s[e] == 1 and all(s[table[a][b]] == s[a] * s[b] for a in range(n) for b in range(n))
    )
    return len(ells) * homs


def test_criterion_7_known_verdicts(criterion):
    with criterion(7, "ribbon counts: QC2 = 4, Sweedler = 0 over Q and F5, Taft(3,7,2) >= 1, group formula"):
        assert support.report("group-C2-Q").ribbon_count == 4
        assert support.report("sweedler-Q").ribbon_count == 0
        assert support.report("sweedler-F5").ribbon_count == 0
        assert support.report("taft-n3-F7-q2").ribbon_count >= 1
        for label in GROUPS:
            assert support.report(f"group-{label}-Q").ribbon_count == _group_formula(label), label
        for cid in ALL:
            assert support.report(cid).ribbon_count == get_entry(cid).expected["ribbon_count"], cid


def test_criterion_8_spherical_implies_modular(criterion):
    with criterion(8, "spherical implies modular; group algebras spherical; Sweedler not"):
        for cid in ALL:
            rep = support.report(cid)
            if rep.spherical_dsps:
                assert modular_verdict(support.algebra(cid), rep), cid
        for label in GROUPS:
            assert support.report(f"group-{label}-Q").spherical_dsps, label
        assert not support.report("sweedler-Q").spherical_dsps
        assert not support.report("sweedler-F5").spherical_dsps


def test_criterion_9_golden_files(criterion):
    with criterion(9, "classify output is byte-identical to the golden files"):
        for cid in ALL:
            golden = (GOLDEN / f"{cid}.json").read_text(encoding="utf-8")
            buf = io.StringIO()
            emit(support.report(cid).to_json(), "json", buf)
            assert buf.getvalue() == golden, cid
        for cid in ("group-C2-Q", "sweedler-Q"):
            runs = []
            for _ in range(2):
                out = io.StringIO()
                with contextlib.redirect_stdout(out):
                    main(["classify", cid])
                runs.append(out.getvalue())
            assert runs[0] == runs[1] == (GOLDEN / f"{cid}.json").read_text(encoding="utf-8")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
