"""Acceptance gate: one test per criterion, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion.  Every random stream is seeded (splitmix64), so the whole gate
is deterministic.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from itertools import product
from math import gcd

from starmono.abelian import FgAbelianGroup, ModuleHom, hom_kernel, submodule_equal
from starmono.corpus import example_degenerate_seifert, example_quartic, quartic_facts
from starmono.duality import dimension_chain, dualize_operator
from starmono.errors import InconsistentData, TorsionPresent
from starmono.generate import (
    random_automorphism,
    random_decomposition,
    random_element,
    random_scalar,
    random_tuple,
)
from starmono.matrices import ExactMatrix
from starmono.prng import SplitMix64
from starmono.reconstruction import (
    eigen_partial_check,
    fixed_space_at_infinity,
    invariant_subspace,
    reconstruct_tuple,
)
from starmono.rings import QQ, ZZ, prime_field
from starmono.seifert import intersection_from_seifert, monodromy_from_seifert
from starmono.sequence_e import CriticalValueDatum, corollary_B_check, data_from_tuples
from starmono.snf import diagonal_invariants
from starmono.star import compose_tuple, to_full_operator
import pytest


@contextmanager
def criterion(num: int, desc: str):
    try:
        yield
    except BaseException:
        print(f"\ncriterion {num} [{desc}]: FAIL")
        raise
    print(f"\ncriterion {num} [{desc}]: PASS")


RING_FAMILIES = (
    ("Q", QQ, False),
    ("F2", prime_field(2), False),
    ("F3", prime_field(3), False),
    ("F101", prime_field(101), False),
    ("Z-unimodular", ZZ, False),
    ("Z-torsion", ZZ, True),
)


def test_criterion_1_reconstruction_roundtrip():
    with criterion(1, "reconstruction roundtrip, 1000 tuples per ring family, < 60 s"):
        t0 = time.time()
        for fam, (name, ring, torsion) in enumerate(RING_FAMILIES):
            rng = SplitMix64(0xA11CE0 + fam)
            for i in range(1000):
                t = rng.int_in(1, 6)
                dec = random_decomposition(rng, ring, t, 4, with_torsion=torsion)
                tup = random_tuple(rng, dec)
                assert reconstruct_tuple(compose_tuple(tup), dec) == tup, (name, i)
        elapsed = time.time() - t0
        print(f"  6000 roundtrips in {elapsed:.1f}s", end="")
        assert elapsed < 60.0


def test_criterion_2_eigen_partial_equivalence():
    with criterion(2, "eigen-partial equivalence on 500+ triples incl. forced-true"):
        triples = 0
        forced = 0
        for fam, (name, ring, torsion) in enumerate(RING_FAMILIES):
            rng = SplitMix64(0xE16E00 + fam)
            for _ in range(30):
                dec = random_decomposition(rng, ring, rng.int_in(1, 6), 4, with_torsion=torsion)
                tup = random_tuple(rng, dec)
                m_inf = compose_tuple(tup)
                for a in (ring.zero, ring.one, random_scalar(rng, ring)):
                    v = random_element(rng, dec)
                    lhs, rhs = eigen_partial_check(tup, v, a)
                    assert lhs == rhs
                    triples += 1
                    # forced-true case: v in Ker(M_inf - a*Id) whenever nonzero
                    n = dec.total_dim
                    shifted = ModuleHom(
                        ring, dec, dec,
                        m_inf.matrix - ExactMatrix.identity(ring, n).scale(a),
                    )
                    kernel, incl = hom_kernel(shifted)
                    if not kernel.is_trivial:
                        w = incl.matrix.column(0)
                        lhs, rhs = eigen_partial_check(tup, w, a)
                        assert lhs and rhs
                        triples += 1
                        forced += 1
        print(f"  {triples} triples, {forced} forced-true", end="")
        assert triples >= 500
        assert forced >= 20


def test_criterion_3_invariant_identity():
    with criterion(3, "intersection of fixed spaces equals Ker(M_inf - 1), zero failures"):
        checked = 0
        for fam, (name, ring, torsion) in enumerate(RING_FAMILIES):
            rng = SplitMix64(0x1D000 + fam)
            for _ in range(100):
                dec = random_decomposition(rng, ring, rng.int_in(1, 5), 4, with_torsion=torsion)
                tup = random_tuple(rng, dec)
                gi, gens_i = invariant_subspace(tup)
                gf, gens_f = fixed_space_at_infinity(tup)
                assert gi == gf
                assert submodule_equal(ring, gens_i, gens_f, dec)
                checked += 1
        print(f"  {checked} tuples", end="")
        assert checked >= 600


def test_criterion_4_duality_chain_and_strict_witness():
    with criterion(4, "dimension chain on 500+ field tuples; strict witness in 10000 trials"):
        count = 0
        for ring in (QQ, prime_field(2), prime_field(3), prime_field(101)):
            rng = SplitMix64(0xD0A1 + ring.modulus if ring.modulus else 0xD0A1)
            for _ in range(130):
                dec = random_decomposition(rng, ring, rng.int_in(1, 5), 4)
                tup = random_tuple(rng, dec)
                ch = dimension_chain(tup)
                assert ch.dim_inv_homology == ch.dim_ker_minf_homology
                assert ch.dim_ker_minf_homology == ch.dim_ker_minf_cohomology
                assert ch.dim_ker_minf_cohomology >= ch.dim_inv_cohomology
                assert all(a == b for a, b in ch.per_operator)
                count += 1
        assert count >= 500
        rng = SplitMix64(2024)
        witness_at = None
        for trial in range(10000):
            dec = random_decomposition(rng, QQ, 2, sizes=[2, 2])
            tup = random_tuple(rng, dec)
            ch = dimension_chain(tup)
            if ch.dim_inv_cohomology < ch.dim_ker_minf_cohomology:
                witness_at = trial
                break
        print(f"  {count} chains; strict witness at trial {witness_at}", end="")
        assert witness_at is not None


def test_criterion_5_quartic_fixture():
    with criterion(5, "quartic fixture: image, nontrivial operator, torsion refusal, sequence"):
        ex = example_quartic()
        dec = ex.tuple.decomposition
        full = to_full_operator(ex.tuple.operators[0])
        from starmono.abelian import hom_image

        defect = ModuleHom(ZZ, dec, dec, full.matrix - ExactMatrix.identity(ZZ, 1))
        image, _ = hom_image(defect)
        assert image == FgAbelianGroup(0, (3,))  # Im(m - 1) is all of Z/3
        assert not compose_tuple(ex.tuple).is_identity()
        with pytest.raises(TorsionPresent):
            dualize_operator(full)
        from starmono.sequence_e import sequence_E_constraints

        assert sequence_E_constraints(ex.sequence_datum).consistent
        assert all(f.holds for f in quartic_facts(ex))


def test_criterion_6_corollary_b():
    with criterion(6, "acyclicity equivalence on 200+ consistent double tuples"):
        checked = 0
        for ring, torsion in ((ZZ, True), (ZZ, False), (QQ, False)):
            rng = SplitMix64(0xB0B ^ (1 if torsion else 0) ^ (7 if ring.is_field else 0))
            for _ in range(70):
                t = rng.int_in(1, 5)
                dq = random_decomposition(rng, ring, t, 3, with_torsion=torsion)
                db = random_decomposition(rng, ring, t, 3, with_torsion=torsion, degree=0)
                tq, tb = random_tuple(rng, dq), random_tuple(rng, db)
                rep = corollary_B_check(tq, tb, data_from_tuples(tq, tb))
                assert rep.equivalent
                checked += 1
        # structured boundary case: everything trivial gives (True, True)
        from starmono.star import StarDecomposition, identity_tuple

        dq = StarDecomposition(ZZ, 1, (FgAbelianGroup(),))
        db = StarDecomposition(ZZ, 0, (FgAbelianGroup(),))
        rep = corollary_B_check(
            identity_tuple(dq), identity_tuple(db),
            data_from_tuples(identity_tuple(dq), identity_tuple(db)),
        )
        assert (rep.cond_i, rep.cond_ii, rep.equivalent) == (True, True, True)
        # hand-built violation is refused
        dq1 = StarDecomposition(ZZ, 1, (FgAbelianGroup(1),))
        tq1 = identity_tuple(dq1)
        tb1 = identity_tuple(db)
        good = data_from_tuples(tq1, tb1)[0]
        bad = (CriticalValueDatum(1, good.summand, good.operator, good.kernel_below,
                                  FgAbelianGroup()),)
        with pytest.raises(InconsistentData):
            corollary_B_check(tq1, tb1, bad)
        print(f"  {checked} double tuples", end="")
        assert checked >= 200


def test_criterion_7_seifert():
    with criterion(7, "Seifert roundtrip x500; M=1 gives S=0; degenerate witness flagged"):
        rng = SplitMix64(0x5E1F)
        done = 0
        while done < 500:
            n = rng.int_in(1, 4)
            left = ExactMatrix.from_rows(
                ZZ, [[rng.int_in(-4, 4) for _ in range(n)] for _ in range(n)]
            )
            if left.det() == 0:
                continue
            m = random_automorphism(rng, ZZ, FgAbelianGroup(n)).matrix
            s = intersection_from_seifert(left, m)
            rec = monodromy_from_seifert(left, s)
            assert rec.realizable and rec.integer_matrix == m
            done += 1
        for _ in range(50):
            n = rng.int_in(1, 4)
            left = ExactMatrix.from_rows(
                ZZ, [[rng.int_in(-4, 4) for _ in range(n)] for _ in range(n)]
            )
            assert intersection_from_seifert(left, ExactMatrix.identity(ZZ, n)).is_zero()
        witness = example_degenerate_seifert()
        assert witness.S.is_zero()
        assert not witness.M.is_identity()
        lq = ExactMatrix.from_rows(QQ, witness.L.to_lists(), witness.L.rows, witness.L.cols)
        assert lq.det() == 0  # flagged: the Seifert form is singular
        print(f"  {done} roundtrips", end="")


def test_criterion_8_snf_vs_minor_gcd_exhaustive():
    with criterion(8, "SNF vs minor-gcd oracle, exhaustive dims <= 3, entries -2..2"):
        vals = (-2, -1, 0, 1, 2)
        total = 0
        # 1 x c and r x 1: the single invariant factor is the gcd of the entries
        for k in (1, 2, 3):
            for flat in product(vals, repeat=k):
                g1 = gcd(*flat) if k > 1 else abs(flat[0])
                assert diagonal_invariants([list(flat)]) == [g1]
                assert diagonal_invariants([[v] for v in flat]) == [g1]
                total += 2 if k > 1 else 1
        # 2 x 2
        for flat in product(vals, repeat=4):
            a, b, c, d = flat
            diag = diagonal_invariants([[a, b], [c, d]])
            g1 = gcd(a, b, c, d)
            assert diag[0] == g1
            assert diag[0] * diag[1] == abs(a * d - b * c)
            total += 1
        # 2 x 3 and 3 x 2
        for flat in product(vals, repeat=6):
            a, b, c, d, e, f = flat
            g1 = gcd(*flat)
            g2 = gcd(a * e - b * d, a * f - c * d, b * f - c * e)
            rows = [[a, b, c], [d, e, f]]
            for mat in (rows, [[a, d], [b, e], [c, f]]):
                diag = diagonal_invariants(mat)
                assert diag[0] == g1
                assert diag[0] * diag[1] == g2
                total += 1
        # 3 x 3
        for flat in product(vals, repeat=9):
            a, b, c, d, e, f, g, h, i = flat
            g1 = gcd(*flat)
            g2 = gcd(
                e * i - f * h, d * i - f * g, d * h - e * g,
                b * i - c * h, a * i - c * g, a * h - b * g,
                b * f - c * e, a * f - c * d, a * e - b * d,
            )
            g3 = abs(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
            diag = diagonal_invariants([[a, b, c], [d, e, f], [g, h, i]])
            assert diag[0] == g1
            assert diag[0] * diag[1] == g2
            assert diag[0] * diag[1] * diag[2] == g3
            total += 1
        print(f"  {total} matrices checked exhaustively", end="")
        assert total == 5 + 2 * (25 + 125) + 625 + 2 * 5**6 + 5**9


def test_criterion_9_cli_determinism():
    with criterion(9, "CLI golden files byte-identical on fixed seeds"):
        from tests.cli_support import COMMANDS, GOLDEN_DIR, run_cli

        for name, argv, expected_exit in COMMANDS:
            code, out = run_cli(argv)
            assert code == expected_exit, name
            golden = (GOLDEN_DIR / f"{name}.json").read_text(encoding="utf-8")
            assert out == golden, f"{name} not byte-identical"
            code2, out2 = run_cli(argv)
            assert (code2, out2) == (code, out), f"{name} not deterministic across runs"
