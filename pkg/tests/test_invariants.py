import random

import pytest

from mtinv.corpus import load_corpus
from mtinv.errors import NotATorus
from mtinv.groups import FiniteGroup
from mtinv.invariants import (
    InvariantReport,
    inv0_torus_mod_n,
    inv0_torus_qz,
    inv1_mod_n,
    inv1_qz,
    pic_torus,
    verify_cor52,
)
from mtinv.lattice import FinAbGroup, IntMatrix
from mtinv.modules import GammaLattice, GammaModule, regular_lattice
from mtinv.multtype import MultTypeGroup, mu_n, norm_one_torus, split_torus, weil_restriction_gm
from mtinv.runner import ORACLE

C2 = FiniteGroup.cyclic(2)
C3 = FiniteGroup.cyclic(3)


def Z(*orders, r=0):
    return FinAbGroup(r, FinAbGroup.from_cyclic_orders(orders).torsion)


def mu_with_inversion(n):
    lat = GammaLattice.from_generators(C2, [IntMatrix.from_rows([[-1]])])
    return MultTypeGroup(GammaModule(lat, IntMatrix.from_rows([[n]])), f"mu_{n}^-")


# --- report type


def test_report_tag_and_rank_rules():
    with pytest.raises(ValueError):
        InvariantReport(FinAbGroup(), "T9")
    with pytest.raises(ValueError):
        InvariantReport(FinAbGroup(), "Pic", divisible_rank=0)
    with pytest.raises(ValueError):
        InvariantReport(FinAbGroup(), "T0_torus_QZ")


def test_value_string():
    assert InvariantReport(Z(), "T0_torus_QZ", divisible_rank=1).value_string() == "Q/Z"
    assert InvariantReport(Z(2), "T0_torus_QZ", divisible_rank=2).value_string() == "(Q/Z)^2 + Z/2"
    assert InvariantReport(Z(), "T0_torus_QZ", divisible_rank=0).value_string() == "0"


# --- inv1_mod_n


def test_inv1_mod_n_examples():
    rep = inv1_mod_n(mu_n(6), 4)
    assert rep.group == Z(2) and rep.theorem == "T1_mod_n" and rep.modulus == 4
    assert rep.passed and rep.witnesses
    for n in (1, 2, 5, 12):
        assert inv1_mod_n(split_torus(1), n).group.is_trivial
    assert inv1_mod_n(norm_one_torus(C2), 2).group.is_trivial


def test_inv1_mod_n_table_for_mu6():
    expected = {1: Z(), 2: Z(2), 3: Z(3), 4: Z(2), 6: Z(6), 12: Z(6)}
    for n, grp in expected.items():
        assert inv1_mod_n(mu_n(6), n).group == grp


def test_inv1_mod_n_twisted():
    assert inv1_mod_n(mu_with_inversion(4), 4).group == Z(2)
    assert inv1_mod_n(mu_with_inversion(3), 3).group.is_trivial


def test_inv1_rejects_bad_modulus():
    with pytest.raises(ValueError):
        inv1_mod_n(mu_n(2), 0)


# --- inv1_qz


def test_inv1_qz_examples():
    for n in (2, 3, 6, 12):
        assert inv1_qz(mu_n(n)).group == Z(n)
    for t in (split_torus(2), norm_one_torus(C2), weil_restriction_gm(C3)):
        assert inv1_qz(t).group.is_trivial
    assert inv1_qz(mu_with_inversion(3)).group.is_trivial
    assert inv1_qz(mu_with_inversion(4)).group == Z(2)
    assert inv1_qz(mu_n(4)).theorem == "T1_QZ_finite_part"


# --- inv0


def test_inv0_torus_mod_n_examples():
    for r in (1, 3):
        for n in (2, 5):
            assert inv0_torus_mod_n(split_torus(r), n).group == FinAbGroup(0, (n,) * r)
    assert inv0_torus_mod_n(norm_one_torus(C2), 2).group == Z(2)
    assert inv0_torus_mod_n(norm_one_torus(C2), 3).group.is_trivial


def test_inv0_requires_torus():
    with pytest.raises(NotATorus):
        inv0_torus_mod_n(mu_n(2), 2)
    with pytest.raises(NotATorus):
        inv0_torus_qz(mu_n(2))
    with pytest.raises(NotATorus):
        pic_torus(mu_n(2))


def test_inv0_torus_qz_examples():
    rep = inv0_torus_qz(split_torus(1))
    assert rep.divisible_rank == 1 and rep.group.is_trivial and rep.value_string() == "Q/Z"
    rep = inv0_torus_qz(norm_one_torus(C2))
    assert rep.divisible_rank == 0 and rep.group == Z(2)
    rep = inv0_torus_qz(weil_restriction_gm(C2))
    assert rep.divisible_rank == 1 and rep.group.is_trivial
    assert rep.passed and len(rep.checks) == 5


# --- Pic


def test_pic_examples():
    assert pic_torus(norm_one_torus(C2)).group == Z(2)
    assert pic_torus(norm_one_torus(C3)).group == Z(3)
    assert pic_torus(norm_one_torus(FiniteGroup.klein_four())).group == Z(2, 2)
    assert pic_torus(norm_one_torus(FiniteGroup.cyclic(8))).group == Z(8)
    for G in (C2, C3, FiniteGroup.symmetric(3)):
        assert pic_torus(weil_restriction_gm(G)).group.is_trivial
        q = MultTypeGroup(GammaModule.lattice(regular_lattice(G).direct_sum(regular_lattice(G))))
        assert pic_torus(q).group.is_trivial


def test_pic_invariant_under_equivariant_isomorphism():
    from test_modules import random_equivariant_basis_change

    rng = random.Random(7)
    for t in (norm_one_torus(C2), norm_one_torus(C3), norm_one_torus(FiniteGroup.klein_four())):
        for _ in range(3):
            t2 = MultTypeGroup(random_equivariant_basis_change(t.chars, rng))
            assert pic_torus(t2).group == pic_torus(t).group


# --- exactness


def test_fixed_point_sequence_examples():
    for n in (2, 3, 6):
        rec = verify_cor52(mu_n(n), n)
        assert (rec.h0_torsion, rec.h0_S, rec.h0_W) == (Z(n), Z(n), Z(n))
        assert rec.kernel == Z(n) and rec.passed
    rec = verify_cor52(split_torus(1), 7)
    assert rec.h0_torsion.is_trivial and rec.passed
    rec = verify_cor52(mu_n(2, C2), 2)
    assert rec.passed and rec.kernel == Z(2)


# --- backends agree


@pytest.mark.parametrize("g", load_corpus()[:16], ids=lambda g: g.name)
def test_oracle_backend_agrees(g):
    if g.is_torus:
        assert pic_torus(g, ORACLE).group == pic_torus(g).group
        assert inv0_torus_qz(g, backend=ORACLE).value_string() == inv0_torus_qz(g).value_string()
    assert inv1_qz(g, backend=ORACLE).group == inv1_qz(g).group
