"""Acceptance criteria.  Each test prints one PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v`` or as a script.
"""

import os
import random
import subprocess
import sys
from pathlib import Path

import pytest

from mtinv.corpus import lattice_corpus, load_corpus, small_groups
from mtinv.invariants import inv0_torus_qz, inv1_mod_n, inv1_qz, pic_torus, verify_cor52
from mtinv.lattice import IntMatrix, n_torsion, snf, torsion_part
from mtinv.modules import GammaModule, h0, h1, h1_oracle, mod_n, regular_lattice
from mtinv.multtype import perturbed_generators, resolve_by_tori

GOLDEN = Path(__file__).parent / "golden" / "corpus.txt"
MODULI = (1, 2, 3, 4, 6, 12)
LADDER = (1, 2, 6, 12, 60)

_CORPUS = None


def corpus():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = [(g, resolve_by_tori(g)) for g in load_corpus()]
    return _CORPUS


def report(capsys, number, title, failures, detail=""):
    line = f"criterion {number} [{title}]: {'PASS' if not failures else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    for f in failures[:5]:
        line += f"\n    {f}"
    with capsys.disabled():
        print("\n" + line)
    assert not failures, line


def _unimodular(n, rng):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        if n == 1:
            m[0][0] = -m[0][0]
            continue
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-2, 2)
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.2:
            m[i], m[j] = m[j], m[i]
    return IntMatrix.from_rows(m, n)


def test_criterion_1_snf(capsys):
    rng = random.Random(20240501)
    failures = []
    for k in range(500):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        a = IntMatrix.from_rows([[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)], c)
        dec = snf(a)
        d = dec.diagonal
        rk = dec.rank
        off_diag_zero = all(dec.D[i, j] == 0 for i in range(r) for j in range(c) if i != j)
        ok = (
            dec.U @ a @ dec.V == dec.D
            and abs(dec.U.det()) == 1
            and abs(dec.V.det()) == 1
            and off_diag_zero
            and all(x > 0 for x in d[:rk])
            and all(x == 0 for x in d[rk:])
            and all(d[i + 1] % d[i] == 0 for i in range(rk - 1))
        )
        p, q = _unimodular(r, rng), _unimodular(c, rng)
        ok = ok and snf(p @ a @ q).diagonal == d
        if not ok:
            failures.append(f"matrix #{k}: {a.to_rows()}")
    report(capsys, 1, "Smith normal form", failures, "500 random matrices up to 8x8, entries in [-50, 50]")


def test_criterion_2_cohomology_oracle(capsys):
    failures = []
    count = 0
    for name, m in lattice_corpus(max_rank=4):
        got, ref = h1(m), h1_oracle(m)
        count += 1
        if got != ref:
            failures.append(f"{name}: h1 = {got}, oracle = {ref}")
        if not all(m.group.order % d == 0 for d in got.torsion):
            failures.append(f"{name}: {got} not killed by |Gamma| = {m.group.order}")
    for gname, G in small_groups().items():
        reg = GammaModule.lattice(regular_lattice(G))
        if not h1(reg).is_trivial or not h1_oracle(reg).is_trivial:
            failures.append(f"{gname}: H1 of Z[Gamma] is not 0")
    report(capsys, 2, "cohomology oracle equivalence", failures, f"{count} lattices, {len(small_groups())} groups")


def test_criterion_3_pic_anchors(capsys):
    by_name = {g.name: g for g, _ in corpus()}
    failures = []
    anchors = {"c2:norm_one_quadratic": "Z/2", "c3:norm_one_cubic": "Z/3"}
    for name, want in anchors.items():
        got = str(pic_torus(by_name[name]).group)
        if got != want:
            failures.append(f"{name}: Pic = {got}, expected {want}")
    quasisplit = [g for g, _ in corpus() if g.is_torus and not g.chars.relations.cols and g.chars.ambient.is_permutation]
    for g in quasisplit:
        got = str(pic_torus(g).group)
        if got != "0":
            failures.append(f"{g.name}: Pic = {got}, expected 0")
    report(capsys, 3, "Picard anchors", failures, f"2 anchors, {len(quasisplit)} quasisplit tori")


def test_criterion_4_exactness_cross_check(capsys):
    failures = []
    for g, res in corpus():
        for n in MODULI:
            try:
                rep = inv1_mod_n(g, n, res)
                rec = verify_cor52(g, n, res)
            except Exception as exc:  # CrossCheckFailure / ExactnessFailure
                failures.append(f"{g.name}, n={n}: {type(exc).__name__}: {exc}")
                continue
            direct = n_torsion(h0(g.chars), n)
            if not (rep.passed and rec.passed and direct == rec.kernel == rep.group):
                failures.append(f"{g.name}, n={n}: direct {direct}, resolution {rec.kernel}")
    report(capsys, 4, "inv1 direct vs resolution, fixed-point exactness", failures,
           f"{len(corpus())} groups x n in {MODULI}")


def test_criterion_5_stabilisation(capsys):
    failures = []
    checked = 0
    for g, res in corpus():
        e = torsion_part(h0(g.chars)).exponent
        qz = inv1_qz(g, res).group
        for m in range(e, 25, e):
            checked += 1
            got = inv1_mod_n(g, m, res).group
            if got != qz:
                failures.append(f"{g.name}, m={m}: {got} != {qz}")
    report(capsys, 5, "stabilisation of inv1 mod m", failures, f"{checked} (group, m) pairs, m <= 24")


def test_criterion_6_qz_ladder(capsys):
    failures = []
    tori = [g for g, _ in corpus() if g.is_torus]
    for t in tori:
        r = h0(t.chars).free_rank
        finite = h1(t.chars)
        for n in LADDER:
            lhs = h0(mod_n(t.chars, n)).order
            rhs = n ** r * n_torsion(finite, n).order
            if lhs != rhs:
                failures.append(f"{t.name}, n={n}: {lhs} != {n}^{r} * {rhs // n ** r}")
        rep = inv0_torus_qz(t, LADDER)
        if rep.divisible_rank != r or rep.group != finite or not rep.passed:
            failures.append(f"{t.name}: report {rep.value_string()}")
    report(capsys, 6, "Q/Z closed form vs ladder", failures, f"{len(tori)} tori, n in {LADDER}")


def test_criterion_7_resolutions(capsys):
    failures = []
    for g, res in corpus():
        try:
            res.check()
            alt = resolve_by_tori(g, perturbed_generators(g))
            alt.check()
        except Exception as exc:
            failures.append(f"{g.name}: {type(exc).__name__}: {exc}")
            continue
        if not (res.W.is_permutation and alt.W.is_permutation):
            failures.append(f"{g.name}: W is not a permutation lattice")
        for n in MODULI:
            a, b = inv1_mod_n(g, n, res), inv1_mod_n(g, n, alt)
            ra, rb = verify_cor52(g, n, res), verify_cor52(g, n, alt)
            if a.group != b.group or ra.kernel != rb.kernel or ra.h0_torsion != rb.h0_torsion:
                failures.append(f"{g.name}, n={n}: {a.group} vs {b.group} across generator choices")
        if inv1_qz(g, res).group != inv1_qz(g, alt).group:
            failures.append(f"{g.name}: inv1_qz depends on the generators")
    report(capsys, 7, "resolution well-formedness and independence", failures, f"{len(corpus())} groups, 2 generator choices")


def test_criterion_8_cli_determinism(capsys):
    def run(seed):
        env = dict(os.environ, PYTHONHASHSEED=str(seed))
        return subprocess.run([sys.executable, "-m", "mtinv", "corpus"], capture_output=True, env=env, check=False)

    first, second = run(0), run(12345)
    failures = []
    if first.returncode != 0 or second.returncode != 0:
        failures.append(f"exit codes {first.returncode}, {second.returncode}")
    if first.stdout != second.stdout:
        failures.append("two corpus runs differ")
    if first.stdout != GOLDEN.read_bytes():
        failures.append("corpus output differs from golden file")
    report(capsys, 8, "CLI determinism", failures, f"{len(first.stdout)} bytes, byte-identical across runs")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
