"""Standard examples.

``problem_files()`` builds the JSON problems shipped in ``corpus_data``;
``lattice_corpus()`` lists small lattices over every small group, used by
the cohomology test suites.
"""

from __future__ import annotations

from pathlib import Path

from .groups import FiniteGroup
from .lattice import IntMatrix
from .modules import GammaLattice, GammaModule, coset_lattice, regular_lattice
from .multtype import MultTypeGroup, mu_n, norm_one_torus, split_torus, weil_restriction_gm
from .problem import Task, dumps, parse_problem, problem_to_json

DATA_DIR = Path(__file__).parent / "corpus_data"


def small_groups() -> dict[str, FiniteGroup]:
    """Cyclic groups of order 2, 3, 4, 6, 8, the Klein four group and S3."""
    out = {f"C{n}": FiniteGroup.cyclic(n) for n in (2, 3, 4, 6, 8)}
    out["V4"] = FiniteGroup.klein_four()
    out["S3"] = FiniteGroup.symmetric(3)
    return out


def subgroups(group: FiniteGroup) -> list[tuple[int, ...]]:
    """All subgroups, generated by at most two elements (enough for order <= 8)."""
    found = set()
    for a in group.elements():
        for b in group.elements():
            found.add(tuple(sorted(group.closure([a, b]))))
    return sorted(found, key=lambda h: (len(h), h))


def index_two_subgroups(group: FiniteGroup) -> list[tuple[int, ...]]:
    return [h for h in subgroups(group) if 2 * len(h) == group.order]


def sign_lattice(group: FiniteGroup, kernel) -> GammaLattice:
    """Z with elements outside ``kernel`` acting by -1."""
    k = set(kernel)
    return GammaLattice(
        group, 1, tuple(IntMatrix.from_rows([[1 if g in k else -1]]) for g in group.elements())
    )


def augmentation_ideal(group: FiniteGroup) -> GammaModule:
    """Kernel of Z[Gamma] -> Z."""
    from .modules import GammaMap, kernel_map

    reg = GammaModule.lattice(regular_lattice(group))
    aug = GammaMap(reg, GammaModule.lattice(GammaLattice.trivial(group, 1)),
                   IntMatrix.from_rows([[1] * group.order]))
    return GammaModule.lattice(kernel_map(aug).source.ambient)


def lattice_corpus(max_rank: int = 4) -> list[tuple[str, GammaModule]]:
    """Named lattices of rank <= max_rank over every group in ``small_groups``."""
    out = []
    for gname, G in small_groups().items():
        cands = [("trivial", GammaModule.lattice(GammaLattice.trivial(G, 1))),
                 ("trivial^2", GammaModule.lattice(GammaLattice.trivial(G, 2)))]
        for h in index_two_subgroups(G):
            cands.append((f"sign{list(h)}", GammaModule.lattice(sign_lattice(G, h))))
        for h in subgroups(G):
            idx = G.order // len(h)
            if 1 < idx:
                cands.append((f"Z[G/{list(h)}]", GammaModule.lattice(coset_lattice(G, h))))
                cands.append((f"norm1[G/{list(h)}]", norm_one_torus(G, h).chars))
        cands.append(("augmentation", augmentation_ideal(G)))
        signs = [m for n, m in cands if n.startswith("sign")]
        if signs:
            cands.append(("sign+trivial", signs[0].direct_sum(cands[0][1])))
        for name, m in cands:
            if 0 < m.rank <= max_rank:
                out.append((f"{gname}:{name}", m))
    return out


# ---------------------------------------------------------------------------
# shipped problem files


def _sign_module(G: FiniteGroup, kernel, torsion: int | None) -> GammaModule:
    lat = sign_lattice(G, kernel)
    rel = IntMatrix.from_rows([[torsion]]) if torsion else IntMatrix.zeros(1, 0)
    return GammaModule(lat, rel)


def _scalar_module(G: FiniteGroup, n: int, unit: int) -> MultTypeGroup:
    """Z/n with the generator of a cyclic group acting by ``unit``.

    Built as Z[Gamma] / (n, s - unit), where s is the generator.
    """
    reg = regular_lattice(G)
    s = G.generators[0]
    cols = []
    for h in G.elements():
        e = [0] * G.order
        e[h] = n
        cols.append(e)
        e = [0] * G.order
        e[G.mul[s][h]] += 1
        e[h] -= unit
        cols.append(e)
    return MultTypeGroup(GammaModule(reg, IntMatrix.from_columns(cols, G.order)))


def _torus_tasks(name: str, moduli=(2, 3)) -> list[Task]:
    out = [Task("pic_torus", name), Task("inv0_torus_qz", name), Task("inv1_qz", name)]
    out += [Task("inv0_torus_mod_n", name, n) for n in moduli]
    out += [Task("inv1_mod_n", name, 2), Task("verify_cor52", name, 2)]
    return out


def _finite_tasks(name: str, moduli) -> list[Task]:
    out = [Task("h0", name), Task("inv1_qz", name)]
    for n in moduli:
        out += [Task("inv1_mod_n", name, n), Task("verify_cor52", name, n)]
    return out


def problem_files() -> dict[str, dict]:
    files = {}

    T = FiniteGroup.trivial()
    mods, tasks = {}, []
    for n in (2, 3, 6, 12):
        mods[f"mu_{n}"] = mu_n(n, T).chars
        tasks += _finite_tasks(f"mu_{n}", (4, n))
    mods["gm"] = split_torus(1, T).chars
    tasks += _torus_tasks("gm", (5,))
    mods["split_rank3"] = split_torus(3, T).chars
    tasks += _torus_tasks("split_rank3", (2,))
    files["trivial"] = problem_to_json(T, mods, tasks)

    C2 = FiniteGroup.cyclic(2)
    mods = {
        "norm_one_quadratic": norm_one_torus(C2).chars,
        "weil_quadratic": weil_restriction_gm(C2).chars,
        "mu_3_inversion": _sign_module(C2, [0], 3),
        "mu_4_inversion": _sign_module(C2, [0], 4),
        "mu_2_split": mu_n(2, C2).chars,
        "twisted_gm_times_mu_4": _sign_module(C2, [0], None).direct_sum(_sign_module(C2, [0], 4)),
    }
    tasks = _torus_tasks("norm_one_quadratic") + _torus_tasks("weil_quadratic")
    tasks += _finite_tasks("mu_3_inversion", (2, 3))
    tasks += _finite_tasks("mu_4_inversion", (2, 4))
    tasks += _finite_tasks("mu_2_split", (2,))
    tasks += _finite_tasks("twisted_gm_times_mu_4", (2, 4))
    tasks += [Task("h1", "norm_one_quadratic"), Task("h1_oracle", "norm_one_quadratic"),
              Task("resolve", "mu_2_split")]
    files["c2"] = problem_to_json(C2, mods, tasks)
    single = {"norm_one_quadratic": mods["norm_one_quadratic"]}
    files["norm_one_quadratic"] = problem_to_json(C2, single, _torus_tasks("norm_one_quadratic"))

    C3 = FiniteGroup.cyclic(3)
    mods = {
        "norm_one_cubic": norm_one_torus(C3).chars,
        "weil_cubic": weil_restriction_gm(C3).chars,
        "mu_7_twisted": _scalar_module(C3, 7, 2).chars,
        "mu_9_twisted": _scalar_module(C3, 9, 4).chars,
    }
    tasks = _torus_tasks("norm_one_cubic") + _torus_tasks("weil_cubic")
    tasks += _finite_tasks("mu_7_twisted", (7,)) + _finite_tasks("mu_9_twisted", (3, 9))
    files["c3"] = problem_to_json(C3, mods, tasks)

    C4 = FiniteGroup.cyclic(4)
    mods = {
        "norm_one_quartic": norm_one_torus(C4).chars,
        "weil_quartic_over_quadratic": weil_restriction_gm(C4, [0, 2]).chars,
    }
    tasks = _torus_tasks("norm_one_quartic", (2, 4)) + _torus_tasks("weil_quartic_over_quadratic")
    files["c4"] = problem_to_json(C4, mods, tasks)

    V4 = FiniteGroup.klein_four()
    mods = {
        "norm_one_biquadratic": norm_one_torus(V4).chars,
        "weil_biquadratic": weil_restriction_gm(V4).chars,
    }
    tasks = _torus_tasks("norm_one_biquadratic") + _torus_tasks("weil_biquadratic")
    files["v4"] = problem_to_json(V4, mods, tasks)

    S3 = FiniteGroup.symmetric(3)
    h = next(x for x in subgroups(S3) if len(x) == 2)
    mods = {
        "weil_s3": weil_restriction_gm(S3).chars,
        "weil_s3_cubic": weil_restriction_gm(S3, h).chars,
        "norm_one_s3_cubic": norm_one_torus(S3, h).chars,
    }
    tasks = _torus_tasks("weil_s3") + _torus_tasks("weil_s3_cubic") + _torus_tasks("norm_one_s3_cubic")
    files["s3"] = problem_to_json(S3, mods, tasks)
    return files


def write_problem_files(directory: Path = DATA_DIR) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, obj in problem_files().items():
        path = directory / f"{name}.json"
        path.write_text(dumps(obj), encoding="utf-8")
        paths.append(path)
    return paths


def shipped_paths() -> list[Path]:
    return sorted(DATA_DIR.glob("*.json"))


def load_corpus() -> list[MultTypeGroup]:
    """Every module in the shipped problem files, as a group of multiplicative type."""
    out = []
    for path in shipped_paths():
        prob = parse_problem(path.read_bytes())
        for name, m in prob.modules.items():
            out.append(MultTypeGroup(m, f"{path.stem}:{name}"))
    return out


if __name__ == "__main__":
    for p in write_problem_files():
        print(p)
