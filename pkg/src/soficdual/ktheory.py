"""K-theory of the stable and unstable Ruelle algebras of a sofic shift.

For an edge shift with adjacency matrix M the Ruelle algebra K-groups are

    K0 = coker(I - M),  K1 = ker(I - M)

on the stable side, and the same with M transposed on the unstable side.
For a sofic shift the stable side is computed from the LEFT Fischer cover
(the minimal u-resolving cover) and the unstable side from the RIGHT
Fischer cover (the minimal s-resolving cover).

:func:`duality_check` evaluates necessary conditions for Poincare duality
between the two Ruelle algebras (rank and torsion pairings coming from the
UCT).  A pass means "no K-theoretic obstruction found", never "dual".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any

from .graph import LabeledGraph, adjacency_matrix, require_irreducible
from .intlinalg import (
    FGAbelianGroup,
    IntMatrix,
    MatrixError,
    cokernel,
    kernel_rank,
    rank_exact,
    smith_normal_form,
)
from .presentations import is_almost_finite_type, left_fischer_cover, right_fischer_cover


class Side(str, enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


class Convention(str, enum.Enum):
    SHIFTED = "shifted"
    PRESERVING = "preserving"


@dataclass(frozen=True)
class KTheoryPair:
    k0: FGAbelianGroup
    k1: FGAbelianGroup

    def __str__(self) -> str:
        return f"K0 = {self.k0}, K1 = {self.k1}"

    def to_json(self) -> dict:
        return {"k0": self.k0.to_json(), "k1": self.k1.to_json()}


def ruelle_ktheory(m: IntMatrix) -> KTheoryPair:
    """(coker(I - m), ker(I - m)) for a square nonnegative matrix m."""
    if not m.is_square:
        raise MatrixError("ruelle_ktheory needs a square matrix")
    if not m.is_nonnegative():
        raise MatrixError("ruelle_ktheory needs nonnegative entries")
    i_minus = IntMatrix.identity(m.rows) - m
    return KTheoryPair(cokernel(i_minus), FGAbelianGroup.free(kernel_rank(i_minus)))


def cover_for(g: LabeledGraph, side: Side | str) -> LabeledGraph:
    side = Side(side)
    return left_fischer_cover(g) if side is Side.STABLE else right_fischer_cover(g)


def side_matrix(g: LabeledGraph, side: Side | str) -> IntMatrix:
    """The matrix whose Ruelle K-theory gives ``side``: left cover as is, right cover transposed."""
    side = Side(side)
    m = adjacency_matrix(cover_for(g, side))
    return m if side is Side.STABLE else m.transpose()


def stable_ktheory(g: LabeledGraph) -> KTheoryPair:
    require_irreducible(g, "stable_ktheory")
    return ruelle_ktheory(side_matrix(g, Side.STABLE))


def unstable_ktheory(g: LabeledGraph) -> KTheoryPair:
    require_irreducible(g, "unstable_ktheory")
    return ruelle_ktheory(side_matrix(g, Side.UNSTABLE))


def heteroclinic_rank(g: LabeledGraph, side: Side | str) -> int:
    """Rank of the adjacency matrix of the cover belonging to ``side``."""
    require_irreducible(g, "heteroclinic_rank")
    return rank_exact(adjacency_matrix(cover_for(g, side)))


# (name, description, stable extractor, unstable extractor) per convention
_CONDITIONS = {
    Convention.SHIFTED: [
        ("rank_k0_vs_k1", "rank K0(stable) = rank K1(unstable)", lambda p: p.k0.free_rank, lambda p: p.k1.free_rank),
        ("rank_k1_vs_k0", "rank K1(stable) = rank K0(unstable)", lambda p: p.k1.free_rank, lambda p: p.k0.free_rank),
        ("torsion_k0_vs_k0", "tors K0(stable) = tors K0(unstable)", lambda p: p.k0.torsion, lambda p: p.k0.torsion),
        ("torsion_k1_vs_k1", "tors K1(stable) = tors K1(unstable)", lambda p: p.k1.torsion, lambda p: p.k1.torsion),
    ],
    Convention.PRESERVING: [
        ("rank_k0_vs_k0", "rank K0(stable) = rank K0(unstable)", lambda p: p.k0.free_rank, lambda p: p.k0.free_rank),
        ("rank_k1_vs_k1", "rank K1(stable) = rank K1(unstable)", lambda p: p.k1.free_rank, lambda p: p.k1.free_rank),
        ("torsion_k0_vs_k1", "tors K0(stable) = tors K1(unstable)", lambda p: p.k0.torsion, lambda p: p.k1.torsion),
        ("torsion_k1_vs_k0", "tors K1(stable) = tors K0(unstable)", lambda p: p.k1.torsion, lambda p: p.k0.torsion),
    ],
}


@dataclass(frozen=True)
class Condition:
    name: str
    description: str
    holds: bool
    stable_value: Any
    unstable_value: Any

    def to_json(self) -> dict:
        def enc(x):
            return list(x) if isinstance(x, tuple) else x

        return {
            "name": self.name,
            "description": self.description,
            "holds": self.holds,
            "stable": enc(self.stable_value),
            "unstable": enc(self.unstable_value),
        }


@dataclass(frozen=True)
class SideSummary:
    """Everything computed for one side of a graph-derived report."""

    side: Side
    cover: LabeledGraph
    matrix: IntMatrix
    snf: tuple[int, ...]
    ktheory: KTheoryPair
    rank: int

    @property
    def cover_size(self) -> int:
        return self.cover.num_vertices

    def to_json(self) -> dict:
        return {
            "cover_size": self.cover_size,
            "matrix": self.matrix.to_rows(),
            "snf": list(self.snf),
            "k0": self.ktheory.k0.to_json(),
            "k1": self.ktheory.k1.to_json(),
            "rank": self.rank,
        }


@dataclass(frozen=True)
class DualityReport:
    convention: Convention
    conditions: tuple[Condition, ...]
    stable: KTheoryPair
    unstable: KTheoryPair
    narrative: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    stable_summary: SideSummary | None = None
    unstable_summary: SideSummary | None = None
    extras: dict = field(default_factory=dict)

    @property
    def condition_results(self) -> dict[str, bool]:
        return {c.name: c.holds for c in self.conditions}

    @property
    def inputs_summary(self) -> dict:
        out = {"stable": self.stable, "unstable": self.unstable}
        for name, summary in (("stable", self.stable_summary), ("unstable", self.unstable_summary)):
            if summary is not None:
                out[f"{name}_cover_size"] = summary.cover_size
                out[f"{name}_matrix"] = summary.matrix
        return out

    @property
    def obstruction_found(self) -> bool:
        return not all(c.holds for c in self.conditions)

    @property
    def verdict(self) -> str:
        if self.obstruction_found:
            failed = ", ".join(c.name for c in self.conditions if not c.holds)
            return f"obstruction found ({failed}): the Ruelle algebras are not Poincare dual"
        return "no K-theoretic obstruction found (necessary conditions only; duality is not asserted)"

    def to_json(self, shift: str | None = None) -> dict:
        def side(summary, pair):
            if summary is not None:
                return summary.to_json()
            return pair.to_json()

        out = {
            "shift": shift,
            "stable": side(self.stable_summary, self.stable),
            "unstable": side(self.unstable_summary, self.unstable),
            "duality": {
                "convention": self.convention.value,
                "conditions": [c.to_json() for c in self.conditions],
                "obstruction_found": self.obstruction_found,
                "verdict": self.verdict,
            },
            "warnings": list(self.warnings),
        }
        out.update(self.extras)
        return out


def duality_check(s: KTheoryPair, u: KTheoryPair, convention: Convention | str = Convention.SHIFTED) -> DualityReport:
    """Necessary UCT conditions for the stable (s) and unstable (u) Ruelle algebras to be dual.

    Degree-shifted (default) pairs ranks K0<->K1 and torsion in equal
    degrees; degree-preserving pairs ranks in equal degrees and torsion
    K0<->K1.  Only the shifted convention makes every shift of finite type
    pass, which is why it is the default.
    """
    convention = Convention(convention)
    conditions = []
    for name, desc, fs, fu in _CONDITIONS[convention]:
        sv, uv = fs(s), fu(u)
        conditions.append(Condition(name, desc, sv == uv, sv, uv))
    report = DualityReport(convention, tuple(conditions), s, u)
    narrative = [
        f"stable side:   {s}",
        f"unstable side: {u}",
        f"convention: degree-{'shifted' if convention is Convention.SHIFTED else 'preserving'}",
    ]
    narrative += [f"  [{'ok' if c.holds else 'FAIL'}] {c.description}: {c.stable_value} vs {c.unstable_value}"
                  for c in conditions]
    narrative.append(report.verdict)
    return DualityReport(convention, tuple(conditions), s, u, tuple(narrative))


@dataclass(frozen=True)
class PrintedReference:
    """Published matrices and Smith forms to compare the computed covers against.

    Every field is optional.  ``left_matrix``/``right_matrix`` are
    adjacency matrices of the left/right covers; ``left_snf``/``right_snf``
    are the published invariant factors of I minus those matrices.
    """

    left_matrix: IntMatrix | None = None
    right_matrix: IntMatrix | None = None
    left_snf: tuple[int, ...] | None = None
    right_snf: tuple[int, ...] | None = None


def permutation_similar(m: IntMatrix, n: IntMatrix) -> tuple[int, ...] | None:
    """A permutation p with m.permuted(p) == n, or None.  Brute force; meant for n <= 8."""
    if m.shape != n.shape or not m.is_square:
        return None
    if sorted(m.row_sums()) != sorted(n.row_sums()) or sorted(m.entries) != sorted(n.entries):
        return None
    for p in permutations(range(m.rows)):
        if m.permuted(p) == n:
            return p
    return None


def _fmt_multiset(xs) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"


def _summarize(g: LabeledGraph, side: Side) -> SideSummary:
    cover = cover_for(g, side)
    adj = adjacency_matrix(cover)
    m = adj if side is Side.STABLE else adj.transpose()
    snf = smith_normal_form(IntMatrix.identity(m.rows) - m).invariant_factors
    return SideSummary(side, cover, adj, snf, ruelle_ktheory(m), rank_exact(adj))


def _compare_printed(summary: SideSummary, printed_matrix, printed_snf, label: str):
    warnings, notes = [], []
    extras: dict = {}
    pk = None
    if printed_matrix is not None:
        if printed_matrix.shape != summary.matrix.shape:
            warnings.append(
                f"{label} cover computed from the graph has {summary.matrix.rows} states but the printed "
                f"matrix is {printed_matrix.rows}x{printed_matrix.cols}"
            )
        elif permutation_similar(summary.matrix, printed_matrix) is None:
            warnings.append(
                f"{label} cover matrix derived from the graph is not permutation-similar to the printed "
                f"matrix: row sums {_fmt_multiset(summary.matrix.row_sums())} vs "
                f"{_fmt_multiset(printed_matrix.row_sums())}, edge counts {sum(summary.matrix.entries)} vs "
                f"{sum(printed_matrix.entries)}"
            )
        else:
            notes.append(f"{label} cover matrix matches the printed matrix up to a vertex permutation")
        pm = printed_matrix if label == "left" else printed_matrix.transpose()
        pk = ruelle_ktheory(pm)
        psnf = smith_normal_form(IntMatrix.identity(pm.rows) - pm).invariant_factors
        extras = {
            "matrix": printed_matrix.to_rows(),
            "snf": list(psnf),
            "k0": pk.k0.to_json(),
            "k1": pk.k1.to_json(),
            "rank": rank_exact(printed_matrix),
        }
        notes.append(f"printed {label} matrix: SNF(I - M) = {psnf}, {pk}, rank {rank_exact(printed_matrix)}")
        if printed_snf is not None and tuple(printed_snf) != psnf:
            warnings.append(
                f"published Smith form {tuple(printed_snf)} for the printed {label} matrix disagrees with the "
                f"computed {psnf} (|det(I - M)| = {_abs_prod(psnf)})"
            )
    elif printed_snf is not None and tuple(printed_snf) != summary.snf:
        warnings.append(
            f"published Smith form {tuple(printed_snf)} disagrees with the {label} cover's computed {summary.snf}"
        )
    return warnings, notes, pk, extras


def _abs_prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return abs(out)


def duality_report(
    g: LabeledGraph,
    convention: Convention | str = Convention.SHIFTED,
    printed: PrintedReference | None = None,
) -> DualityReport:
    """End-to-end computation for a sofic shift given by any irreducible presentation.

    Builds both Fischer covers, their K-theory and heteroclinic ranks, and
    runs :func:`duality_check`.  When ``printed`` data is supplied the
    published matrices are run through the same pipeline and every
    mismatch is reported as a warning rather than silently resolved.
    """
    require_irreducible(g, "duality_report")
    convention = Convention(convention)
    st = _summarize(g, Side.STABLE)
    un = _summarize(g, Side.UNSTABLE)
    base = duality_check(st.ktheory, un.ktheory, convention)

    narrative = [
        f"stable side (left Fischer cover, {st.cover_size} states)",
        *("  " + line for line in str(st.matrix).splitlines()[1:]),
        f"  SNF(I - M): {' '.join(map(str, st.snf))}",
        f"  K0 = {st.ktheory.k0}, K1 = {st.ktheory.k1}",
        f"  stable rank: {st.rank}",
        f"unstable side (right Fischer cover, {un.cover_size} states; K-theory from the transpose)",
        *("  " + line for line in str(un.matrix).splitlines()[1:]),
        f"  SNF(I - M^T): {' '.join(map(str, un.snf))}",
        f"  K0 = {un.ktheory.k0}, K1 = {un.ktheory.k1}",
        f"  unstable rank: {un.rank}",
        f"heteroclinic ranks {'differ' if st.rank != un.rank else 'agree'}: stable {st.rank} vs unstable {un.rank}",
        f"almost finite type: {is_almost_finite_type(g)}",
        *base.narrative[2:],
    ]

    warnings: list[str] = []
    extras: dict = {}
    if printed is not None:
        lw, ln, lk, lx = _compare_printed(st, printed.left_matrix, printed.left_snf, "left")
        rw, rn, rk, rx = _compare_printed(un, printed.right_matrix, printed.right_snf, "right")
        warnings += lw + rw
        narrative += ln + rn
        printed_block: dict = {}
        if lx:
            printed_block["stable"] = lx
        if rx:
            printed_block["unstable"] = rx
        if lk is not None or rk is not None:
            ps = lk if lk is not None else st.ktheory
            pu = rk if rk is not None else un.ktheory
            pcheck = duality_check(ps, pu, convention)
            narrative.append(f"with the printed matrices: {pcheck.verdict}")
            printed_block["duality"] = {
                "conditions": [c.to_json() for c in pcheck.conditions],
                "obstruction_found": pcheck.obstruction_found,
            }
            if pcheck.obstruction_found != base.obstruction_found:
                warnings.append(
                    "the duality verdict from the printed matrices "
                    f"(obstruction_found={pcheck.obstruction_found}) differs from the verdict computed from "
                    f"the graph (obstruction_found={base.obstruction_found})"
                )
        extras["printed"] = printed_block

    return DualityReport(
        convention,
        base.conditions,
        st.ktheory,
        un.ktheory,
        tuple(narrative),
        tuple(warnings),
        st,
        un,
        extras,
    )
