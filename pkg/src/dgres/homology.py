"""Homology tables and the quasi-isomorphism verdict for the resolutions.

All claims are window-annotated: a homology dimension at degree m is sound
only when the differentials into and out of the slice are fully enumerated,
which needs basis data through degree m+1.  `homology_dims` therefore only
reports degrees <= D-1 when built through D.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import DGAlgebra
from .bar import augmentation_slice_matrix, bar_slice_matrix, reduced_slice_matrix
from .errors import DgresError, WindowIncomplete
from .linalg import SliceMatrix
from .semifree import DD, alpha, bb_basis_element, bb_coords, bb_total_basis


@dataclass
class HomologyTable:
    """degree -> (dim cycles, dim boundaries, dim homology)."""

    entries: dict = dc_field(default_factory=dict)
    window: str = ""

    def add(self, degree: int, cycles: int, boundaries: int):
        if boundaries > cycles:
            raise DgresError("boundaries exceed cycles; inconsistent ranks")
        self.entries[degree] = (cycles, boundaries, cycles - boundaries)

    def homology(self, degree: int) -> int:
        return self.entries[degree][2]

    def rows(self):
        return [(d,) + self.entries[d] for d in sorted(self.entries)]


def dB_matrix(alg: DGAlgebra, degree: int) -> SliceMatrix:
    """Matrix of d^B from the degree slice to the one below."""
    src = alg.basis("B", degree)
    tgt = {m: i for i, m in enumerate(alg.basis("B", degree - 1))} if degree >= 1 else {}
    M = SliceMatrix(alg.field, len(tgt), len(src), col_labels=src)
    for j, m in enumerate(src):
        img = alg.diff_mono(m)
        for mm, c in img.terms.items():
            M.set(tgt[mm], j, c)
    return M


def _bb_index(alg: DGAlgebra, total_degree: int) -> dict:
    return {lab: i for i, lab in enumerate(bb_total_basis(alg, total_degree))}


def bb_dd_matrix(alg: DGAlgebra, total_degree: int) -> SliceMatrix:
    """Matrix of 𝔻 from total degree t to t-1, over the stored 𝔹 bases."""
    caches = getattr(alg, "_homology_caches", None)
    if caches is None:
        caches = {}
        alg._homology_caches = caches
    got = caches.get(("DD", total_degree))
    if got is not None:
        return got
    src = bb_total_basis(alg, total_degree)
    tgt = _bb_index(alg, total_degree - 1) if total_degree >= 1 else {}
    M = SliceMatrix(alg.field, len(tgt), len(src), col_labels=src)
    for j, lab in enumerate(src):
        img = DD(bb_basis_element(alg, lab))
        for key, c in bb_coords(img).items():
            M.set(tgt[key], j, c)
    caches[("DD", total_degree)] = M
    return M


def bb_alpha_matrix(alg: DGAlgebra, total_degree: int) -> SliceMatrix:
    """Matrix of the augmentation α from the 𝔹 slice to the B slice."""
    src = bb_total_basis(alg, total_degree)
    tgt = {m: i for i, m in enumerate(alg.basis("B", total_degree))}
    M = SliceMatrix(alg.field, len(tgt), len(src), col_labels=src)
    for j, lab in enumerate(src):
        img = alpha(bb_basis_element(alg, lab))
        for m, c in img.terms.items():
            M.set(tgt[m], j, c)
    return M


def homology_dims(alg: DGAlgebra, obj: str, D: int, max_n: int | None = None,
                  module=None) -> HomologyTable:
    """Per-degree homology dimensions of one of the built objects.

    obj = "B":            the algebra itself under d^B.
    obj = "semifree_BB":  (𝔹, 𝔻) under the total grading.
    obj = "reduced_bar":  the augmented reduced bar complex (0 when exact).
    obj = "barN_complex": the augmented complex N ⊗_B (𝐁, 𝐝) with the word
                          length capped at max_n; positions up to max_n - 1
                          are boundary-complete and included.  `module`
                          defaults to B itself.
    Degrees reported: 0 .. D-1 (the window rule).
    """
    if D < 1:
        raise WindowIncomplete("need D >= 1")
    table = HomologyTable(window=f"degrees 0..{D - 1} (built through {D})")
    if obj == "B":
        for m in range(D):
            out = dB_matrix(alg, m)
            inc = dB_matrix(alg, m + 1)
            table.add(m, out.ncols - out.rank(), inc.rank())
        return table
    if obj == "semifree_BB":
        for m in range(D):
            out = bb_dd_matrix(alg, m)
            inc = bb_dd_matrix(alg, m + 1)
            table.add(m, out.ncols - out.rank(), inc.rank())
        return table
    if obj == "reduced_bar":
        for d in range(D):
            cycles = boundaries = 0
            n_top = d
            mats = {n: reduced_slice_matrix(alg, n, d) for n in range(1, n_top + 1)}
            aug = augmentation_slice_matrix(alg, d)
            dims = {n: (mats[n].ncols if n >= 1 else aug.ncols) for n in range(0, n_top + 1)}
            # augmented complex: ... -> C_1 -> C_0 -> B -> 0
            cycles += len(alg.basis("B", d)) + (dims[0] - aug.rank())
            boundaries += aug.rank() + (mats[1].rank() if 1 in mats else 0)
            for n in range(1, n_top + 1):
                cycles += dims[n] - mats[n].rank()
                boundaries += mats[n + 1].rank() if (n + 1) in mats else 0
            table.add(d, cycles, boundaries)
        return table
    if obj == "barN_complex":
        if max_n is None:
            raise WindowIncomplete("the classical bar complex needs a word-length cap max_n")
        from .modules import ModTensorElement, SemifreeModule, bar_dN_any, modtensor_basis

        N = module if module is not None else SemifreeModule(alg, [("gen", 0)])
        f = alg.field

        def dn_matrix(length: int, d: int) -> SliceMatrix:
            src = modtensor_basis(N, length, d)
            tgt = {k: i for i, k in enumerate(modtensor_basis(N, length - 1, d))}
            M = SliceMatrix(f, len(tgt), len(src))
            for j, key in enumerate(src):
                img = bar_dN_any(ModTensorElement(N, length, {key: f.one}))
                for kk, c in img.terms.items():
                    M.set(tgt[kk], j, c)
            return M

        for d in range(D):
            cycles = boundaries = 0
            mats = {L: dn_matrix(L, d) for L in range(2, max_n + 3)}
            cycles += len(modtensor_basis(N, 1, d))      # position -1: N itself
            boundaries += mats[2].rank()                  # image of 𝐝^N_{-1}
            for L in range(2, max_n + 2):                 # positions 0..max_n - 1
                cycles += len(modtensor_basis(N, L, d)) - mats[L].rank()
                boundaries += mats[L + 1].rank()
            table.add(d, cycles, boundaries)
        return table
    raise DgresError(f"unknown homology object {obj!r}")


@dataclass
class QuasiIsoReport:
    passed: bool
    rows: list  # (degree, dim H(BB), dim H(B), induced rank)
    window: str


def quasi_iso_check(alg: DGAlgebra, D: int) -> QuasiIsoReport:
    """α induces an isomorphism H(𝔹, 𝔻) ≅ H(B) through degree D-1.

    Checks the dimension equality per degree and that α maps a cycle basis
    of 𝔹 onto classes spanning H(B) with full rank.
    """
    rows = []
    ok = True
    f = alg.field
    for m in range(D):
        MBB_out = bb_dd_matrix(alg, m)
        MBB_in = bb_dd_matrix(alg, m + 1)
        hBB = (MBB_out.ncols - MBB_out.rank()) - MBB_in.rank()
        MB_out = dB_matrix(alg, m)
        MB_in = dB_matrix(alg, m + 1)
        hB = (MB_out.ncols - MB_out.rank()) - MB_in.rank()
        # induced rank of H(alpha) at degree m
        cycles = MBB_out.nullspace()
        Am = bb_alpha_matrix(alg, m)
        nb = len(alg.basis("B", m))
        cols = []
        for z in cycles:
            img = [f.zero] * nb
            for (i, j), c in Am.entries.items():
                if z[j] != f.zero:
                    img[i] = f.add(img[i], f.mul(c, z[j]))
            cols.append(img)
        bnd_cols = []
        dense_in = MB_in.to_dense()
        for j in range(MB_in.ncols):
            bnd_cols.append([dense_in[i][j] for i in range(nb)])
        stack1 = SliceMatrix(f, nb, len(cols) + len(bnd_cols))
        for jj, col in enumerate(cols + bnd_cols):
            for i, v in enumerate(col):
                if v != f.zero:
                    stack1.set(i, jj, v)
        stack2 = SliceMatrix(f, nb, len(bnd_cols))
        for jj, col in enumerate(bnd_cols):
            for i, v in enumerate(col):
                if v != f.zero:
                    stack2.set(i, jj, v)
        induced = stack1.rank() - stack2.rank()
        rows.append((m, hBB, hB, induced))
        if not (hBB == hB == induced):
            ok = False
    return QuasiIsoReport(ok, rows, f"degrees 0..{D - 1} (built through {D})")


def assemble_slice(alg: DGAlgebra, map_name: str, degree: int, n: int | None = None) -> SliceMatrix:
    """Matrix of a named map on the canonical bases of one degree slice."""
    if degree < 0:
        raise WindowIncomplete("negative degree")
    if map_name == "dB":
        return dB_matrix(alg, degree)
    if map_name == "pi_B":
        return augmentation_slice_matrix(alg, degree)
    if map_name == "bar":
        if n is None:
            raise DgresError("bar slice needs the word-length index n")
        return bar_slice_matrix(alg, n, degree)
    if map_name == "reduced":
        if n is None:
            raise DgresError("reduced slice needs the component index n")
        return reduced_slice_matrix(alg, n, degree)
    if map_name == "DD":
        return bb_dd_matrix(alg, degree)
    if map_name == "alpha":
        return bb_alpha_matrix(alg, degree)
    raise DgresError(f"unknown map {map_name!r}")
