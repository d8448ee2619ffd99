"""Classical and reduced bar complexes over the enveloping algebra.

The classical bar complex lives on B^{⊗_A (n+2)} with the alternating sum of
slot merges as differential and "prepend 1" as contracting homotopy.  The
reduced complex lives on B ⊗_A J^{⊗_B n}; in flat coordinates its
differential is exactly "merge slots 0 and 1", which composes to zero
precisely because π_B kills the leading δ-factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgElement, DGAlgebra, Monomial, ValidationReport
from .errors import LengthMismatch, NotInDomain, NotInJn, NotLinear, ObstructionNonzero
from .linalg import SliceMatrix
from .tensor import (
    TensorElement,
    delta,
    delta_coords,
    delta_word,
    from_algebra_element,
    left_mult,
    merge_at,
    prefixed_basis_labels,
    prefixed_basis_element,
    right_mult,
    tensor_basis,
)

# -- classical bar complex ----------------------------------------------------


def bar_differential(t: TensorElement, n: int) -> TensorElement:
    """Alternating sum of adjacent-slot merges; word length n+2 -> n+1."""
    if t.length != n + 2:
        raise LengthMismatch(f"expected word length {n + 2}, got {t.length}")
    out = merge_at(t, 0)
    for i in range(1, n + 1):
        piece = merge_at(t, i)
        out = out + (piece if i % 2 == 0 else -piece)
    return out


def bar_homotopy(t, n: int | None = None) -> TensorElement:
    """Prepend a 1-slot; the right-B-linear contracting homotopy."""
    if isinstance(t, AlgElement):
        t = from_algebra_element(t)
    alg = t.alg
    out = TensorElement(alg, t.length + 1)
    one = alg.one_mono
    for w, c in t.terms.items():
        out._add_raw((one,) + w, c)
    return out


def bar_action(t: TensorElement, s: TensorElement) -> TensorElement:
    """Right B^e-action: b multiplies the first slot after crossing the rest,
    b' multiplies the last slot; the crossing gives (-1)^{|b|(|w_2|+..+|w_m|)}.
    """
    if s.length != 2:
        raise LengthMismatch("action expects a length-2 (enveloping algebra) element")
    alg = t.alg
    f = alg.field
    out = TensorElement(alg, t.length)
    for w, cw in t.terms.items():
        tail_par = sum(m.degree for m in w[1:]) % 2
        for sw, cs in s.terms.items():
            mb, mbp = sw
            sign = -1 if (mb.degree % 2) and tail_par else 1
            if t.length == 1:
                sm = alg.mono_mul(w[0], mb)
                if sm is None:
                    continue
                s0, m0 = sm
                sm2 = alg.mono_mul(m0, mbp)
                if sm2 is None:
                    continue
                s1, m1 = sm2
                c = f.mul(cw, cs)
                if sign * s0 * s1 < 0:
                    c = f.neg(c)
                out._add_raw((m1,), c)
                continue
            sm = alg.mono_mul(w[0], mb)
            if sm is None:
                continue
            s0, first = sm
            sm2 = alg.mono_mul(w[-1], mbp)
            if sm2 is None:
                continue
            s1, last = sm2
            c = f.mul(cw, cs)
            if sign * s0 * s1 < 0:
                c = f.neg(c)
            out._add_raw((first,) + w[1:-1] + (last,), c)
    return out


def nu(b: AlgElement) -> TensorElement:
    """ν(b) = -(1 ⊗ b ⊗ 1); satisfies δ = 𝐝_0 ∘ ν."""
    alg = b.alg
    out = TensorElement(alg, 3)
    one = alg.one_mono
    for m, c in b.terms.items():
        out._add_raw((one, m, one), alg.field.neg(c))
    return out


def word_index(alg: DGAlgebra, length: int, degree: int) -> dict:
    return {w: i for i, w in enumerate(tensor_basis(alg, length, degree))}


def matrix_of_map(alg, images: list[TensorElement], target_index: dict,
                  row_labels=None, col_labels=None) -> SliceMatrix:
    """Matrix of a linear map given by the images of an ordered source basis."""
    M = SliceMatrix(alg.field, len(target_index), len(images),
                    row_labels=row_labels, col_labels=col_labels)
    for j, img in enumerate(images):
        for w, c in img.terms.items():
            M.set(target_index[w], j, c)
    return M


def bar_slice_matrix(alg: DGAlgebra, n: int, degree: int) -> SliceMatrix:
    """Matrix of 𝐝_{n-1} on the degree slice, over the canonical word bases."""
    src = tensor_basis(alg, n + 2, degree)
    tgt = word_index(alg, n + 1, degree)
    images = [bar_differential(TensorElement.from_word(alg, w), n) for w in src]
    return matrix_of_map(alg, images, tgt, col_labels=src)


def nJ_kernel_basis(alg: DGAlgebra, n: int, degree: int) -> list[TensorElement]:
    """Exact basis of the degree slice of ^nJ = ker 𝐝_{n-2} ⊆ B^{⊗_A (n+1)}.

    Cross-checked against the image of 𝐝_{n-1} in the same slice: exactness
    of the bar complex forces equal dimensions, and d² = 0 gives containment.
    """
    if n < 1:
        raise NotInDomain("n must be >= 1 (with ^0J = B use the algebra basis)")
    src = tensor_basis(alg, n + 1, degree)
    if not src:
        return []
    M = bar_slice_matrix(alg, n - 1, degree)
    out = []
    for vec in M.nullspace():
        t = TensorElement(alg, n + 1)
        for j, c in enumerate(vec):
            if c != alg.field.zero:
                t._add_canonical(src[j], c)
        out.append(t)
    image_rank = bar_slice_matrix(alg, n, degree).rank()
    if image_rank != len(out):
        raise NotInDomain(
            f"exactness cross-check failed at n={n}, degree={degree}: "
            f"dim ker = {len(out)}, dim im = {image_rank}"
        )
    return out


# -- derivations and the correspondence η --------------------------------------


@dataclass
class DerivationTable:
    """An A-derivation B -> L ⊆ B^{⊗_A 2}, tabulated on basis monomials."""

    alg: DGAlgebra
    cutoff: int
    images: dict  # Monomial -> TensorElement (length 2)

    def apply(self, b: AlgElement) -> TensorElement:
        out = TensorElement(self.alg, 2)
        for m, c in b.terms.items():
            img = self.images.get(m)
            if img is not None:
                out = out + img.scale(c)
        return out

    def validate(self) -> ValidationReport:
        """Derivation law on all monomial products expressible within cutoff."""
        rep = ValidationReport()
        alg = self.alg
        bad = []
        zero = TensorElement(alg, 2)
        mono_range = [m for d in range(self.cutoff + 1) for m in alg.basis("B", d)]
        for m1 in mono_range:
            d1 = self.images.get(m1, zero)
            for m2 in mono_range:
                if m1.degree + m2.degree > self.cutoff:
                    continue
                d2 = self.images.get(m2, zero)
                rhs = right_mult(d1, alg.from_monomial(m2)) + left_mult(alg.from_monomial(m1), d2)
                sm = alg.mono_mul(m1, m2)
                if sm is None:
                    lhs = zero  # product vanishes (odd square), so D of it must too
                else:
                    sign, m = sm
                    lhs = self.images.get(m, zero).scale_int(sign)
                if lhs != rhs:
                    bad.append((alg.mono_repr(m1), alg.mono_repr(m2)))
        rep.add("derivation-law", not bad, "" if not bad else f"fails at {bad[:3]}")
        return rep


def derivation_from_generator_images(alg: DGAlgebra, gen_images: dict, cutoff: int) -> DerivationTable:
    """Extend images of the generators to a derivation table by D(bb') = D(b)b' + bD(b')."""
    images: dict[Monomial, TensorElement] = {alg.one_mono: TensorElement(alg, 2)}

    def build(m: Monomial) -> TensorElement:
        got = images.get(m)
        if got is not None:
            return got
        for i, e in enumerate(m.exps):
            if e == 0:
                continue
            g = alg.gens[i]
            g_mono = alg.mono({g.name: 1})
            rest_exps = tuple(m.exps[k] - (1 if k == i else 0) for k in range(len(alg.gens)))
            rest = Monomial(rest_exps, m.degree - g.degree)
            dg = gen_images.get(g.name, TensorElement(alg, 2))
            # the split m = g * rest is canonical-order, so it carries sign +1
            out = right_mult(dg, alg.from_monomial(rest)) + left_mult(alg.from_monomial(g_mono), build(rest))
            images[m] = out
            return out
        return images[alg.one_mono]

    for d in range(cutoff + 1):
        for m in alg.basis("B", d):
            build(m)
    return DerivationTable(alg, cutoff, {m: t for m, t in images.items() if not t.is_zero()})


class BeLinearMap:
    """A B^e-linear map J -> L ⊆ B^{⊗_A 2}, given on the δ-basis of J.

    `images` maps jn_basis labels (b, (w,)) with b = 1 to image tensors; the
    value on b·δ(w) follows by left-B-linearity, and right-linearity is what
    `validate` spot-checks.
    """

    def __init__(self, alg: DGAlgebra, cutoff: int, images: dict):
        self.alg = alg
        self.cutoff = cutoff
        self.images = images  # Monomial w -> TensorElement (image of δ(w))

    def apply(self, t: TensorElement) -> TensorElement:
        coords = delta_coords(t, 1, strict=True)
        out = TensorElement(self.alg, 2)
        for (w,), coeff in coords.items():
            img = self.images.get(w)
            if img is None:
                if w.degree <= self.cutoff:
                    continue  # tabulated as zero
                raise NotInDomain(f"δ({self.alg.mono_repr(w)}) outside the tabulated window")
            for (b,), c in coeff.terms.items():
                out = out + left_mult(self.alg.from_monomial(b, c), img)
        return out

    def validate(self) -> ValidationReport:
        """Spot-check B^e-linearity against the action of each generator."""
        rep = ValidationReport()
        alg = self.alg
        bad = []
        for g in alg.gens:
            ge = alg.gen(g.name)
            for w, img in self.images.items():
                j = delta_word(alg, (w,))
                try:
                    left_ok = self.apply(left_mult(ge, j)) == left_mult(ge, img)
                except NotInDomain:
                    left_ok = True  # product leaves the tabulated window
                try:
                    right_ok = self.apply(right_mult(j, ge)) == right_mult(img, ge)
                except NotInDomain:
                    right_ok = True
                if not (left_ok and right_ok):
                    bad.append((g.name, alg.mono_repr(w)))
        rep.add("Be-linearity", not bad, "" if not bad else f"fails at {bad[:3]}")
        return rep


def eta(f: BeLinearMap) -> DerivationTable:
    """η(f) = f ∘ δ, tabulated on B-basis monomials within the window."""
    check = f.validate()
    if not check.passed:
        raise NotLinear(check.failures()[0].details or "map is not B^e-linear")
    alg = f.alg
    images = {}
    for d in range(f.cutoff + 1):
        for m in alg.basis("B", d):
            img = f.apply(delta(alg.from_monomial(m)))
            if not img.is_zero():
                images[m] = img
    return DerivationTable(alg, f.cutoff, images)


def eta_inverse(D: DerivationTable) -> BeLinearMap:
    """The inverse correspondence D ↦ -ḡ with g = B ⊗ D ⊗ B.

    g vanishes on ^2J (checked; ObstructionNonzero otherwise), so it factors
    through 𝐝_0 : B^{⊗3} → J, and a preimage of j is 𝐡_0(j) = 1 ⊗ j.
    """
    alg = D.alg
    check = D.validate()
    if not check.passed:
        raise ObstructionNonzero(check.failures()[0].details or "derivation law fails")

    def g(t3: TensorElement) -> TensorElement:
        out = TensorElement(alg, 2)
        for (b0, b1, b2), c in t3.terms.items():
            img = D.images.get(b1)
            if img is None:
                continue
            piece = left_mult(alg.from_monomial(b0), right_mult(img, alg.from_monomial(b2)))
            out = out + piece.scale(c)
        return out

    for d in range(D.cutoff + 1):
        for ker_vec in nJ_kernel_basis(alg, 2, d):
            if not g(ker_vec).is_zero():
                raise ObstructionNonzero(f"g does not vanish on ^2J at degree {d}")

    images = {}
    for d in range(1, D.cutoff + 1):
        for w in alg.basis("W", d):
            img = -g(bar_homotopy(delta_word(alg, (w,))))
            if not img.is_zero():
                images[w] = img
    return BeLinearMap(alg, D.cutoff, images)


def derivation_space(alg: DGAlgebra, cutoff: int) -> list[DerivationTable]:
    """Exact basis of the space of degree-0 A-derivations B → B^e (tabulated).

    Unknowns are the images of B-basis monomials through the cutoff; the
    constraints are vanishing on A and the derivation law on all monomial
    pairs whose product stays in the window (including vanishing odd
    squares).  Sampling from the nullspace yields genuine derivations.
    """
    f = alg.field
    cols = []       # (monomial, word)
    col_index = {}
    monos = []
    for d in range(cutoff + 1):
        for m in alg.basis("B", d):
            monos.append(m)
            for w in tensor_basis(alg, 2, d):
                col_index[(m, w)] = len(cols)
                cols.append((m, w))

    rows = []

    def add_row(coeffs: dict):
        if coeffs:
            rows.append(coeffs)

    def accum(coeffs, key, c):
        cur = f.add(coeffs.get(key, f.zero), c)
        if cur == f.zero:
            coeffs.pop(key, None)
        else:
            coeffs[key] = cur

    for m in monos:
        if alg.mono_in_A(m):
            for w in tensor_basis(alg, 2, m.degree):
                add_row({col_index[(m, w)]: f.one})
    one = alg.one_mono
    for m1 in monos:
        if m1 == one:
            continue
        for m2 in monos:
            if m2 == one or m1.degree + m2.degree > cutoff:
                continue
            # row family: D(m1 m2) - D(m1)·m2 - m1·D(m2) = 0, one row per word
            per_word: dict = {}
            sm = alg.mono_mul(m1, m2)
            if sm is not None:
                sign, m = sm
                for w in tensor_basis(alg, 2, m.degree):
                    per_word.setdefault(w, {})
                    accum(per_word[w], col_index[(m, w)], f.of_int(sign))
            for w in tensor_basis(alg, 2, m1.degree):
                img = right_mult(TensorElement.from_word(alg, w), alg.from_monomial(m2))
                for ww, c in img.terms.items():
                    per_word.setdefault(ww, {})
                    accum(per_word[ww], col_index[(m1, w)], f.neg(c))
            for w in tensor_basis(alg, 2, m2.degree):
                img = left_mult(alg.from_monomial(m1), TensorElement.from_word(alg, w))
                for ww, c in img.terms.items():
                    per_word.setdefault(ww, {})
                    accum(per_word[ww], col_index[(m2, w)], f.neg(c))
            for ww in per_word:
                add_row(per_word[ww])

    M = SliceMatrix(f, len(rows), len(cols))
    for r, row in enumerate(rows):
        for cidx, c in row.items():
            M.set(r, cidx, c)
    basis = []
    for vec in M.nullspace():
        images = {}
        for cidx, c in enumerate(vec):
            if c == f.zero:
                continue
            m, w = cols[cidx]
            img = images.setdefault(m, TensorElement(alg, 2))
            img._add_canonical(w, c)
        images = {m: t for m, t in images.items() if not t.is_zero()}
        basis.append(DerivationTable(alg, cutoff, images))
    return basis


def be_linear_space(alg: DGAlgebra, cutoff: int) -> list[BeLinearMap]:
    """Exact basis of degree-0 B^e-linear maps J → B^e given on the δ-basis.

    Left-B-linearity is built into the representation; the solved constraint
    is compatibility with right multiplication by each algebra generator,
    within the degree window.
    """
    f = alg.field
    cols = []
    col_index = {}
    labels = []
    for d in range(1, cutoff + 1):
        for w in alg.basis("W", d):
            labels.append(w)
            for word in tensor_basis(alg, 2, d):
                col_index[(w, word)] = len(cols)
                cols.append((w, word))
    rows = []

    def accum(coeffs, key, c):
        cur = f.add(coeffs.get(key, f.zero), c)
        if cur == f.zero:
            coeffs.pop(key, None)
        else:
            coeffs[key] = cur

    for w in labels:
        jw = delta_word(alg, (w,))
        for g in alg.gens:
            if w.degree + g.degree > cutoff:
                continue
            ge = alg.gen(g.name)
            shifted = right_mult(jw, ge)
            coords = delta_coords(shifted, 1, strict=True)
            per_word: dict = {}
            # f(δ(w))·g ...
            for word in tensor_basis(alg, 2, w.degree):
                img = right_mult(TensorElement.from_word(alg, word), ge)
                for ww, c in img.terms.items():
                    per_word.setdefault(ww, {})
                    accum(per_word[ww], col_index[(w, word)], c)
            # ... minus Σ b'·f(δ(w'))
            for (wp,), coeff in coords.items():
                for (bmono,), cb in coeff.terms.items():
                    for word in tensor_basis(alg, 2, wp.degree):
                        img = left_mult(alg.from_monomial(bmono, cb), TensorElement.from_word(alg, word))
                        for ww, c in img.terms.items():
                            per_word.setdefault(ww, {})
                            accum(per_word[ww], col_index[(wp, word)], f.neg(c))
            for ww in per_word:
                if per_word[ww]:
                    rows.append(per_word[ww])

    M = SliceMatrix(f, len(rows), len(cols))
    for r, row in enumerate(rows):
        for cidx, c in row.items():
            M.set(r, cidx, c)
    basis = []
    for vec in M.nullspace():
        images = {}
        for cidx, c in enumerate(vec):
            if c == f.zero:
                continue
            w, word = cols[cidx]
            img = images.setdefault(w, TensorElement(alg, 2))
            img._add_canonical(word, c)
        images = {w: t for w, t in images.items() if not t.is_zero()}
        basis.append(BeLinearMap(alg, cutoff, images))
    return basis


# -- reduced bar resolution -----------------------------------------------------


def reduced_bar_differential(t: TensorElement, n: int) -> TensorElement:
    """d̄_n on B ⊗_A J^{⊗_B n} in flat coordinates: merge slots 0 and 1.

    Membership of t in the domain is verified first (NotInDomain otherwise).
    """
    if n < 1:
        raise NotInDomain("use pi_B for the augmentation d̄_0")
    if t.length != n + 2:
        raise LengthMismatch(f"expected word length {n + 2}, got {t.length}")
    try:
        delta_coords(t, n, strict=True)
    except NotInJn as exc:
        raise NotInDomain(str(exc)) from exc
    return merge_at(t, 0)


def reduced_slice_matrix(alg: DGAlgebra, n: int, degree: int) -> SliceMatrix:
    """Matrix of d̄_n on the degree slice, in ambient word coordinates.

    Columns are indexed by the canonical basis of B ⊗_A J^{⊗_B n} (prefixed
    δ-basis); rows by the word basis of B^{⊗_A (n+1)}.
    """
    labels = prefixed_basis_labels(alg, n, degree)
    tgt = word_index(alg, n + 1, degree)
    images = [merge_at(prefixed_basis_element(alg, lb), 0) for lb in labels]
    return matrix_of_map(alg, images, tgt, col_labels=labels)


def augmentation_slice_matrix(alg: DGAlgebra, degree: int) -> SliceMatrix:
    """Matrix of d̄_0 = π_B from the B^e slice to the B slice."""
    src = tensor_basis(alg, 2, degree)
    tgt = {m: i for i, m in enumerate(alg.basis("B", degree))}
    M = SliceMatrix(alg.field, len(tgt), len(src), col_labels=src)
    for j, w in enumerate(src):
        sm = alg.mono_mul(w[0], w[1])
        if sm is None:
            continue
        sign, m = sm
        M.set(tgt[m], j, alg.field.of_int(sign))
    return M


def check_reduced_exactness(alg: DGAlgebra, max_degree: int) -> ValidationReport:
    """Rank-level exactness of the reduced bar resolution through max_degree.

    In internal degree d the complex is bounded by n <= d (each δ-factor has
    degree >= 1), so every slice is finite and no word-length cap is needed.
    """
    rep = ValidationReport()
    for d in range(max_degree + 1):
        mats = {}
        dims = {}
        n_top = d
        for n in range(0, n_top + 1):
            labels = prefixed_basis_labels(alg, n, d)
            dims[n] = len(labels)
            if n >= 1:
                mats[n] = reduced_slice_matrix(alg, n, d)
        aug = augmentation_slice_matrix(alg, d)
        ok = True
        details = []
        if aug.rank() != len(alg.basis("B", d)):
            ok = False
            details.append(f"augmentation not surjective at degree {d}")
        # exactness at position n: ker(d̄_n) = im(d̄_{n+1})
        ker0 = dims[0] - aug.rank()
        im1 = mats[1].rank() if 1 in mats else 0
        if ker0 != im1:
            ok = False
            details.append(f"position 0: dim ker={ker0}, dim im={im1}")
        for n in range(1, n_top + 1):
            kern = dims[n] - mats[n].rank()
            imn1 = mats[n + 1].rank() if (n + 1) in mats else 0
            if kern != imn1:
                ok = False
                details.append(f"position {n}: dim ker={kern}, dim im={imn1}")
        rep.add(f"reduced-exactness@deg{d}", ok, "; ".join(details))
    return rep
