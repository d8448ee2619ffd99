"""The diagonal tensor resolution: 𝔹 = B ⊗_A T with differential 𝔻 = ∂ + 𝔇.

T is the tensor algebra of the suspended diagonal ideal over B.  Components
are stored unsuspended, in flat B^{⊗_A (n+2)} coordinates, with the word
length n recorded separately; the suspension shuffle is realized purely as
the scalar relabeling `psi_sign` inside the honest-element constructors.

In these stored coordinates the two differentials collapse to something very
concrete: the internal part acts as (-1)^n times the flat slotwise
differential, and the bar part 𝔇 is exactly "merge slots 0 and 1".  Both
identities 𝔇∂ = -∂𝔇 and 𝔻² = 0 are then forced by π_B being a chain map,
and the complex (𝔹, 𝔇) is the reduced bar resolution on the nose.

Suspension convention: (ΣM)_i = M_{i-1} with ∂(Σm) = -Σ∂(m).  This is the
convention under which the stored formulas above hold; the invariant test
suite (anticommutation, 𝔻² = 0, T-linearity, reduced-bar recovery) pins it.
"""

from __future__ import annotations

from .algebra import AlgElement, DGAlgebra, ValidationReport
from .errors import DgresError, LengthMismatch
from .tensor import (
    TensorElement,
    concat_B,
    delta,
    merge_at,
    pi_B,
    prefixed_basis_element,
    prefixed_basis_labels,
    prefixed_coords,
    tensor_differential,
    word_degree,
)


def psi_sign(n: int, b_degree: int, tau_degrees) -> int:
    """Sign of the suspension shuffle: (-1)^{n|b| + Σ_{i<n} (n-i)|τ_i|}."""
    taus = list(tau_degrees)
    if len(taus) != n:
        raise LengthMismatch(f"expected {n} tensor factor degrees, got {len(taus)}")
    exp = n * b_degree + sum((n - i) * taus[i - 1] for i in range(1, n))
    return -1 if exp % 2 else 1


class TElement:
    """Element of the tensor algebra T, by word-length component."""

    __slots__ = ("alg", "components")

    def __init__(self, alg: DGAlgebra, components: dict | None = None):
        self.alg = alg
        self.components = {}
        for m, t in (components or {}).items():
            if not t.is_zero():
                if t.length != m + 1:
                    raise LengthMismatch(f"component {m} must have word length {m + 1}")
                self.components[m] = t

    @staticmethod
    def one(alg: DGAlgebra) -> "TElement":
        return TElement(alg, {0: TensorElement.unit(alg, 1)})

    def component(self, m: int) -> TensorElement:
        return self.components.get(m, TensorElement(self.alg, m + 1))

    def __add__(self, other: "TElement") -> "TElement":
        comps = dict(self.components)
        for m, t in other.components.items():
            comps[m] = comps[m] + t if m in comps else t
        return TElement(self.alg, comps)

    def __sub__(self, other):
        return self + other.scale_int(-1)

    def scale(self, c) -> "TElement":
        return TElement(self.alg, {m: t.scale(c) for m, t in self.components.items()})

    def scale_int(self, k: int) -> "TElement":
        return self.scale(self.alg.field.of_int(k))

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, TElement):
            return NotImplemented
        return self.alg is other.alg and self.components == other.components

    def total_degrees(self) -> set[int]:
        out = set()
        for m, t in self.components.items():
            out |= {d + m for d in t.degrees()}
        return out

    def __repr__(self):
        if not self.components:
            return "0"
        return " ++ ".join(f"[{m}] {t!r}" for m, t in sorted(self.components.items()))


class BBElement:
    """Element of 𝔹, by component n; component n is stored in B^{⊗_A (n+2)}."""

    __slots__ = ("alg", "components")

    def __init__(self, alg: DGAlgebra, components: dict | None = None):
        self.alg = alg
        self.components = {}
        for n, t in (components or {}).items():
            if not t.is_zero():
                if t.length != n + 2:
                    raise LengthMismatch(f"component {n} must have word length {n + 2}")
                self.components[n] = t

    @staticmethod
    def one(alg: DGAlgebra) -> "BBElement":
        return BBElement(alg, {0: TensorElement.unit(alg, 2)})

    def component(self, n: int) -> TensorElement:
        return self.components.get(n, TensorElement(self.alg, n + 2))

    def __add__(self, other: "BBElement") -> "BBElement":
        comps = dict(self.components)
        for n, t in other.components.items():
            comps[n] = comps[n] + t if n in comps else t
        return BBElement(self.alg, comps)

    def __sub__(self, other):
        return self + other.scale_int(-1)

    def __neg__(self):
        return self.scale_int(-1)

    def scale(self, c) -> "BBElement":
        return BBElement(self.alg, {n: t.scale(c) for n, t in self.components.items()})

    def scale_int(self, k: int) -> "BBElement":
        return self.scale(self.alg.field.of_int(k))

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, BBElement):
            return NotImplemented
        return self.alg is other.alg and self.components == other.components

    def total_degrees(self) -> set[int]:
        out = set()
        for n, t in self.components.items():
            out |= {d + n for d in t.degrees()}
        return out

    def total_degree(self):
        degs = self.total_degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise DgresError("element is not homogeneous in total degree")
        return degs.pop()

    def __repr__(self):
        if not self.components:
            return "0"
        return " ++ ".join(f"[{n}] {t!r}" for n, t in sorted(self.components.items()))


# -- honest-element constructors ------------------------------------------------


def t_word(alg: DGAlgebra, factors) -> TElement:
    """Σδ(u_1) ⊗_B ... ⊗_B Σδ(u_n) for homogeneous u_i ∈ B, in stored form."""
    us = [alg.from_monomial(u) if not isinstance(u, AlgElement) else u for u in factors]
    n = len(us)
    if n == 0:
        return TElement.one(alg)
    degs = []
    for u in us:
        d = u.homogeneous_degree()
        if d is None:
            return TElement(alg, {n: TensorElement(alg, n + 1)})
        degs.append(d)
    core = delta(us[0])
    for u in us[1:]:
        core = concat_B(core, delta(u))
    return TElement(alg, {n: core.scale_int(psi_sign(n, 0, degs))})


def bb_word(alg: DGAlgebra, prefix: AlgElement, factors) -> BBElement:
    """b ⊗_A Σδ(u_1) ⊗_B ... ⊗_B Σδ(u_n) in stored coordinates.

    The prefix may be inhomogeneous; the shuffle sign is applied per
    homogeneous prefix term.
    """
    us = [alg.from_monomial(u) if not isinstance(u, AlgElement) else u for u in factors]
    n = len(us)
    degs = []
    for u in us:
        if u.is_zero():
            return BBElement(alg)
        d = u.homogeneous_degree()
        if d is None:
            raise DgresError("tensor factors must be homogeneous")
        degs.append(d)
    if n:
        core = delta(us[0])
        for u in us[1:]:
            core = concat_B(core, delta(u))
    else:
        core = TensorElement.unit(alg, 1)
    out = TensorElement(alg, n + 2)
    f = alg.field
    for bm, c in prefix.terms.items():
        sign = psi_sign(n, bm.degree, degs)
        cc = f.neg(c) if sign < 0 else c
        for w, cw in core.terms.items():
            out._add_raw((bm,) + w, f.mul(cc, cw))
    return BBElement(alg, {n: out})


def bb_from_be(t: TensorElement) -> BBElement:
    """Embed an enveloping-algebra element as the word-length-0 component."""
    if t.length != 2:
        raise LengthMismatch("component 0 must have word length 2")
    return BBElement(t.alg, {0: t})


# -- differentials ---------------------------------------------------------------


def dT(t: TElement) -> TElement:
    """Differential of T in stored coordinates: (-1)^m times the flat one."""
    comps = {}
    for m, te in t.components.items():
        d = tensor_differential(te)
        if m % 2:
            d = -d
        if not d.is_zero():
            comps[m] = comps[m] + d if m in comps else d
    return TElement(t.alg, comps)


def dBB(t: BBElement) -> BBElement:
    """Internal differential ∂ of 𝔹 in stored coordinates."""
    comps = {}
    for n, te in t.components.items():
        d = tensor_differential(te)
        if n % 2:
            d = -d
        if not d.is_zero():
            comps[n] = comps[n] + d if n in comps else d
    return BBElement(t.alg, comps)


def frakD(t: BBElement) -> BBElement:
    """Bar part 𝔇 of the differential: merge the prefix into the first δ-factor."""
    comps = {}
    for n, te in t.components.items():
        if n == 0:
            continue
        d = merge_at(te, 0)
        if not d.is_zero():
            m = n - 1
            comps[m] = comps[m] + d if m in comps else d
    return BBElement(t.alg, comps)


def DD(t: BBElement) -> BBElement:
    """The total differential 𝔻 = ∂ + 𝔇."""
    return dBB(t) + frakD(t)


def alpha(t: BBElement) -> AlgElement:
    """Augmentation onto B: multiplication on component 0, zero elsewhere."""
    c0 = t.components.get(0)
    return pi_B(c0) if c0 is not None else t.alg.zero()


def t_action(beta: BBElement, s: TElement) -> BBElement:
    """Right action of T on 𝔹 by ⊗_B-concatenation.

    In stored coordinates each concatenation of an internal-degree-d word
    with a length-m factor picks up (-1)^{m·d} from the suspension shuffle.
    """
    alg = beta.alg
    f = alg.field
    out = BBElement(alg)
    for k, xk in beta.components.items():
        for m, ym in s.components.items():
            if m == 0:
                piece = _right_concat_scalar(xk, ym)
                out = out + BBElement(alg, {k: piece})
                continue
            acc = TensorElement(alg, k + m + 2)
            for wx, cx in xk.terms.items():
                dx = word_degree(wx)
                sgn = -1 if (m * dx) % 2 else 1
                for wy, cy in ym.terms.items():
                    sm = alg.mono_mul(wx[-1], wy[0])
                    if sm is None:
                        continue
                    s0, mm = sm
                    c = f.mul(cx, cy)
                    if sgn * s0 < 0:
                        c = f.neg(c)
                    acc._add_raw(wx[:-1] + (mm,) + wy[1:], c)
            out = out + BBElement(alg, {k + m: acc})
    return out


def _right_concat_scalar(xk: TensorElement, y0: TensorElement) -> TensorElement:
    """Concatenate with a T-component of word length 0 (an element of B)."""
    alg = xk.alg
    out = TensorElement(alg, xk.length)
    f = alg.field
    for wx, cx in xk.terms.items():
        for wy, cy in y0.terms.items():
            sm = alg.mono_mul(wx[-1], wy[0])
            if sm is None:
                continue
            s0, mm = sm
            c = f.mul(cx, cy)
            if s0 < 0:
                c = f.neg(c)
            out._add_raw(wx[:-1] + (mm,), c)
    return out


def t_multiply(s1: TElement, s2: TElement) -> TElement:
    """Product in T (⊗_B-concatenation with the suspension-shuffle sign)."""
    alg = s1.alg
    f = alg.field
    out = TElement(alg)
    for a, xa in s1.components.items():
        for b, yb in s2.components.items():
            if b == 0:
                piece = _right_concat_scalar(xa, yb)
                out = out + TElement(alg, {a: piece})
                continue
            acc = TensorElement(alg, a + b + 1)
            for wx, cx in xa.terms.items():
                dx = word_degree(wx)
                sgn = -1 if (b * dx) % 2 else 1
                for wy, cy in yb.terms.items():
                    sm = alg.mono_mul(wx[-1], wy[0])
                    if sm is None:
                        continue
                    s0, mm = sm
                    c = f.mul(cx, cy)
                    if sgn * s0 < 0:
                        c = f.neg(c)
                    acc._add_raw(wx[:-1] + (mm,) + wy[1:], c)
            out = out + TElement(alg, {a + b: acc})
    return out


# -- bases and semifree structure -------------------------------------------------


def bb_total_basis(alg: DGAlgebra, total_degree: int):
    """Labels (n, (b, m, ws)) of the stored basis of 𝔹 in one total degree.

    Each suspended δ-factor contributes its internal degree plus one, so
    components with n > total_degree/2 are empty and the slice is finite.
    """
    labels = []
    for n in range(0, total_degree // 2 + 1):
        for lb in prefixed_basis_labels(alg, n, total_degree - n):
            labels.append((n, lb))
    return labels


def bb_basis_element(alg: DGAlgebra, label) -> BBElement:
    n, lb = label
    return BBElement(alg, {n: prefixed_basis_element(alg, lb)})


def bb_coords(t: BBElement, strict: bool = True) -> dict:
    """Coordinates of a BBElement over the stored basis labels (n, (b, m, ws))."""
    out = {}
    for n, te in t.components.items():
        co = prefixed_coords(te, n, strict=strict)
        if co is None:
            return None
        for lb, c in co.items():
            out[(n, lb)] = c
    return out


def check_semifree_triangular(alg: DGAlgebra, max_total_degree: int) -> ValidationReport:
    """𝔻 of each basis element is supported on strictly earlier basis elements.

    Basis elements of the underlying free B^e-module are the labels
    (n, (1, 1, ws)); the semifree order compares n + Σ|w_i| (the total degree
    of the basis element), so it suffices that every coordinate label of the
    image has strictly smaller such value.
    """
    rep = ValidationReport()
    bad = []
    for t in range(max_total_degree + 1):
        for n, lb in bb_total_basis(alg, t):
            b, m, ws = lb
            if any(b.exps) or any(m.exps):
                continue  # not a module basis element, a B^e-multiple of one
            src_key = n + sum(w.degree for w in ws)
            img = DD(bb_basis_element(alg, (n, lb)))
            for (n2, (b2, m2, ws2)), c in bb_coords(img).items():
                tgt_key = n2 + sum(w.degree for w in ws2)
                if tgt_key >= src_key:
                    bad.append((t, n, tuple(alg.mono_repr(w) for w in ws)))
                    break
    rep.add("semifree-triangularity", not bad, "" if not bad else f"violations: {bad[:3]}")
    return rep
