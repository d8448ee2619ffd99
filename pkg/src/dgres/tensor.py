"""Elements of B^{⊗_A m} in flat coordinates, and the diagonal-ideal calculus.

Words are tuples of monomials.  The ⊗_A-balanced relations are resolved by a
normal form: in every stored word, slots 1..m-1 hold ext-only monomials (the
semifree basis W of B over A), while slot 0 carries the full B-coefficient.
Moving a base-generator part from slot i to slot 0 crosses the ext parts in
between, which is where the Koszul signs of the normal form come from.

The subspaces J^{⊗_B n} ⊆ B^{⊗_A (n+1)} are handled through their left-B
bases {δ(w_1) ⊗_B ... ⊗_B δ(w_n)} with w_i ranging over the nontrivial part
of W; `delta_coords` extracts those coordinates exactly and certifies
membership.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgElement, DGAlgebra, Monomial
from .errors import DgresError, LengthMismatch, NotInJn

Word = tuple  # tuple[Monomial, ...]


def _caches(alg: DGAlgebra) -> dict:
    c = getattr(alg, "_tensor_caches", None)
    if c is None:
        c = {"delta_word": {}, "tensor_basis": {}, "jn_basis": {}, "prefixed_basis": {}}
        alg._tensor_caches = c
    return c


def word_degree(w: Word) -> int:
    return sum(m.degree for m in w)


def normalize_word(alg: DGAlgebra, word: Word):
    """Canonical form of a raw word: (sign, word) or None if it vanishes."""
    if all(alg.mono_is_ext_only(m) for m in word[1:]):
        return 1, word
    slot0 = word[0]
    sign = 1
    ext_parity = 0  # parity of w_1 ... w_{i-1} accumulated so far
    out = [None] * len(word)
    for i, u in enumerate(word[1:], start=1):
        a, w = alg.mono_split(u)
        if any(a.exps):
            if (a.degree % 2) and (ext_parity % 2):
                sign = -sign
            sm = alg.mono_mul(slot0, a)
            if sm is None:
                return None
            s, slot0 = sm
            sign *= s
        out[i] = w
        ext_parity += w.degree
    out[0] = slot0
    return sign, tuple(out)


class TensorElement:
    """Finite sum of scalar multiples of canonical words of one fixed length."""

    __slots__ = ("alg", "length", "terms")

    def __init__(self, alg: DGAlgebra, length: int, terms: dict | None = None):
        if length < 1:
            raise DgresError("tensor length must be >= 1")
        self.alg = alg
        self.length = length
        self.terms = terms or {}

    # -- construction helpers ----------------------------------------------

    @staticmethod
    def zero(alg: DGAlgebra, length: int) -> "TensorElement":
        return TensorElement(alg, length)

    @staticmethod
    def unit(alg: DGAlgebra, length: int) -> "TensorElement":
        word = (alg.one_mono,) * length
        return TensorElement(alg, length, {word: alg.field.one})

    @staticmethod
    def from_word(alg: DGAlgebra, word: Word, coeff=None) -> "TensorElement":
        c = alg.field.one if coeff is None else coeff
        t = TensorElement(alg, len(word))
        t._add_raw(word, c)
        return t

    def _add_raw(self, word: Word, coeff):
        """Accumulate coeff * word after normalization."""
        f = self.alg.field
        if coeff == f.zero:
            return
        nw = normalize_word(self.alg, word)
        if nw is None:
            return
        sign, w = nw
        if sign < 0:
            coeff = f.neg(coeff)
        s = f.add(self.terms.get(w, f.zero), coeff)
        if s == f.zero:
            self.terms.pop(w, None)
        else:
            self.terms[w] = s

    def _add_canonical(self, word: Word, coeff):
        f = self.alg.field
        if coeff == f.zero:
            return
        s = f.add(self.terms.get(word, f.zero), coeff)
        if s == f.zero:
            self.terms.pop(word, None)
        else:
            self.terms[word] = s

    # -- linear structure ----------------------------------------------------

    def _check(self, other: "TensorElement"):
        if self.alg is not other.alg:
            raise DgresError("tensor elements over different algebras")
        if self.length != other.length:
            raise LengthMismatch(f"lengths {self.length} and {other.length}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = TensorElement(self.alg, self.length, dict(self.terms))
        for w, c in other.terms.items():
            out._add_canonical(w, c)
        return out

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale_int(-1)

    def __neg__(self) -> "TensorElement":
        return self.scale_int(-1)

    def scale(self, c) -> "TensorElement":
        f = self.alg.field
        if c == f.zero:
            return TensorElement(self.alg, self.length)
        return TensorElement(self.alg, self.length, {w: f.mul(v, c) for w, v in self.terms.items()})

    def scale_int(self, n: int) -> "TensorElement":
        return self.scale(self.alg.field.of_int(n))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.alg is other.alg and self.length == other.length and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.alg), self.length, tuple(sorted(self.terms.items(), key=lambda wc: _word_key(wc[0])))))

    def degrees(self) -> set[int]:
        return {word_degree(w) for w in self.terms}

    def homogeneous_degree(self):
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise DgresError("tensor element is not homogeneous")
        return degs.pop()

    def homogeneous_part(self, degree: int) -> "TensorElement":
        return TensorElement(
            self.alg, self.length, {w: c for w, c in self.terms.items() if word_degree(w) == degree}
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: _word_key(wc[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        alg = self.alg
        parts = []
        for w, c in self.sorted_terms():
            body = "(x)".join(alg.mono_repr(m) for m in w)
            parts.append(f"{c}*{body}" if c != alg.field.one else body)
        return " + ".join(parts)


def _word_key(w: Word):
    return (word_degree(w), tuple(m.sort_key() for m in w))


# -- multiplicative structure -------------------------------------------------


def tensor_multiply(t1: TensorElement, t2: TensorElement) -> TensorElement:
    """Componentwise product with the Koszul sign Σ_{i<j} |v_i||u_j|."""
    t1._check(t2)
    alg = t1.alg
    f = alg.field
    out = TensorElement(alg, t1.length)
    for u, cu in t1.terms.items():
        u_par = [m.degree % 2 for m in u]
        # suffix_par[i] = parity of |u_i| + ... + |u_{m-1}|
        suffix_par = [0] * (len(u) + 1)
        for i in range(len(u) - 1, -1, -1):
            suffix_par[i] = (suffix_par[i + 1] + u_par[i]) % 2
        for v, cv in t2.terms.items():
            sign = 1
            raw = []
            ok = True
            exp = 0
            for i, mv in enumerate(v):
                if mv.degree % 2:
                    exp ^= suffix_par[i + 1]
            if exp:
                sign = -sign
            for mu, mv in zip(u, v):
                sm = alg.mono_mul(mu, mv)
                if sm is None:
                    ok = False
                    break
                s, m = sm
                sign *= s
                raw.append(m)
            if not ok:
                continue
            c = f.mul(cu, cv)
            if sign < 0:
                c = f.neg(c)
            out._add_raw(tuple(raw), c)
    return out


def left_mult(u: AlgElement, t: TensorElement) -> TensorElement:
    """b·t: multiply into slot 0 (no crossing, no sign)."""
    alg = t.alg
    f = alg.field
    out = TensorElement(alg, t.length)
    for mu, cu in u.terms.items():
        for w, cw in t.terms.items():
            sm = alg.mono_mul(mu, w[0])
            if sm is None:
                continue
            s, m0 = sm
            c = f.mul(cu, cw)
            if s < 0:
                c = f.neg(c)
            out._add_canonical((m0,) + w[1:], c)
    return out


def right_mult(t: TensorElement, u: AlgElement) -> TensorElement:
    """t·b: multiply into the last slot (no crossing, no sign)."""
    alg = t.alg
    f = alg.field
    out = TensorElement(alg, t.length)
    for w, cw in t.terms.items():
        for mu, cu in u.terms.items():
            sm = alg.mono_mul(w[-1], mu)
            if sm is None:
                continue
            s, ml = sm
            c = f.mul(cw, cu)
            if s < 0:
                c = f.neg(c)
            out._add_raw(w[:-1] + (ml,), c)
    return out


def merge_at(t: TensorElement, i: int) -> TensorElement:
    """Multiply slots i and i+1 together (degree-0 chain map)."""
    alg = t.alg
    f = alg.field
    if not (0 <= i < t.length - 1):
        raise LengthMismatch(f"cannot merge slot {i} of a length-{t.length} word")
    out = TensorElement(alg, t.length - 1)
    for w, c in t.terms.items():
        sm = alg.mono_mul(w[i], w[i + 1])
        if sm is None:
            continue
        s, m = sm
        out._add_canonical(w[:i] + (m,) + w[i + 2:], f.neg(c) if s < 0 else c)
    return out


def concat_B(t1: TensorElement, t2: TensorElement) -> TensorElement:
    """⊗_B-concatenation: the last slot of t1 multiplies the first slot of t2."""
    if t1.alg is not t2.alg:
        raise DgresError("tensor elements over different algebras")
    alg = t1.alg
    f = alg.field
    out = TensorElement(alg, t1.length + t2.length - 1)
    for w1, c1 in t1.terms.items():
        for w2, c2 in t2.terms.items():
            sm = alg.mono_mul(w1[-1], w2[0])
            if sm is None:
                continue
            s, m = sm
            c = f.mul(c1, c2)
            if s < 0:
                c = f.neg(c)
            out._add_raw(w1[:-1] + (m,) + w2[1:], c)
    return out


def tensor_differential(t: TensorElement) -> TensorElement:
    """Slotwise differential with sign (-1)^{|u_1|+...+|u_{i-1}|}."""
    alg = t.alg
    f = alg.field
    out = TensorElement(alg, t.length)
    for w, c in t.terms.items():
        prefix = 0
        for i, m in enumerate(w):
            dm = alg.diff_mono(m)
            if not dm.is_zero():
                cc = f.neg(c) if prefix % 2 else c
                for mm, cm in dm.terms.items():
                    out._add_raw(w[:i] + (mm,) + w[i + 1:], f.mul(cc, cm))
            prefix += m.degree
    return out


def pi_B(t: TensorElement) -> AlgElement:
    """Multiplication map B ⊗_A B → B."""
    if t.length != 2:
        raise LengthMismatch("pi_B expects length-2 tensors")
    alg = t.alg
    f = alg.field
    out = alg.zero()
    for w, c in t.terms.items():
        sm = alg.mono_mul(w[0], w[1])
        if sm is None:
            continue
        s, m = sm
        out = out + alg.from_monomial(m, f.neg(c) if s < 0 else c)
    return out


def as_algebra_element(t: TensorElement) -> AlgElement:
    """Identify a length-1 tensor with the underlying algebra element."""
    if t.length != 1:
        raise LengthMismatch("length-1 tensor expected")
    return AlgElement(t.alg, {w[0]: c for w, c in t.terms.items()})


def from_algebra_element(u: AlgElement) -> TensorElement:
    return TensorElement(u.alg, 1, {(m,): c for m, c in u.terms.items()})


def delta(b: AlgElement) -> TensorElement:
    """Universal derivation δ(b) = 1 ⊗_A b - b ⊗_A 1, an element of J."""
    alg = b.alg
    out = TensorElement(alg, 2)
    one = alg.one_mono
    for m, c in b.terms.items():
        a, w = alg.mono_split(m)
        if not any(w.exps):
            continue  # δ vanishes on A
        out._add_canonical((a, w), c)
        out._add_canonical((m, one), alg.field.neg(c))
    return out


# -- δ-basis machinery --------------------------------------------------------


def delta_word(alg: DGAlgebra, ws: Word) -> TensorElement:
    """δ(w_1) ⊗_B ... ⊗_B δ(w_n) in flat coordinates (length n+1)."""
    cache = _caches(alg)["delta_word"]
    got = cache.get(ws)
    if got is not None:
        return got
    if not ws:
        out = TensorElement.unit(alg, 1)
    else:
        out = delta(alg.from_monomial(ws[0]))
        for w in ws[1:]:
            out = concat_B(out, delta(alg.from_monomial(w)))
    cache[ws] = out
    return out


def delta_coords(t: TensorElement, n: int, strict: bool = True):
    """Left-B coordinates of t over the δ-words of length n.

    Peels the rightmost δ-factor n times.  Returns a dict mapping each tuple
    of n ext monomials to its coefficient TensorElement of length
    t.length - n, or None (strict=False) / NotInJn (strict=True) when t does
    not lie in the span.
    """
    alg = t.alg
    if n == 0:
        return {(): t}
    if t.length < n + 1:
        raise LengthMismatch("word length too small for the requested δ-power")
    one = alg.one_mono
    groups: dict[Monomial, TensorElement] = {}
    ones_part = TensorElement(alg, t.length - 1)
    for w, c in t.terms.items():
        last = w[-1]
        if last == one:
            ones_part._add_canonical(w[:-1], c)
        else:
            sub = groups.get(last)
            if sub is None:
                sub = TensorElement(alg, t.length - 1)
                groups[last] = sub
            sub._add_canonical(w[:-1], c)
    out: dict[Word, TensorElement] = {}
    predicted = TensorElement(alg, t.length - 1)
    for wlast, sub in sorted(groups.items(), key=lambda kv: kv[0].sort_key()):
        subcoords = delta_coords(sub, n - 1, strict=strict)
        if subcoords is None:
            return None
        for ws, val in subcoords.items():
            out[ws + (wlast,)] = val
        shifted = right_mult(sub, alg.from_monomial(wlast))
        predicted = predicted + shifted
    residual = ones_part + predicted
    if not residual.is_zero():
        if strict:
            raise NotInJn(f"residual outside span: {residual!r}")
        return None
    return out


@dataclass
class JnView:
    """Coordinates of an element of J^{⊗_B n} over the standard left-B basis."""

    n: int
    left_coords: dict  # tuple[Monomial,...] -> AlgElement


def jn_membership(t: TensorElement, n: int):
    """Decide t ∈ J^{⊗_B n}; returns (bool, JnView | residual-info)."""
    if t.length != n + 1:
        raise LengthMismatch(f"expected length {n + 1}, got {t.length}")
    try:
        coords = delta_coords(t, n, strict=True)
    except NotInJn as exc:
        return False, str(exc)
    view = JnView(n, {ws: as_algebra_element(v) for ws, v in coords.items() if not v.is_zero()})
    return True, view


def kappa_n(alg: DGAlgebra, n: int, left_coords: dict) -> TensorElement:
    """Left-B coordinates → flat element of J^{⊗_B n} ⊆ B^{⊗_A (n+1)}."""
    out = TensorElement(alg, n + 1)
    for ws, f in left_coords.items():
        if len(ws) != n:
            raise LengthMismatch("coordinate tuple of wrong length")
        if isinstance(f, AlgElement):
            coeff = f
        elif isinstance(f, Monomial):
            coeff = alg.from_monomial(f)
        else:
            coeff = alg.element([(f, {})])
        out = out + left_mult(coeff, delta_word(alg, tuple(ws)))
    return out


def kappa_n_inverse(t: TensorElement, n: int) -> JnView:
    ok, view = jn_membership(t, n)
    if not ok:
        raise NotInJn(view)
    return view


# -- slice bases --------------------------------------------------------------


def tensor_basis(alg: DGAlgebra, length: int, degree: int) -> tuple[Word, ...]:
    """Canonical word basis of the degree slice of B^{⊗_A length}."""
    key = (length, degree)
    cache = _caches(alg)["tensor_basis"]
    got = cache.get(key)
    if got is not None:
        return got
    words: list[Word] = []

    def rec(prefix, slots_left, remaining):
        if slots_left == 0:
            if remaining == 0:
                words.append(tuple(prefix))
            return
        for d in range(remaining + 1):
            for w in alg.basis("W", d):
                prefix.append(w)
                rec(prefix, slots_left - 1, remaining - d)
                prefix.pop()

    for d0 in range(degree + 1):
        for b in alg.basis("B", d0):
            rec([b], length - 1, degree - d0)
    words.sort(key=_word_key)
    result = tuple(words)
    cache[key] = result
    return result


def jn_basis_labels(alg: DGAlgebra, n: int, degree: int) -> tuple[tuple[Monomial, Word], ...]:
    """Labels (b, (w_1..w_n)) of the left-B basis of the J^{⊗_B n} slice."""
    key = (n, degree)
    cache = _caches(alg)["jn_basis"]
    got = cache.get(key)
    if got is not None:
        return got
    labels = []

    def rec(ws, remaining):
        if len(ws) == n:
            for b in alg.basis("B", remaining):
                labels.append((b, tuple(ws)))
            return
        budget = remaining - (n - len(ws) - 1)  # each remaining w needs degree >= 1
        for d in range(1, budget + 1):
            for w in alg.basis("W", d):
                ws.append(w)
                rec(ws, remaining - d)
                ws.pop()

    rec([], degree)
    labels.sort(key=lambda bw: (bw[0].sort_key(), tuple(m.sort_key() for m in bw[1])))
    result = tuple(labels)
    cache[key] = result
    return result


def jn_basis_element(alg: DGAlgebra, label) -> TensorElement:
    b, ws = label
    return left_mult(alg.from_monomial(b), delta_word(alg, ws))


def prefixed_basis_labels(alg: DGAlgebra, n: int, degree: int):
    """Labels (b, m, (w_1..w_n)) of the slice basis of B ⊗_A J^{⊗_B n}.

    b runs over all B-monomials (the ⊗_A prefix), m over ext-only monomials
    (the left-B coefficient inside J^{⊗_B n}), and w_i over the nontrivial
    semifree basis of B over A.
    """
    key = (n, degree)
    cache = _caches(alg)["prefixed_basis"]
    got = cache.get(key)
    if got is not None:
        return got
    labels = []

    def rec(ws, remaining):
        if len(ws) == n:
            for db in range(remaining + 1):
                for b in alg.basis("B", db):
                    for m in alg.basis("W", remaining - db):
                        labels.append((b, m, tuple(ws)))
            return
        budget = remaining - (n - len(ws) - 1)
        for d in range(1, budget + 1):
            for w in alg.basis("W", d):
                ws.append(w)
                rec(ws, remaining - d)
                ws.pop()

    rec([], degree)
    labels.sort(key=lambda lb: (lb[0].sort_key(), lb[1].sort_key(), tuple(m.sort_key() for m in lb[2])))
    result = tuple(labels)
    cache[key] = result
    return result


def prefixed_basis_element(alg: DGAlgebra, label) -> TensorElement:
    b, m, ws = label
    core = left_mult(alg.from_monomial(m), delta_word(alg, ws))
    out = TensorElement(alg, core.length + 1)
    for w, c in core.terms.items():
        out._add_canonical((b,) + w, c)
    return out


def prefixed_coords(t: TensorElement, n: int, strict: bool = True):
    """Coordinates of t ∈ B ⊗_A J^{⊗_B n} over `prefixed_basis_labels`.

    Returns dict[(b, m, ws) -> scalar], or None / NotInJn when t is outside
    the subspace.
    """
    coords = delta_coords(t, n, strict=strict)
    if coords is None:
        return None
    alg = t.alg
    out = {}
    for ws, val in coords.items():
        for w, c in val.terms.items():
            if len(w) != 2:
                raise LengthMismatch("prefixed coordinates expect length-2 residue")
            out[(w[0], w[1], ws)] = c
    return out
