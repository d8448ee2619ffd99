"""Free strictly graded-commutative DG algebras with exact coefficients.

An algebra is a tower A ⊆ B over a field: the "base" generators span the
subalgebra A, the "ext" generators are the B-only ones, and B is free over
A on the monomials in the ext generators.  Odd-degree generators square to
zero in every characteristic; even-degree generators are polynomial.

Monomials are exponent vectors over the fixed generator order (base
generators first, then ext generators, each group sorted by name).  The
canonical monomial order is (total degree, exponent vector); it makes every
basis, matrix, and report in the package deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import DgresError, MismatchedAlgebra
from .scalars import Field


class Generator(NamedTuple):
    name: str
    degree: int

    @property
    def parity(self) -> int:
        return self.degree % 2


class Monomial(NamedTuple):
    exps: tuple[int, ...]
    degree: int

    def sort_key(self):
        return (self.degree, self.exps)


@dataclass
class CheckRecord:
    name: str
    status: str  # "PASS" | "FAIL"
    details: str = ""


@dataclass
class ValidationReport:
    checks: list[CheckRecord] = dc_field(default_factory=list)

    def add(self, name: str, ok: bool, details: str = ""):
        self.checks.append(CheckRecord(name, "PASS" if ok else "FAIL", details))

    @property
    def passed(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status != "PASS"]


class DGAlgebra:
    """The tower A ⊆ B with its Leibniz differential.

    `base_gens` generate A, `ext_gens` generate B over A.  `diff_terms`
    maps generator names to raw term data `[(coeff, {name: exp, ...}), ...]`
    (coeff an int or Fraction); omitted names get differential zero.
    """

    def __init__(
        self,
        field: Field,
        base_gens: Iterable[tuple[str, int]] = (),
        ext_gens: Iterable[tuple[str, int]] = (),
        diff_terms: dict[str, list] | None = None,
    ):
        base = sorted(base_gens)
        ext = sorted(ext_gens)
        names = [n for n, _ in base] + [n for n, _ in ext]
        if len(set(names)) != len(names):
            raise DgresError("generator names must be unique")
        for n, d in base + ext:
            if d < 1:
                raise DgresError(f"generator {n} has degree {d}; all degrees must be >= 1")
        self.field = field
        self.gens: tuple[Generator, ...] = tuple(Generator(n, d) for n, d in base + ext)
        self.n_base = len(base)
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        self.degvec = tuple(g.degree for g in self.gens)
        self.parvec = tuple(g.degree % 2 for g in self.gens)
        self.one_mono = Monomial((0,) * len(self.gens), 0)
        self._diff_cache: dict[Monomial, AlgElement] = {}
        self._basis_cache: dict[tuple[str, int], tuple[Monomial, ...]] = {}
        self.diff_images: dict[int, AlgElement] = {}
        diff_terms = diff_terms or {}
        for name in diff_terms:
            if name not in self.index:
                raise DgresError(f"differential given for unknown generator {name}")
        for i, g in enumerate(self.gens):
            self.diff_images[i] = self.element(diff_terms.get(g.name, []))

    # -- monomials ---------------------------------------------------------

    def mono(self, exps_by_name: dict[str, int]) -> Monomial:
        exps = [0] * len(self.gens)
        for name, e in exps_by_name.items():
            if name not in self.index:
                raise DgresError(f"unknown generator {name}")
            if e < 0:
                raise DgresError("negative exponent")
            exps[self.index[name]] = e
        return self._mono_from_exps(tuple(exps))

    def _mono_from_exps(self, exps: tuple[int, ...]) -> Monomial:
        for i, e in enumerate(exps):
            if e > 1 and self.parvec[i]:
                raise DgresError(f"odd generator {self.gens[i].name} cannot have exponent {e}")
        return Monomial(exps, sum(e * d for e, d in zip(exps, self.degvec)))

    def mono_mul(self, m1: Monomial, m2: Monomial):
        """Product of monomials with the Koszul sign, or None when it vanishes.

        The sign counts transpositions of odd generators needed to sort the
        concatenated word back into canonical order; an odd generator shared
        by both factors kills the product (strong commutativity).
        """
        if len(m1.exps) != len(self.gens) or len(m2.exps) != len(self.gens):
            raise MismatchedAlgebra("monomials over a different generator set")
        inv = 0
        odd_seen_m2 = 0  # number of odd letters of m2 at positions < current
        exps = []
        for i, (a, b) in enumerate(zip(m1.exps, m2.exps)):
            if self.parvec[i]:
                if a and b:
                    return None
                if a:
                    inv += odd_seen_m2
                if b:
                    odd_seen_m2 += 1
            exps.append(a + b)
        sign = -1 if inv % 2 else 1
        return sign, Monomial(tuple(exps), m1.degree + m2.degree)

    def mono_split(self, m: Monomial) -> tuple[Monomial, Monomial]:
        """Split into (base part, ext part); the product base*ext is m with sign +1."""
        nb = self.n_base
        base = m.exps[:nb] + (0,) * (len(self.gens) - nb)
        ext = (0,) * nb + m.exps[nb:]
        db = sum(e * d for e, d in zip(base, self.degvec))
        return Monomial(base, db), Monomial(ext, m.degree - db)

    def mono_is_ext_only(self, m: Monomial) -> bool:
        return not any(m.exps[: self.n_base])

    def mono_in_A(self, m: Monomial) -> bool:
        return not any(m.exps[self.n_base:])

    def mono_repr(self, m: Monomial) -> str:
        if m == self.one_mono:
            return "1"
        parts = []
        for g, e in zip(self.gens, m.exps):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts)

    # -- elements ----------------------------------------------------------

    def zero(self) -> AlgElement:
        return AlgElement(self, {})

    def one(self) -> AlgElement:
        return AlgElement(self, {self.one_mono: self.field.one})

    def gen(self, name: str) -> AlgElement:
        return AlgElement(self, {self.mono({name: 1}): self.field.one})

    def element(self, raw_terms) -> AlgElement:
        """Build from raw [(coeff, {name: exp})] data (coeff int or Fraction)."""
        terms: dict[Monomial, object] = {}
        f = self.field
        for coeff, exps in raw_terms:
            c = f.of_fraction(Fraction(coeff))
            m = self.mono(exps)
            c = f.add(terms.get(m, f.zero), c)
            if c == f.zero:
                terms.pop(m, None)
            else:
                terms[m] = c
        return AlgElement(self, terms)

    def from_monomial(self, m: Monomial, coeff=None) -> AlgElement:
        c = self.field.one if coeff is None else coeff
        if c == self.field.zero:
            return self.zero()
        return AlgElement(self, {m: c})

    # -- differential ------------------------------------------------------

    def diff_mono(self, m: Monomial) -> AlgElement:
        cached = self._diff_cache.get(m)
        if cached is not None:
            return cached
        result = self.zero()
        for i, e in enumerate(m.exps):
            if e == 0:
                continue
            # first generator present: d(g^k * rest) = d(g^k)*rest +- g^k*d(rest)
            g_deg = self.degvec[i]
            dg = self.diff_images[i]
            head_exps = tuple(0 if j != i else e for j in range(len(self.gens)))
            head = Monomial(head_exps, e * g_deg)
            rest_exps = tuple(0 if j == i else m.exps[j] for j in range(len(self.gens)))
            rest = Monomial(rest_exps, m.degree - e * g_deg)
            # d(g^k) = k g^(k-1) dg; for odd g, k == 1 and this is just dg
            dhead = self.zero()
            if not dg.is_zero():
                lower_exps = tuple(0 if j != i else e - 1 for j in range(len(self.gens)))
                lower = Monomial(lower_exps, (e - 1) * g_deg)
                dhead = self.from_monomial(lower, self.field.of_int(e)) * dg
            result = dhead * self.from_monomial(rest)
            if any(rest.exps):
                tail = self.diff_mono(rest)
                sign_head = -1 if (e * g_deg) % 2 else 1
                result = result + self.from_monomial(head).scale_int(sign_head) * tail
            break
        self._diff_cache[m] = result
        return result

    def d(self, u: AlgElement) -> AlgElement:
        if u.alg is not self:
            raise MismatchedAlgebra("element of a different algebra")
        out = self.zero()
        for m, c in u.terms.items():
            out = out + self.diff_mono(m).scale(c)
        return out

    # -- basis enumeration ---------------------------------------------------

    def basis(self, which: str, degree: int) -> tuple[Monomial, ...]:
        """Monomial basis of the degree slice of A, B, Bbar (= B/A), or the
        ext-only monomials W (the semifree basis of B over A, including 1)."""
        if degree < 0:
            return ()
        key = (which, degree)
        cached = self._basis_cache.get(key)
        if cached is not None:
            return cached
        if which == "A":
            idxs = range(self.n_base)
        elif which in ("B", "Bbar"):
            idxs = range(len(self.gens))
        elif which == "W":
            idxs = range(self.n_base, len(self.gens))
        else:
            raise DgresError(f"unknown basis selector {which!r}")
        out: list[Monomial] = []
        exps = [0] * len(self.gens)

        def rec(pos_list, remaining):
            if remaining == 0:
                m = self._mono_from_exps(tuple(exps))
                if which != "Bbar" or not self.mono_in_A(m):
                    out.append(m)
                return
            if not pos_list:
                return
            i = pos_list[0]
            dgi = self.degvec[i]
            max_e = 1 if self.parvec[i] else remaining // dgi
            for e in range(min(max_e, remaining // dgi) + 1):
                exps[i] = e
                rec(pos_list[1:], remaining - e * dgi)
            exps[i] = 0

        rec(list(idxs), degree)
        out.sort(key=Monomial.sort_key)
        result = tuple(out)
        self._basis_cache[key] = result
        return result

    def __repr__(self):
        base = ",".join(f"{g.name}:{g.degree}" for g in self.gens[: self.n_base]) or "-"
        ext = ",".join(f"{g.name}:{g.degree}" for g in self.gens[self.n_base:]) or "-"
        return f"DGAlgebra({self.field!r}; A=[{base}]; ext=[{ext}])"


class AlgElement:
    """Finite sum of scalar multiples of monomials; immutable by convention."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: DGAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_degree(self):
        degs = {m.degree for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise DgresError("element is not homogeneous")
        return degs.pop()

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def homogeneous_part(self, degree: int) -> AlgElement:
        return AlgElement(self.alg, {m: c for m, c in self.terms.items() if m.degree == degree})

    def _check(self, other: AlgElement):
        if self.alg is not other.alg:
            raise MismatchedAlgebra("elements of different algebras")

    def __add__(self, other: AlgElement) -> AlgElement:
        self._check(other)
        f = self.alg.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(terms.get(m, f.zero), c)
            if s == f.zero:
                terms.pop(m, None)
            else:
                terms[m] = s
        return AlgElement(self.alg, terms)

    def __sub__(self, other: AlgElement) -> AlgElement:
        return self + other.scale_int(-1)

    def __neg__(self) -> AlgElement:
        return self.scale_int(-1)

    def scale(self, c) -> AlgElement:
        f = self.alg.field
        if c == f.zero:
            return AlgElement(self.alg, {})
        return AlgElement(self.alg, {m: f.mul(v, c) for m, v in self.terms.items()})

    def scale_int(self, n: int) -> AlgElement:
        return self.scale(self.alg.field.of_int(n))

    def __mul__(self, other: AlgElement) -> AlgElement:
        self._check(other)
        f = self.alg.field
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sm = self.alg.mono_mul(m1, m2)
                if sm is None:
                    continue
                sign, m = sm
                c = f.mul(c1, c2)
                if sign < 0:
                    c = f.neg(c)
                s = f.add(out.get(m, f.zero), c)
                if s == f.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return AlgElement(self.alg, out)

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.alg), tuple(sorted(self.terms.items()))))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = self.alg.mono_repr(m)
            if mono == "1":
                parts.append(f"{c}")
            elif c == self.alg.field.one:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


# -- named operation wrappers ------------------------------------------------


def monomial_multiply(alg: DGAlgebra, m1: Monomial, m2: Monomial):
    """(sign, product) of two monomials, or None when an odd square vanishes."""
    return alg.mono_mul(m1, m2)


def alg_multiply(u: AlgElement, v: AlgElement) -> AlgElement:
    return u * v


def differential(alg: DGAlgebra, u: AlgElement) -> AlgElement:
    return alg.d(u)


def basis_enumerate(alg: DGAlgebra, which: str, degree: int) -> list[Monomial]:
    return list(alg.basis(which, degree))


def validate_dg(alg: DGAlgebra, max_degree: int) -> ValidationReport:
    """Check the DG axioms on every basis monomial of degree <= max_degree."""
    rep = ValidationReport()
    ok = all(g.degree >= 1 for g in alg.gens)
    rep.add("generator-degrees-positive", ok)

    for i, g in enumerate(alg.gens):
        img = alg.diff_images[i]
        if img.is_zero():
            continue
        degs = img.degrees()
        ok = degs == {g.degree - 1}
        rep.add(
            f"diff-degree[{g.name}]",
            ok,
            "" if ok else f"d({g.name}) has degrees {sorted(degs)}, expected {g.degree - 1}",
        )

    for i in range(alg.n_base):
        img = alg.diff_images[i]
        ok = all(alg.mono_in_A(m) for m in img.terms)
        rep.add(
            f"base-closure[{alg.gens[i].name}]",
            ok,
            "" if ok else f"d({alg.gens[i].name}) leaves the base subalgebra",
        )

    bad = []
    for deg in range(max_degree + 1):
        for m in alg.basis("B", deg):
            dd = alg.d(alg.diff_mono(m))
            if not dd.is_zero():
                bad.append(alg.mono_repr(m))
    rep.add(
        "d-squared-zero",
        not bad,
        "" if not bad else "d(d(m)) != 0 for m in: " + ", ".join(bad[:5]),
    )

    for i, g in enumerate(alg.gens):
        if g.parity == 0:
            continue
        ge = alg.gen(g.name)
        lhs = alg.diff_images[i] * ge - ge * alg.diff_images[i]
        rep.add(f"odd-square-consistency[{g.name}]", lhs.is_zero())
    return rep
