"""Standard example algebras and modules used by the test suite and demos.

E1: B = Λ(e) over ℚ with |e| = 1 and de = 0.
E2: B = ℚ[x] with |x| = 2 and dx = 0.
E3: A = ℚ[y] with |y| = 2, B = A⟨e⟩ with |e| = 3 and de = y.
Each has a prime-field variant over F_101.
"""

from __future__ import annotations

from .algebra import DGAlgebra
from .modules import SemifreeModule
from .scalars import Field

P_DEFAULT = 101


def e1(field: Field | None = None) -> DGAlgebra:
    return DGAlgebra(field or Field.rationals(), ext_gens=[("e", 1)])


def e2(field: Field | None = None) -> DGAlgebra:
    return DGAlgebra(field or Field.rationals(), ext_gens=[("x", 2)])


def e3(field: Field | None = None) -> DGAlgebra:
    return DGAlgebra(
        field or Field.rationals(),
        base_gens=[("y", 2)],
        ext_gens=[("e", 3)],
        diff_terms={"e": [(1, {"y": 1})]},
    )


def all_fixtures(include_prime: bool = True) -> dict[str, DGAlgebra]:
    out = {"E1": e1(), "E2": e2(), "E3": e3()}
    if include_prime:
        p = Field.prime(P_DEFAULT)
        out.update({"E1p": e1(p), "E2p": e2(p), "E3p": e3(p)})
    return out


def module_B(alg: DGAlgebra) -> SemifreeModule:
    """B as a module over itself: one basis element in degree 0."""
    return SemifreeModule(alg, [("gen", 0)])


def koszul_K(alg: DGAlgebra) -> SemifreeModule:
    """Two-term module over E2 with ∂e1 = e0·x."""
    return SemifreeModule(alg, [("e0", 0), ("e1", 3)], {("e0", "e1"): [(1, {"x": 1})]})


def chain_N3(alg: DGAlgebra) -> SemifreeModule:
    """Length-3 chain over E1 with ∂f2 = f1·e and ∂f3 = f2·e."""
    return SemifreeModule(
        alg,
        [("f1", 0), ("f2", 2), ("f3", 4)],
        {("f1", "f2"): [(1, {"e": 1})], ("f2", "f3"): [(1, {"e": 1})]},
    )


def extended_module(alg: DGAlgebra) -> SemifreeModule:
    """A module of the form C ⊗_A B: all differential entries lie in A."""
    if any(g.name == "y" for g in alg.gens):
        return SemifreeModule(alg, [("c0", 0), ("c1", 3)], {("c0", "c1"): [(1, {"y": 1})]})
    return SemifreeModule(alg, [("c0", 0), ("c1", 1)], {("c0", "c1"): [(1, {})]})
