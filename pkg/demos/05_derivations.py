"""Derivations versus maps out of the diagonal ideal: the bijection η.

Run:  python demos/05_derivations.py
"""

from dgres import delta
from dgres.bar import be_linear_space, derivation_space, eta, eta_inverse
from dgres.fixtures import e2, e3

for alg, name in ((e2(), "E2"), (e3(), "E3")):
    D = 6
    dspace = derivation_space(alg, D)
    bspace = be_linear_space(alg, D)
    print(f"{name}: dim Der_A(B, B^e) = {len(dspace)},"
          f" dim Hom_Be(J, B^e) = {len(bspace)}  (equal, as the bijection demands)")

    # eta sends f to f∘δ; its inverse factors B ⊗ D ⊗ B through the bar
    # complex.  Round-trip one basis derivation each way.
    table = dspace[0]
    f = eta_inverse(table)
    table2 = eta(f)
    same = all(
        table.apply(alg.from_monomial(m)) == table2.apply(alg.from_monomial(m))
        for d in range(D + 1)
        for m in alg.basis("B", d)
    )
    print(f"  eta(eta_inverse(D)) == D:", same)

    # The universal derivation itself corresponds to the identity of J.
    ident = bspace[0]
    gen = alg.gens[-1]
    print(f"  a basis Be-linear map sends δ({gen.name}) to", ident.images.get(alg.mono({gen.name: 1})))
    print(f"  delta({gen.name}) =", delta(alg.gen(gen.name)))
    print()
