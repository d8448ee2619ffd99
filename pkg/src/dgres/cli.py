"""Command line interface: validate | bar | semifree | homology | lift | derivations.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage or parse
error.  Reports are byte-identical across reruns of the same invocation.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .algebra import validate_dg
from .bar import (
    bar_differential,
    bar_homotopy,
    be_linear_space,
    check_reduced_exactness,
    derivation_space,
    eta,
    eta_inverse,
)
from .errors import DgresError, ObstructionNonzero, ParseError, UsageError
from .homology import homology_dims, quasi_iso_check
from .linalg import SliceMatrix
from .modules import (
    ModTensorElement,
    NTElement,
    alpha_N,
    bar_dN_any,
    beta_N,
    lambda_n,
    lemma_sign_check,
    mod_element,
    mod_merge_at,
    mod_right_mult,
    modtensor_basis,
    module_N_differential,
    module_differential,
    naive_lift_solve,
    nt_right_mult,
    validate_module,
)
from .report import Report, input_hash, render_machine, render_text
from .sampling import random_scalar
from .semifree import (
    DD,
    alpha,
    bb_basis_element,
    bb_total_basis,
    check_semifree_triangular,
    dBB,
    frakD,
    t_action,
    t_word,
)
from .tensor import TensorElement, tensor_basis, tensor_differential


def _threads_option() -> int:
    raw = os.environ.get("DGRES_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"DGRES_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError("DGRES_THREADS must be >= 1")
    return n


def _common_options(args, problem) -> dict:
    opts = {"threads": _threads_option()}
    for key in ("max_degree", "max_n", "samples", "seed", "module", "reduced", "format"):
        val = getattr(args, key, None)
        if val is not None and val is not False:
            opts[key.replace("_", "-")] = val
    for key, val in sorted(problem.options.items()):
        opts[f"file:{key}"] = val
    return opts


def _opt_int(problem, args, name: str, default: int) -> int:
    cli_val = getattr(args, name, None)
    if cli_val is not None:
        return cli_val
    raw = problem.options.get(name.replace("_", "-"))
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"option {name} in file must be an integer, got {raw!r}")
    return default


def cmd_validate(args, problem) -> Report:
    rep = Report("validate", input_hash(problem.source_text), _common_options(args, problem))
    D = _opt_int(problem, args, "max_degree", 8)
    window = f"degrees 0..{D}"
    rep.add_validation("algebra", validate_dg(problem.algebra, D), window)
    for name in sorted(problem.modules):
        rep.add_validation(f"module[{name}]", validate_module(problem.modules[name]), window)
    return rep


def cmd_bar(args, problem) -> Report:
    rep = Report("bar", input_hash(problem.source_text), _common_options(args, problem))
    alg = problem.algebra
    D = _opt_int(problem, args, "max_degree", 6)
    if args.reduced:
        window = f"degrees 0..{D}"
        rep.add_validation("reduced", check_reduced_exactness(alg, D), window)
        # d̄ squares to zero on the δ-basis slices
        from .tensor import merge_at, prefixed_basis_element, prefixed_basis_labels

        ok = True
        for d in range(D + 1):
            for n in range(2, d + 1):
                for lb in prefixed_basis_labels(alg, n, d):
                    t = prefixed_basis_element(alg, lb)
                    if not merge_at(merge_at(t, 0), 0).is_zero():
                        ok = False
        rep.add_check("reduced-d-squared-zero", ok, window)
        return rep
    if args.max_n is None:
        raise UsageError("classical bar requires --max-n (word lengths are not degree-bounded)")
    N = args.max_n
    window = f"n 0..{N}, degrees 0..{D}"
    ok_dd = True
    ok_h = True
    for n in range(0, N + 1):
        for d in range(0, D + 1):
            for w in tensor_basis(alg, n + 2, d):
                x = TensorElement.from_word(alg, w)
                dx = bar_differential(x, n)
                if n >= 1 and not bar_differential(dx, n - 1).is_zero():
                    ok_dd = False
                lhs = bar_differential(bar_homotopy(x), n + 1) + bar_homotopy(dx)
                if lhs != x:
                    ok_h = False
    rep.add_check("bar-d-squared-zero", ok_dd, window)
    rep.add_check("bar-homotopy-identity", ok_h, window)
    ok_aug = True
    from .tensor import pi_B
    for d in range(0, D + 1):
        for m in alg.basis("B", d):
            x = alg.from_monomial(m)
            if pi_B(bar_homotopy(x)) != x:
                ok_aug = False
    rep.add_check("bar-augmentation-homotopy", ok_aug, window)
    ok_dg = True
    for n in range(0, N + 1):
        for d in range(0, D + 1):
            for w in tensor_basis(alg, n + 2, d):
                x = TensorElement.from_word(alg, w)
                if bar_differential(tensor_differential(x), n) != tensor_differential(bar_differential(x, n)):
                    ok_dg = False
    rep.add_check("bar-commutes-with-internal-differential", ok_dg, window)
    return rep


def cmd_semifree(args, problem) -> Report:
    rep = Report("semifree", input_hash(problem.source_text), _common_options(args, problem))
    alg = problem.algebra
    D = _opt_int(problem, args, "max_degree", 8)
    window = f"total degrees 0..{D}"
    ok_sq = ok_anti = ok_alpha = True
    for t in range(0, D + 1):
        for label in bb_total_basis(alg, t):
            v = bb_basis_element(alg, label)
            if not DD(DD(v)).is_zero():
                ok_sq = False
            if not (frakD(dBB(v)) + dBB(frakD(v))).is_zero():
                ok_anti = False
            if alpha(DD(v)) != alg.d(alpha(v)):
                ok_alpha = False
    rep.add_check("DD-squared-zero", ok_sq, window)
    rep.add_check("anticommutation", ok_anti, window)
    rep.add_check("alpha-chain-map", ok_alpha, window)
    ok_tlin = True
    gens = [alg.gen(g.name) for g in alg.gens]
    ss = [t_word(alg, [g]) for g in gens]
    for t in range(0, min(D, 5) + 1):
        for label in bb_total_basis(alg, t):
            if label[0] < 1:
                continue
            v = bb_basis_element(alg, label)
            for s in ss:
                if frakD(t_action(v, s)) != t_action(frakD(v), s):
                    ok_tlin = False
    rep.add_check("frakD-T-linearity", ok_tlin, f"total degrees 0..{min(D, 5)}, word length >= 1")
    rep.add_validation("semifree", check_semifree_triangular(alg, D), window)
    qi = quasi_iso_check(alg, D)
    rep.add_check("quasi-isomorphism", qi.passed, qi.window)
    rep.tables["homology"] = [("degree", "dim H(BB)", "dim H(B)", "induced rank")] + [
        tuple(r) for r in qi.rows
    ]
    return rep


def cmd_homology(args, problem) -> Report:
    rep = Report("homology", input_hash(problem.source_text), _common_options(args, problem))
    alg = problem.algebra
    D = _opt_int(problem, args, "max_degree", 8)
    tb = homology_dims(alg, "B", D)
    tbb = homology_dims(alg, "semifree_BB", D)
    trb = homology_dims(alg, "reduced_bar", D)
    rep.tables["H(B)"] = [("degree", "cycles", "boundaries", "homology")] + tb.rows()
    rep.tables["H(BB,DD)"] = [("degree", "cycles", "boundaries", "homology")] + tbb.rows()
    rep.tables["H(reduced bar, augmented)"] = [("degree", "cycles", "boundaries", "homology")] + trb.rows()
    rep.add_check(
        "homology-dimensions-match",
        all(tb.homology(m) == tbb.homology(m) for m in range(D)),
        tb.window,
    )
    rep.add_check(
        "reduced-bar-acyclic",
        all(trb.homology(m) == 0 for m in range(D)),
        trb.window,
    )
    return rep


def cmd_lift(args, problem) -> Report:
    rep = Report("lift", input_hash(problem.source_text), _common_options(args, problem))
    if not args.module:
        raise UsageError("lift requires --module NAME")
    if args.module not in problem.modules:
        raise UsageError(f"module {args.module!r} not defined in the input file")
    N = problem.modules[args.module]
    D = _opt_int(problem, args, "max_degree", 8)
    rep.add_validation(f"module[{args.module}]", validate_module(N), "")
    alg = N.alg
    f = alg.field

    bts = []
    ok_beta_chain = ok_beta_id = True
    for name in N.names:
        b = beta_N(N, name)
        if alpha_N(b) != mod_element(N, name):
            ok_beta_id = False
        de = module_N_differential(mod_element(N, name))
        lhs = NTElement(N)
        for (i, w), c in de.terms.items():
            lhs = lhs + nt_right_mult(beta_N(N, N.names[i]), alg.from_monomial(w[0], c))
        from .modules import DN
        if lhs != DN(b):
            ok_beta_chain = False
        bts.append((name, repr(b)))
    rep.add_check("beta-chain-map", ok_beta_chain, "")
    rep.add_check("alphaN-betaN-identity", ok_beta_id, "")
    rep.tables["beta"] = bts

    res = naive_lift_solve(N)
    rep.tables["lift"] = [("verdict", "Liftable" if res.liftable else "NotLiftable"),
                          ("system", f"{res.system_rows}x{res.system_cols}")]
    if res.liftable:
        ok_pi = ok_chain = True
        for name in N.names:
            img = res.rho[name]
            if mod_merge_at(img, 0) != mod_element(N, name):
                ok_pi = False
            lhs = ModTensorElement(N, 2)
            de = module_N_differential(mod_element(N, name))
            for (i, w), c in de.terms.items():
                lhs = lhs + mod_right_mult(res.rho[N.names[i]], alg.from_monomial(w[0], c))
            if lhs != module_differential(img):
                ok_chain = False
        rep.add_check("rho-splits-augmentation", ok_pi, "")
        rep.add_check("rho-chain-map", ok_chain, "")
        rep.tables["rho"] = [(name, repr(res.rho[name])) for name in N.names]
        ok_lam = True
        for n in range(2, 4):
            for d in range(0, D + 1):
                basis = modtensor_basis(N, n, d)
                if not basis:
                    continue
                tgt = modtensor_basis(N, n - 1, d)
                tgt_i = {k: i for i, k in enumerate(tgt)}
                M = SliceMatrix(f, len(tgt), len(basis))
                for jj, key in enumerate(basis):
                    el = ModTensorElement(N, n, {key: f.one})
                    for kk, c in bar_dN_any(el).terms.items():
                        M.set(tgt_i[kk], jj, c)
                for vec in M.nullspace():
                    el = ModTensorElement(N, n)
                    for jj, c in enumerate(vec):
                        if c != f.zero:
                            el = el + ModTensorElement(N, n, {basis[jj]: c})
                    if bar_dN_any(lambda_n(N, res.rho, n, el)) != el:
                        ok_lam = False
        rep.add_check("lambda-splitting-identities", ok_lam, f"n 2..3, degrees 0..{D}")
    else:
        cert = res.certificate
        ok_cert = cert is not None
        rep.add_check("infeasibility-certificate", ok_cert, "",
                      "" if ok_cert else "solver returned no certificate")
        rep.tables["certificate"] = [("first-row", cert.first_row),
                                     ("rows", ",".join(str(r) for r in sorted(cert.row_combination)))]
    seed = _opt_int(problem, args, "seed", 0)
    samples = _opt_int(problem, args, "samples", 100)
    rep.add_validation("concat-sign-lemma", lemma_sign_check(N, samples, seed), f"{samples} samples, seed {seed}")
    return rep


def cmd_derivations(args, problem) -> Report:
    rep = Report("derivations", input_hash(problem.source_text), _common_options(args, problem))
    alg = problem.algebra
    D = _opt_int(problem, args, "max_degree", 6)
    samples = _opt_int(problem, args, "samples", 50)
    seed = _opt_int(problem, args, "seed", 0)
    rng = random.Random(seed)
    window = f"degrees 0..{D}, {samples} samples, seed {seed}"
    dspace = derivation_space(alg, D)
    bspace = be_linear_space(alg, D)
    rep.tables["dimensions"] = [("Der_A(B, B^e)", len(dspace)), ("Hom_Be(J, B^e)", len(bspace))]
    rep.add_check("derivation-hom-dim-match", len(dspace) == len(bspace), window)
    f = alg.field

    def combine(space, images_attr="images"):
        images = {}
        for tab in space:
            c = random_scalar(f, rng)
            for k, t in getattr(tab, images_attr).items():
                cur = images.get(k, TensorElement(alg, 2))
                images[k] = cur + t.scale(c)
        return {k: t for k, t in images.items() if not t.is_zero()}

    ok_d = True
    for _ in range(samples):
        if not dspace:
            break
        Dt = type(dspace[0])(alg, D, combine(dspace))
        if not Dt.validate().passed:
            ok_d = False
            continue
        g = eta_inverse(Dt)
        Dt2 = eta(g)
        keys = set(Dt.images) | set(Dt2.images)
        zero = TensorElement(alg, 2)
        if any(Dt.images.get(k, zero) != Dt2.images.get(k, zero) for k in keys):
            ok_d = False
    rep.add_check("eta-of-eta-inverse-identity", ok_d, window)

    ok_f = True
    for _ in range(samples):
        if not bspace:
            break
        fm = type(bspace[0])(alg, D, combine(bspace))
        Dt = eta(fm)
        f2 = eta_inverse(Dt)
        zero = TensorElement(alg, 2)
        keys = set(fm.images) | set(f2.images)
        if any(fm.images.get(k, zero) != f2.images.get(k, zero) for k in keys):
            ok_f = False
    rep.add_check("eta-inverse-of-eta-identity", ok_f, window)

    # corrupted input must be rejected, not silently accepted
    ok_reject = True
    if dspace:
        Dt = type(dspace[0])(alg, D, dict(dspace[0].images))
        corrupt = None
        for d in range(1, D + 1):
            basis = tensor_basis(alg, 2, d)
            monos = alg.basis("B", d)
            if basis and monos:
                corrupt = (monos[0], TensorElement.from_word(alg, basis[0]))
                break
        if corrupt is not None:
            m, t = corrupt
            images = dict(Dt.images)
            images[m] = images.get(m, TensorElement(alg, 2)) + t
            bad = type(dspace[0])(alg, D, images)
            try:
                eta_inverse(bad)
                ok_reject = bad.validate().passed  # only acceptable if it truly is a derivation
            except ObstructionNonzero:
                ok_reject = True
    rep.add_check("corrupted-derivation-rejected", ok_reject, window)
    return rep


COMMANDS = {
    "validate": cmd_validate,
    "bar": cmd_bar,
    "semifree": cmd_semifree,
    "homology": cmd_homology,
    "lift": cmd_lift,
    "derivations": cmd_derivations,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dgres",
        description="Exact bar resolutions, diagonal tensor resolutions, and naive lifting for DG algebras.",
    )
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("file", help="problem file")
    p.add_argument("--max-degree", type=int, dest="max_degree")
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--module", type=str)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        from .probfile import parse_problem

        problem = parse_problem(text)
        rep = COMMANDS[args.command](args, problem)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DgresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = render_machine(rep) if args.format == "machine" else render_text(rep)
    sys.stdout.write(out)
    return 0 if rep.all_passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
