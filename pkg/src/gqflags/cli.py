"""Command-line front end: build, scheme, fusions, reconstruct, selftest.

Every command is deterministic given its arguments (scrambles are seeded
and the seed is recorded in the certificate), so reports are byte-identical
across runs.  Exit codes: 0 success, 1 verification failure with witness,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import CompositeParameterError, GqflagsError, ParseError
from .flags import build_flag_scheme, check_duality_map, load_scheme_file, save_scheme_file
from .fusions import (
    FeasibilityTag,
    IndexPartition,
    classify_partition,
    enumerate_fusions,
    fuse,
    set_partitions,
)
from .geometry import (
    build_grid,
    build_symplectic,
    dualize,
    load_structure,
    save_structure,
    verify_gq,
)
from .reconstruct import (
    canonicalize_4class,
    check_unique_qm,
    reconstruct_from_4class,
    reconstruct_from_7class,
    relabel_to_canonical,
)
from .schemes import (
    dihedral8_witness,
    find_parabolics,
    quotient_scheme,
    scramble_scheme,
    srg_parameters,
    thin_group_table,
    verify_scheme,
)
from .tables import (
    FUSION_BLOCKS,
    fused_p_poly,
    fused_tensor_from_polys,
    p_poly,
    tensor_from_polys,
    verify_identities,
    verify_triplet_orbits,
)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


def _write_or_print(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    if args.kind == "grid":
        structure = build_grid(args.param)
    elif args.kind == "dual-grid":
        structure = dualize(build_grid(args.param))
    else:
        structure = build_symplectic(args.param)
    order = verify_gq(structure)
    save_structure(structure, args.out)
    print(
        f"built {args.kind}({args.param}): order (s,t)=({order.s},{order.t}), "
        f"{structure.num_points} points, {structure.num_lines} lines -> {args.out}"
    )
    return EXIT_OK


def _render_parabolic(parabolic) -> str:
    return "{" + ",".join(str(i) for i in sorted(parabolic.classes)) + "}"


def cmd_scheme(args) -> int:
    structure = load_structure(args.structure)
    order = verify_gq(structure)
    data = build_flag_scheme(structure)
    tensor = verify_scheme(data.relation, 7)

    s, t = order.s, order.t
    reference = tensor_from_polys(s, t)
    table_match = bool(np.array_equal(tensor.p, reference.p))

    parabolics = find_parabolics(tensor, data.relation)
    nontrivial = [p for p in parabolics if not p.is_trivial]
    quotients = []
    for p in nontrivial:
        q = quotient_scheme(data.relation, p)
        quotients.append((p, q.shape[0], srg_parameters(q == 1)))
    duality = check_duality_map(structure)

    thin = all(v == 1 for v in tensor.eta[1:])
    dihedral = None
    if thin:
        dihedral = dihedral8_witness(thin_group_table(tensor))

    report = {
        "structure": str(args.structure),
        "order": {"s": s, "t": t},
        "points": structure.num_points,
        "lines": structure.num_lines,
        "flags": data.n,
        "classes": 7,
        "valencies": list(tensor.eta),
        "tensor_matches_table": table_match,
        "noncommutativity": {
            "p_1_45": int(tensor.p[1, 4, 5]),
            "p_1_54": int(tensor.p[1, 5, 4]),
        },
        "parabolics": [sorted(p.classes) for p in parabolics],
        "nontrivial_parabolics": [sorted(p.classes) for p in nontrivial],
        "quotients": [
            {
                "parabolic": sorted(p.classes),
                "blocks": nb,
                "relation1_srg": list(srg) if srg else None,
            }
            for p, nb, srg in quotients
        ],
        "duality_map_ok": duality.ok,
        "thin": thin,
        "dihedral_order8": bool(dihedral) if thin else None,
    }

    if args.scheme_out:
        save_scheme_file(args.scheme_out, data.relation, 7, flags=data.flags)
    if args.fused_scheme_out:
        part = IndexPartition(7, tuple(frozenset(b) for b in FUSION_BLOCKS[1:]))
        fused = fuse(data.relation, part, tensor)
        save_scheme_file(args.fused_scheme_out, fused, 4, flags=data.flags)
    if args.tensor_csv:
        with open(args.tensor_csv, "w", encoding="utf-8") as fh:
            fh.write("k,i,j,p\n")
            for k in range(8):
                for i in range(8):
                    for j in range(8):
                        fh.write(f"{k},{i},{j},{int(tensor.p[k, i, j])}\n")
    if args.valency_csv:
        with open(args.valency_csv, "w", encoding="utf-8") as fh:
            fh.write("i,eta\n")
            for i, v in enumerate(tensor.eta):
                fh.write(f"{i},{v}\n")

    if args.format == "json":
        _write_or_print(json.dumps(report, indent=1) + "\n", args.out)
    else:
        lines = [
            f"structure: {args.structure}",
            f"order: s={s} t={t}",
            f"points: {structure.num_points} lines: {structure.num_lines} flags: {data.n}",
            "valencies: " + " ".join(str(v) for v in tensor.eta),
            f"tensor-vs-table: {'MATCH' if table_match else 'MISMATCH'} at (s,t)=({s},{t})",
            f"noncommutativity: p[1][4][5]={int(tensor.p[1, 4, 5])} "
            f"p[1][5][4]={int(tensor.p[1, 5, 4])}",
            "parabolics: " + " ".join(_render_parabolic(p) for p in parabolics),
            "nontrivial parabolics: "
            + (" ".join(_render_parabolic(p) for p in nontrivial) or "none"),
        ]
        for p, nb, srg in quotients:
            srg_txt = f"SRG{srg}" if srg else "not strongly regular"
            lines.append(
                f"quotient mod {_render_parabolic(p)}: {nb} blocks, relation-1 {srg_txt}"
            )
        lines.append(f"duality-map: {'pass' if duality.ok else 'FAIL'}")
        if thin:
            lines.append(
                "thin: yes, complex-product group of order 8 is "
                + ("dihedral" if dihedral else "NOT dihedral")
            )
        else:
            lines.append("thin: no")
        _write_or_print("\n".join(lines) + "\n", args.out)

    if not table_match or not duality.ok:
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_fusions(args) -> int:
    rows = []
    if args.numeric:
        s, t = args.numeric
        if (s, t) == (1, 1):
            print(
                "refusing (s,t)=(1,1): the thin scheme is a group and is "
                "handled by the scheme command, not the fusion scan",
                file=sys.stderr,
            )
            return EXIT_USAGE
        if s < 1 or t < 1:
            print("parameters must be >= 1", file=sys.stderr)
            return EXIT_USAGE
        tensor = tensor_from_polys(s, t)
        for part in enumerate_fusions(tensor):
            rows.append((part.render(), classify_partition(part).render()))
        header = f"fusions at (s,t)=({s},{t}): {len(rows)}"
    else:
        for blocks in set_partitions(range(1, 8)):
            if not 2 <= len(blocks) <= 6:
                continue
            part = IndexPartition(7, tuple(frozenset(b) for b in blocks))
            if not part.satisfies_star_rule():
                continue
            cond = classify_partition(part)
            if cond.tag is not FeasibilityTag.NEVER:
                rows.append((part.render(), cond.render()))
        header = f"feasible fusion partitions: {len(rows)}"

    rows.sort()
    csv = "partition,condition\n" + "".join(f"{p},{c}\n" for p, c in rows)
    _write_or_print(csv, args.out)
    if args.out:
        print(header + f" -> {args.out}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    relation, d, _flags = load_scheme_file(args.scheme)
    if d != args.classes:
        print(
            f"scheme file declares d={d} but --classes {args.classes} was requested",
            file=sys.stderr,
        )
        return EXIT_USAGE

    cert = [f"input: {args.scheme}", f"classes: {d}", f"vertices: {relation.shape[0]}"]
    if args.scramble is not None:
        scrambled = scramble_scheme(relation, d, args.scramble)
        relation = scrambled.relation
        cert.append(f"scramble seed: {args.scramble}")
        cert.append(f"class relabeling applied: {list(scrambled.class_perm)}")
    else:
        cert.append("scramble seed: none")

    if args.classes == 7:
        canonical = relabel_to_canonical(relation)
        structure = reconstruct_from_7class(canonical)
        order = verify_gq(structure)
        cert += [
            f"inferred order: s={order.s} t={order.t}",
            f"points: {structure.num_points}",
            f"lines: {structure.num_lines}",
            "gq-axioms: pass",
        ]
    else:
        canonical = canonicalize_4class(relation)
        recon = reconstruct_from_4class(canonical)
        structure = recon.structure
        qm = check_unique_qm(canonical, recon)
        cert += [
            f"inferred order: s={recon.s} t={recon.s}",
            f"points: {structure.num_points}",
            f"lines: {structure.num_lines}",
            f"cliques: {len(recon.cover.cliques)}",
            "level sizes: " + " ".join(str(v) for v in recon.levels.sizes),
            "gq-axioms: pass",
            f"unique-connecting-flag: {'pass' if qm.ok else 'FAIL ' + qm.detail}",
        ]
        if not qm.ok:
            _write_or_print("\n".join(cert) + "\n", args.certificate)
            return EXIT_VERIFICATION

    if args.out:
        save_structure(structure, args.out)
        cert.append(f"structure written: {args.out}")
    _write_or_print("\n".join(cert) + "\n", args.certificate)
    return EXIT_OK


def _selftest_table_cross_validation() -> list:
    checks = []
    cases = [
        ("grid(2) vs table at (2,1)", build_grid(2), 2, 1),
        ("dual-grid(2) vs table at (1,2)", dualize(build_grid(2)), 1, 2),
        ("W(2) vs table at (2,2)", build_symplectic(2), 2, 2),
    ]
    for label, structure, s, t in cases:
        data = build_flag_scheme(structure)
        tensor = verify_scheme(data.relation, 7)
        ok = bool(np.array_equal(tensor.p, tensor_from_polys(s, t).p))
        checks.append((label, ok))

    # fused table must equal blockwise sums of the 7-class table at t = s
    ok = True
    blocks = [set(b) for b in FUSION_BLOCKS]
    for k in range(5):
        for i in range(5):
            for j in range(5):
                total = None
                for kk in sorted(blocks[k]):
                    acc = None
                    for ii in sorted(blocks[i]):
                        for jj in sorted(blocks[j]):
                            term = p_poly(kk, ii, jj).subs_t_to_s()
                            acc = term if acc is None else acc + term
                    if total is None:
                        total = acc
                    elif acc != total:
                        ok = False
                if total != fused_p_poly(k, i, j):
                    ok = False
    checks.append(("fused table vs blockwise sums of the 7-class table", ok))

    from .fusions import fuse  # local import to keep module deps one-way

    data = build_flag_scheme(build_symplectic(2))
    part = IndexPartition(7, tuple(frozenset(b) for b in FUSION_BLOCKS[1:]))
    fused = fuse(data.relation, part)
    tensor = verify_scheme(fused, 4)
    checks.append(
        (
            "fused W(2) vs fused table at s=2",
            bool(np.array_equal(tensor.p, fused_tensor_from_polys(2).p)),
        )
    )
    return checks


def cmd_selftest(_args) -> int:
    failures = 0

    def run(label, fn):
        nonlocal failures
        try:
            fn()
        except GqflagsError as exc:
            print(f"FAIL {label}: {exc}")
            failures += 1
            return
        print(f"PASS {label}")

    run("identity sweep over the closed-form table", verify_identities)
    run("triplet-group orbits and transport scalings", verify_triplet_orbits)
    for label, ok in _selftest_table_cross_validation():
        if ok:
            print(f"PASS {label}")
        else:
            print(f"FAIL {label}")
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gqflags",
        description="flag association schemes of finite generalized quadrangles",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a quadrangle and save it as JSON")
    p_build.add_argument("kind", choices=["grid", "dual-grid", "symplectic"])
    p_build.add_argument("param", type=int, help="grid side parameter s, or prime q")
    p_build.add_argument("--out", "-o", required=True, help="output JSON path")
    p_build.set_defaults(func=cmd_build)

    p_scheme = sub.add_parser("scheme", help="flag scheme pipeline with verification report")
    p_scheme.add_argument("structure", help="structure JSON file")
    p_scheme.add_argument("--out", "-o", help="report path (default stdout)")
    p_scheme.add_argument("--format", choices=["text", "json"], default="text")
    p_scheme.add_argument("--scheme-out", help="write the scheme matrix file here")
    p_scheme.add_argument(
        "--fused-scheme-out",
        help="write the 4-class fused scheme matrix file (needs s = t)",
    )
    p_scheme.add_argument("--tensor-csv", help="write tensor rows k,i,j,p here")
    p_scheme.add_argument("--valency-csv", help="write valency rows i,eta here")
    p_scheme.set_defaults(func=cmd_scheme)

    p_fus = sub.add_parser("fusions", help="enumerate or classify fusions")
    mode = p_fus.add_mutually_exclusive_group(required=True)
    mode.add_argument("--numeric", nargs=2, type=int, metavar=("S", "T"))
    mode.add_argument("--symbolic", action="store_true")
    p_fus.add_argument("--out", "-o", help="CSV path (default stdout)")
    p_fus.set_defaults(func=cmd_fusions)

    p_rec = sub.add_parser("reconstruct", help="rebuild a quadrangle from scheme data")
    p_rec.add_argument("scheme", help="scheme matrix file")
    p_rec.add_argument("--classes", type=int, choices=[7, 4], required=True)
    p_rec.add_argument("--scramble", type=int, metavar="SEED",
                       help="permute vertices and relabel classes first")
    p_rec.add_argument("--out", "-o", help="output structure JSON")
    p_rec.add_argument("--certificate", help="certificate path (default stdout)")
    p_rec.set_defaults(func=cmd_reconstruct)

    p_self = sub.add_parser("selftest", help="table identities, orbits, cross-validation")
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CompositeParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GqflagsError as exc:
        witness = getattr(exc, "witness", None)
        suffix = f" (witness: {witness})" if witness is not None else ""
        print(f"verification failure: {exc}{suffix}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
