"""Command-line interface.

Exit codes: 0 = the matrix factors at its rank (rank 2 achieved, or rank
<= 1), 1 = rank 2 but nonnegative integer rank > 2, 2 = usage or input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .diagram import build_diagram, canonicalize
from .instances import GenSpec, gen_bt, gen_near_t, gen_product
from .matrixio import format_matrix, load_matrix, write_matrix
from .oracle import brute_force
from .reduction import ReductionTrace, reduce_to_3x3
from .solver import NOT_RANK2, RANK2, RANK_LE_1, SolveOutcome, solve


def _mat_rows(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(M, dtype=object)]


def _print_matrix(label: str, M) -> None:
    print(f"{label}:")
    sys.stdout.write(format_matrix(M))


def _factor_json(out: SolveOutcome, explain: bool) -> dict:
    doc = {
        "verdict": out.verdict,
        "F1": None,
        "F2": None,
        "generators": None,
        "pairs_examined": out.pairs_examined,
    }
    if out.verdict == RANK2:
        cert = out.certificate
        doc["F1"] = _mat_rows(cert.F1)
        doc["F2"] = _mat_rows(cert.F2)
        doc["generators"] = [list(cert.pair.a), list(cert.pair.b)]
    elif out.verdict == RANK_LE_1:
        F1, F2 = out.rank1_factors
        doc["F1"] = _mat_rows(F1)
        doc["F2"] = _mat_rows(F2)
    if explain and out.rejections is not None:
        doc["rejections"] = [
            {
                "a": list(rej.pair.a),
                "b": list(rej.pair.b),
                "index": rej.index,
                "w": [str(rej.coeffs[0]), str(rej.coeffs[1])],
            }
            for rej in out.rejections
        ]
    return doc


def _print_rejections(out: SolveOutcome) -> None:
    for rej in out.rejections or []:
        w0, w1 = rej.coeffs
        print(
            f"rejected a={rej.pair.a} b={rej.pair.b}: "
            f"point {rej.index} has coefficients ({w0}, {w1})"
        )


def cmd_factor(args) -> int:
    A = load_matrix(args.input)
    out = solve(A, r=args.r, collect_rejections=args.explain)
    if args.json:
        print(json.dumps(_factor_json(out, args.explain)))
    else:
        print(f"verdict: {out.verdict}")
        print(f"pairs_examined: {out.pairs_examined}")
        if out.verdict == RANK2:
            cert = out.certificate
            print(f"generators: a={cert.pair.a} b={cert.pair.b}")
            _print_matrix("F1", cert.F1)
            _print_matrix("F2", cert.F2)
        elif out.verdict == RANK_LE_1:
            F1, F2 = out.rank1_factors
            _print_matrix("F1", F1)
            _print_matrix("F2", F2)
        if args.explain:
            _print_rejections(out)
    return 1 if out.verdict == NOT_RANK2 else 0


def _trace_lines(trace: ReductionTrace) -> list[str]:
    lines = []
    for idx, st in enumerate(trace.stages, start=1):
        lines.append(
            f"stage {idx}: vanishing rows {st.row_choices}, "
            f"b1 coords {st.b1_coords}, bezout {st.bezout}, "
            f"shifts {st.shift_multipliers}, primitivized {st.primitivized}"
        )
        lines.append(
            f"stage {idx} row-lattice basis: {list(st.basis[0])} / {list(st.basis[1])}"
        )
    return lines


def cmd_reduce(args) -> int:
    A = load_matrix(args.input)
    C, trace = reduce_to_3x3(A)
    comments = _trace_lines(trace) if args.trace else None
    if args.output:
        write_matrix(args.output, C, comments=comments)
    else:
        sys.stdout.write(format_matrix(C))
        for line in comments or []:
            print(f"# {line}")
    return 0


def cmd_generate(args) -> int:
    spec = GenSpec(
        kind=args.kind,
        rows=args.rows,
        cols=args.cols,
        sigma=args.sigma,
        t=args.t,
        seed=args.seed,
    )
    spec.validate()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        # instance i draws from an independent stream derived from (seed, i)
        if spec.kind == "product":
            _, _, A = gen_product(
                spec.rows, spec.cols, spec.sigma, seed=[spec.seed, i]
            )
        elif spec.kind == "near_t":
            A = gen_near_t(spec.t, seed=[spec.seed, i])
        else:
            A = gen_bt(spec.t)
        path = outdir / f"{spec.kind}_{spec.seed}_{i}.txt"
        write_matrix(path, A)
        print(path)
    return 0


def _int_list(text: str | None) -> list[int] | None:
    if not text:
        return None
    return [int(tok) for tok in text.split(",") if tok.strip()]


def cmd_bench(args) -> int:
    if args.suite == "table1":
        records = bench.run_table1(
            count=args.count,
            seed=args.seed,
            ns=_int_list(args.n),
            sigmas=_int_list(args.sigma),
        )
        csv_text = bench.records_to_csv(records)
    elif args.suite == "table2":
        records = bench.run_table2(
            count=args.count,
            seed=args.seed,
            ns=_int_list(args.n),
            sigmas=_int_list(args.sigma),
        )
        csv_text = bench.records_to_csv(records, with_reduce=True)
    elif args.suite == "bt":
        records = bench.run_bt(tmax=args.tmax)
        csv_text = bench.records_to_csv(records)
    else:
        records = bench.run_near_t(count=args.count, seed=args.seed)
        csv_text = bench.records_to_csv(records)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    return 0


def _diagram_doc(args, A) -> tuple[dict, list[str]]:
    d = build_diagram(A)
    doc: dict = {}
    lines: list[str] = []
    if args.canonical:
        cd = canonicalize(d, args.r)
        d = cd.diagram
    doc["basis"] = _mat_rows(d.basis)
    doc["points"] = [list(p) for p in d.points]
    doc["cone"] = [list(g) for g in d.cone_gens]
    lines.append("basis:")
    lines.append(format_matrix(d.basis).rstrip("\n"))
    lines.append("points:")
    lines.extend(f"{p[0]} {p[1]}" for p in d.points)
    lines.append("cone:")
    lines.extend(f"{g[0]} {g[1]}" for g in d.cone_gens)
    if args.canonical:
        doc["transform"] = _mat_rows(cd.transform)
        doc["canon_index"] = cd.canon_index
        lines.append("transform:")
        lines.append(format_matrix(cd.transform).rstrip("\n"))
        lines.append(f"canon_index: {cd.canon_index}")
    return doc, lines


def cmd_diagram(args) -> int:
    A = load_matrix(args.input)
    doc, lines = _diagram_doc(args, A)
    if args.json:
        print(json.dumps(doc))
    else:
        print("\n".join(lines))
    return 0


def cmd_oracle(args) -> int:
    A = load_matrix(args.input)
    cd = canonicalize(build_diagram(A), 1)
    verdict = brute_force(cd)
    if verdict.rank2:
        witness = verdict.witness
        print(
            "verdict: rank2"
            + (f" witness: a={witness.a} b={witness.b}" if witness else "")
        )
        print(f"pairs_enumerated: {verdict.pairs_enumerated}")
        return 0
    print("verdict: not_rank2")
    print(f"pairs_enumerated: {verdict.pairs_enumerated}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nnirank2",
        description=(
            "Decide whether a rank-2 nonnegative integer matrix is a product "
            "of two nonnegative integer matrices with inner dimension 2, "
            "produce the factorization, and reduce instances to 3x3."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="decide and factor a matrix file")
    p.add_argument("input", help="matrix text file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--r", type=int, choices=(1, 2), default=1, help="canonization index")
    p.add_argument("--explain", action="store_true", help="print the first failing point per rejected pair")
    p.set_defaults(fn=cmd_factor)

    p = sub.add_parser("reduce", help="write the equivalent 3x3 instance")
    p.add_argument("input")
    p.add_argument("--trace", action="store_true", help="append the construction trace")
    p.add_argument("--output", help="write to a file instead of stdout")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("generate", help="write seeded random instances")
    p.add_argument("--kind", choices=("product", "bt", "near_t"), required=True)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--sigma", type=float, default=3.0)
    p.add_argument("--t", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--outdir", default=".")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("bench", help="run a benchmark suite, emit CSV")
    p.add_argument("--suite", choices=("table1", "table2", "bt", "near_t"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100, help="instances per cell")
    p.add_argument("--tmax", type=int, default=100, help="largest t for the bt suite")
    p.add_argument("--n", help="comma list restricting the n grid")
    p.add_argument("--sigma", help="comma list restricting the sigma grid")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("diagram", help="emit the plane diagram of a matrix")
    p.add_argument("input")
    p.add_argument("--canonical", action="store_true", help="emit the canonical form and transform")
    p.add_argument("--r", type=int, choices=(1, 2), default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_diagram)

    p = sub.add_parser("oracle", help="brute-force cross-check for small instances")
    p.add_argument("input")
    p.set_defaults(fn=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
