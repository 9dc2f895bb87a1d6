"""Command-line interface: ``analyze``, ``census`` and ``verify-cor5``.

Exit codes: 0 success (whatever the integrality verdict), 1 non-integral
under ``--expect-integral``, 2 parse/usage error, 3 size cap exceeded,
4 internal verification failure, 5 I/O failure.

Caps default to the library values and can be overridden with the
environment variables ``CAYLEYSPEC_ORDER_CAP``, ``CAYLEYSPEC_ORACLE_CAP``
and ``CAYLEYSPEC_MAX_BLOCKS``; command-line flags take precedence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .characters import central_characters
from .classalgebra import (
    ClassData,
    StructureConstants,
    conjugacy_classes,
    power_class_map,
    structure_constants,
)
from .errors import CapExceededError, CayleySpecError, ParseError, VerificationError
from .groupalgebra import verify_cor5_identity
from .permgroup import DEFAULT_ORDER_CAP, GroupTable, parse_group_spec
from .spectra import (
    DEFAULT_ORACLE_CAP,
    DEFAULT_TOL,
    SpectrumReport,
    adjacency_matrix,
    certify_integrality,
    check_report,
    components_report,
    spectrum_direct,
)
from .subsets import analyze_subset, coprime_exponents, generated_subgroup, resolve_set_spec

DEFAULT_MAX_BLOCKS = 16
EXIT_NOT_INTEGRAL = 1
EXIT_USAGE = 2
EXIT_IO = 5


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"environment variable {name}={raw!r} is not an integer") from None


def _group_info(G: GroupTable, C: ClassData) -> dict[str, Any]:
    return {
        "spec": G.spec,
        "degree": G.degree,
        "order": G.order,
        "class_count": C.count,
        "class_sizes": list(C.sizes),
    }


def _fmt_value(v: float) -> str:
    return f"{v:.12f}"


def spectrum_to_json(report: SpectrumReport) -> list[dict[str, Any]]:
    exact = report.certified and report.integral
    out = []
    for v, m in report.pairs:
        if exact:
            out.append({"value": int(v), "mult": int(m)})
        else:
            out.append({"value": _fmt_value(float(v)), "mult": int(m), "residual": float(abs(v - round(v)))})
    return out


def verdict_to_json(report: SpectrumReport) -> dict[str, Any]:
    return {
        "method": report.method,
        "certified": bool(report.certified),
        "integral": bool(report.integral),
        "residual": float(report.residual),
        "charpoly": str(report.charpoly) if report.charpoly is not None else None,
    }


@dataclass
class AnalysisReport:
    group: dict[str, Any]
    set: dict[str, Any]
    flags: dict[str, Any]
    components: dict[str, Any]
    spectrum: SpectrumReport
    cross_check: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        check_report(
            self.spectrum, self.group["order"], self.set["size"], self.components["count"]
        )
        return {
            "group": self.group,
            "set": self.set,
            "flags": self.flags,
            "components": self.components,
            "spectrum": spectrum_to_json(self.spectrum),
            "verdict": verdict_to_json(self.spectrum),
            "cross_check": self.cross_check,
        }

    def to_text(self) -> str:
        g, s, f, c, x = self.group, self.set, self.flags, self.components, self.cross_check
        sp = self.spectrum
        lines = [
            f"group      {g['spec']}  degree={g['degree']}  order={g['order']}  classes={g['class_count']}",
            f"set        {s['spec']}  size={s['size']}  orders={_profile_text(s['order_profile'])}",
            "flags      " + "  ".join(
                f"{k}={'yes' if f[k] else 'no'}" for k in ("symmetric", "normal", "euler")
            ),
            f"components count={c['count']}  size={c['size']}  lemma_check={c['lemma_check']}",
            f"verdict    {'INTEGRAL' if sp.integral else 'NOT INTEGRAL'}  "
            f"({'certified' if sp.certified else 'numeric'}, {sp.method}, residual={sp.residual:.3g})",
        ]
        if sp.charpoly is not None:
            lines.append(f"charpoly   {sp.charpoly}")
        if x["oracle_ran"]:
            lines.append(f"oracle     max_discrepancy={x['max_discrepancy']:.3g}")
        lines.append(f"{'eigenvalue':>20}  {'mult':>6}")
        for v, m in sp.pairs:
            shown = str(v) if isinstance(v, (int, np.integer)) else _fmt_value(float(v))
            lines.append(f"{shown:>20}  {m:>6}")
        return "\n".join(lines) + "\n"


def _profile_text(profile: dict) -> str:
    return ",".join(f"{k}:{v}" for k, v in profile.items()) or "-"


def _context(group_spec: str, order_cap: int) -> tuple[GroupTable, ClassData, StructureConstants]:
    G = parse_group_spec(group_spec, order_cap)
    C = conjugacy_classes(G)
    return G, C, structure_constants(G, C)


def cmd_analyze(
    group_spec: str,
    set_spec: str,
    *,
    tol: float = DEFAULT_TOL,
    order_cap: int = DEFAULT_ORDER_CAP,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    oracle: bool = True,
) -> AnalysisReport:
    G, C, A = _context(group_spec, order_cap)
    S = resolve_set_spec(set_spec, G, C)
    flags = analyze_subset(G, C, S)
    if not S:
        raise ParseError(f"set {set_spec!r} is empty")
    if not flags.excludes_identity:
        raise ParseError(f"set {set_spec!r} contains the identity")
    if not flags.symmetric:
        raise ParseError(f"set {set_spec!r} is not symmetric")

    spectrum = certify_integrality(G, C, A, S, tol=tol, oracle_cap=oracle_cap)
    comp = components_report(G, S, C, tol=tol, oracle_cap=oracle_cap, order_cap=order_cap)
    if comp.lemma_check is False:
        raise VerificationError("component structure contradicts the component lemma")
    check_report(spectrum, G.order, len(S), comp.count, tol)

    cross = {"oracle_ran": False, "max_discrepancy": None}
    if oracle and flags.normal and G.order <= oracle_cap:
        direct = spectrum_direct(adjacency_matrix(G, S, oracle_cap), tol)
        check_report(direct, G.order, len(S), comp.count, tol)
        gap = float(np.max(np.abs(spectrum.expanded() - direct.expanded())))
        if gap > tol:
            raise VerificationError(f"character and direct spectra differ by {gap:.3g}")
        cross = {"oracle_ran": True, "max_discrepancy": gap}

    return AnalysisReport(
        group=_group_info(G, C),
        set={"spec": set_spec, "size": len(S), "order_profile": {str(k): v for k, v in flags.order_profile.items()}},
        flags={
            "size": flags.size,
            "excludes_identity": flags.excludes_identity,
            "symmetric": flags.symmetric,
            "normal": flags.normal,
            "euler": flags.euler,
            "class_indices": sorted(flags.class_indices) if flags.class_indices is not None else None,
        },
        components={"count": comp.count, "size": comp.size, "lemma_check": comp.lemma_check},
        spectrum=spectrum,
        cross_check=cross,
    )


@dataclass
class CensusRow:
    class_index_set: tuple[int, ...]
    set_size: int
    symmetric: bool
    euler: bool
    integral: bool
    certified: bool
    normal: bool = True
    spectrum: SpectrumReport | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "class_index_set": list(self.class_index_set),
            "set_size": self.set_size,
            "normal": self.normal,
            "symmetric": self.symmetric,
            "euler": self.euler,
            "integral": self.integral,
            "certified": self.certified,
        }


@dataclass
class CensusReport:
    group: dict[str, Any]
    rows: list[CensusRow]
    skipped_nonsymmetric: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "rows": [r.to_dict() for r in self.rows],
            "skipped_nonsymmetric": self.skipped_nonsymmetric,
            "violations": 0,
        }

    def to_text(self) -> str:
        g = self.group
        lines = [
            f"census of {g['spec']}  order={g['order']}  classes={g['class_count']}  "
            f"sizes={','.join(map(str, g['class_sizes']))}",
            f"{'classes':<28}{'size':>7}{'euler':>7}{'integral':>10}{'certified':>11}",
        ]
        for r in self.rows:
            cls = "{" + ",".join(map(str, r.class_index_set)) + "}"
            lines.append(
                f"{cls:<28}{r.set_size:>7}{_yn(r.euler):>7}{_yn(r.integral):>10}{_yn(r.certified):>11}"
            )
        n_int = sum(r.integral for r in self.rows)
        n_eul = sum(r.euler for r in self.rows)
        lines.append(
            f"rows={len(self.rows)}  integral={n_int}  euler={n_eul}  "
            f"skipped_nonsymmetric={self.skipped_nonsymmetric}  violations=0"
        )
        return "\n".join(lines) + "\n"


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def inversion_blocks(C: ClassData) -> list[tuple[int, ...]]:
    """Non-identity classes grouped as ``{i, inverse(i)}``."""
    blocks = []
    seen: set[int] = set()
    for i in range(1, C.count):
        if i in seen:
            continue
        j = C.inverse_class[i]
        block = tuple(sorted({i, j}))
        seen.update(block)
        blocks.append(block)
    return blocks


def census(
    G: GroupTable,
    C: ClassData,
    A: StructureConstants,
    *,
    max_blocks: int = DEFAULT_MAX_BLOCKS,
    tol: float = DEFAULT_TOL,
) -> CensusReport:
    """Certify every nonempty inversion-closed union of non-identity classes.

    A normal Euler set whose graph is not integral is a violation
    and raises :class:`VerificationError`.
    """
    blocks = inversion_blocks(C)
    if len(blocks) > max_blocks:
        raise CapExceededError(f"{len(blocks)} inversion blocks exceed the limit {max_blocks}")
    table = central_characters(G, C, A)
    orders = G.element_orders()
    euler_needs = [
        frozenset(power_class_map(G, C, i, k) for k in coprime_exponents(orders[C.reps[i]]))
        for i in range(C.count)
    ]
    rows = []
    for mask in range(1, 1 << len(blocks)):
        classes = sorted(c for b, block in enumerate(blocks) if mask >> b & 1 for c in block)
        S = C.union(classes)
        cls_set = set(classes)
        euler = all(euler_needs[i] <= cls_set for i in classes)
        report = certify_integrality(G, C, A, S, table=table, tol=tol)
        components = G.order // len(generated_subgroup(G, S))
        check_report(report, G.order, len(S), components, tol)
        if euler and not report.integral:
            raise VerificationError(
                f"normal Euler set with classes {classes} in {G.spec} is not integral"
            )
        rows.append(
            CensusRow(
                class_index_set=tuple(classes),
                set_size=len(S),
                symmetric=True,
                euler=euler,
                integral=bool(report.integral),
                certified=bool(report.certified),
                spectrum=report,
            )
        )
    all_unions = (1 << (C.count - 1)) - 1
    return CensusReport(
        group=_group_info(G, C),
        rows=rows,
        skipped_nonsymmetric=all_unions - len(rows),
    )


def cmd_census(
    group_spec: str,
    *,
    max_blocks: int = DEFAULT_MAX_BLOCKS,
    order_cap: int = DEFAULT_ORDER_CAP,
    tol: float = DEFAULT_TOL,
) -> CensusReport:
    G, C, A = _context(group_spec, order_cap)
    return census(G, C, A, max_blocks=max_blocks, tol=tol)


def to_json(data: dict[str, Any]) -> str:
    return json.dumps(data, indent=2) + "\n"


def write_report(report, fmt: str = "text", path: str | None = None) -> None:
    """Write ``report`` as ``text`` or ``json`` to ``path`` (``None`` or ``-``
    means stdout)."""
    if fmt == "json":
        payload = to_json(report.to_dict())
    elif fmt == "text":
        payload = report.to_text()
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is None or path == "-":
        sys.stdout.write(payload)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleyspec",
        description="Decide and certify integrality of Cayley graphs of permutation groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one (group, connection set) pair")
    p.add_argument("--group", required=True, help="sym:N | alt:N | dih:N | cyc:N | gens:<cycles>,...[@degree]")
    p.add_argument("--set", required=True, dest="set_spec", help="connection set spec, e.g. transpositions")
    p.add_argument("--json", metavar="PATH", help="also write the report as JSON ('-' for stdout)")
    p.add_argument("--no-oracle", action="store_true", help="skip the dense-matrix cross-check")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numeric tolerance (default %(default)g)")
    p.add_argument("--order-cap", type=int, help="largest group order to enumerate")
    p.add_argument("--oracle-cap", type=int, help="largest order for a dense adjacency matrix")
    p.add_argument("--expect-integral", action="store_true", help="exit 1 if the graph is not integral")

    p = sub.add_parser("census", help="certify every inversion-closed union of classes")
    p.add_argument("--group", required=True, help="group spec, as for analyze")
    p.add_argument("--json", metavar="PATH", help="also write the report as JSON ('-' for stdout)")
    p.add_argument("--max-blocks", type=int, help="refuse more than this many inversion blocks")
    p.add_argument("--order-cap", type=int, help="largest group order to enumerate")

    p = sub.add_parser("verify-cor5", help="check a = d(b - c - d) in the group algebra of S_n")
    p.add_argument("--n", type=int, required=True, help="degree, at least 3")
    p.add_argument("--order-cap", type=int, help="largest group order to enumerate")
    return parser


def _run(args: argparse.Namespace) -> int:
    order_cap = args.order_cap or _env_int("CAYLEYSPEC_ORDER_CAP", DEFAULT_ORDER_CAP)
    if args.command == "analyze":
        oracle_cap = args.oracle_cap or _env_int("CAYLEYSPEC_ORACLE_CAP", DEFAULT_ORACLE_CAP)
        report = cmd_analyze(
            args.group,
            args.set_spec,
            tol=args.tol,
            order_cap=order_cap,
            oracle_cap=oracle_cap,
            oracle=not args.no_oracle,
        )
        if args.json != "-":
            write_report(report, "text")
        if args.json:
            write_report(report, "json", args.json)
        if args.expect_integral and not report.spectrum.integral:
            return EXIT_NOT_INTEGRAL
        return 0
    if args.command == "census":
        max_blocks = args.max_blocks or _env_int("CAYLEYSPEC_MAX_BLOCKS", DEFAULT_MAX_BLOCKS)
        report = cmd_census(args.group, max_blocks=max_blocks, order_cap=order_cap)
        if args.json != "-":
            write_report(report, "text")
        if args.json:
            write_report(report, "json", args.json)
        return 0
    ok = verify_cor5_identity(args.n, order_cap)
    print(f"n={args.n}  a = d(b - c - d) and [c,d] = [b,c] = [b,d] = 0: {'holds' if ok else 'FAILS'}")
    return 0 if ok else VerificationError.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except CayleySpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
