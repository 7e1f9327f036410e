"""``mac-kit``: command-line front end.

Commands: ``betti``, ``ring``, ``cap``, ``manifold``, ``kj``.  Every command
works on ``(D¹,S⁰)^{K(J)}`` for the complex in ``--input`` and the tuple
``--J`` (default all ones).  ``--input`` also accepts ``@name`` for a
catalog complex.  Exit codes: 0 ok, 2 parse/input error, 3 resource cap,
4 invariant violation, 1 anything else from the engine.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import CATALOG
from .cells import CHAIN, COCHAIN, boundary, coboundary, omega_contributions, word_basis, word_decomposition
from .complex import SimplicialComplex, blocks, check_j, format_complex, kj_construction, parse_complex
from .dga import DgaAlgebra, decomposition, eta_representatives, ring_product_table
from .errors import InputError, InvariantViolation, MacKitError, ParseError
from .expressions import parse_dga_expression, parse_word_expression
from .homology import ClassVector, HomologyGroup, direct_sum, reduced_homology_all_subsets
from .manifold import manifold_verdict
from .products import fundamental_class, word_cap
from .snf import smith_decomposition

FORMATS = ("text", "json")


@dataclass
class RunConfig:
    command: str
    input: str
    J: tuple[int, ...] | None = None
    cap: int = 16
    format: str = "text"
    parallel: int = 1
    triples: list[tuple[tuple[int, ...], ...]] = field(default_factory=list)
    elements: list[str] = field(default_factory=list)
    cochain: str | None = None
    chain: str | None = None
    equals: str | None = None
    spot_check: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.cap <= 0 or self.parallel <= 0:
            raise InputError("caps and parallel width must be positive")
        if self.format not in FORMATS:
            raise InputError(f"unknown format {self.format!r}")


def load_complex(source: str) -> SimplicialComplex:
    if source.startswith("@"):
        name = source[1:]
        if name not in CATALOG:
            raise InputError(f"unknown catalog complex {name!r}; known: {', '.join(sorted(CATALOG))}")
        return CATALOG[name]()
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    return parse_complex(text)


def parse_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _space(cfg: RunConfig):
    K = load_complex(cfg.input)
    J = check_j(cfg.J if cfg.J is not None else (1,) * K.m, K.m)
    KJ = K if all(j == 1 for j in J) else kj_construction(K, J)
    return K, J, KJ


def _complex_json(K: SimplicialComplex) -> dict:
    return {"m": K.m, "facets": [list(f) for f in K.facets]}


# -- commands ---------------------------------------------------------------

def cmd_betti(cfg: RunConfig) -> dict:
    K, J, KJ = _space(cfg)
    rows = omega_contributions(KJ, cap=cfg.cap, workers=cfg.parallel)
    top = KJ.dim + 1
    pieces: list[list[HomologyGroup]] = [[] for _ in range(top + 1)]
    for _, p, g in rows:
        pieces[p].append(g)
    groups = [direct_sum(x) for x in pieces]
    return {
        "command": "betti",
        "complex": _complex_json(K),
        "J": list(J),
        "betti": [g.rank for g in groups],
        "homology": [g.as_json() for g in groups],
        "contributions": [{"omega": list(w), "degree": p, "group": str(g)} for w, p, g in rows],
    }


def _solve_unimodular(M: list[list[int]], c: list[int]) -> list[int] | None:
    """``x`` with ``x M = c`` for square unimodular ``M``."""
    n = len(M)
    sd = smith_decomposition(M, n, n)
    if sd.rank != n or any(d != 1 for d in sd.diagonal):
        return None
    # U M V = I  =>  M^{-1} = V U
    VU = [[sum(sd.V[i][k] * sd.U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [sum(c[i] * VU[i][j] for i in range(n)) for j in range(n)]


def _express(cls: ClassVector, basis: dict, names: list[str]) -> str:
    """Write a class in terms of the chosen representatives (free part)."""
    if cls.is_zero:
        return "0"
    terms = []
    for (label, p), (free, tors, _) in cls.parts:
        slot = basis.get((label, p))
        if slot is None:
            return "class " + repr(cls.parts)
        idx, M = slot
        x = _solve_unimodular(M, list(free)) if free else []
        if x is None:
            return "class " + repr(cls.parts)
        for k, coef in zip(idx, x):
            if coef:
                terms.append((coef, names[k]))
        if any(tors):
            terms.append((1, f"torsion{list(tors)}@{list(label)}"))
    out = []
    for coef, name in terms:
        mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
        out.append(("-" if coef < 0 else "+") + mag + name)
    text = " ".join(out)
    return text[1:] if text.startswith("+") else text


def cmd_ring(cfg: RunConfig) -> dict:
    K, J, _ = _space(cfg)
    alg = DgaAlgebra.of(K, J)
    dec = decomposition(alg)
    # representatives via eta_J; they also serve as the basis for naming products
    basis_reps, basis_names, basis_omegas = [], [], []
    for omega in reduced_homology_all_subsets(K, cap=cfg.cap, workers=cfg.parallel):
        for _, x in eta_representatives(K, J, omega):
            basis_reps.append(x)
            basis_names.append(f"c{len(basis_reps)}")
            basis_omegas.append(omega)
    if cfg.elements:
        reps = [parse_dga_expression(text, K, J) for text in cfg.elements]
        names = [f"x{k + 1}" for k in range(len(reps))]
        omegas = [None] * len(reps)
    else:
        reps, names, omegas = basis_reps, basis_names, basis_omegas
    basis: dict = {}
    for k, x in enumerate(basis_reps):
        cls = dec.class_of(x.terms)
        for key, (free, _, _) in cls.parts:
            if any(free):
                basis.setdefault(key, ([], []))
                basis[key][0].append(k)
                basis[key][1].append(list(free))
    basis = {key: (idx, M) for key, (idx, M) in basis.items() if len(idx) == len(M[0])}
    triple_idx = []
    for triple in cfg.triples:
        picked = []
        for w in triple:
            w = tuple(sorted(w))
            hits = [k for k, o in enumerate(omegas) if o == w]
            if not hits:
                raise InputError(f"no representative for omega {list(w)}")
            picked.append(hits[0])
        triple_idx.append(tuple(picked))
    table = ring_product_table(reps, triples=triple_idx)
    return {
        "command": "ring",
        "complex": _complex_json(K),
        "J": list(J),
        "classes": [
            {"name": names[k], "omega": list(omegas[k]) if omegas[k] is not None else None,
             "degree": table.degrees[k], "representative": reps[k].render()}
            for k in range(len(reps))
        ],
        "basis": [
            {"name": basis_names[k], "omega": list(basis_omegas[k]), "representative": basis_reps[k].render()}
            for k in range(len(basis_reps))
        ] if cfg.elements else [],
        "products": [
            {"left": names[i], "right": names[j], "product": _express(cls, basis, basis_names)}
            for (i, j), (_, cls) in sorted(table.pairs.items()) if not cls.is_zero
        ],
        "triples": [
            {"factors": [names[i], names[j], names[k]], "cochain": prod.render(),
             "nonzero": not cls.is_zero, "product": _express(cls, basis, basis_names)}
            for (i, j, k), (prod, cls) in table.triples.items()
        ],
    }


def cmd_cap(cfg: RunConfig) -> dict:
    _, _, KJ = _space(cfg)
    gamma = None

    def get_gamma():
        nonlocal gamma
        if gamma is None:
            gamma = fundamental_class(KJ, cap=cfg.cap)
        return gamma

    report = {"command": "cap", "complex": _complex_json(KJ)}
    if cfg.cochain is not None and cfg.chain is not None:
        a = parse_word_expression(cfg.cochain, COCHAIN, KJ)
        z = parse_word_expression(cfg.chain, CHAIN, KJ, gamma=get_gamma)
        result = word_cap(a, z, KJ)
        report["cochain"] = a.render()
        report["chain"] = z.render()
        report["cap"] = result.render()
        is_cycle = not boundary(result)
        report["is_cycle"] = is_cycle
        if is_cycle:
            dec = word_decomposition(KJ, CHAIN)
            cls = dec.class_of(result.terms)
            report["class_is_zero"] = cls.is_zero
            if cfg.equals is not None:
                other = parse_word_expression(cfg.equals, CHAIN, KJ, gamma=get_gamma)
                report["equals"] = other.render()
                report["same_class"] = (cls + -dec.class_of(other.terms)).is_zero
    if cfg.spot_check:
        rng = random.Random(cfg.seed)
        co = [w for ws in word_basis(KJ, COCHAIN).values() for w in ws]
        ch = [w for ws in word_basis(KJ, CHAIN).values() for w in ws]
        failures = 0
        for _ in range(cfg.spot_check):
            a, z = rng.choice(co), rng.choice(ch)
            sign = -1 if (z.degree - a.degree) % 2 else 1
            lhs = boundary(word_cap(a, z, KJ))
            rhs = sign * word_cap(coboundary(a, KJ), z, KJ) + word_cap(a, boundary(z), KJ)
            failures += lhs != rhs
        report["spot_check"] = {"cases": cfg.spot_check, "seed": cfg.seed, "failures": failures}
        if failures:
            raise InvariantViolation(f"boundary-of-cap identity failed in {failures} cases")
    return report


def cmd_manifold(cfg: RunConfig) -> dict:
    K, J, _ = _space(cfg)
    v = manifold_verdict(K, J)
    return {"command": "manifold", "complex": _complex_json(K), "J": list(J), "verdict": v.as_json()}


def cmd_kj(cfg: RunConfig) -> dict:
    K, J, KJ = _space(cfg)
    comments = [f"K(J) for J = {','.join(map(str, J))}"]
    comments += [f"B_{i} = {' '.join(map(str, b))}" for i, b in enumerate(blocks(J), start=1)]
    return {"command": "kj", "J": list(J), "blocks": [list(b) for b in blocks(J)],
            "complex": _complex_json(KJ), "file": format_complex(KJ, comments)}


COMMANDS = {"betti": cmd_betti, "ring": cmd_ring, "cap": cmd_cap, "manifold": cmd_manifold, "kj": cmd_kj}


# -- rendering --------------------------------------------------------------

def _describe_link(data: dict) -> str:
    parts = []
    for k, g in data.items():
        if isinstance(g, dict):
            parts.append(f"H~_{k}(link) = {HomologyGroup(g['rank'], tuple(g['torsion']))}")
        else:
            parts.append(f"{k} = {g}")
    return ", ".join(parts) if parts else "link is acyclic"


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines = []
    if cmd == "betti":
        lines.append("b = " + ",".join(map(str, report["betti"])))
        for p, g in enumerate(report["homology"]):
            lines.append(f"H_{p} = {HomologyGroup(g['rank'], tuple(g['torsion']))}")
        lines.append("omega | degree | group")
        for row in report["contributions"]:
            lines.append("{" + ",".join(map(str, row["omega"])) + f"}} | {row['degree']} | {row['group']}")
    elif cmd == "ring":
        for c in report["classes"]:
            where = "" if c["omega"] is None else " omega={" + ",".join(map(str, c["omega"])) + "}"
            lines.append(f"{c['name']} (deg {c['degree']}){where}: {c['representative']}")
        for c in report["basis"]:
            lines.append(f"basis {c['name']} omega={{" + ",".join(map(str, c["omega"])) + f"}}: {c['representative']}")
        lines.append("products:")
        for p in report["products"]:
            lines.append(f"  {p['left']} * {p['right']} = {p['product']}")
        for t in report["triples"]:
            lines.append(f"triple {' * '.join(t['factors'])} = {t['cochain']} ({'nonzero' if t['nonzero'] else 'zero'} class: {t['product']})")
    elif cmd == "cap":
        for key in ("cochain", "chain", "cap", "is_cycle", "class_is_zero", "equals", "same_class"):
            if key in report:
                lines.append(f"{key}: {report[key]}")
        if "spot_check" in report:
            s = report["spot_check"]
            lines.append(f"spot check: {s['cases']} cases, seed {s['seed']}, {s['failures']} failures")
    elif cmd == "manifold":
        v = report["verdict"]
        lines.append(f"homology manifold: {'yes' if v['is_homology_manifold'] else 'no'}")
        lines.append(f"dimension: {v['dimension']}")
        lines.append(f"topological manifold: {v['topological_manifold_status']}")
        h1 = v["h1_of_K"]
        lines.append(f"H_1(K) = {HomologyGroup(h1['rank'], tuple(h1['torsion']))}")
        for w in v["witnesses"]:
            lines.append("witness: {" + ",".join(map(str, w["simplex"])) + "} " + _describe_link(w["link_homology"]))
        lines.extend(f"note: {n}" for n in v["notes"])
    elif cmd == "kj":
        return report["file"]
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return render_text(report)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="complex file, or @name for a catalog complex")
    common.add_argument("--J", type=parse_tuple, default=None, help="comma-separated J-tuple")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--cap", type=int, default=16, help="largest m for subset sweeps")
    common.add_argument("--parallel", type=int, default=1, help="worker processes for subset sweeps")
    parser = argparse.ArgumentParser(prog="mac-kit", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("betti", parents=[common], help="homology with the per-omega table")
    ring = sub.add_parser("ring", parents=[common], help="cohomology representatives and product table")
    ring.add_argument("--triples", nargs=3, action="append", type=parse_tuple, default=[],
                      metavar="OMEGA", help="three omegas whose first representatives are multiplied")
    ring.add_argument("--elements", nargs="+", default=[], help="explicit cocycles such as 'v{1}u{6}'")
    cap = sub.add_parser("cap", parents=[common], help="cap product of word expressions")
    cap.add_argument("cochain", nargs="?")
    cap.add_argument("chain", nargs="?")
    cap.add_argument("--equals", help="chain whose class is compared with the result")
    cap.add_argument("--spot-check", type=int, default=0, help="random boundary-of-cap checks")
    cap.add_argument("--seed", type=int, default=0)
    sub.add_parser("manifold", parents=[common], help="manifold verdict")
    sub.add_parser("kj", parents=[common], help="write K(J) in the facet format")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, input=args.input, J=args.J, cap=args.cap, format=args.format,
            parallel=args.parallel, triples=[tuple(t) for t in getattr(args, "triples", [])],
            elements=getattr(args, "elements", []), cochain=getattr(args, "cochain", None),
            chain=getattr(args, "chain", None), equals=getattr(args, "equals", None),
            spot_check=getattr(args, "spot_check", 0), seed=getattr(args, "seed", 0),
        )
        if cfg.command == "cap" and (cfg.cochain is None) != (cfg.chain is None):
            raise InputError("cap needs both a cochain and a chain expression")
        report = COMMANDS[cfg.command](cfg)
    except MacKitError as exc:
        print(f"mac-kit: error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(render(report, cfg.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
