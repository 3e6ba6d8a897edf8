"""Command-line entry point: ``pslcover <command> ...``.

Every command writes one JSON document (to ``--out`` atomically, or to
stdout with ``--json``) carrying the tool version, seed, precision and the
SHA-256 of each input file.  Exit codes: 0 pass, 1 verification failure,
2 usage, 3 input, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import metadata
from pathlib import Path

import mpmath

from . import nielsen, permgrp, reconstruct
from .exactalg import belyi, fixtures, gfp, lemma31
from .exactalg.poly import Poly, parse_fraction

log = logging.getLogger("pslcover")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = range(5)


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.1.0"


@dataclass
class RunConfig:
    command: str
    seed: int
    prec: int
    budget: int | None
    long_running: bool
    out: Path | None
    inputs: dict[str, str] = field(default_factory=dict)

    def read(self, path: str | Path) -> bytes:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {p}: {exc.strerror}") from exc
        self.inputs[str(p)] = hashlib.sha256(data).hexdigest()
        return data

    def read_json(self, path: str | Path):
        """Parse a JSON input; reports written by this tool are unwrapped to their result."""
        try:
            obj = json.loads(self.read(path))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc.msg})") from exc
        if isinstance(obj, dict) and obj.get("tool") == "pslcover" and "result" in obj:
            return obj["result"]
        return obj


@dataclass
class Outcome:
    result: dict
    passed: bool = True
    summary: list[str] = field(default_factory=list)


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def envelope(cfg: RunConfig, outcome: Outcome) -> dict:
    return {
        "tool": "pslcover",
        "version": version(),
        "command": cfg.command,
        "seed": cfg.seed,
        "prec_bits": cfg.prec,
        "inputs": dict(sorted(cfg.inputs.items())),
        "passed": outcome.passed,
        "result": outcome.result,
    }


# ---------------------------------------------------------------------------
# input helpers


def parse_poly(text: str) -> Poly:
    """Ascending comma-separated rational coefficients, e.g. ``"-1,0,1"`` for X^2 - 1."""
    try:
        return Poly([parse_fraction(c.strip()) for c in text.split(",")])
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad polynomial {text!r}") from exc


def parse_classes(text: str) -> list[str]:
    try:
        return [str(permgrp.CycleType.parse(c)) for c in text.split(",")]
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_tuple(cfg: RunConfig, path: str) -> nielsen.GenTuple:
    try:
        return nielsen.GenTuple.from_json(cfg.read_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: not a tuple file ({exc})") from exc


def load_orbit(cfg: RunConfig, path: str) -> nielsen.OrbitTable:
    try:
        return nielsen.OrbitTable.from_json(cfg.read_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: not an orbit file ({exc})") from exc


def obtain_orbit(cfg: RunConfig, args, rng: random.Random) -> nielsen.OrbitTable:
    """Orbit from ``--orbit`` or computed from ``--group/--classes``; family words default to the geometric ones."""
    if getattr(args, "orbit", None):
        table = load_orbit(cfg, args.orbit)
    else:
        cv = nielsen.ClassVector.parse(parse_classes(args.classes), args.group)
        tup = nielsen.search_tuple(cv, rng, budget=cfg.budget or 10**5)
        table = nielsen.braid_orbit(tup, cv)
    if table.x is None:
        nielsen.set_family(table, nielsen.geometric_family_words(len(table.classes)))
    return table


def perms_json(perms) -> list[list[int]]:
    return [g.images1() for g in perms]


# ---------------------------------------------------------------------------
# nielsen


def cmd_nielsen_search(cfg, args, rng) -> Outcome:
    cv = nielsen.ClassVector.parse(parse_classes(args.classes), args.group)
    tup = nielsen.search_tuple(cv, rng, budget=cfg.budget or 10**5)
    return Outcome(tup.to_json(), tup.verified, [f"tuple found, verified={tup.verified}"])


def cmd_nielsen_orbit(cfg, args, rng) -> Outcome:
    if args.tuple:
        tup = load_tuple(cfg, args.tuple)
        table = nielsen.braid_orbit(tup)
    else:
        cv = nielsen.ClassVector.parse(parse_classes(args.classes), args.group)
        tup = nielsen.search_tuple(cv, rng, budget=cfg.budget or 10**5)
        table = nielsen.braid_orbit(tup, cv)
    if args.family:
        nielsen.set_family(table, nielsen.geometric_family_words(len(table.classes)))
    res = table.to_json()
    lines = [f"orbit size {table.size}"]
    if args.expect is not None:
        ok = table.size == args.expect
        lines.append(f"expected {args.expect}: {'ok' if ok else 'MISMATCH'}")
        return Outcome(res, ok, lines)
    return Outcome(res, True, lines)


def cmd_nielsen_family_words(cfg, args, rng) -> Outcome:
    table = obtain_orbit(cfg, args, rng)
    targets = parse_classes(args.targets)
    matches = nielsen.find_family_words(table, targets, maxlen=args.maxlen, limit=args.limit)
    geo = (table.x, table.y, table.z)
    items = []
    for m in matches:
        items.append({
            "words": [str(w) for w in m.words],
            "types": [str(p.cycle_type()) for p in m.perms],
            "conjugate_to_geometric": permgrp.tuple_conjugator(list(m.perms), list(geo)) is not None,
        })
    res = {"orbit_size": table.size, "targets": targets, "matches": items, "geometric_words": [str(w) for w in table.words]}
    genus = nielsen.rh_genus(table.size, targets)
    res["genus"] = genus
    return Outcome(res, True, [f"{len(items)} word pairs", f"first: {items[0]['words']}", f"genus {genus}"])


def _blocks(table):
    gens = (table.x, table.y, table.z)
    return gens, nielsen.block_system(gens)


def cmd_nielsen_blocks(cfg, args, rng) -> Outcome:
    table = obtain_orbit(cfg, args, rng)
    gens, bs = _blocks(table)
    types = [str(h.cycle_type()) for h in bs.induced]
    res = {
        "blocks": [[i + 1 for i in b] for b in bs.blocks],
        "block_size": bs.block_size,
        "induced": perms_json(bs.induced),
        "induced_types": types,
        "quotient_genus": nielsen.rh_genus(len(bs.blocks), types),
    }
    return Outcome(res, True, [f"{len(bs.blocks)} blocks of size {bs.block_size}", "induced: " + ", ".join(types)])


def cmd_nielsen_branch_data(cfg, args, rng) -> Outcome:
    table = obtain_orbit(cfg, args, rng)
    gens, bs = _blocks(table)
    data = nielsen.degree2_branch_data(gens, bs)
    res = {f.label: {"ramified": f.ramified, "split": f.split, "ramified_count": len(f.ramified)} for f in data}
    return Outcome(res, True, [f"{f.label}: {len(f.ramified)} ramified" for f in data])


def cmd_rh_genus(cfg, args, rng) -> Outcome:
    try:
        g = nielsen.rh_genus(args.degree, args.types)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return Outcome({"degree": args.degree, "types": args.types, "genus": g}, True, [str(g)])


# ---------------------------------------------------------------------------
# numeric covers (imported lazily: they pull in numpy and gmpy2)


def load_shape(cfg, name: str):
    from .numcover import system

    if name == "psl62":
        return system.psl62_shape()
    if name == "toy":
        return system.family_shape(4, ("2^1.1^2", "2^1.1^2", "3^1.1^1", "3^1.1^1"))
    try:
        return system.RamShape.from_json(cfg.read_json(name))
    except (KeyError, ValueError) as exc:
        raise InputError(f"{name}: bad shape ({exc})") from exc


def load_model(cfg, path: str):
    from .numcover.system import CoverModel

    obj = cfg.read_json(path)
    if isinstance(obj, dict) and "models" in obj:
        if not obj["models"]:
            raise InputError(f"{path}: contains no models")
        obj = obj["models"][0]
    try:
        return CoverModel.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: bad cover model ({exc})") from exc


def cmd_cover_assemble(cfg, args, rng) -> Outcome:
    from .numcover import system

    shape = load_shape(cfg, args.shape)
    sysm = system.assemble_system(shape, mpmath.mpc(args.lam))
    res = {"shape": shape.to_json(), "unknowns": sysm.n_unknowns, "equations": sysm.n_equations, "labels": sysm.labels}
    return Outcome(res, sysm.n_unknowns == sysm.n_equations, [f"{sysm.n_unknowns} unknowns, {sysm.n_equations} equations"])


def cmd_cover_solve(cfg, args, rng) -> Outcome:
    from .numcover import system

    shape = load_shape(cfg, args.shape)
    if shape.degree > 12 and not cfg.long_running:
        raise UsageError("multi-start on this shape is a long computation; pass --long-running")
    models = system.multistart(shape, mpmath.mpc(args.lam), rng, restarts=cfg.budget or 500, max_found=args.count)
    if not models:
        return Outcome({"models": []}, False, ["no cover found"])
    res = {"models": [m.to_json() for m in models]}
    return Outcome(res, True, [f"{len(models)} cover(s) found"])


def cmd_cover_deform(cfg, args, rng) -> Outcome:
    from .numcover import system

    model = load_model(cfg, args.model)
    if args.around is not None:
        pts = system.circle_path(mpmath.mpc(args.around), model.lam)
    elif args.to is not None:
        pts = [model.lam, mpmath.mpc(args.to)]
    else:
        raise UsageError("give --around or --to")
    out = system.deform_lambda(model, system.PathPlan(pts))
    if args.normalize:
        out = out.normalize_sign()
    return Outcome(out.to_json(), True, [f"lambda = {mpmath.nstr(out.lam, 12)}", f"residual {mpmath.nstr(out.residual_norm(), 3)}"])


def cmd_cover_monodromy(cfg, args, rng) -> Outcome:
    from .numcover import monodromy

    model = load_model(cfg, args.model)
    stats = monodromy.TrackStats()
    perms = monodromy.model_monodromy(model, stats=stats)
    res = {
        "degree": model.shape.degree,
        "class_vector": [str(g.cycle_type()) for g in perms],
        "perms": perms_json(perms),
        "verified": True,
        "tracking_residual": mpmath.nstr(stats.max_residual, 5),
    }
    return Outcome(res, True, ["types: " + ", ".join(res["class_vector"])])


def cmd_cover_verify(cfg, args, rng) -> Outcome:
    from .numcover import monodromy

    model = load_model(cfg, args.model)
    expected = load_tuple(cfg, args.tuple) if args.tuple else None
    rep = monodromy.verify_cover_numeric(model, expected)
    return Outcome(rep, rep["passed"], [f"{k}: {'ok' if v else 'FAIL'}" for k, v in rep["checks"].items()])


def cmd_cover_toy(cfg, args, rng) -> Outcome:
    from .numcover import toy

    run = toy.run_toy(seed=cfg.seed, restarts=cfg.budget or 800)
    return Outcome(run.to_json(), run.passed, [f"{k}: {'ok' if v else 'FAIL'}" for k, v in run.checks.items()])


def cmd_chi(cfg, args, rng) -> Outcome:
    """Match the block action of the family monodromy with the degree-24 map's fiber over its value at 1/6."""
    from .numcover import monodromy
    from .numcover.cpoly import CPoly

    table = obtain_orbit(cfg, args, rng)
    gens, bs = _blocks(table)
    p, q, _ = fixtures.psi24()
    point = parse_fraction(args.point)
    lam0 = p(point) / q(point)
    base = mpmath.mpf(lam0.numerator) / lam0.denominator
    num, den = CPoly.from_exact(p), CPoly.from_exact(q)
    fib = monodromy.fiber(num, den, base)
    target = mpmath.mpf(point.numerator) / point.denominator
    idx = min(range(len(fib)), key=lambda i: abs(fib[i] - target))
    stats = monodromy.TrackStats()
    px, py = monodromy.monodromy_tuple(num, den, base, monodromy.figure_eight_loops(base), base_fiber=fib, stats=stats)
    chi = monodromy.chi_bijection(bs.induced[:2], [px, py])
    block = chi.index(idx)
    res = {
        "lambda0": str(lam0),
        "point": str(point),
        "block": block + 1,
        "block_members": [i + 1 for i in bs.blocks[block]],
        "block_tuples": [perms_json(table.tuple_at(i)) for i in bs.blocks[block]],
        "chi": [
            {"block": b + 1, "fiber_point": mpmath.nstr(fib[chi[b]], 20)} for b in range(len(chi))
        ],
        "tracking_residual": mpmath.nstr(stats.max_residual, 5),
    }
    return Outcome(res, True, [f"lambda0 = {lam0}", f"block {block + 1} {res['block_members']} maps to {point}"])


# ---------------------------------------------------------------------------
# exact checks


FIXTURES = {
    "psi24": lambda: (fixtures.psi24()[0], fixtures.psi24()[1], fixtures.PSI24_TYPES, fixtures.psi24()[2]),
    "psl32": lambda: (*fixtures.psl32_belyi(), fixtures.PSL32_TYPES, None),
}


def cmd_verify_belyi(cfg, args, rng) -> Outcome:
    if args.fixture:
        if args.fixture not in FIXTURES:
            raise InputError(f"unknown fixture {args.fixture!r}")
        num, den, types, r = FIXTURES[args.fixture]()
        rep = belyi.verify_belyi(num, den, types, r=r)
    elif args.file:
        cert = cfg.read_json(args.file)
        try:
            rep = belyi.verify_belyi(Poly.from_json(cert["p"]), Poly.from_json(cert["q"]), cert["expected_structures"])
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"{args.file}: {exc}") from exc
    else:
        raise UsageError("give --fixture or --file")
    return Outcome(rep.to_json(), rep.passed, [f"{k}: {'ok' if v else 'FAIL'}" for k, v in rep.checks.items()])


def cmd_verify_certificate(cfg, args, rng) -> Outcome:
    cert = cfg.read_json(args.file)
    try:
        rep = belyi.verify_certificate(cert)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    return Outcome(rep.to_json(), rep.passed, [f"{k}: {'ok' if v else 'FAIL'}" for k, v in rep.checks.items()])


def cmd_factor_modp(cfg, args, rng) -> Outcome:
    f = parse_poly(args.poly)
    try:
        lc, factors = gfp.factor_mod_p(f, args.prime, rng)
    except gfp.BadPrime as exc:
        raise InputError(str(exc)) from exc
    res = {
        "prime": args.prime,
        "leading": lc,
        "factors": [{"coeffs": g, "mult": m} for g, m in factors],
        "degrees": sorted(len(g) - 1 for g, m in factors for _ in range(m)),
    }
    return Outcome(res, True, ["degrees " + " ".join(map(str, res["degrees"]))])


LEMMA31_FIXTURES = {
    "x2": lambda: (Poly.from_ints([0, 0, 1]), Poly.from_ints([1])),
    "x3": lambda: (Poly.from_ints([0, 0, 0, 1]), Poly.from_ints([1])),
    "psl32": fixtures.psl32_belyi,
    "psi24": lambda: fixtures.psi24()[:2],
}


def cmd_lemma31(cfg, args, rng) -> Outcome:
    if args.fixture:
        if args.fixture not in LEMMA31_FIXTURES:
            raise InputError(f"unknown fixture {args.fixture!r}")
        p, q = LEMMA31_FIXTURES[args.fixture]()
    elif args.p:
        p, q = parse_poly(args.p), parse_poly(args.q or "1")
    else:
        raise UsageError("give --fixture or --p/--q")
    pat = lemma31.lemma31_degree_pattern(p, q)
    res = pat.to_json()
    return Outcome(res, True, [f"degrees {list(pat.degrees)} (heuristic; {pat.disagreements} finer samples)"])


def cmd_model_hyperelliptic(cfg, args, rng) -> Outcome:
    c = parse_fraction(args.c)
    model = belyi.hyperelliptic_model(fixtures.hyperelliptic_factors(), c)
    res = model.to_json()
    lines = [f"y^2 = c*P(mu), genus {model.genus}"]
    if args.at:
        mu = parse_fraction(args.at)
        val = model.rhs()(mu)
        d = belyi.squarefree_part(val)
        res["value"] = {"mu": str(mu), "c*P(mu)": str(val), "squarefree_part": d}
        lines.append(f"squarefree part of c*P({mu}) = {d}")
    return Outcome(res, True, lines)


def cmd_recognize(cfg, args, rng) -> Outcome:
    try:
        x = mpmath.mpmathify(args.value)
    except (ValueError, TypeError) as exc:
        raise InputError(f"cannot parse {args.value!r}") from exc
    if args.quadratic is not None:
        v = reconstruct.recognize_quadratic(x, args.quadratic, args.height, cfg.prec)
        res = {"a": str(v.a), "b": str(v.b), "d": v.d}
        return Outcome(res, True, [str(v)])
    v = reconstruct.recognize_rational(x, args.height, cfg.prec)
    return Outcome({"value": str(v)}, True, [str(v)])


def cmd_fit(cfg, args, rng) -> Outcome:
    obj = cfg.read_json(args.points)
    try:
        pts = [(Fraction(x), Fraction(y)) for x, y in obj["points"]]
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{args.points}: expected {{'points': [[x, y], ...]}}") from exc
    if args.degrees:
        dn, dd = (int(v) for v in args.degrees.split(","))
        f = reconstruct.fit_ratfun(pts, (dn, dd))
    else:
        f = reconstruct.fit_search(pts)
    return Outcome(f.to_json(), True, [str(f)])


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    p.add_argument("--prec", type=int, default=332, help="working precision in bits (default 332)")
    p.add_argument("--budget", type=int, default=None, help="trial budget (searches, restarts)")
    p.add_argument("--long-running", action="store_true", help="allow computations expected to take hours")
    p.add_argument("--out", type=Path, default=None, help="write the JSON result here (atomically)")
    p.add_argument("--json", action="store_true", help="print the JSON result to stdout")
    p.add_argument("-v", "--verbose", action="store_true")


def _orbit_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--orbit", help="orbit file (computed from --group/--classes if absent)")
    p.add_argument("--group", default="psl62")
    p.add_argument("--classes", default=",".join(nielsen.PSL62_CLASSES))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pslcover", description="Braid orbits, covers and verification tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_, parent=sub):
        p = parent.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(handler=handler)
        return p

    ni = sub.add_parser("nielsen", help="Nielsen classes and braid orbits").add_subparsers(dest="sub", required=True)
    p = add("search", cmd_nielsen_search, "random generating tuple in a class vector", ni)
    p.add_argument("--group", default="psl62")
    p.add_argument("--classes", default=",".join(nielsen.PSL62_CLASSES))
    p = add("orbit", cmd_nielsen_orbit, "braid orbit of a tuple", ni)
    p.add_argument("--group", default="psl62")
    p.add_argument("--classes", default=",".join(nielsen.PSL62_CLASSES))
    p.add_argument("--tuple", help="tuple file (searched if absent)")
    p.add_argument("--family", action="store_true", help="attach the lambda-loop actions x, y, z")
    p.add_argument("--expect", type=int, help="fail unless the orbit has this size")
    p = add("family-words", cmd_nielsen_family_words, "braid words with given cycle types on the orbit", ni)
    _orbit_source(p)
    p.add_argument("--targets", default=",".join(nielsen.FAMILY_TARGETS))
    p.add_argument("--maxlen", type=int, default=6)
    p.add_argument("--limit", type=int, default=None)
    p = add("blocks", cmd_nielsen_blocks, "block system of the family monodromy", ni)
    _orbit_source(p)
    p = add("branch-data", cmd_nielsen_branch_data, "ramification of the size-2 block quotient", ni)
    _orbit_source(p)

    p = add("rh-genus", cmd_rh_genus, "genus from degree and cycle types")
    p.add_argument("degree", type=int)
    p.add_argument("types", nargs="+")

    co = sub.add_parser("cover", help="numeric covers").add_subparsers(dest="sub", required=True)
    p = add("assemble", cmd_cover_assemble, "size of the coefficient-comparison system", co)
    p.add_argument("--shape", default="psl62", help="psl62, toy or a shape JSON file")
    p.add_argument("--lambda", dest="lam", default="0.3")
    p = add("solve", cmd_cover_solve, "multi-start Newton for covers of a shape", co)
    p.add_argument("--shape", default="toy")
    p.add_argument("--lambda", dest="lam", default="0.3")
    p.add_argument("--count", type=int, default=1)
    p = add("deform", cmd_cover_deform, "continue a cover model in lambda", co)
    p.add_argument("--model", required=True)
    p.add_argument("--around", help="loop once counterclockwise around this point")
    p.add_argument("--to", help="move straight to this lambda")
    p.add_argument("--normalize", action="store_true", help="relabel so sqrt(lambda) is principal")
    p = add("monodromy", cmd_cover_monodromy, "numerical monodromy tuple of a cover model", co)
    p.add_argument("--model", required=True)
    p = add("verify", cmd_cover_verify, "residual, trace and monodromy report", co)
    p.add_argument("--model", required=True)
    p.add_argument("--tuple")
    add("toy", cmd_cover_toy, "small end-to-end pipeline in degree 4", co)

    p = add("chi", cmd_chi, "block of the family orbit matching a point of the degree-24 fiber")
    _orbit_source(p)
    p.add_argument("--point", default="1/6")

    ve = sub.add_parser("verify", help="exact verification").add_subparsers(dest="sub", required=True)
    p = add("belyi", cmd_verify_belyi, "verify a Belyi map", ve)
    p.add_argument("--fixture", help="psi24 or psl32")
    p.add_argument("--file", help="JSON with p, q, expected_structures")
    p = add("certificate", cmd_verify_certificate, "verify a cover certificate", ve)
    p.add_argument("file")

    p = add("factor-modp", cmd_factor_modp, "factor a rational polynomial modulo a prime")
    p.add_argument("--poly", required=True, help="ascending coefficients, e.g. -1,0,1")
    p.add_argument("--prime", type=int, required=True)

    p = add("lemma31", cmd_lemma31, "stable factor degrees of p(X)q(t) - p(t)q(X)")
    p.add_argument("--fixture", help="x2, x3, psl32 or psi24")
    p.add_argument("--p")
    p.add_argument("--q")

    mo = sub.add_parser("model", help="curve models").add_subparsers(dest="sub", required=True)
    p = add("hyperelliptic", cmd_model_hyperelliptic, "genus-3 model over the degree-24 map", mo)
    p.add_argument("--c", default="3")
    p.add_argument("--at", help="evaluate c*P at this rational and report its squarefree part")

    p = add("recognize", cmd_recognize, "recognize a rational or quadratic number")
    p.add_argument("value")
    p.add_argument("--quadratic", type=int, help="recognize in Q(sqrt d)")
    p.add_argument("--height", type=int, default=reconstruct.DEFAULT_HEIGHT)

    p = add("fit", cmd_fit, "exact rational function through points")
    p.add_argument("--points", required=True, help="JSON file {'points': [[x, y], ...]}")
    p.add_argument("--degrees", help="numerator,denominator degrees (searched if absent)")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    command = " ".join(x for x in (args.command, getattr(args, "sub", None)) if x)
    cfg = RunConfig(command, args.seed, args.prec, args.budget, args.long_running, args.out)
    rng = random.Random(args.seed)
    mpmath.mp.prec = args.prec
    try:
        outcome = args.handler(cfg, args, rng)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (nielsen.BudgetExhausted, permgrp.NotFound) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (reconstruct.NoMatch, reconstruct.NoFit, nielsen.NoMatch) as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = json.dumps(envelope(cfg, outcome), indent=2, sort_keys=True) + "\n"
    if cfg.out is not None:
        write_atomic(cfg.out, text)
    if args.json:
        sys.stdout.write(text)
    else:
        for line in outcome.summary:
            print(line)
        print("PASS" if outcome.passed else "FAIL")
    return EXIT_OK if outcome.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
