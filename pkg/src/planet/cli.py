"""Command-line front end: ``planet <subcommand> ...``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import io
from .construct import braid_net, hessian_net, pencil_net, singular_cubic_net, torus_net
from .cubic import SINGULAR_MODELS, is_algebraic
from .errors import (
    CubicError,
    DegenerateError,
    FieldError,
    Inconclusive,
    InputError,
    NetError,
    NumericError,
    RealizationError,
)
from .field import ComplexField, CyclotomicField, Field
from .net import Net, class_profile, euler_feasible, verify_net, verify_split_pencil
from .properties import run_all
from .quasigroup import LatinSquare, NotLatinError, group_identify, latin_from_net, normalize_to_loop
from .resonance import Arrangement, essential_component, net_resonance, os_h1_dim

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass(frozen=True)
class SessionConfig:
    field_spec: str = "complex"
    eps_eq: float = 1e-9
    eps_rank: float = 1e-8
    eps_series: float = 1e-14
    seed: int = 0
    fmt: str = "json"
    output: str = "-"

    def __post_init__(self):
        for name in ("eps_eq", "eps_rank", "eps_series"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive", f"--{name.replace('_', '-')}")

    def field(self) -> Field:
        spec = self.field_spec
        if spec == "complex":
            return ComplexField(self.eps_eq, self.eps_rank)
        if spec.startswith("cyclotomic:"):
            try:
                n = int(spec.split(":", 1)[1])
            except ValueError:
                raise InputError(f"bad field {spec!r}", "--field") from None
            if n < 1:
                raise InputError("N must be positive", "--field")
            return CyclotomicField(n)
        raise InputError(f"unknown field {spec!r} (use complex or cyclotomic:N)", "--field")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


class Outcome:
    """A report plus the exit code it implies."""

    def __init__(self, report, code: int = EXIT_OK):
        self.report = report
        self.code = code


# ---------------------------------------------------------------------------
# helpers


def _load_net(path: str, cfg: SessionConfig) -> Net:
    return io.decode_net(io.read_json(path), cfg.eps_eq, cfg.eps_rank)


def _pair(text: str, kind, name: str):
    parts = text.split(",")
    try:
        return [kind(p) for p in parts]
    except ValueError:
        raise InputError(f"cannot parse {text!r}", name) from None


def _shuffled_orders(net: Net, seed: int | None):
    if seed is None:
        return None
    rng = np.random.default_rng(seed)
    return [list(rng.permutation(len(c))) for c in net.classes[:3]]


def _latin_or_net(obj, cfg: SessionConfig, shuffle: int | None) -> LatinSquare:
    if isinstance(obj, dict) and "table" in obj:
        return io.decode_latin(obj)
    net = io.decode_net(obj, cfg.eps_eq, cfg.eps_rank)
    return latin_from_net(net, _shuffled_orders(net, shuffle))


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args, cfg: SessionConfig) -> Outcome:
    field = cfg.field()
    kind = args.kind
    if kind == "pencil":
        net = pencil_net(args.m, field)
    elif kind == "braid":
        net = braid_net(field)
    elif kind == "hessian":
        net = hessian_net(field)
    elif kind == "torus":
        inv = _pair(args.invariants, int, "--invariants")
        kwargs = {}
        if args.tau is not None:
            re, im = _pair(args.tau, float, "--tau")
            kwargs["tau"] = complex(re, im)
        net = torus_net(*inv, field=field, eps_series=cfg.eps_series, **kwargs)
    else:
        net = singular_cubic_net(args.case, args.m, field=field)
    return Outcome(io.encode_net(net))


def cmd_verify(args, cfg: SessionConfig) -> Outcome:
    net = _load_net(args.file, cfg)
    rep = verify_net(net, allow_trivial=args.allow_trivial)
    out = rep.to_json()
    if rep.ok:
        out["classes"] = [class_profile(c).to_json(net.field) for c in net.classes]
        out["split_pencil"] = verify_split_pencil(net)
    return Outcome(out, EXIT_OK if rep.ok else EXIT_NEGATIVE)


def cmd_euler(args, cfg: SessionConfig) -> Outcome:
    feas = euler_feasible(args.k, args.m, args.r)
    out = {"k": args.k, "m": args.m, "r": args.r, **feas.to_json()}
    return Outcome(out, EXIT_OK if feas.feasible else EXIT_NEGATIVE)


def cmd_latin(args, cfg: SessionConfig) -> Outcome:
    ls = _latin_or_net(io.read_json(args.file), cfg, args.shuffle)
    return Outcome(io.encode_latin(ls))


def cmd_group(args, cfg: SessionConfig) -> Outcome:
    ls = _latin_or_net(io.read_json(args.file), cfg, args.shuffle)
    gid = group_identify(normalize_to_loop(ls))
    out = {**gid.to_json(), "latin": io.encode_latin(ls)}
    return Outcome(out, EXIT_OK if gid.is_group else EXIT_NEGATIVE)


def cmd_algebraize(args, cfg: SessionConfig) -> Outcome:
    res = is_algebraic(_load_net(args.file, cfg), seed=cfg.seed)
    return Outcome(res.to_json(), EXIT_OK if res.algebraic else EXIT_NEGATIVE)


def cmd_resonance(args, cfg: SessionConfig) -> Outcome:
    net = _load_net(args.file, cfg)
    data = net_resonance(net)
    V = essential_component(net)
    if args.vector is not None:
        vec = io.decode_vector(io.read_json(args.vector))
        source = "file"
    else:
        rng = cfg.rng()
        while True:
            w = [int(x) for x in rng.integers(-9, 10, V.dim)]
            weights = w + [-sum(w)]
            if len(set(weights)) == len(weights):
                break
        vec = V.vector(weights)
        source = "random point of V"
    h1 = os_h1_dim(Arrangement.from_net(net), vec)
    out = {
        **data.to_json(),
        "dimV": V.dim,
        "basisV": V.basis,
        "vector": [x if isinstance(x, (int, float)) else [x.real, x.imag] for x in vec],
        "vector_source": source,
        "h1": h1,
    }
    return Outcome(out)


def cmd_selftest(args, cfg: SessionConfig) -> Outcome:
    results = run_all(args.trials, cfg.seed, cfg.field())
    ok = all(r.ok for r in results)
    return Outcome({"ok": ok, "suites": [r.to_json() for r in results]}, EXIT_OK if ok else EXIT_NEGATIVE)


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("session")
    g.add_argument("--field", dest="field_spec", default="complex", help="complex (default) or cyclotomic:N")
    g.add_argument("--eps-eq", type=float, default=1e-9)
    g.add_argument("--eps-rank", type=float, default=1e-8)
    g.add_argument("--eps-series", type=float, default=1e-14)
    g.add_argument("--seed", type=int, default=None, help="random seed (falls back to $PLANET_SEED, then 0)")
    g.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    g.add_argument("-o", "--output", default="-", help="output file ('-' for stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="planet", description="k-nets of lines in the complex projective plane")
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build a canonical net")
    csub = con.add_subparsers(dest="kind", required=True)
    p = csub.add_parser("pencil", parents=[common], help="triple-pencil net realizing Z_m")
    p.add_argument("-m", type=int, required=True)
    csub.add_parser("braid", parents=[common], help="the (3,2)-net of the braid arrangement")
    csub.add_parser("hessian", parents=[common], help="the Hesse (4,3)-net")
    p = csub.add_parser("torus", parents=[common], help="net from torsion cosets on an elliptic curve")
    p.add_argument("--invariants", required=True, help="m1,m2 with m1 | m2 (or a single m)")
    p.add_argument("--tau", default=None, help="re,im of the lattice parameter")
    p = csub.add_parser("singular", parents=[common], help="net on a singular model cubic")
    p.add_argument("--case", required=True, choices=sorted(SINGULAR_MODELS))
    p.add_argument("-m", type=int, required=True)
    con.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check the net axioms")
    p.add_argument("file")
    p.add_argument("--allow-trivial", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("euler", parents=[common], help="feasibility bound for (k, m, r)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-r", type=int, default=0)
    p.set_defaults(func=cmd_euler)

    for name, func, text in (("latin", cmd_latin, "Latin square of a 3-net"),
                             ("group", cmd_group, "identify the realized group")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", help="net JSON (or Latin square JSON)")
        p.add_argument("--shuffle", type=int, default=None, help="permute lines within classes with this seed")
        p.set_defaults(func=func)

    p = sub.add_parser("algebraize", parents=[common], help="test whether a 3-net is algebraic")
    p.add_argument("file")
    p.set_defaults(func=cmd_algebraize)

    p = sub.add_parser("resonance", parents=[common], help="Q-matrix blocks and OS cohomology")
    p.add_argument("file")
    p.add_argument("--vector", default=None, help="JSON array with one weight per line")
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("selftest", parents=[common], help="run the randomized property suites")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_selftest)
    return parser


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("PLANET_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"PLANET_SEED={env!r} is not an integer", "$PLANET_SEED") from None


def _cyclo_str(obj: dict) -> str:
    """Compact rendering of an exact scalar, powers of z = zeta_N."""
    terms = []
    for k, (num, den) in enumerate(obj["coeffs"]):
        if num == 0:
            continue
        c = str(num) if den == 1 else f"{num}/{den}"
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if mono and c in ("1", "-1"):
            c = c[:-1]
        terms.append(f"{c}{mono}")
    return (" + ".join(terms) or "0").replace("+ -", "- ")


def _compact(obj):
    if isinstance(obj, dict):
        if set(obj) == {"N", "coeffs"}:
            return _cyclo_str(obj)
        return {k: _compact(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_compact(v) for v in obj]
    return obj


def _text(obj, indent: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{indent}{k}:")
                lines.extend(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{indent}- [{i}]")
                lines.extend(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}- {v}")
    else:
        lines.append(f"{indent}{obj}")
    return lines


def _flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) for x in items)


def _emit(report, cfg: SessionConfig) -> None:
    if cfg.fmt == "json":
        io.write_json(report, cfg.output)
        return
    text = "\n".join(_text(_compact(report))) + "\n"
    if cfg.output == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(code: int, kind: str, exc: Exception) -> int:
    sys.stderr.write(f"planet: {kind}: {exc}\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = SessionConfig(args.field_spec, args.eps_eq, args.eps_rank, args.eps_series,
                            _seed(args.seed), args.fmt, args.output)
        outcome = args.func(args, cfg)
    except (InputError, FieldError, NotLatinError) as exc:
        return _fail(EXIT_USAGE, "input error", exc)
    except NumericError as exc:
        return _fail(EXIT_NUMERIC, "numeric failure", exc)
    except (NetError, RealizationError, Inconclusive) as exc:
        _emit({"verdict": "rejected", "error": str(exc)}, cfg)
        return EXIT_NEGATIVE
    except (DegenerateError, CubicError, ValueError) as exc:
        return _fail(EXIT_USAGE, "invalid input", exc)
    try:
        _emit(outcome.report, cfg)
    except OSError as exc:
        return _fail(EXIT_USAGE, "cannot write output", exc)
    return outcome.code


def run(argv: list[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
