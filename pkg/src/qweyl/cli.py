"""Command-line interface: every library operation as a subcommand.

Exit codes: 0 success, 2 success with Unknown verdicts in the report,
1 library errors (a machine-readable error object is printed), 64 usage.
"""

import argparse
import json
import sys

from .autos import auto_recognize, make_auto
from .ce import (
    CESpec,
    ce_classify,
    ce_division_basis,
    ce_norm_image,
    ce_simple_module,
    ce_tensor_factor,
)
from .config import load_config
from .errors import UNKNOWN, ParseError, QweylError
from .fields import make_field
from .gwa import GWAAlgebra, factor_algebra, module_L, verify_identities
from .spectrum import CentrePrime, atlas_to_dot, classify_prime, enumerate_spectrum


def _has_unknown(obj):
    if obj == UNKNOWN:
        return True
    if isinstance(obj, dict):
        return any(_has_unknown(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(_has_unknown(v) for v in obj)
    return False


def _emit(payload, cfg):
    if cfg.output == "text":
        print(_render_text(payload))
    else:
        print(json.dumps(payload, indent=2, default=str))
    return 2 if _has_unknown(payload) else 0


def _render_text(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_render_text(v, indent) for v in payload)
    return f"{pad}{payload}"


def _field(args):
    return make_field(args.field)


def _ce_spec(args):
    F = _field(args)
    return CESpec(F, F.parse_element(args.s), F.parse_element(args.a))


def _matrix_json(F, M):
    if hasattr(M.ring, "to_str"):
        return [[M.ring.to_str(v) for v in row] for row in M.rows]
    return [[F.to_str(v) for v in row] for row in M.rows]


def cmd_ce(args, cfg):
    if args.ce_cmd == "classify":
        rep = ce_classify(
            _ce_spec(args),
            search_budget=cfg.search_budget,
            ff_degree_bound=cfg.function_field_degree_bound,
            seed=cfg.seed,
        )
        return _emit(rep.to_json(), cfg)
    if args.ce_cmd == "module":
        spec = _ce_spec(args)
        X, Hop, Xop = ce_simple_module(spec, search_budget=cfg.search_budget, seed=cfg.seed)
        payload = {
            "spec": spec.describe(),
            "module_matrix": _matrix_json(spec.field, X),
            "h_operator": _matrix_json(spec.field, Hop),
            "x_operator": _matrix_json(spec.field, Xop),
        }
        return _emit(payload, cfg)
    if args.ce_cmd == "division-basis":
        spec = _ce_spec(args)
        X, _, _ = ce_simple_module(spec, search_budget=cfg.search_budget, seed=cfg.seed)
        basis = ce_division_basis(spec, X)
        payload = {
            "spec": spec.describe(),
            "dimension_over_F": len(basis),
            "basis": [_matrix_json(spec.field, B) for B in basis],
        }
        return _emit(payload, cfg)
    if args.ce_cmd == "tensor-factor":
        spec = _ce_spec(args)
        factors = ce_tensor_factor(spec)
        return _emit(
            {"spec": spec.describe(), "factors": [f.describe() for f in factors]}, cfg
        )
    if args.ce_cmd == "norm-image":
        F = _field(args)
        spec = CESpec(F, F.parse_element(args.s), F.zero())
        image = ce_norm_image(spec, bound=cfg.norm_image_bound)
        return _emit(
            {
                "field": F.spec(),
                "s": args.s,
                "norm_image": sorted(F.to_str(v) for v in image),
                "size": len(image),
            },
            cfg,
        )
    raise ParseError("unknown ce subcommand")


def cmd_verify(args, cfg):
    F = _field(args)
    entries = verify_identities(args.algebra, F, seed=cfg.seed)
    payload = {
        "algebra": args.algebra,
        "field": F.spec(),
        "identities": entries,
        "all_pass": all(e["passes"] for e in entries),
    }
    return _emit(payload, cfg)


def cmd_a1(args, cfg):
    F = _field(args)
    if args.a1_cmd == "factor":
        modulus = None
        if args.modulus:
            modulus = [F.parse_element(c) for c in args.modulus.split(",")]
        ce_params = None
        if args.ideal == "CE_from_maximal":
            ce_params = (F.parse_element(args.s), F.parse_element(args.a))
        alg = factor_algebra(args.ideal, F, modulus=modulus, ce_params=ce_params)
        payload = {
            "ideal": args.ideal,
            "field": F.spec(),
            "dimension": alg.dim,
            "labels": alg.labels,
            "centre_dimension": len(alg.centre()) if alg.dim <= 81 else "skipped",
        }
        return _emit(payload, cfg)
    if args.a1_cmd == "module-l":
        H, Xm, Ym = module_L(F)
        payload = {
            "field": F.spec(),
            "h_matrix": _matrix_json(F, H),
            "x_matrix": _matrix_json(F, Xm),
            "y_matrix": _matrix_json(F, Ym),
            "dimension": F.n,
        }
        return _emit(payload, cfg)
    raise ParseError("unknown a1 subcommand")


def cmd_spec(args, cfg):
    F = _field(args)
    if args.spec_cmd == "classify":
        if args.zero:
            prime = CentrePrime(args.algebra, "zero")
        elif args.height1:
            gen = args.height1
            if "," in gen:
                kind, coeffs = gen.split(":", 1)
                prime = CentrePrime(
                    args.algebra,
                    "height1",
                    generator=(kind, [F.parse_element(c) for c in coeffs.split(",")]),
                    ext_field=F,
                )
            else:
                prime = CentrePrime(args.algebra, "height1", generator=gen, ext_field=F)
        else:
            Fp = F
            if args.ext:
                mod = [int(c) for c in args.ext.split(",")]
                from .fields import ExtensionField

                Fp = ExtensionField(F.p, mod, F.n, [F.q])
            # split only before `name=`: extension coordinates contain commas
            import re

            coords = {}
            for part in re.split(r",(?=[A-Za-z_]+=)", args.point):
                if "=" not in part:
                    raise ParseError(f"bad coordinate chunk {part!r}")
                k, v = part.split("=", 1)
                coords[k.strip()] = Fp.parse_element(v.strip())
            names = ("r", "t") if args.algebra == "A1" else ("s", "t")
            if set(coords) != set(names):
                raise ParseError(
                    f"expected coordinates {names[0]}=..,{names[1]}=.., got {sorted(coords)}"
                )
            prime = CentrePrime(
                args.algebra,
                "point",
                ext_field=Fp,
                coords=(coords[names[0]], coords[names[1]]),
            )
        rep = classify_prime(prime, search_budget=cfg.search_budget)
        return _emit(rep.to_json(), cfg)
    if args.spec_cmd == "atlas":
        atlas = enumerate_spectrum(
            args.algebra,
            F,
            max_ext_degree=args.max_ext_degree or cfg.atlas_ext_degree,
            search_budget=cfg.search_budget,
        )
        if cfg.output == "dot":
            print(atlas_to_dot(atlas))
            return 0
        payload = dict(atlas)
        payload["points"] = [r.to_json() for r in atlas["points"]]
        payload["height1"] = [
            {k: v for k, v in h.items() if k not in ("c_value", "poly")}
            for h in atlas["height1"]
        ]
        payload["edges"] = [list(e) for e in atlas["edges"]]
        return _emit(payload, cfg)
    raise ParseError("unknown spec subcommand")


def cmd_aut(args, cfg):
    F = _field(args)
    if args.aut_cmd == "check":
        kw = {}
        if args.algebra == "B":
            vals = [int(v) for v in args.matrix.split(",")]
            kw["mat"] = ((vals[0], vals[1]), (vals[2], vals[3]))
            kw["lam"] = F.parse_element(getattr(args, "lambda"))
            kw["mu"] = F.parse_element(args.mu)
        elif args.algebra == "A":
            kw["lam"] = F.parse_element(getattr(args, "lambda"))
            kw["mu"] = F.parse_element(args.mu)
            kw["swap"] = args.swap
        elif args.algebra == "A1":
            kw["lam"] = F.parse_element(getattr(args, "lambda"))
            kw["swap"] = args.swap
        else:
            kw["lam"] = F.parse_element(getattr(args, "lambda"))
            kw["mu"] = F.parse_element(args.mu)
            kw["i"] = args.i
            kw["invert"] = args.invert
        rep = make_auto(args.algebra, F, **kw)
        payload = {"valid": True, **rep.describe()}
        return _emit(payload, cfg)
    if args.aut_cmd == "recognize":
        alg = GWAAlgebra(args.algebra, F)

        def parse_image(text):
            c, i, j = text.split(",")
            return alg.monomial(int(i), int(j), F.parse_element(c))

        names = ("x", "y") if args.algebra == "A1" else ("h", "x")
        images = {
            names[0]: parse_image(args.image1),
            names[1]: parse_image(args.image2),
        }
        rep = auto_recognize(args.algebra, F, images)
        if rep is None:
            return _emit({"recognized": False}, cfg)
        return _emit({"recognized": True, **rep.describe()}, cfg)
    raise ParseError("unknown aut subcommand")


def build_parser():
    top = argparse.ArgumentParser(
        prog="qweyl",
        description="exact structure theory of root-of-unity monomial algebras",
    )
    top.add_argument("--config", help="key = value configuration file")
    top.add_argument("--format", choices=("json", "text", "dot"), default=None)
    top.add_argument("--search-budget", type=int, default=None)
    # the same options are accepted after the subcommand; SUPPRESS keeps a
    # leaf parser from clobbering a value given at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS)
    common.add_argument(
        "--format", choices=("json", "text", "dot"), default=argparse.SUPPRESS
    )
    common.add_argument("--search-budget", type=int, default=argparse.SUPPRESS)
    sub = top.add_subparsers(dest="cmd", required=True)

    ce = sub.add_parser("ce", help="cyclic-algebra engine")
    ce_sub = ce.add_subparsers(dest="ce_cmd", required=True)
    for name in ("classify", "module", "division-basis", "tensor-factor"):
        p = ce_sub.add_parser(name, parents=[common])
        p.add_argument("--field", required=True)
        p.add_argument("--s", required=True)
        p.add_argument("--a", required=True)
    p = ce_sub.add_parser("norm-image", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("--s", required=True)

    ver = sub.add_parser("verify", help="identity suites")
    ver_sub = ver.add_subparsers(dest="verify_cmd", required=True)
    p = ver_sub.add_parser("identities", parents=[common])
    p.add_argument("--algebra", required=True, choices=("A", "A1", "CA", "B"))
    p.add_argument("--field", required=True)

    a1 = sub.add_parser("a1", help="quantum Weyl algebra constructions")
    a1_sub = a1.add_subparsers(dest="a1_cmd", required=True)
    p = a1_sub.add_parser("factor", parents=[common])
    p.add_argument("--ideal", required=True,
                   choices=("A1_mod_t_r", "A1_mod_r_f", "A1_mod_t_g", "A1_mod_h_f", "CE_from_maximal"))
    p.add_argument("--field", required=True)
    p.add_argument("--modulus", help="comma-separated coefficients, low to high")
    p.add_argument("--s")
    p.add_argument("--a")
    p = a1_sub.add_parser("module-l", parents=[common])
    p.add_argument("--field", required=True)

    spc = sub.add_parser("spec", help="centre-prime classification")
    spc_sub = spc.add_subparsers(dest="spec_cmd", required=True)
    p = spc_sub.add_parser("classify", parents=[common])
    p.add_argument("--algebra", required=True, choices=("A", "A1", "CA", "B"))
    p.add_argument("--field", required=True)
    p.add_argument("--point", help="e.g. r=2,t=1 (A1) or s=2,t=1")
    p.add_argument("--ext", help="residue-field modulus coefficients over F_p")
    p.add_argument("--height1", help="named generator or poly_t:c0,c1,...")
    p.add_argument("--zero", action="store_true")
    p = spc_sub.add_parser("atlas", parents=[common])
    p.add_argument("--algebra", required=True, choices=("A", "A1", "CA", "B"))
    p.add_argument("--field", required=True)
    p.add_argument("--max-ext-degree", type=int, default=None)

    aut = sub.add_parser("aut", help="automorphism checks")
    aut_sub = aut.add_subparsers(dest="aut_cmd", required=True)
    p = aut_sub.add_parser("check", parents=[common])
    p.add_argument("--algebra", required=True, choices=("A", "A1", "CA", "B"))
    p.add_argument("--field", required=True)
    p.add_argument("--matrix", help="a,b,c,d for the torus family")
    p.add_argument("--lambda", default="1")
    p.add_argument("--mu", default="1")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--swap", action="store_true")
    p.add_argument("--invert", action="store_true")
    p = aut_sub.add_parser("recognize", parents=[common])
    p.add_argument("--algebra", required=True, choices=("A", "A1", "CA", "B"))
    p.add_argument("--field", required=True)
    p.add_argument("--image1", required=True, help="c,i,j for the first generator image")
    p.add_argument("--image2", required=True, help="c,i,j for the second generator image")

    return top


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 64 if exc.code not in (0, None) else 0
    try:
        cfg = load_config(
            args.config,
            output=args.format,
            search_budget=args.search_budget,
        )
        if args.cmd == "ce":
            return cmd_ce(args, cfg)
        if args.cmd == "verify":
            return cmd_verify(args, cfg)
        if args.cmd == "a1":
            return cmd_a1(args, cfg)
        if args.cmd == "spec":
            return cmd_spec(args, cfg)
        if args.cmd == "aut":
            return cmd_aut(args, cfg)
        raise ParseError(f"unknown command {args.cmd!r}")
    except QweylError as exc:
        print(json.dumps(exc.payload(), indent=2))
        return 1


if __name__ == "__main__":
    sys.exit(main())
