"""Command line entry point.

A failed check exits with 2 and leaves a witness in the report; usage or
input errors exit with 1.
"""
from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path

from . import __version__
from .io import dump_json, file_digest, load_complex, load_json, resolve, sigma_from_json, sigma_to_json

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class Run:
    """Collects the manifest of one invocation."""

    def __init__(self, argv):
        self.command = list(argv)
        self.inputs = {}
        self.timings = {}
        self._t = time.perf_counter()

    def read(self, path):
        p = resolve(path)
        self.inputs[str(path)] = file_digest(p)
        return p

    def stage(self, name):
        now = time.perf_counter()
        self.timings[name] = round(now - self._t, 3)
        self._t = now

    def report(self, result, path=None, passed=True):
        out = {"manifest": {"command": self.command, "inputs": self.inputs,
                            "version": __version__, "timings": self.timings},
               "result": result, "passed": passed}
        if path:
            dump_json(out, path)
        else:
            import json
            print(json.dumps(out, sort_keys=True, indent=1))
        return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args, run):
    from .torus import build_block, build_prism, build_solid_torus, classify_tetrahedra

    if args.what == "prism":
        K, side = build_prism().complex, {}
    elif args.what == "block":
        B = build_block()
        K = B.complex
        side = {"bottom_center": B.bottom_center, "top_center": B.top_center,
                "bottom_outer": B.bottom_outer, "top_outer": B.top_outer}
    else:
        N = build_solid_torus()
        K = N.complex
        a, b = classify_tetrahedra(N)
        side = {"interior_vertices": N.interior_vertices, "boundary_vertices": N.boundary_vertices,
                "core": N.core.cycle, "meridian": N.meridian, "longitude": N.longitude,
                "type_a": sorted(a), "type_b": sorted(b)}
    run.stage("build")
    digest = dump_json(K.to_json(), args.out) if args.out else None
    if args.sidecar:
        dump_json(side, args.sidecar)
    result = {"f_vector": K.f_vector(), "output_digest": digest or _digest(K.to_json())}
    return run.report(result, args.report)


def _digest(obj):
    from .io import digest
    return digest(obj)


def cmd_subdivide(args, run):
    from .subdivision import ps_subdivide_3, subdivide_solid_torus, subdivide_surface
    from .torus import build_solid_torus

    if args.what == "solid-torus":
        Np = subdivide_solid_torus(build_solid_torus())
        R, carrier = Np.complex, Np.carrier
    else:
        if not args.input:
            raise UsageError("--in is required")
        K = load_complex(run.read(args.input))
        R, carrier = (subdivide_surface(K) if args.what == "surface" else ps_subdivide_3(K))
    run.stage("subdivide")
    if args.out:
        dump_json(R.to_json(), args.out)
    if args.carrier:
        dump_json(carrier.to_json(), args.carrier)
    return run.report({"f_vector": R.f_vector(), "output_digest": _digest(R.to_json())}, args.report)


def cmd_assemble(args, run):
    from .assembly import BUILTINS, assemble_sigma, step3_subdivide

    if not args.builtin:
        raise UsageError("only --builtin inputs are supported: %s" % ", ".join(sorted(BUILTINS)))
    ext, fixtures = BUILTINS[args.builtin]()
    sigma = assemble_sigma(ext, fixtures)
    run.stage("assemble")
    if not args.raw:
        sigma = step3_subdivide(sigma)
        run.stage("square_kill")
    data = sigma_to_json(sigma)
    digest = dump_json(data, args.out)
    run.stage("write")
    return run.report({"f_vector": sigma.complex.f_vector(), "cores": len(sigma.cores),
                       "stage": sigma.stage, "output": str(args.out), "output_digest": digest},
                      args.report)


def cmd_verify(args, run):
    from .assembly import verify_theorem3

    sigma = sigma_from_json(load_json(run.read(args.input)))
    run.stage("load")
    cert = verify_theorem3(sigma)
    run.stage("verify")
    return run.report(cert.to_json(), args.report, cert.passed)


def cmd_davis(args, run):
    from .coxeter import (check_vertex_links, davis_complex, gromov_check, join_product_check,
                          manifold_check)
    from .complex import is_sphere

    L = load_complex(run.read(args.input))
    P = davis_complex(L, args.vertex_cap)
    if args.out:
        dump_json(P.to_json(), args.out)
    if args.action == "build":
        return run.report({"f_vector": P.f_vector(), "euler": P.euler_characteristic()}, args.report)
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    res, ok = {}, True
    for p in props:
        if p == "a":
            g = gromov_check(P, L)
            res["a"] = {"locally_cat0": g.locally_cat0, "witness": g.witness}
            ok &= g.locally_cat0
        elif p == "b":
            res["b"] = check_vertex_links(P, L)
            ok &= res["b"]
        elif p == "c":
            split = _join_split(L)
            res["c"] = None if split is None else join_product_check(*split, vertex_cap=args.vertex_cap)
            ok &= res["c"] is not False
        elif p == "e":
            sphere = L.dim <= 2 and is_sphere(L, L.dim)
            res["e"] = {"L_is_sphere": sphere, "manifold": manifold_check(P, L)}
            ok &= (not sphere) or res["e"]["manifold"]
        else:
            raise UsageError("unknown property %r (use a, b, c, e)" % p)
    res["f_vector"] = P.f_vector()
    return run.report(res, args.report, ok)


def _join_split(L):
    """Write L as a join of two full subcomplexes when its complement graph
    is disconnected."""
    import networkx as nx

    G = nx.complement(nx.Graph([tuple(e) for e in L.labels_of(L.faces(1))]))
    G.add_nodes_from(L.vertices)
    comps = sorted((sorted(c) for c in nx.connected_components(G)), key=lambda c: c[0])
    if len(comps) < 2:
        return None
    first = comps[0]
    rest = [v for c in comps[1:] for v in c]
    return L.induced(first), L.induced(rest)


def cmd_check(args, run):
    from .caprace import caprace_check, isolated_implies_caprace
    from .complex import enumerate_squares, has_isolated_squares, is_flag

    L = load_complex(run.read(args.input))
    if args.what == "caprace":
        r = caprace_check(L)
        return run.report(r.to_json(), args.report, r.relatively_hyperbolic)
    if args.what == "flag":
        r = is_flag(L)
        return run.report({"flag": r.flag, "witness": r.witness}, args.report, r.flag)
    if args.what == "squares":
        sq = enumerate_squares(L)
        iso = has_isolated_squares(L, sq)
        return run.report({"squares": [s.cycle for s in sq], "isolated": iso.ok,
                           "offending_vertex": iso.offending_vertex}, args.report, iso.ok)
    r = isolated_implies_caprace(L)
    return run.report(vars(r), args.report, r.holds)


def _seconds(text):
    m = re.fullmatch(r"(\d+(?:\.\d+)?)(ms|s|m)?", text)
    if not m:
        raise UsageError("bad budget %r" % text)
    value, unit = float(m.group(1)), m.group(2) or "s"
    return value / 1000 if unit == "ms" else value * (60 if unit == "m" else 1)


def cmd_knot_cert(args, run):
    from .groups import GroupPresentation, abelianization
    from .knotcert import (KnotReport, certify_component, nonabelian_certificate,
                           trefoil_presentation)

    targets = [t.strip() for t in args.targets.split(",") if t.strip()]
    budget = _seconds(args.budget)
    if args.presentation:
        if args.presentation == "trefoil":
            P = trefoil_presentation()
        else:
            data = load_json(run.read(args.presentation))
            P = GroupPresentation.parse(data["generators"], data["relators"])
        rep = KnotReport(abelianization(P), P, nonabelian_certificate(P, targets, budget))
    elif args.input:
        sigma = sigma_from_json(load_json(run.read(args.input)))
        run.stage("load")
        rep = certify_component(sigma, args.component, targets, budget)
    else:
        raise UsageError("give --in or --presentation")
    run.stage("certify")
    return run.report(rep.to_json(), args.report, rep.certificate is not None)


def cmd_corpus(args, run):
    from .corpus import run_suite

    try:
        rep = run_suite(args.seed, args.count)
    except ValueError as e:
        raise UsageError(str(e))
    run.stage("suite")
    return run.report(rep.to_json(), args.report, rep.passed)


# ---------------------------------------------------------------------------


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def make_parser():
    p = _Parser(prog="knotflag", description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=1, help="worker count (runs are deterministic for any value)")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--report", help="write the JSON report here instead of stdout")

    b = sub.add_parser("build", help="prism, block or solid torus")
    b.add_argument("what", choices=["prism", "block", "solid-torus"])
    b.add_argument("--out")
    b.add_argument("--sidecar", help="vertex classification, core and marked cycles")
    common(b)
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("subdivide", help="template, gadget or solid torus refinement")
    s.add_argument("what", choices=["surface", "solid-torus", "complex3"])
    s.add_argument("--in", dest="input")
    s.add_argument("--out")
    s.add_argument("--carrier")
    common(s)
    s.set_defaults(func=cmd_subdivide)

    a = sub.add_parser("assemble", help="glue solid tori into an exterior")
    a.add_argument("--builtin", choices=["unknot", "unlink", "wrong-framing"])
    a.add_argument("--out", default="sigma.json")
    a.add_argument("--raw", action="store_true", help="stop before the square-killing pass")
    common(a)
    a.set_defaults(func=cmd_assemble)

    v = sub.add_parser("verify", help="certificate for an assembled complex")
    v.add_argument("what", choices=["theorem3"])
    v.add_argument("--in", dest="input", default="sigma.json")
    common(v)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("davis", help="Davis complex of a small complex")
    d.add_argument("action", choices=["build", "check"])
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--out")
    d.add_argument("--props", default="a,b,c,e")
    d.add_argument("--vertex-cap", type=int, default=16)
    common(d)
    d.set_defaults(func=cmd_davis)

    c = sub.add_parser("check", help="flag, squares, Caprace or the isolated-squares implication")
    c.add_argument("what", choices=["caprace", "flag", "squares", "implication"])
    c.add_argument("--in", dest="input", required=True)
    common(c)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("knot-cert", help="nonabelian finite quotient of a knot group")
    k.add_argument("--in", dest="input")
    k.add_argument("--presentation", help="'trefoil' or a JSON file with generators and relators")
    k.add_argument("--component", type=int, default=0)
    k.add_argument("--targets", default="S3,D4,A4,S4,A5")
    k.add_argument("--budget", default="60s")
    common(k)
    k.set_defaults(func=cmd_knot_cert)

    r = sub.add_parser("corpus", help="seeded random flag complexes through the invariant suite")
    r.add_argument("--seed", type=int, default=1)
    r.add_argument("--count", type=int, default=100)
    common(r)
    r.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = make_parser().parse_args(argv)
    run = Run(argv)
    try:
        return args.func(args, run)
    except UsageError as e:
        print("knotflag: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, ValueError, KeyError) as e:
        print("knotflag: input error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
