"""Command line: build, classify-pencil, correspond, project, scan, verify, pipeline.

Every command prints a single JSON document (or writes it to --out).
"""

from __future__ import annotations

import argparse
import json
import sys

from .correspondences import (
    CorrespondenceError,
    b_line_to_x_line,
    quartic_splitting_check,
    x_conic_to_y_line,
    x_line_to_b_line,
    y_line_to_x_conic,
)
from .exterior import (
    ConicData,
    GrassLine,
    TwoTensor,
    act_subspace,
    act_tensor,
    classify_plane_section,
    decompose,
    double_line_normal_form,
    random_invertible,
)
from .fano import ThreefoldPair, build_threefold
from .field import parse_field
from .linalg import Subspace
from .pencils import Pencil, classify_pencil, make_a_line, make_b_line
from .projection import (
    CenterError,
    chart_tensor,
    chart_tuple,
    consistent_residuals,
    equation_residuals,
    five_equations_residual,
    g25_member,
    make_context,
    project,
    restrict_to_x,
    segre_context,
)
from .rng import SplitMix64
from .scan import accepted_pair, interpolate_w, run_scans, scan_sextic, scan_w_and_x, scan_y, y_lines


class InputError(ValueError):
    pass


# ------------------------------------------------------------ helpers


def seed_type(s: str) -> int:
    try:
        v = int(s, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed {s!r} is not an integer")
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed {v} is not a 64-bit unsigned value")
    return v


def field_type(s: str):
    try:
        return parse_field(s)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")


def emit(obj, out: str | None = None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def grass_line_from_json(F, d) -> GrassLine:
    return GrassLine(Subspace.from_json(F, d["vertex"]), Subspace.from_json(F, d["envelope"]))


def _pencil_arg(F, d):
    return Pencil.from_json(F, d)


def _check(name, ok, witness=None):
    entry = {"check": name, "passed": bool(ok)}
    if witness is not None:
        entry["witness"] = witness
    return entry


# --------------------------------------------------------------- suites


def suite_pencil(F, seed: int):
    rng = SplitMix64(seed)
    out = []
    a_ranks, b_ranks, b_agree, a_ok, b_ok = [], [], 0, 0, 0
    for _ in range(50):
        g = random_invertible(F, rng)
        a = Pencil.of(*[act_tensor(g, w) for w in make_a_line(F).gens])
        c = classify_pencil(a)
        a_ranks.append(c.quadric_rank)
        a_ok += c.tag == "A"
        b = Pencil.of(*[act_tensor(g, w) for w in make_b_line(F).gens])
        c = classify_pencil(b)
        b_ranks.append(c.quadric_rank)
        b_ok += c.tag == "B"
        b_agree += (c.quadric_rank == 3) == (c.witness is not None and c.witness.dim == 1)
    out.append(_check("A conjugates have kernel quadric rank 4", a_ok == 50 and set(a_ranks) == {4}, a_ranks))
    out.append(_check("B conjugates have kernel quadric rank 3 with a witness", b_ok == 50 and set(b_ranks) == {3}, b_ranks))
    out.append(_check("B criteria agree", b_agree == 50, b_agree))
    plane = Subspace.span(F, 15, [TwoTensor.from_terms(F, t).coords for t in
                                  ([(1, 0, 1)], [(1, 0, 2)], [(1, 0, 3), (1, 1, 2)])])
    recon = 0
    for _ in range(25):
        g = random_invertible(F, rng)
        P = act_subspace(g, plane, "V")
        if classify_plane_section(P).tag == "double_line":
            try:
                double_line_normal_form(P)
                recon += 1
            except (ValueError, ArithmeticError):
                pass
    out.append(_check("double line conjugates reconstructed", recon == 25, recon))
    return out


def chart_points(F, seed: int, n: int = 200):
    rng = SplitMix64(seed)
    return [[rng.element(F) for _ in range(6)] for _ in range(n)]


def suite_projection(F, seed: int):
    ctx = make_context(make_a_line(F))
    spec_bad, cons_bad, printed5_bad, printed3_bad, tuple_bad, member_bad = [], [], 0, 0, 0, 0
    for params in chart_points(F, seed):
        pt = project(ctx, chart_tensor(F, *params))
        if pt.coords != chart_tuple(F, *params):
            tuple_bad += 1
        if any(five_equations_residual(pt)):
            spec_bad.append([F.to_json(x) for x in params])
        if any(consistent_residuals(pt)):
            cons_bad.append([F.to_json(x) for x in params])
        r = equation_residuals(pt)
        printed5_bad += bool(r["5_printed"])
        printed3_bad += bool(r["3_printed"])
        member_bad += not g25_member(pt)
    return [
        _check("projection matches the chart tuple", tuple_bad == 0, tuple_bad),
        _check("equations (1)-(4) and corrected (5) vanish", not spec_bad,
               {"failing_points": len(spec_bad), "first": spec_bad[0] if spec_bad else None}),
        _check("substitution-consistent quadrics vanish", not cons_bad, len(cons_bad)),
        _check("printed (5) fails somewhere", printed5_bad > 0, printed5_bad),
        _check("printed (3) fails somewhere", printed3_bad > 0, printed3_bad),
        _check("images lie on G(2,5)", member_bad == 0, member_bad),
    ]


def suite_scan(F, seed: int, workers: int):
    pair = build_threefold(seed, F)
    try:
        wx = scan_w_and_x(pair, workers=workers)
    except AssertionError as e:
        return [_check("W cross-check", False, getattr(e, "witness", str(e)))]
    y = scan_y(pair, workers=workers)
    p = F.char
    expected = p ** 3 + p ** 2 + p + 1
    window = 10 * p ** 1.5
    return [
        _check("W cross-check at every point", True, wx.w.extra["points_checked"]),
        _check("#X in the window", abs(wx.x.count - expected) <= window, wx.x.count),
        _check("#Y in the window", abs(y.count - expected) <= window, y.count),
        _check("X smooth at scanned points", wx.x.extra["singular_points"] == 0),
        _check("Y smooth at scanned points", y.extra["singular_points"] == 0),
    ]


def suite_correspondence(F, seed: int, workers: int):
    pair, ss = accepted_pair(seed, F, workers)
    out = []
    bad = []
    for line in ss.wx.lines:
        try:
            back = b_line_to_x_line(pair, x_line_to_b_line(pair, line))
            if back != line:
                bad.append(line.to_json())
        except CorrespondenceError as e:
            bad.append(str(e))
    out.append(_check("line round trips", not bad and ss.wx.lines, {"lines": len(ss.wx.lines), "failures": bad[:1]}))
    ok = 0
    lines = y_lines(pair, ss.y)
    for yl in lines[:10]:
        try:
            if x_conic_to_y_line(pair, y_line_to_x_conic(pair, yl.pencil)).subspace == yl.pencil.subspace:
                ok += 1
        except CorrespondenceError:
            pass
    out.append(_check("conic round trips", ok == min(10, len(lines)) and ok >= 5, ok))
    return out


SUITES = ("pencil", "projection", "correspondence", "scan")


def cmd_verify(args):
    F = args.field
    suites = SUITES if args.suite == "all" else (args.suite,)
    result = {}
    for name in suites:
        if name == "pencil":
            checks = suite_pencil(F, args.seed)
        elif name == "projection":
            checks = suite_projection(F, args.seed)
        else:
            Fp = parse_field(f"fp:{args.p}") if args.p else F
            if not Fp.char:
                raise InputError(f"suite {name} needs a prime field (use --p or --field fp:P)")
            checks = suite_scan(Fp, args.seed, args.workers) if name == "scan" else \
                suite_correspondence(Fp, args.seed, args.workers)
        result[name] = checks
    passed = all(c["passed"] for cs in result.values() for c in cs)
    return {"passed": passed, "suites": result}, (0 if passed else 1)


# -------------------------------------------------------------- pipeline


def run_pipeline(seed: int, F, workers: int = 1, max_lines: int = 3):
    pair, ss = accepted_pair(seed, F, workers)
    p = F.char
    wx, y = ss.wx, ss.y
    report = {
        "seed": seed,
        "field": F.spec(),
        "pair": {"seed": pair.seed, "requested_seed": pair.requested_seed, "reseeds": pair.reseeds,
                 "certificate": pair.certificate, "checks": ss.checks},
        "counts": {"Y": y.count, "X": wx.x.count, "W": wx.w.count, "gammaW": wx.gamma.count,
                   "expected": p ** 3 + p ** 2 + p + 1},
    }
    xl = []
    for line in wx.lines:
        checks = []
        b = x_line_to_b_line(pair, line, checks)
        back = b_line_to_x_line(pair, b, checks)
        xl.append({"vertex": [int(x) for x in line.vertex.basis[0]],
                   "b_line": b.subspace.to_json(), "round_trip": back == line,
                   "checks_passed": all(c["passed"] for c in checks)})
    report["x_lines"] = xl
    quartic = interpolate_w(pair, wx, workers=workers)
    report["quartic"] = quartic.report
    lines = y_lines(pair, y)
    report["y_lines"] = {"count": len(lines), "A": sum(l.tag == "A" for l in lines),
                         "B": sum(l.tag == "B" for l in lines)}
    # B-lines of Y: conic construction versus the line correspondence, recorded only
    b_records = []
    for yl in lines:
        if yl.tag != "B":
            continue
        conic = y_line_to_x_conic(pair, yl.pencil)
        xline = b_line_to_x_line(pair, yl.pencil)
        b_records.append({"conic_tag": conic.tag, "x_line_in_conic_plane": conic.plane.contains_space(xline.pencil)})
    report["b_line_conics"] = b_records
    processed = []
    x_points = [decompose(TwoTensor(pair.field, tuple(pair.field(c) for c in t))) for t in wx.x.inventory]
    for yl in [l for l in lines if l.tag == "A"][:max_lines]:
        entry = {"line": [list(r) for r in yl.points]}
        checks = []
        conic = y_line_to_x_conic(pair, yl.pencil, checks)
        back = x_conic_to_y_line(pair, conic, checks)
        entry["conic"] = {"tag": conic.tag, "round_trip": back.subspace == yl.pencil.subspace,
                          "checks_passed": all(c["passed"] for c in checks)}
        split = quartic_splitting_check(pair, yl.pencil, quartic.quartic, wx.w.inventory)
        entry["splitting"] = {k: v for k, v in split.items() if k != "checks"}
        entry["splitting"]["checks_passed"] = all(c["passed"] for c in split["checks"])
        ctx = make_context(yl.pencil)
        images = {}
        centers = 0
        members = 0
        for x in x_points:
            try:
                pt = restrict_to_x(ctx, pair, x)
            except CenterError:
                centers += 1
                continue
            members += g25_member(pt)
            key = _projective_key(pair.field, pt.coords)
            images.setdefault(key, []).append(x)
        entry["projection"] = {"points": len(x_points), "g25_members": members, "center_hits": centers,
                               "image_collisions": sum(len(v) - 1 for v in images.values())}
        A, B = segre_context(ctx)
        sext = scan_sextic(pair, A, B)
        entry["sextic"] = {"count": sext.count, "hasse_ok": abs(sext.count - (p + 1)) <= _ceil_2sqrt(p)}
        processed.append(entry)
    report["a_lines"] = processed
    return report, pair, ss


def _projective_key(F, coords):
    from .exterior import normalize_projective
    return tuple(int(x) for x in normalize_projective(F, coords))


def _ceil_2sqrt(p):
    from math import isqrt
    r = isqrt(4 * p)
    return r if r * r == 4 * p else r + 1


def cmd_pipeline(args):
    if not args.field.char:
        raise InputError("pipeline needs a prime field")
    report, _, _ = run_pipeline(args.seed, args.field, args.workers, args.lines)
    return report, 0


# ------------------------------------------------------------- commands


def cmd_build(args):
    if args.accept:
        pair, _ = accepted_pair(args.seed, args.field, args.workers)
    else:
        pair = build_threefold(args.seed, args.field)
    return pair.to_json(), 0


def cmd_classify(args):
    F = args.field
    if args.standard:
        ell = make_a_line(F) if args.standard == "a" else make_b_line(F)
    elif args.pencil:
        ell = _pencil_arg(F, load_json(args.pencil))
    else:
        raise InputError("give --pencil FILE or --standard {a,b}")
    return {"pencil": ell.to_json(), "class": classify_pencil(ell).to_json()}, 0


def cmd_correspond(args):
    pair = ThreefoldPair.from_json(load_json(args.pair))
    F = pair.field
    payload = load_json(args.input)
    checks = []
    try:
        if args.source == "x-line":
            out = x_line_to_b_line(pair, grass_line_from_json(F, payload), checks).to_json()
        elif args.source == "b-line":
            out = b_line_to_x_line(pair, Pencil.from_json(F, payload), checks).to_json()
        elif args.source == "x-conic":
            out = x_conic_to_y_line(pair, ConicData.from_json(F, payload), checks).to_json()
        else:
            out = y_line_to_x_conic(pair, Pencil.from_json(F, payload), checks).to_json()
    except CorrespondenceError as e:
        return {"error": str(e), "checks": checks}, 1
    return {"result": out, "checks": checks}, 0


def cmd_project(args):
    pair = ThreefoldPair.from_json(load_json(args.pair))
    F = pair.field
    ell = Pencil.from_json(F, load_json(args.line))
    ctx = make_context(ell)
    if args.point:
        w = TwoTensor.from_json(F, load_json(args.point))
        return project(ctx, w).to_json(), 0
    wx = scan_w_and_x(pair, workers=args.workers)
    pts = []
    for t in wx.x.inventory:
        x = decompose(TwoTensor(F, tuple(F(c) for c in t)))
        pts.append(restrict_to_x(ctx, pair, x).to_json())
    return {"points": pts}, 0


def cmd_scan(args):
    pair = ThreefoldPair.from_json(load_json(args.pair))
    if args.p is not None and pair.field.char != args.p:
        raise InputError(f"pair is over {pair.field.spec()}, not fp:{args.p}")
    if args.what == "y":
        rep = scan_y(pair, workers=args.workers)
    elif args.what in ("x", "w", "gammaw"):
        wx = scan_w_and_x(pair, workers=args.workers)
        rep = {"x": wx.x, "w": wx.w, "gammaw": wx.gamma}[args.what]
    else:
        if not args.line:
            raise InputError("sextic scan needs --line (an A-line of Y)")
        ctx = make_context(Pencil.from_json(pair.field, load_json(args.line)))
        A, B = segre_context(ctx)
        rep = scan_sextic(pair, A, B)
    if args.inventory:
        emit(rep.to_json(), args.inventory)
    return rep.to_json(inventory=False), 0


# ---------------------------------------------------------------- parser


def build_parser():
    ap = argparse.ArgumentParser(prog="genus8", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, field=True):
        p.add_argument("--seed", type=seed_type, default=1)
        if field:
            p.add_argument("--field", type=field_type, default=parse_field("fp:11"))
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("build", help="seeded pair (X, Y) as JSON")
    common(p)
    p.add_argument("--accept", action="store_true", help="also require the scan-level checks")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classify-pencil")
    common(p)
    p.add_argument("--pencil")
    p.add_argument("--standard", choices=("a", "b"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("correspond")
    common(p, field=False)
    p.add_argument("--from", dest="source", required=True, choices=("x-line", "b-line", "x-conic", "y-line"))
    p.add_argument("--pair", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_correspond)

    p = sub.add_parser("project")
    common(p, field=False)
    p.add_argument("--line", required=True)
    p.add_argument("--pair", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point")
    g.add_argument("--scan-x", action="store_true")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("scan")
    common(p, field=False)
    p.add_argument("--what", required=True, choices=("x", "y", "w", "gammaw", "sextic"))
    p.add_argument("--p", type=int)
    p.add_argument("--pair", required=True)
    p.add_argument("--line")
    p.add_argument("--inventory")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify")
    common(p)
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pipeline")
    common(p)
    p.add_argument("--lines", type=int, default=3, help="A-lines processed end to end")
    p.set_defaults(func=cmd_pipeline)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "p", None) is not None:
        try:
            parse_field(f"fp:{args.p}")
        except ValueError as e:
            ap.error(f"--p: {e}")
    try:
        obj, status = args.func(args)
    except InputError as e:
        sys.stderr.write(f"genus8: {e}\n")
        return 2
    emit(obj, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
