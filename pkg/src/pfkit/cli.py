"""Command-line front end.

Verbs map one-to-one onto library operations; reports are human-readable by
default and machine-readable with --json.  Exit codes: 0 for success or a
mathematically positive answer, 1 for a mathematically negative answer
(e.g. "not confined"), 2 for errors (bad input, resource limits).
"""

from __future__ import annotations

import argparse
import glob as globmod
import json
import os
import sys

from . import catalog
from .pfield import (PFError, PFHom, PartialField, associates, fun_enumerate,
                     generated_subfield, hom_enumerate, induced_check,
                     product_pf)
from .pmatrix import (NOT_IN_PF, PFMatrix, blocking_or_induced,
                      connectivity_lambda, cross_ratios, minor_contains)
from .matroid import Matroid, isomorphic, make_named
from . import universal as _universal
from . import confine as _confine
from .limits import ResourceLimitError


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------

class Outcome:
    def __init__(self, code, data, lines=None):
        self.code = code
        self.data = data
        self.lines = lines if lines is not None else [str(data)]


def _labels(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _pairs(text):
    out = []
    for chunk in _labels(text):
        x, _, y = chunk.partition(":")
        if not y:
            raise ValueError(f"expected label:label, got {chunk!r}")
        out.append((x, y))
    return out


def _assignment(text):
    out = {}
    for chunk in _labels(text):
        k, eq, v = chunk.partition("=")
        if not eq:
            raise ValueError(f"expected name=expr, got {chunk!r}")
        out[k.strip()] = v.strip()
    return out


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_matrix(path, pf_name=None):
    pf = catalog.make(pf_name) if pf_name else None
    return PFMatrix.from_json(_load_json(path), pf=pf)


def _load_matroid(path):
    return Matroid.from_json(_load_json(path))


def _make_sub(pf, spec):
    """--sub value: 'diag' for the diagonal of a product of equal components,
    otherwise a comma list of generator expressions."""
    if spec == "diag":
        comps = getattr(pf, "components", None)
        if not comps:
            raise PFError("--sub diag needs a product partial field")
        base = comps[0]
        gens = [tuple([g] * len(comps)) for g in base.generators]
        return PartialField(pf.ring, gens, "finite", name=f"diag({base.name})")
    return generated_subfield(pf, [pf.parse(e) for e in _labels(spec)])


def _mat_json(A):
    return A.to_json()


def _bool_outcome(flag, data, yes, no):
    return Outcome(0 if flag else 1, data, [yes if flag else no])


# ---------------------------------------------------------------------------
# pf verbs
# ---------------------------------------------------------------------------

def _cmd_pf_list(args):
    names = catalog.base_names()
    return Outcome(0, {"names": names}, names)


def _cmd_pf_fun(args):
    pf = catalog.make(args.name)
    fs = fun_enumerate(pf)
    shows = sorted(pf.show(e) for e in fs)
    return Outcome(0, {"pf": pf.name, "fun": shows},
                   [f"fun({pf.name}) = {{{', '.join(shows)}}}"])


def _cmd_pf_assoc(args):
    pf = catalog.make(args.name)
    elems = sorted(pf.show(e) for e in associates(pf, pf.parse(args.expr)))
    return Outcome(0, {"pf": pf.name, "element": args.expr, "associates": elems},
                   [f"assoc({args.expr}) = {{{', '.join(elems)}}}"])


def _cmd_pf_hom(args):
    src, dst = catalog.make(args.src), catalog.make(args.dst)
    found = None
    if dst.group_elements() is not None:
        homs = hom_enumerate(src, dst)
        found = homs[0] if homs else None
    else:
        for h in catalog.registered_homs():
            if h.src.name == src.name and h.dst.name == dst.name:
                found = h
                break
    if found is None:
        return Outcome(1, {"src": src.name, "dst": dst.name, "hom": None},
                       ["no homomorphism"])
    images = {k: dst.show(v) for k, v in sorted(found.images.items())}
    lines = [f"{src.name} -> {dst.name}"] + [f"  {k} -> {v}"
                                             for k, v in images.items()]
    return Outcome(0, {"src": src.name, "dst": dst.name, "hom": images}, lines)


def _cmd_pf_product(args):
    pf = product_pf([catalog.make(n) for n in args.names])
    gens = sorted(pf.show(g) for g in pf.generators)
    return Outcome(0, {"name": pf.name, "generators": gens},
                   [pf.name] + [f"  {g}" for g in gens])


def _cmd_pf_sub(args):
    pf = catalog.make(args.name)
    sub = generated_subfield(pf, [pf.parse(e) for e in _labels(args.generators)])
    flag = induced_check(pf, sub)
    gens = sorted(pf.show(g) for g in sub.generators)
    verdict = {True: "induced", False: "not induced", None: "undecided"}[flag]
    data = {"pf": pf.name, "generators": gens, "induced": flag}
    return Outcome(1 if flag is False else 0, data,
                   [f"sub-partial field on {{{', '.join(gens)}}}: {verdict}"])


# ---------------------------------------------------------------------------
# mat verbs
# ---------------------------------------------------------------------------

def _cmd_mat_check(args):
    A = _load_matrix(args.matrix, args.pf)
    det, ok = A.det_and_validate("FullPMatrixCheck")
    data = {"pf": A.pf.name, "is_pf_matrix": ok}
    if det is not None:
        data["det"] = det if det == NOT_IN_PF else A.pf.show(det)
    return _bool_outcome(ok, data, "pf-matrix: yes", "pf-matrix: no")


def _cmd_mat_det(args):
    A = _load_matrix(args.matrix, args.pf)
    det, _ = A.det_and_validate("DetOnly")
    if det == NOT_IN_PF:
        return Outcome(1, {"det": NOT_IN_PF}, ["det leaves the partial field"])
    return Outcome(0, {"det": A.pf.show(det)}, [f"det = {A.pf.show(det)}"])


def _cmd_mat_pivot(args):
    A = _load_matrix(args.matrix, args.pf)
    B = A.pivot(args.row, args.col)
    return Outcome(0, {"matrix": _mat_json(B)}, [B.show()])


def _cmd_mat_normalize(args):
    A = _load_matrix(args.matrix, args.pf)
    T = _pairs(args.tree) if args.tree else "Auto"
    B = A.normalize(T)
    return Outcome(0, {"matrix": _mat_json(B)}, [B.show()])


def _cmd_mat_crat(args):
    A = _load_matrix(args.matrix, args.pf)
    vals = sorted(A.pf.show(v) for v in cross_ratios(A))
    return Outcome(0, {"cross_ratios": vals},
                   [f"crat = {{{', '.join(vals)}}}"])


def _cmd_mat_lambda(args):
    A = _load_matrix(args.matrix, args.pf)
    lam = connectivity_lambda(A, _labels(args.set))
    return Outcome(0, {"lambda": lam}, [f"lambda = {lam}"])


def _cmd_mat_blockseq(args):
    A = _load_matrix(args.matrix, args.pf)
    rep = blocking_or_induced(A, _labels(args.eprime),
                              (_labels(args.side1), _labels(args.side2)))
    kind, payload = rep.certificate
    if kind == "BlockingSequence":
        data = {"lambda": rep.lam, "certificate": kind,
                "sequence": list(payload)}
        lines = [f"blocking sequence: {' '.join(payload)}"]
    else:
        z1, z2 = payload
        data = {"lambda": rep.lam, "certificate": kind,
                "side1": sorted(z1), "side2": sorted(z2)}
        lines = [f"induced separation: {sorted(z1)} | {sorted(z2)}"]
    return Outcome(0, data, lines)


def _cmd_mat_contains(args):
    A = _load_matrix(args.matrix, args.pf)
    B = _load_matrix(args.other, args.pf)
    found, witness = minor_contains(A, B)
    data = {"contains": found}
    if found:
        data["witness"] = {"pivots": [list(p) for p in witness.pivots],
                           "rows": list(witness.rows),
                           "cols": list(witness.cols)}
    return _bool_outcome(found, data, "minor found", "no such minor")


# ---------------------------------------------------------------------------
# matroid verbs
# ---------------------------------------------------------------------------

def _cmd_matroid_bases(args):
    M = _load_matroid(args.matroid)
    bases = sorted(sorted(b) for b in M.bases)
    return Outcome(0, {"rank": M.rank, "bases": bases},
                   [f"rank {M.rank}, {len(bases)} bases"] +
                   ["  " + " ".join(b) for b in bases])


def _cmd_matroid_check(args):
    M = _load_matroid(args.matroid)
    ok = M.check_bases()
    return _bool_outcome(ok, {"valid": ok}, "basis axioms: ok",
                         "basis axioms: violated")


def _cmd_matroid_minor(args):
    M = _load_matroid(args.matroid)
    N = M.minor(contract=_labels(args.contract or ""),
                delete=_labels(args.delete or ""))
    return Outcome(0, {"matroid": N.to_json()},
                   [f"minor on {{{', '.join(sorted(N.ground))}}}, "
                    f"rank {N.rank}, {len(N.bases)} bases"])


def _cmd_matroid_dual(args):
    M = _load_matroid(args.matroid).dual()
    return Outcome(0, {"matroid": M.to_json()},
                   [f"dual: rank {M.rank}, {len(M.bases)} bases"])


def _cmd_matroid_conn(args):
    M = _load_matroid(args.matroid)
    if args.set:
        lam = M.connectivity(_labels(args.set))
        return Outcome(0, {"lambda": lam}, [f"lambda = {lam}"])
    ok = M.is_3connected()
    return _bool_outcome(ok, {"three_connected": ok},
                         "3-connected: yes", "3-connected: no")


def _cmd_matroid_iso(args):
    M1, M2 = _load_matroid(args.first), _load_matroid(args.second)
    mapping = isomorphic(M1, M2)
    if mapping is None:
        return Outcome(1, {"isomorphic": False}, ["not isomorphic"])
    mp = {k: mapping[k] for k in sorted(mapping)}
    return Outcome(0, {"isomorphic": True, "mapping": mp},
                   ["isomorphic"] + [f"  {k} -> {v}" for k, v in mp.items()])


def _cmd_matroid_named(args):
    M, A = make_named(args.name)
    data = {"matroid": M.to_json()}
    lines = [f"{args.name}: rank {M.rank}, {len(M.bases)} bases on "
             f"{{{', '.join(sorted(M.ground))}}}"]
    if A is not None:
        data["matrix"] = _mat_json(A)
        lines.append(A.show())
    return Outcome(0, data, lines)


# ---------------------------------------------------------------------------
# universal verbs
# ---------------------------------------------------------------------------

def _pres_args(args):
    B = frozenset(_labels(args.basis)) if args.basis else None
    T = _pairs(args.tree) if args.tree else "Auto"
    return B, T


def _cmd_universal_present(args):
    M = _load_matroid(args.matroid)
    B, T = _pres_args(args)
    pres = _universal.bracket_presentation(M, B, T)
    trivial = pres.trivial()
    data = {"basis": sorted(pres.basis), "tree": [list(e) for e in pres.tree],
            "free_symbols": list(pres.free_symbols),
            "groebner_basis": [str(g) for g in pres.gb],
            "inverted_determinants": len(pres.inverted),
            "representable": not trivial}
    lines = [f"basis: {' '.join(sorted(pres.basis))}",
             f"free symbols: {', '.join(pres.free_symbols) or '(none)'}",
             f"inverted determinants: {len(pres.inverted)}",
             f"representable: {'yes' if not trivial else 'no'}"]
    return Outcome(1 if trivial else 0, data, lines)


def _cmd_universal_count(args):
    M = _load_matroid(args.matroid)
    n = _universal.count_representations(M, catalog.make(args.pf))
    return Outcome(0, {"count": n}, [str(n)])


def _cmd_universal_verify(args):
    M = _load_matroid(args.matroid)
    B, T = _pres_args(args)
    ok = _universal.verify_universal_iso(M, catalog.make(args.target),
                                         _assignment(args.assign), B=B, T=T)
    return _bool_outcome(ok, {"verified": ok},
                         "universal partial field matches the target",
                         "assignment rejected")


def _cmd_universal_settles(args):
    N, M = _load_matroid(args.n), _load_matroid(args.m)
    ok = _universal.settles_check(N, M, contract=_labels(args.contract or ""),
                                  delete=_labels(args.delete or ""))
    return _bool_outcome(ok, {"settles": ok}, "settles", "does not settle")


def _cmd_universal_representable(args):
    M = _load_matroid(args.matroid)
    ok = _universal.is_representable(M)
    return _bool_outcome(ok, {"representable": ok},
                         "representable", "not representable")


# ---------------------------------------------------------------------------
# confine / stabilizer / lift / classification / hydra
# ---------------------------------------------------------------------------

def _confine_setup(args):
    pf = catalog.make(args.pf)
    sub = _make_sub(pf, args.sub)
    if isinstance(sub, tuple):
        pf, sub = sub
    return pf, sub


def _witness_data(verdict):
    w = verdict.witness
    if w is None:
        return None
    if isinstance(w, PFMatrix):
        return {"matrix": _mat_json(w)}
    return {"minor_ground": sorted(w.minor.ground),
            "minor_rank": w.minor.rank,
            "matrix": _mat_json(w.matrix)}


def _cmd_confine_direct(args):
    pf = catalog.make(args.pf)
    sub = _make_sub(pf, args.sub)
    B = _load_matrix(args.matrix, args.pf)
    M = _load_matroid(args.matroid)
    verdict = _confine.confines_direct(B, M, pf, sub)
    data = {"confined": verdict.confined, "witness": _witness_data(verdict)}
    return _bool_outcome(verdict.confined, data, "confined", "not confined")


def _cmd_confine_theorem(args):
    pf = catalog.make(args.pf)
    sub = _make_sub(pf, args.sub)
    N, M = _load_matroid(args.n), _load_matroid(args.m)
    verdict = _confine.confinement_finite_check(N, M, pf, sub)
    data = {"confined": verdict.confined, "witness": _witness_data(verdict)}
    lines = ["confined" if verdict.confined else "not confined"]
    if verdict.witness is not None:
        lines.append(f"counterexample minor on "
                     f"{{{', '.join(sorted(verdict.witness.minor.ground))}}}")
    return Outcome(0 if verdict.confined else 1, data, lines)


def _cmd_stabilizer(args):
    N, M = _load_matroid(args.n), _load_matroid(args.m)
    ok = _confine.stabilizer_check(N, M, catalog.make(args.pf))
    return _bool_outcome(ok, {"stabilizer": ok}, "stabilizer", "not a stabilizer")


def _cmd_lift_build(args):
    pf = catalog.make(args.pf)
    paths = sorted(globmod.glob(args.pattern))
    if not paths:
        raise PFError(f"no matrix files match {args.pattern!r}")
    mats = [_load_matrix(p, args.pf) for p in paths]
    lp = _confine.lift_presentation(mats)
    verified = _confine.lift_projection_verified(lp)
    ring = lp.ring
    nfs = {name: ring.show(lp.symbol_nf(name))
           for name in sorted(lp.values)}
    data = {"pf": pf.name, "files": paths,
            "symbols": {name: pf.show(lp.values[name])
                        for name in sorted(lp.values)},
            "normal_forms": nfs,
            "groebner_basis": [str(g) for g in lp.gb],
            "triple_relations": len(lp.triple_witnesses),
            "projection_verified": verified}
    lines = [f"{len(mats)} matrices over {pf.name}",
             f"symbols: {', '.join(sorted(lp.values)) or '(none)'}"]
    lines += [f"  {n} = {pf.show(lp.values[n])}  (normal form {nfs[n]})"
              for n in sorted(lp.values)]
    lines.append(f"projection verified: {'yes' if verified else 'no'}")
    return Outcome(0 if verified else 1, data, lines)


def _cmd_classify(args):
    rows = _confine.classify_associate_quotients(full=args.full)
    table = []
    ok = True
    for r in rows:
        blocks = sorted(sorted(b) for b in r.partition)
        table.append({"partition": blocks, "target": r.target,
                      "verified": r.verified})
        if r.target not in ("U0", "U1", "D", "S", "GF(3)-collapse"):
            ok = False
        if r.target != "GF(3)-collapse" and not r.verified:
            ok = False
    lines = [f"{len(rows)} classes"]
    for row in table:
        blocks = " ".join("{" + ",".join(str(x) for x in b) + "}"
                          for b in row["partition"])
        lines.append(f"  {blocks} -> {row['target']}")
    return Outcome(0 if ok else 1, {"classes": table}, lines)


def _cmd_hydra(args):
    ok = _confine.hydra_degeneracy_check(args.k)
    return _bool_outcome(ok, {"k": args.k, "passed": ok},
                         f"hydra level {args.k}: degenerate projections confirmed",
                         f"hydra level {args.k}: check failed")


# ---------------------------------------------------------------------------
# homgraph
# ---------------------------------------------------------------------------

_HOMGRAPH_DEFAULT = ("U0", "U1", "D", "S", "G", "K(2)", "P4",
                     "H2", "Y", "W", "GE")


def _primes_upto(bound):
    out = []
    for n in range(2, bound + 1):
        if all(n % p for p in out):
            out.append(n)
    return out


def homgraph_dot(names=None, prime_bound=11):
    """DOT digraph with an edge src -> dst whenever a partial-field
    homomorphism exists: finite targets by exhaustive image search, symbolic
    targets through the verified catalog homs."""
    names = list(names) if names else list(_HOMGRAPH_DEFAULT) + [
        f"GF({p})" for p in _primes_upto(prime_bound)]
    registered = {(h.src.name, h.dst.name) for h in catalog.registered_homs()}
    pfs = {n: catalog.make(n) for n in names}
    edges = []
    for src in names:
        for dst in names:
            if src == dst:
                continue
            if pfs[dst].group_elements() is not None:
                if hom_enumerate(pfs[src], pfs[dst]):
                    edges.append((src, dst))
            elif (src, dst) in registered:
                edges.append((src, dst))
            elif not pfs[src].hom_symbols:
                # symbol-free sources (ZZ localizations) need no image choices
                if PFHom(pfs[src], pfs[dst], {}).verify():
                    edges.append((src, dst))
    lines = ["digraph homs {"]
    for n in names:
        lines.append(f'  "{n}";')
    for src, dst in sorted(edges):
        lines.append(f'  "{src}" -> "{dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_homgraph(args):
    names = _labels(args.names) if args.names else None
    dot = homgraph_dot(names, args.prime_bound)
    return Outcome(0, {"dot": dot}, [dot.rstrip("\n")])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser():
    top = argparse.ArgumentParser(prog="pfkit")
    top.add_argument("--json", action="store_true", help="machine-readable output")
    top.add_argument("--limit", default=None,
                     help="resource overrides, e.g. gb_pairs=500000,search_nodes=1000")
    sub = top.add_subparsers(dest="verb", required=True)

    pf = sub.add_parser("pf").add_subparsers(dest="sub_verb", required=True)
    p = pf.add_parser("list"); p.set_defaults(func=_cmd_pf_list)
    p = pf.add_parser("fun"); p.add_argument("name"); p.set_defaults(func=_cmd_pf_fun)
    p = pf.add_parser("assoc"); p.add_argument("name"); p.add_argument("expr")
    p.set_defaults(func=_cmd_pf_assoc)
    p = pf.add_parser("hom"); p.add_argument("src"); p.add_argument("dst")
    p.set_defaults(func=_cmd_pf_hom)
    p = pf.add_parser("product"); p.add_argument("names", nargs="+")
    p.set_defaults(func=_cmd_pf_product)
    p = pf.add_parser("sub"); p.add_argument("name"); p.add_argument("generators")
    p.set_defaults(func=_cmd_pf_sub)

    mat = sub.add_parser("mat").add_subparsers(dest="sub_verb", required=True)

    def mat_verb(name, func, *extra):
        p = mat.add_parser(name)
        p.add_argument("matrix")
        for spec in extra:
            p.add_argument(*spec[0], **spec[1])
        p.add_argument("--pf", default=None)
        p.set_defaults(func=func)
        return p

    mat_verb("check", _cmd_mat_check)
    mat_verb("det", _cmd_mat_det)
    mat_verb("pivot", _cmd_mat_pivot, (("row",), {}), (("col",), {}))
    mat_verb("normalize", _cmd_mat_normalize, (("--tree",), {"default": None}))
    mat_verb("crat", _cmd_mat_crat)
    mat_verb("lambda", _cmd_mat_lambda, (("--set",), {"required": True}))
    mat_verb("blockseq", _cmd_mat_blockseq,
             (("--eprime",), {"required": True}),
             (("--side1",), {"required": True}),
             (("--side2",), {"required": True}))
    mat_verb("contains", _cmd_mat_contains, (("other",), {}))

    mt = sub.add_parser("matroid").add_subparsers(dest="sub_verb", required=True)
    p = mt.add_parser("bases"); p.add_argument("matroid")
    p.set_defaults(func=_cmd_matroid_bases)
    p = mt.add_parser("check"); p.add_argument("matroid")
    p.set_defaults(func=_cmd_matroid_check)
    p = mt.add_parser("minor"); p.add_argument("matroid")
    p.add_argument("--contract", default=""); p.add_argument("--delete", default="")
    p.set_defaults(func=_cmd_matroid_minor)
    p = mt.add_parser("dual"); p.add_argument("matroid")
    p.set_defaults(func=_cmd_matroid_dual)
    p = mt.add_parser("conn"); p.add_argument("matroid")
    p.add_argument("--set", default=None); p.set_defaults(func=_cmd_matroid_conn)
    p = mt.add_parser("iso"); p.add_argument("first"); p.add_argument("second")
    p.set_defaults(func=_cmd_matroid_iso)
    p = mt.add_parser("named"); p.add_argument("name")
    p.set_defaults(func=_cmd_matroid_named)

    un = sub.add_parser("universal").add_subparsers(dest="sub_verb", required=True)
    p = un.add_parser("present"); p.add_argument("matroid")
    p.add_argument("--basis", default=None); p.add_argument("--tree", default=None)
    p.set_defaults(func=_cmd_universal_present)
    p = un.add_parser("count"); p.add_argument("matroid")
    p.add_argument("--pf", required=True); p.set_defaults(func=_cmd_universal_count)
    p = un.add_parser("verify"); p.add_argument("matroid")
    p.add_argument("--target", required=True); p.add_argument("--assign", required=True)
    p.add_argument("--basis", default=None); p.add_argument("--tree", default=None)
    p.set_defaults(func=_cmd_universal_verify)
    p = un.add_parser("settles"); p.add_argument("n"); p.add_argument("m")
    p.add_argument("--contract", default=""); p.add_argument("--delete", default="")
    p.set_defaults(func=_cmd_universal_settles)
    p = un.add_parser("representable"); p.add_argument("matroid")
    p.set_defaults(func=_cmd_universal_representable)

    cn = sub.add_parser("confine").add_subparsers(dest="sub_verb", required=True)
    p = cn.add_parser("direct"); p.add_argument("matrix"); p.add_argument("matroid")
    p.add_argument("--pf", required=True); p.add_argument("--sub", required=True)
    p.set_defaults(func=_cmd_confine_direct)
    p = cn.add_parser("theorem"); p.add_argument("n"); p.add_argument("m")
    p.add_argument("--pf", required=True); p.add_argument("--sub", required=True)
    p.set_defaults(func=_cmd_confine_theorem)

    p = sub.add_parser("stabilizer")
    p.add_argument("n"); p.add_argument("m"); p.add_argument("--pf", required=True)
    p.set_defaults(func=_cmd_stabilizer)

    lf = sub.add_parser("lift").add_subparsers(dest="sub_verb", required=True)
    p = lf.add_parser("build"); p.add_argument("pattern")
    p.add_argument("--pf", required=True); p.set_defaults(func=_cmd_lift_build)

    p = sub.add_parser("classify-associates")
    p.add_argument("--full", action="store_true"); p.set_defaults(func=_cmd_classify)

    hy = sub.add_parser("hydra").add_subparsers(dest="sub_verb", required=True)
    p = hy.add_parser("check"); p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_hydra)

    p = sub.add_parser("homgraph")
    p.add_argument("--names", default=None)
    p.add_argument("--prime-bound", type=int, default=11)
    p.set_defaults(func=_cmd_homgraph)

    return top


def run(argv, out=None):
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.limit:
        os.environ["PFKIT_LIMITS"] = args.limit
    try:
        outcome = args.func(args)
    except (PFError, ResourceLimitError, OSError, KeyError, ValueError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(outcome.data, sort_keys=True, indent=2), file=out)
    else:
        for line in outcome.lines:
            print(line, file=out)
    return outcome.code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
