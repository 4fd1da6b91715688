"""Command line front end: one verb per operation, JSON in, JSON out.

Exit status 0 prints ``{"ok": true, "result": ...}``; domain errors exit 1
with ``{"ok": false, "error": code}``; unreadable input exits 2.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import curves, k0, ribbon_graph, schober
from .errors import SchoberError
from .words import format_word, parse_word


class ParseFailure(Exception):
    pass


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"{path}: {exc}") from exc


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(str(exc)) from exc


def _graph(args) -> ribbon_graph.RibbonGraph:
    if getattr(args, "graph", None):
        return ribbon_graph.RibbonGraph.from_json(_load(args.graph))
    if getattr(args, "schober", None):
        return ribbon_graph.RibbonGraph.from_json(_load(args.schober))
    raise ParseFailure("a --graph or --schober file is required")


def _valid_graph(args):
    g = _graph(args)
    ribbon_graph.require_valid(g)
    return g


def _schober(args, key="schober") -> schober.SchoberDatum:
    path = getattr(args, key, None)
    if not path:
        raise ParseFailure(f"--{key} is required")
    s = schober.SchoberDatum.from_json(_load(path))
    ribbon_graph.require_valid(s.graph)
    return s


def _curve(args, g):
    return curves.curve_from_json(g, _load(args.curve))


def _line_field(path, g):
    L = curves.LineField.from_json(_load(path)) if path else curves.CANONICAL
    L.check(g)
    return L


def _euler(path):
    data = _load(path)
    if isinstance(data, dict):
        data = data.get("E")
    return k0.as_matrix(data)


def _matrix_out(M):
    return k0.to_lists(M)


# -- verbs ---------------------------------------------------------------

def cmd_validate(args):
    diags = ribbon_graph.validate(_graph(args))
    if diags:
        raise SchoberError(diags[0], ", ".join(diags))
    return {"valid": True, "diagnostics": []}


def cmd_invariants(args):
    g = _valid_graph(args)
    sd = ribbon_graph.surface_invariants(g)
    out = {"genus": sd.genus, "euler_char": sd.euler_char,
           "boundary_walks": [list(w) for w in sd.boundary_walks]}
    if args.target:
        out["spanning"] = ribbon_graph.is_spanning_of(g, _load(args.target))
    return out


def cmd_exit_paths(args):
    ep = ribbon_graph.exit_path_category(_valid_graph(args))
    return {"objects": [{"kind": k, "id": i} for k, i in ep.objects],
            "arrows": [{"vertex": v, "edge": e, "halfedge": h} for v, e, h in ep.arrows]}


def cmd_contract(args):
    g = _valid_graph(args)
    new, rel = ribbon_graph.contract(g, args.edge)
    return {"graph": new.to_json(),
            "relabel": {"halfedges": {str(k): v for k, v in sorted(rel.halfedges.items())},
                        "vertices": {str(k): v for k, v in sorted(rel.vertices.items())}}}


def cmd_winding(args):
    g = _valid_graph(args)
    return {"winding": curves.winding(g, _curve(args, g), _line_field(args.line_field, g))}


def cmd_framing_check(args):
    g = _valid_graph(args)
    return {"framing": curves.is_framing(_line_field(args.line_field, g), g)}


def cmd_transport(args):
    s = _schober(args)
    return {"word": format_word(schober.transport(s, _curve(args, s.graph)))}


def cmd_monodromy(args):
    s = _schober(args)
    L = _line_field(args.framing, s.graph)
    return {"word": format_word(schober.monodromy(s, L, _curve(args, s.graph)))}


def cmd_monodromy_rep(args):
    s = _schober(args)
    L = _line_field(args.framing, s.graph)
    return {"monodromy": {k: format_word(w) for k, w in schober.monodromy_rep(s, L).items()}}


def cmd_push_contract(args):
    s = _schober(args)
    return {"schober": schober.pushforward_contract(s, args.edge).to_json()}


def cmd_equiv(args):
    s1, s2 = _schober(args), _schober(args, "other")
    L = _line_field(args.framing, s1.graph)
    return {"equivalent": schober.nonsingular_equiv(s1, s2, L)}


def cmd_orientable(args):
    return {"orientable": schober.is_orientable(_valid_graph(args))}


def cmd_glue_signs(args):
    g = _valid_graph(args)
    sol = schober.gluing_sign_solve(g, args.n)
    if sol is None:
        return {"feasible": False}
    return {"feasible": True, "signs": {str(h): v for h, v in sorted(sol.signs.items())},
            "twisted": list(sol.twisted)}


def cmd_k0_word(args):
    s = _schober(args) if args.schober else None
    a = k0.K0Assignment.from_json(_load(args.k0), s.cotwists if s else None)
    rel = s.relations if s else None
    return {"matrix": _matrix_out(k0.k0_of_word(parse_word(args.word), a, rel))}


def cmd_k0_rep(args):
    s = _schober(args)
    L = _line_field(args.framing, s.graph)
    a = k0.K0Assignment.from_json(_load(args.k0), s.cotwists)
    rep = k0.k0_monodromy_rep(s, L, a)
    return {"monodromy": {k: _matrix_out(M) for k, M in rep.items()}}


def cmd_serre(args):
    return {"serre": _matrix_out(k0.serre_matrix(_euler(args.euler)))}


def cmd_cy_check(args):
    return {"weak_cy": k0.weak_cy_check(_euler(args.euler), args.n)}


def cmd_rel_cy_check(args):
    fg = _load(args.functor) if args.functor else {}
    holds = k0.relative_cy_check(_euler(args.euler), fg.get("f"), fg.get("g"), args.m)
    return {"necessary_condition_holds": holds}


def cmd_local_matrix(args):
    M = k0.local_model_restriction_matrix(args.m)
    return {"matrix": _matrix_out(M), "kernel": k0.integer_kernel(M)}


def cmd_eta_check(args):
    data = _load(args.rep)
    if isinstance(data, dict):
        data = data.get("monodromy", data)
    mats = list(data.values()) if isinstance(data, dict) else list(data)
    return {"preserved": k0.eta_invariance_check(mats, _json_arg(args.eta))}


def cmd_dot(args):
    if args.schober:
        s = _schober(args)
        text = ribbon_graph.to_dot(s.graph, s.singular)
    else:
        text = ribbon_graph.to_dot(_valid_graph(args))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return {"dot": text}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbon-schober", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, *opts):
        sp = sub.add_parser(name)
        sp.set_defaults(func=func)
        for flag, kw in opts:
            sp.add_argument(flag, **kw)
        return sp

    graph = ("--graph", {})
    sch = ("--schober", {})
    curve = ("--curve", {"required": True})
    framing = ("--framing", {"required": True})
    edge = ("--edge", {"type": int, "required": True})
    verb("validate", cmd_validate, graph, sch)
    verb("invariants", cmd_invariants, graph, sch, ("--target", {}))
    verb("exit-paths", cmd_exit_paths, graph, sch)
    verb("contract", cmd_contract, graph, sch, edge)
    verb("winding", cmd_winding, graph, sch, curve, ("--line-field", {}))
    verb("framing-check", cmd_framing_check, graph, sch, ("--line-field", {"required": True}))
    verb("transport", cmd_transport, sch, curve)
    verb("monodromy", cmd_monodromy, sch, framing, curve)
    verb("monodromy-rep", cmd_monodromy_rep, sch, framing)
    verb("push-contract", cmd_push_contract, sch, edge)
    verb("equiv", cmd_equiv, sch, ("--other", {"required": True}), framing)
    verb("orientable", cmd_orientable, graph, sch)
    verb("glue-signs", cmd_glue_signs, graph, sch, ("--n", {"type": int, "required": True}))
    verb("k0-word", cmd_k0_word, ("--word", {"required": True}), ("--k0", {"required": True}), sch)
    verb("k0-rep", cmd_k0_rep, sch, framing, ("--k0", {"required": True}))
    verb("serre", cmd_serre, ("--euler", {"required": True}))
    verb("cy-check", cmd_cy_check, ("--euler", {"required": True}),
         ("--n", {"type": int, "required": True}))
    verb("rel-cy-check", cmd_rel_cy_check, ("--euler", {"required": True}), ("--functor", {}),
         ("--m", {"type": int, "required": True}))
    verb("local-matrix", cmd_local_matrix, ("--m", {"type": int, "required": True}))
    verb("eta-check", cmd_eta_check, ("--rep", {"required": True}), ("--eta", {"required": True}))
    verb("dot", cmd_dot, graph, sch, ("--out", {}))
    return p


def _emit(payload, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(payload, sort_keys=True) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except ParseFailure as exc:
        _emit({"ok": False, "error": "parse-error", "detail": str(exc)})
        return 2
    except SchoberError as exc:
        payload = {"ok": False, "error": exc.code}
        if exc.detail:
            payload["detail"] = exc.detail
        _emit(payload)
        return 2 if exc.code == "parse-error" else 1
    _emit({"ok": True, "result": result})
    return 0


if __name__ == "__main__":
    sys.exit(main())
