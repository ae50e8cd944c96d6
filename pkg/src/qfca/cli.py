"""Command-line surface: context files in, lattices and verdicts out.

Context files are JSON documents with fixed field names:

    {
      "quantaloid": {"preset": "two"}                      -- or inline:
                    {"objects": [...],
                     "homs": {"p->q": {"elements": [...], "leq": [[a,b], ...]}},
                     "compose": [[v, u, w], ...],
                     "units": {"q": label}},
      "categories": {NAME: {"objects": [{"label": .., "type": ..}],
                            "hom": [[x, y, arrow], ...]}},
      "distributors": {NAME: {"from": .., "to": .., "entries": [[x, y, arrow], ...]}},
      "functors": {NAME: {"from": .., "to": .., "map": {x: y}}}
    }

Omitted category hom and distributor entries default to the bottom arrow and
are then validated.  ``leq`` pairs are closed reflexively and transitively.
In ``compose`` triples an arrow is written either as a bare element label
(allowed when unique across all homs) or qualified as ``"p->q:label"``;
missing compose pairs default to the bottom arrow.  Presets take parameters
inline: {"preset": {"name": "lukasiewicz-chain", "n": 3}}.

Exit codes: 0 success/pass, 1 validation failure, 2 usage or precondition
error, 3 property-verification failure.  Outputs are deterministic:
repeated runs on the same input are byte-identical.  The environment
variable QFCA_BUDGET overrides all enumeration and search caps.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass

from .errors import (
    HypothesesNotMet,
    InvalidParams,
    NotAQuantale,
    NotGirard,
    QfcaError,
    Report,
)
from .quantaloid import (
    Arrow,
    HomLattice,
    Quantaloid,
    build_preset,
    find_cyclic_dualizing_family,
    validate_quantaloid,
)
from .qcat import QCategory, QFunctor, validate_category, validate_functor
from .qdist import QDistributor, validate_distributor
from .presheaf import presheaf_label
from .concept import (
    brute_force_fixed,
    codense_probe,
    fca_lattice,
    lattice_to_dot,
    lattice_to_json,
    residual_category,
    residual_context,
    rst_lattice,
    verify_rst_as_fca,
    verify_rst_as_fca_complement,
)
from .represent import (
    canonical_dense_data,
    canonical_elementary_data,
    canonical_fca_data,
    canonical_general_data,
    canonical_rst_data,
    verify_adjunction_as_functors,
    verify_adjunction_laws,
    verify_dense_representation,
    verify_density_suite,
    verify_elementary_identities,
    verify_elementary_representation,
    verify_fca_representation,
    verify_general_representation,
    verify_rst_representation,
    verify_yoneda,
)


class UsageError(QfcaError):
    """Bad command-line data: unknown names, missing sections, bad references."""


@dataclass
class ContextDocument:
    quantaloid: Quantaloid
    quantaloid_spec: dict
    categories: dict
    distributors: dict
    functors: dict

    def canonical(self) -> dict:
        return serialize_document(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, ContextDocument) and self.canonical() == other.canonical()


# -- parsing ---------------------------------------------------------------------


def _parse_arrow_ref(Q: Quantaloid, ref: str) -> Arrow:
    """Resolve 'p->q:label' or a bare label that is unique across all homs."""
    if ":" in ref and "->" in ref.split(":", 1)[0]:
        hom, label = ref.split(":", 1)
        p, q = hom.split("->", 1)
        return Q.arrow(p, q, label)
    hits = [a for a in Q.all_arrows() if Q.label(a) == ref]
    if not hits:
        raise UsageError(f"no arrow labelled {ref!r} in the quantaloid")
    if len(hits) > 1:
        raise UsageError(f"arrow label {ref!r} is ambiguous; qualify it as 'p->q:{ref}'")
    return hits[0]


def _parse_quantaloid(spec: dict) -> Quantaloid:
    if "preset" in spec:
        preset = spec["preset"]
        if isinstance(preset, str):
            return build_preset(preset)
        params = {k: v for k, v in preset.items() if k != "name"}
        return build_preset(preset["name"], **params)
    objects = list(spec["objects"])
    homs = {}
    for key, h in spec["homs"].items():
        p, q = key.split("->", 1)
        homs[(p, q)] = HomLattice.from_labels(h["elements"], [tuple(x) for x in h.get("leq", [])])
    for p, q in itertools.product(objects, repeat=2):
        if (p, q) not in homs:
            raise UsageError(f"missing hom section '{p}->{q}'")
    units = {}
    for q, label in spec["units"].items():
        units[q] = homs[(q, q)].index(label)
    tables = {}
    for p, q, r in itertools.product(objects, repeat=3):
        dom, mid, cod = homs[(p, q)], homs[(q, r)], homs[(p, r)]
        bottom = cod.bottom_opt()
        if bottom is None:
            raise UsageError(f"hom '{p}->{r}' has no bottom; cannot default compose entries")
        tables[(p, q, r)] = [[bottom] * len(dom) for _ in range(len(mid))]
    Q0 = Quantaloid(objects, homs, {k: tuple(tuple(r) for r in t) for k, t in tables.items()},
                    units, name=spec.get("name", "inline"))
    for v_ref, u_ref, w_ref in spec.get("compose", []):
        v = _parse_arrow_ref(Q0, v_ref)
        u = _parse_arrow_ref(Q0, u_ref)
        w = _parse_arrow_ref(Q0, w_ref)
        if u.dst != v.src or (w.src, w.dst) != (u.src, v.dst):
            raise UsageError(f"compose triple [{v_ref},{u_ref},{w_ref}] is not composable")
        tables[(u.src, u.dst, v.dst)][v.index][u.index] = w.index
    return Quantaloid(objects, homs, {k: tuple(tuple(r) for r in t) for k, t in tables.items()},
                      units, name=spec.get("name", "inline"))


def _parse_category(Q: Quantaloid, name: str, spec: dict) -> QCategory:
    labels = [o["label"] for o in spec["objects"]]
    types = [o["type"] for o in spec["objects"]]
    for t in types:
        if t not in Q.objects:
            raise UsageError(f"category {name!r}: unknown type {t!r}")
    index = {x: i for i, x in enumerate(labels)}
    hom = [[Q.bottom(types[i], types[j]) for j in range(len(labels))]
           for i in range(len(labels))]
    for x, y, ref in spec.get("hom", []):
        if x not in index or y not in index:
            raise UsageError(f"category {name!r}: unknown object in hom entry [{x},{y}]")
        i, j = index[x], index[y]
        hom[i][j] = Arrow(types[i], types[j], Q.hom(types[i], types[j]).index(ref))
    return QCategory(Q, labels, types, hom, name=name)


def parse_document(data: dict) -> ContextDocument:
    Q = _parse_quantaloid(data["quantaloid"])
    categories = {}
    for name in sorted(data.get("categories", {})):
        categories[name] = _parse_category(Q, name, data["categories"][name])
    distributors = {}
    for name in sorted(data.get("distributors", {})):
        spec = data["distributors"][name]
        try:
            A, B = categories[spec["from"]], categories[spec["to"]]
        except KeyError as e:
            raise UsageError(f"distributor {name!r}: unknown category {e.args[0]!r}") from None
        matrix = [[Q.bottom(A.types[i], B.types[j]) for j in range(len(B))]
                  for i in range(len(A))]
        for x, y, ref in spec.get("entries", []):
            i, j = A.index(x), B.index(y)
            matrix[i][j] = Arrow(A.types[i], B.types[j],
                                 Q.hom(A.types[i], B.types[j]).index(ref))
        distributors[name] = QDistributor(A, B, matrix, name=name)
    functors = {}
    for name in sorted(data.get("functors", {})):
        spec = data["functors"][name]
        try:
            A, B = categories[spec["from"]], categories[spec["to"]]
        except KeyError as e:
            raise UsageError(f"functor {name!r}: unknown category {e.args[0]!r}") from None
        functors[name] = QFunctor(A, B, dict(spec["map"]), name=name)
    return ContextDocument(Q, data["quantaloid"], categories, distributors, functors)


def load_document(path: str) -> ContextDocument:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise UsageError(f"{path} is not valid JSON: {e}") from None
    try:
        return parse_document(data)
    except KeyError as e:
        raise UsageError(f"{path} misses the required field {e.args[0]!r}") from None


def serialize_document(doc: ContextDocument) -> dict:
    Q = doc.quantaloid
    if "preset" in doc.quantaloid_spec:
        qspec = {"preset": doc.quantaloid_spec["preset"]}
    else:
        homs = {}
        for p, q in itertools.product(Q.objects, repeat=2):
            hom = Q.hom(p, q)
            homs[f"{p}->{q}"] = {
                "elements": list(hom.elements),
                "leq": sorted([hom.elements[i], hom.elements[j]] for i, j in hom.leq_pairs),
            }
        compose = []
        for p, q, r in itertools.product(Q.objects, repeat=3):
            for v in Q.arrows(q, r):
                for u in Q.arrows(p, q):
                    w = Q.compose(v, u)
                    compose.append([f"{q}->{r}:{Q.label(v)}", f"{p}->{q}:{Q.label(u)}",
                                    f"{p}->{r}:{Q.label(w)}"])
        qspec = {
            "objects": list(Q.objects),
            "homs": homs,
            "compose": compose,
            "units": {q: Q.label(Q.unit(q)) for q in Q.objects},
            "name": Q.name,
        }
    out = {"quantaloid": qspec, "categories": {}, "distributors": {}, "functors": {}}
    for name in sorted(doc.categories):
        A = doc.categories[name]
        out["categories"][name] = {
            "objects": [{"label": x, "type": t} for x, t in zip(A.objects, A.types)],
            "hom": [[x, y, Q.label(A.hom_of(x, y))]
                    for x in A.objects for y in A.objects],
        }
    for name in sorted(doc.distributors):
        phi = doc.distributors[name]
        out["distributors"][name] = {
            "from": phi.dom.name,
            "to": phi.cod.name,
            "entries": [[x, y, Q.label(phi.at(x, y))]
                        for x in phi.dom.objects for y in phi.cod.objects],
        }
    for name in sorted(doc.functors):
        F = doc.functors[name]
        out["functors"][name] = {"from": F.dom.name, "to": F.cod.name,
                                 "map": {x: F(x) for x in F.dom.objects}}
    return out


# -- output helpers -----------------------------------------------------------------


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(data: dict, out_path: str | None) -> None:
    _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", out_path)


def _pick_distributor(doc: ContextDocument, name: str | None) -> QDistributor:
    if not doc.distributors:
        raise UsageError("the context file declares no distributors")
    if name is None:
        if len(doc.distributors) == 1:
            return next(iter(doc.distributors.values()))
        raise UsageError(f"--dist is required; choices: {sorted(doc.distributors)}")
    try:
        return doc.distributors[name]
    except KeyError:
        raise UsageError(f"no distributor {name!r}; choices: {sorted(doc.distributors)}"
                         ) from None


# -- subcommands --------------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = load_document(args.path)
    reports = [validate_quantaloid(doc.quantaloid)]
    reports += [validate_category(c) for c in doc.categories.values()]
    reports += [validate_distributor(d) for d in doc.distributors.values()]
    reports += [validate_functor(f) for f in doc.functors.values()]
    ok = all(r.ok for r in reports)
    _dump({"ok": ok, "reports": [r.to_json() for r in reports]}, args.output)
    return 0 if ok else 1


def cmd_concepts(args) -> int:
    doc = load_document(args.path)
    phi = _pick_distributor(doc, args.dist)
    lattice = fca_lattice(phi) if args.mode == "fca" else rst_lattice(phi)
    wanted = list(doc.quantaloid.objects) if args.type == "all" else [args.type]
    for t in wanted:
        if t not in doc.quantaloid.objects:
            raise UsageError(f"unknown type {t!r}")
    if args.oracle:
        per_type = lattice.per_type()
        for t in wanted:
            expected = frozenset(p.key() for p in brute_force_fixed(phi, args.mode, t))
            got = frozenset(p.key() for p in per_type[t])
            if expected != got:
                diff = {
                    "type": t,
                    "missing": sorted(presheaf_label(p)
                                      for p in brute_force_fixed(phi, args.mode, t)
                                      if p.key() not in got),
                    "extra": sorted(lattice.label_of(p) for p in per_type[t]
                                    if p.key() not in expected),
                }
                _dump({"oracle": "mismatch", "diff": diff}, args.output)
                return 3
    if args.out == "dot":
        full = lattice_to_dot(lattice)
        if args.type != "all":
            blocks = full.split("digraph ")
            kept = [b for b in blocks if b.startswith(f'"{lattice.kind}_{args.type}"')]
            full = "digraph " + "digraph ".join(kept) if kept else ""
        _emit(full, args.output)
    else:
        data = lattice_to_json(lattice)
        if args.type != "all":
            data["types"] = {args.type: data["types"][args.type]}
        _dump(data, args.output)
    return 0


def cmd_girard(args) -> int:
    doc = load_document(args.path)
    Q = doc.quantaloid
    fam = find_cyclic_dualizing_family(Q)
    if fam is None:
        result = {"girard": False, "cyclic_family": None,
                  "summary": "not Girard; no cyclic family"}
    else:
        labels = fam.labels(Q)
        shown = ",".join(labels[q] for q in Q.objects)
        if fam.dualizing:
            result = {"girard": True, "cyclic_family": labels,
                      "summary": f"Girard, d=({shown})"}
        else:
            result = {"girard": False, "cyclic_family": labels,
                      "summary": f"not Girard; best cyclic family d=({shown})"}
    _dump(result, args.output)
    return 0


def _parse_data_tokens(tokens) -> dict:
    out = {}
    for tok in tokens or []:
        if "=" not in tok:
            raise UsageError(f"--data expects key=value tokens, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _functor_from_doc(doc: ContextDocument, data: dict, key: str) -> QFunctor:
    name = data[key]
    try:
        return doc.functors[name]
    except KeyError:
        raise UsageError(f"no functor {name!r} in the context file") from None


def cmd_verify(args) -> int:
    doc = load_document(args.path)
    data = _parse_data_tokens(args.data)
    kind = data.get("kind", "fca")
    if kind not in ("fca", "rst"):
        raise UsageError(f"kind must be fca or rst, got {kind!r}")
    prop = args.prop

    if prop == "yoneda":
        report = Report("yoneda")
        cats = ([doc.categories[data["category"]]] if "category" in data
                else list(doc.categories.values()))
        for A in cats:
            report.extend(verify_yoneda(A), prefix=f"{A.name}:")
    elif prop == "dense-cond":
        report = Report("dense-cond")
        cats = ([doc.categories[data["category"]]] if "category" in data
                else list(doc.categories.values()))
        for A in cats:
            report.extend(verify_density_suite(A), prefix=f"{A.name}:")
    elif prop == "isbell-adjunction":
        phi = _pick_distributor(doc, args.dist)
        report = verify_adjunction_laws(phi)
        report.extend(verify_adjunction_as_functors(phi, "fca"))
    elif prop == "kan-adjunction":
        phi = _pick_distributor(doc, args.dist)
        report = verify_adjunction_laws(phi)
        report.extend(verify_adjunction_as_functors(phi, "rst"))
    elif prop == "k-eq-m-tr":
        phi = _pick_distributor(doc, args.dist)
        report = verify_rst_as_fca(phi)
    elif prop == "k-eq-m-neg":
        phi = _pick_distributor(doc, args.dist)
        fam = find_cyclic_dualizing_family(doc.quantaloid)
        if fam is None or not fam.dualizing:
            raise NotGirard("the quantaloid has no cyclic dualizing family")
        report = verify_rst_as_fca_complement(phi, fam)
    elif prop == "elementary-identities":
        phi = _pick_distributor(doc, args.dist)
        report = verify_elementary_identities(phi)
    elif prop == "thm33":
        phi = _pick_distributor(doc, args.dist)
        d = canonical_general_data(phi, kind)
        report = verify_general_representation(d.adj.S, d.adj.T, d.L, d.R, d.X)
    elif prop == "thm51":
        phi = _pick_distributor(doc, args.dist)
        d, F, K, G, H = canonical_dense_data(phi, kind)
        report = verify_dense_representation(d.adj.S, d.adj.T, F, K, G, H, d.X,
                                             assume_complete=True)
    elif prop == "mphi-rep":
        phi = _pick_distributor(doc, args.dist)
        if {"F", "G", "X"} <= data.keys():
            X = doc.categories[data["X"]]
            report = verify_fca_representation(
                phi, X, _functor_from_doc(doc, data, "F"), _functor_from_doc(doc, data, "G"))
        else:
            d, F, G = canonical_fca_data(phi)
            report = verify_fca_representation(phi, d.X, F, G, assume_complete=True)
    elif prop == "kphi-rep":
        phi = _pick_distributor(doc, args.dist)
        d, F, G, rc = canonical_rst_data(phi)
        report = verify_rst_representation(phi, d.X, F, G, rc, assume_complete=True)
    elif prop == "elementary-rep":
        phi = _pick_distributor(doc, args.dist)
        d, F, G = canonical_elementary_data(phi, kind)
        report = verify_elementary_representation(phi, d.X, F, G, kind,
                                                  assume_complete=True)
    elif prop == "girard-probe":
        Q = doc.quantaloid
        qobj = data.get("object", Q.objects[0])
        report = codense_probe(Q, qobj)
    else:
        raise UsageError(f"unknown property {prop!r}")
    _dump(report.to_json(), args.output)
    return 0 if report.passed else 3


def cmd_tr(args) -> int:
    doc = load_document(args.path)
    phi = _pick_distributor(doc, args.dist)
    Q = doc.quantaloid
    rc = residual_category(phi.dom)
    tr = residual_context(phi, rc)
    members = []
    for lbl, p in zip(rc.category.objects, rc.members):
        members.append({
            "label": lbl,
            "type": p.type,
            "values": {x: Q.label(v) for x, v in zip(p.base.objects, p.values)},
            "provenance": [[a, Q.label(u)] for a, u in rc.provenance[p.key()]],
        })
    entries = [[b, m, Q.label(tr.at(b, m))]
               for b in phi.cod.objects for m in rc.category.objects]
    _dump({"distributor": phi.name, "residual_members": members,
           "residual_context": entries}, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfca",
        description="Concept lattices and representation theorems for "
                    "contexts valued in a finite quantaloid.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run all structural validators")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("concepts", help="compute a concept lattice")
    p.add_argument("path")
    p.add_argument("--dist")
    p.add_argument("--mode", choices=["fca", "rst"], default="fca")
    p.add_argument("--type", default="all")
    p.add_argument("--out", choices=["json", "dot"], default="json")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the brute-force enumeration")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_concepts)

    p = sub.add_parser("girard", help="search for a cyclic dualizing family")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_girard)

    p = sub.add_parser("verify", help="run a property or theorem verifier")
    p.add_argument("path")
    p.add_argument("--prop", required=True, choices=[
        "k-eq-m-tr", "k-eq-m-neg", "isbell-adjunction", "kan-adjunction",
        "yoneda", "dense-cond", "elementary-identities", "thm33", "thm51",
        "mphi-rep", "kphi-rep", "elementary-rep", "girard-probe"])
    p.add_argument("--dist")
    p.add_argument("--data", nargs="*", metavar="KEY=VALUE")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tr", help="emit the residual category and residual context")
    p.add_argument("path")
    p.add_argument("--dist")
    p.add_argument("--out", choices=["json"], default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tr)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidParams, NotGirard, NotAQuantale, HypothesesNotMet) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except QfcaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
