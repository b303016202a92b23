"""Input documents, bundled fixtures, the end-to-end verdict pipeline,
and the command line.

Two JSON document kinds are accepted. A tope document gives the ground
set and the tope family directly; a vector document gives exact rational
vectors whose cone structure induces the family. Everything downstream
runs on the parsed carrier, and the pipeline cross-checks each verdict
against every equivalent formulation it knows, refusing to return a
report whose internal biconditionals disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from . import _kernels as K
from .brink_howlett import BoxObject, hypercontract, hypercontract_topes
from .core import GroundSet, RootSet
from .errors import (
    AxiomViolation,
    BadLoopSplit,
    CapExceeded,
    GroundCapExceeded,
    GroupCapExceeded,
    InconsistentRun,
    InternalConsistencyError,
    ParseError,
    PrerequisiteFailed,
    TopekitError,
)
from .oriented_matroid import (
    OrientedMatroidView,
    check_matroid_axioms,
    circuits,
    closure_from_topes,
    cone_closure,
    cone_matroid,
    is_simple_matroid,
    is_simplicial,
    underlying_rank,
)
from .preacycloid import (
    Preacycloid,
    check_acycloid,
    check_preacycloid,
    handa_test,
    is_simple,
    quasicontract,
)
from .preacycloid import signed_permutations
from .sgs import (
    Mor,
    PropertyReport,
    SignedGroupoidSet,
    check_properties,
    pa_of,
    sgs_from_preacycloid,
)

SEARCH_PAIR_CAP = 5


# ---------------------------------------------------------------------------
# JSON documents


def parse_preacycloid_json(doc: dict) -> tuple[Preacycloid, Optional[RootSet]]:
    """Read a tope document: {"n", "labels"?, "topes", "loops_plus"?}.

    Topes are lists of signed labels such as "e1" or "-e2" and must
    exclude loops. The optional loops_plus entry picks one side of every
    loop pair for later groupoid builds; when present it is validated
    against the loops the family actually determines. Structural
    problems raise ParseError, axiom failures raise AxiomViolation.
    """
    if not isinstance(doc, dict):
        raise ParseError("tope document must be a JSON object")
    try:
        n = doc["n"]
    except KeyError:
        raise ParseError('tope document needs an "n" entry') from None
    if not isinstance(n, int) or n < 1:
        raise ParseError('"n" must be a positive integer')
    labels = doc.get("labels")
    if labels is None:
        ground = GroundSet.standard(n)
    else:
        if (not isinstance(labels, list) or len(labels) != n
                or not all(isinstance(s, str) and s for s in labels)):
            raise ParseError('"labels" must list one name per pair')
        if len(set(labels)) != n:
            raise ParseError("duplicate ground labels")
        ground = GroundSet(n, tuple(labels))
    raw_topes = doc.get("topes")
    if not isinstance(raw_topes, list):
        raise ParseError('tope document needs a "topes" list')
    topes = []
    for entry in raw_topes:
        if not isinstance(entry, list):
            raise ParseError("each tope must be a list of signed labels")
        try:
            topes.append(ground.set_of(entry))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad tope entry: {exc}") from None
    pa = check_preacycloid(ground, topes)
    raw_lp = doc.get("loops_plus")
    if raw_lp is None:
        return pa, None
    if not isinstance(raw_lp, list):
        raise ParseError('"loops_plus" must be a list of labels')
    try:
        lp = ground.set_of(raw_lp)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad loops_plus entry: {exc}") from None
    conj = K.involute_mask(lp.mask, n)
    if (lp.mask & conj) or (lp.mask | conj) != pa.loops.mask:
        raise ParseError(
            "loops_plus must pick exactly one side of every loop pair"
        )
    return pa, lp


def preacycloid_to_json(a: Preacycloid,
                        loops_plus: Optional[RootSet] = None) -> dict:
    """Serialize a tope family; inverse of parse_preacycloid_json."""
    ground = a.ground
    if loops_plus is None:
        lp_mask = a.loops.mask & ((1 << ground.n) - 1)
    else:
        lp_mask = loops_plus.mask
    return {
        "n": ground.n,
        "labels": list(ground.base_labels),
        "topes": [list(t.labels()) for t in a.topes],
        "loops_plus": list(RootSet(ground, lp_mask).labels()),
    }


def parse_vectors_json(doc: dict) -> tuple[tuple[Fraction, ...], ...]:
    """Read a vector document: {"dim", "vectors"} with exact rational
    coordinates written as integers or "p/q" strings."""
    if not isinstance(doc, dict):
        raise ParseError("vector document must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError('"dim" must be a positive integer')
    raw = doc.get("vectors")
    if not isinstance(raw, list) or not raw:
        raise ParseError('vector document needs a nonempty "vectors" list')
    out = []
    for vec in raw:
        if not isinstance(vec, list) or len(vec) != dim:
            raise ParseError(f"every vector must have {dim} coordinates")
        row = []
        for c in vec:
            if isinstance(c, bool) or not isinstance(c, (int, str)):
                raise ParseError(f"coordinate {c!r} is not exact")
            try:
                row.append(Fraction(c))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coordinate {c!r}: {exc}") from None
        out.append(tuple(row))
    return tuple(out)


def vectors_to_json(vectors: Sequence[Sequence]) -> dict:
    dim = len(vectors[0])
    return {
        "dim": dim,
        "vectors": [[str(Fraction(c)) for c in v] for v in vectors],
    }


def load_document(doc: dict):
    """Dispatch on document kind.

    Returns ("topes", (preacycloid, loops_plus)) or
    ("vectors", vector tuple).
    """
    if not isinstance(doc, dict):
        raise ParseError("input must be a JSON object")
    has_topes = "topes" in doc
    has_vectors = "vectors" in doc
    if has_topes and has_vectors:
        raise ParseError('document mixes "topes" and "vectors"')
    if has_topes:
        return "topes", parse_preacycloid_json(doc)
    if has_vectors:
        return "vectors", parse_vectors_json(doc)
    raise ParseError('document has neither "topes" nor "vectors"')


def carrier_of(doc: dict):
    """Parse a document down to working objects.

    Returns (preacycloid, loops_plus, vectors) where vectors is None for
    tope documents and loops_plus is None unless the document chose one.
    Vector documents run through the cone construction; their tope
    family then revalidates against the combinatorial axioms.
    """
    kind, payload = load_document(doc)
    if kind == "topes":
        pa, lp = payload
        return pa, lp, None
    view = cone_matroid(payload)
    pa = check_preacycloid(view.ground, view.topes)
    return pa, None, payload


# ---------------------------------------------------------------------------
# Bundled fixtures


@dataclass(frozen=True)
class Fixture:
    name: str
    filename: str
    kind: str
    summary: str
    doc: dict


_VECTOR_FIXTURES = (
    ("a1a1", ((1, 0), (0, 1)),
     "two orthogonal walls in the plane, reducible"),
    ("a2", ((1, 0), (0, 1), (1, 1)),
     "rank-two hexagon, simplicial"),
    ("b2", ((1, 0), (0, 1), (1, 1), (1, -1)),
     "rank-two octagon, simplicial"),
    ("nsimp", ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)),
     "four planes in rank three with non-simplicial cells"),
)

_LOOPS_DOC = {
    "n": 2,
    "labels": ["e1", "e2"],
    "topes": [["e1"], ["-e1"]],
    "loops_plus": ["e2"],
}

_catalogue_cache: Optional[dict] = None


def fixture_catalogue() -> dict[str, Fixture]:
    """Name to fixture map; built once per process.

    The nonmat entry is not a literal, it is recomputed by the
    deterministic search so the bundled family can never drift from what
    the search actually finds.
    """
    global _catalogue_cache
    if _catalogue_cache is not None:
        return _catalogue_cache
    cat: dict[str, Fixture] = {}
    for name, vecs, summary in _VECTOR_FIXTURES:
        cat[name] = Fixture(
            name=name,
            filename=f"{name}.vectors.json",
            kind="vectors",
            summary=summary,
            doc=vectors_to_json(vecs),
        )
    cat["loops"] = Fixture(
        name="loops",
        filename="loops.preacycloid.json",
        kind="topes",
        summary="one proper pair plus one loop pair",
        doc=dict(_LOOPS_DOC),
    )
    # exhaustive search proves there is nothing smaller: every acycloid
    # on four or fewer pairs is matroidal, the first escapes live on five
    found = search_nonmatroid(5)
    if found is None:
        raise InternalConsistencyError(
            "nonmatroid search over five pairs found nothing"
        )
    cat["nonmat"] = Fixture(
        name="nonmat",
        filename="nonmat.preacycloid.json",
        kind="topes",
        summary="smallest searched acycloid that fails the "
                "quasicontraction closure test",
        doc=preacycloid_to_json(found),
    )
    _catalogue_cache = cat
    return cat


# ---------------------------------------------------------------------------
# Exhaustive search for small counterexamples


def iter_loopless_families(k: int) -> Iterator[Preacycloid]:
    """Every loopless nonempty tope family on exactly k pairs, one
    representative per signed-permutation class.

    A loopless family is a nonempty involution-closed set of half sets,
    so candidates are the nonempty subsets of the involution pairs of
    half sets, walked in subset-counter order. Orbit members of each
    emitted family are marked seen up front, which keeps the walk
    deterministic and the output duplicate free.
    """
    ground = GroundSet.standard(k)
    halves = [m for m in range(1 << (2 * k))
              if K.is_half_set_mask(m, k)]
    reps = sorted(m for m in halves if m < K.involute_mask(m, k))
    perms = list(signed_permutations(k))
    seen: set[frozenset] = set()
    for chooser in range(1, 1 << len(reps)):
        masks = []
        for i, rep in enumerate(reps):
            if (chooser >> i) & 1:
                masks.append(rep)
                masks.append(K.involute_mask(rep, k))
        key = frozenset(masks)
        if key in seen:
            continue
        for perm in perms:
            seen.add(frozenset(K.apply_perm_mask(m, perm) for m in masks))
        yield Preacycloid(ground, [RootSet(ground, m) for m in masks])


def search_nonmatroid(max_pairs: int = 4) -> Optional[Preacycloid]:
    """Smallest acycloid, in search order, whose quasicontraction
    closure leaves the acycloid class.

    Scans ground sizes upward through iter_loopless_families. Only
    wall-crossing survivors reach the closure test. Sizes beyond
    SEARCH_PAIR_CAP pairs are refused, the family count doubles
    per half-set pair and is already 65535 at five.
    """
    if max_pairs > SEARCH_PAIR_CAP:
        raise ValueError(
            f"search is capped at {SEARCH_PAIR_CAP} pairs, "
            f"got {max_pairs}"
        )
    for k in range(1, max_pairs + 1):
        for fam in iter_loopless_families(k):
            ok, _ = check_acycloid(fam)
            if not ok:
                continue
            if not handa_test(fam).is_matroidal:
                return fam
    return None


# ---------------------------------------------------------------------------
# Verdict pipeline


@dataclass
class VerificationVerdict:
    """Everything the pipeline concluded about one input.

    consistency maps a named biconditional to {"holds", "lhs", "rhs"}
    (holds is None with a "reason" when the statement does not apply to
    this input). A verdict that reaches the caller has no failed rows;
    the pipeline raises InconsistentRun instead of returning one.
    """

    descriptor: dict
    properties: PropertyReport
    matroid: dict
    consistency: dict
    summary: str

    def consistent(self) -> bool:
        return all(row["holds"] is not False
                   for row in self.consistency.values())

    def to_jsonable(self) -> dict:
        return {
            "descriptor": dict(self.descriptor),
            "properties": self.properties.to_jsonable(),
            "matroid": dict(self.matroid),
            "consistency": {k: dict(v) for k, v in self.consistency.items()},
            "summary": self.summary,
        }


def _row(lhs: bool, rhs: bool) -> dict:
    return {"holds": bool(lhs) == bool(rhs), "lhs": bool(lhs),
            "rhs": bool(rhs)}


def _skip(reason: str) -> dict:
    return {"holds": None, "reason": reason}


_BATTERY = ("faithful", "finite", "connected", "simply_connected",
            "preprincipal", "complete")

_SWEEP_FLAGS = ("faithful", "finite", "connected", "simply_connected",
                "preprincipal", "complete", "antipodal")


def quasicontraction_identity(r: SignedGroupoidSet, g: Mor,
                              base_pa: Optional[Preacycloid] = None) -> bool:
    """Contract-then-project equals project-then-contract for one
    morphism: the tope family of the box component at (g.dst, {g})
    matches the quasicontraction of the tope family of r at the
    inversion set of g, both written in the frame of r's base object."""
    sub = hypercontract(r, g)
    left = pa_of(sub)
    if base_pa is None:
        base_pa = pa_of(r)
    base = r.objects[0]
    ground = r.grounds[base]
    if g.dst == base:
        moved = left.tope_masks
        gamma = r.inversion_mask(g)
    else:
        u = r.hom(g.dst, base)[0]
        moved = tuple(r.act(u, m) for m in left.tope_masks)
        gamma = r.act(u, r.inversion_mask(g))
    right = quasicontract(base_pa, RootSet(ground, gamma))
    transported = Preacycloid(ground, [RootSet(ground, m) for m in moved])
    return transported == right


def _sweep_hypercontractions(r: SignedGroupoidSet,
                             base_pa: Preacycloid) -> dict:
    """Check every box component at marks of size at most one.

    Each node must keep the preserved battery plus antipodality, its
    tope family must satisfy the closure axioms, and the resulting
    matroid must stay simplicial. On the way through, every morphism is
    run through quasicontraction_identity. Returns a consistency row.
    """
    nodes = 0
    for a in r.objects:
        mark_sets = [frozenset()]
        mark_sets.extend(frozenset([g]) for g in r.at(a))
        for marks in mark_sets:
            sub = hypercontract(r, BoxObject(a, marks))
            nodes += 1
            rep = check_properties(sub)
            bad = [f for f in _SWEEP_FLAGS if not rep.flags[f]]
            if bad:
                return {"holds": False, "nodes": nodes,
                        "witness": f"node ({a!r}, {sorted(map(repr, marks))})"
                                   f" loses {bad}"}
            spa = pa_of(sub)
            sview = closure_from_topes(spa)
            sax = check_matroid_axioms(sview)
            if not sax.passed:
                return {"holds": False, "nodes": nodes,
                        "witness": f"node ({a!r}, ...) fails axioms "
                                   f"{sax.failing()}"}
            simp, wit = is_simplicial(sview)
            if not simp:
                return {"holds": False, "nodes": nodes,
                        "witness": f"node ({a!r}, ...) not simplicial: "
                                   f"{wit!r}"}
    for g in sorted(r.mors, key=Mor.sort_key):
        if not quasicontraction_identity(r, g, base_pa):
            return {"holds": False, "nodes": nodes,
                    "witness": f"contraction identity fails at {g!r}"}
    return {"holds": True, "nodes": nodes}


def main_theorem_pipeline(source: Union[dict, Preacycloid],
                          loops_plus: Optional[RootSet] = None,
                          *, name: Optional[str] = None,
                          sweep: bool = False,
                          cone_check: bool = True) -> VerificationVerdict:
    """Run one input through every verdict the package can form and tie
    the results together.

    The property battery, the wall-crossing and quasicontraction tests,
    the closure axioms, and the groupoid round trip are computed
    independently, then compared pairwise along the known equivalences.
    Any disagreement raises InconsistentRun with the offending verdict
    attached as .verdict; a returned verdict is always consistent.
    With sweep=True, inputs passing the full battery additionally get
    every single-mark hypercontraction checked for the preserved
    properties.
    """
    vectors = None
    if isinstance(source, Preacycloid):
        pa, lp = source, loops_plus
    elif isinstance(source, dict):
        pa, lp, vectors = carrier_of(source)
        if loops_plus is not None:
            lp = loops_plus
    else:
        raise TypeError(f"cannot run pipeline on {type(source).__name__}")

    r = sgs_from_preacycloid(pa, lp)
    rep = check_properties(r, hereditary=True)
    f = rep.flags
    acyc, _acyc_wit = check_acycloid(pa)
    simple_pa = is_simple(pa)
    handa = handa_test(pa)
    view = closure_from_topes(pa)
    axioms = check_matroid_axioms(view)
    simplicial: Optional[bool] = None
    simple_m: Optional[bool] = None
    rank: Optional[int] = None
    if axioms.passed:
        simplicial, _ = is_simplicial(view)
        simple_m = is_simple_matroid(view)
        rank = underlying_rank(view)
    roundtrip = pa_of(r) == pa

    ground = pa.ground
    descriptor = {
        "kind": "vectors" if vectors is not None else "topes",
        "pairs": ground.n,
        "tope_count": len(pa.topes),
        "loop_labels": list(pa.loops.labels()),
    }
    if name is not None:
        descriptor["name"] = name
    if vectors is not None:
        descriptor["vectors"] = vectors_to_json(vectors)["vectors"]

    battery = all(f[k] for k in _BATTERY)
    rows = {
        "preprincipal-iff-acycloid": _row(f["preprincipal"], acyc),
        "hereditary-preprincipal-iff-quasicontraction-closure":
            _row(f["hereditarily_preprincipal"], handa.is_matroidal),
        "quasicontraction-closure-iff-closure-axioms":
            _row(handa.is_matroidal, axioms.passed),
        "real-iff-loopless": _row(f["real"], not pa.loops),
        "complete-iff-rootoidal-and-antipodal":
            _row(f["complete"], f["rootoidal_jop"] and f["antipodal"]),
        "simple-iff-real-and-compressed":
            _row(simple_pa, f["real"] and f["compressed"]),
        "matroidal-iff-hereditary-battery":
            _row(axioms.passed,
                 all(f[k] for k in ("faithful", "finite", "connected",
                                    "simply_connected", "antipodal",
                                    "hereditarily_preprincipal"))),
        "battery-iff-simplicial-matroid":
            _row(battery, axioms.passed and simplicial is True),
        "real-principal-iff-simple-acycloid":
            _row(f["real"] and f["principal"], acyc and simple_pa),
        "tope-family-roundtrip": _row(roundtrip, True),
    }
    if battery:
        chain = (
            f["real"] and f["principal"],
            f["real"] and f["compressed"],
            acyc and simple_pa,
            bool(simple_m) and simplicial is True,
        )
        rows["geometry-chain"] = {
            "holds": len(set(chain)) == 1,
            "lhs": chain[0], "rhs": chain[3],
        }
    else:
        rows["geometry-chain"] = _skip(
            "outside the simplicial correspondence"
        )
    if vectors is not None and cone_check:
        cview = cone_matroid(vectors)
        agree = all(
            view.closure_mask(x) == cone_closure(cview, RootSet(ground, x)).mask
            for x in range(1 << ground.size)
        )
        rows["cone-closure-agreement"] = _row(agree, True)
    if sweep:
        if battery:
            rows["hypercontraction-sweep"] = _sweep_hypercontractions(r, pa)
        else:
            rows["hypercontraction-sweep"] = _skip(
                "input does not pass the full battery"
            )

    matroid = {
        "acycloid": acyc,
        "simple": simple_pa,
        "matroidal_by_quasicontraction": handa.is_matroidal,
        "matroidal_by_axioms": axioms.passed,
        "simplicial": simplicial,
        "simple_matroid": simple_m,
        "rank": rank,
        "quasicontraction_nodes": handa.node_count,
    }

    verdict = VerificationVerdict(
        descriptor=descriptor,
        properties=rep,
        matroid=matroid,
        consistency=rows,
        summary=_summarize(axioms.passed, acyc, simplicial, simple_m,
                           bool(pa.loops)),
    )
    if not verdict.consistent():
        broken = sorted(k for k, v in rows.items() if v["holds"] is False)
        exc = InconsistentRun(
            f"verdict biconditionals disagree: {', '.join(broken)}"
        )
        exc.verdict = verdict
        raise exc
    return verdict


def _summarize(matroidal: bool, acyc: bool, simplicial: Optional[bool],
               simple_m: Optional[bool], has_loops: bool) -> str:
    if not matroidal:
        return ("non-matroidal acycloid" if acyc
                else "non-matroidal preacycloid")
    base = "oriented geometry" if simple_m else "oriented matroid"
    out = f"simplicial {base}" if simplicial else f"{base}, not simplicial"
    if has_loops:
        out += " (with loops)"
    return out


def closure_corollary_check(r: SignedGroupoidSet, cap: int = 16) -> bool:
    """Convex closure recovered from the groupoid alone.

    For every subset X of the base ground set, the closure must equal
    the imaginary part together with, for each object a, the
    intersection of all tope sets containing X cut down to the tope set
    of a. Needs the finite, faithful, connected, simply connected,
    preprincipal, and rootoidal flags, and additionally antipodality so
    the tope family itself is defined. Grounds beyond cap elements are
    refused rather than walked.
    """
    rep = check_properties(r)
    for flag in ("finite", "faithful", "connected", "simply_connected",
                 "preprincipal", "rootoidal_jop", "antipodal"):
        if not rep.flags[flag]:
            raise PrerequisiteFailed(flag)
    pa = pa_of(r)
    ground = pa.ground
    if ground.size > cap:
        raise CapExceeded(
            f"closure comparison over 2^{ground.size} subsets "
            f"exceeds cap 2^{cap}"
        )
    view = closure_from_topes(pa)
    loops = pa.loops.mask
    tm = pa.tope_masks
    for x in range(1 << ground.size):
        want = loops
        for ta in tm:
            xa = x & ta
            inter = ground.full_mask
            for tb in tm:
                if tb & xa == xa:
                    inter &= tb
            want |= inter
        if view.closure_mask(x) != want:
            return False
    return True


# ---------------------------------------------------------------------------
# Command line


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read_doc(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path} must hold a JSON object")
    return doc


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _print_payload(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(_dump_json(payload))
    else:
        for line in lines:
            print(line)


def _cmd_validate(args) -> int:
    doc = _read_doc(args.file)
    pa, lp, vectors = carrier_of(doc)
    acyc, wit = check_acycloid(pa)
    payload = {
        "valid": True,
        "kind": "vectors" if vectors is not None else "topes",
        "pairs": pa.ground.n,
        "tope_count": len(pa.topes),
        "loops": list(pa.loops.labels()),
        "acycloid": acyc,
    }
    lines = [
        f"preacycloid: ok ({len(pa.topes)} topes on {pa.ground.n} pairs)",
        f"loops: {', '.join(pa.loops.labels()) or 'none'}",
        f"acycloid (wall-crossing): {_yesno(acyc)}",
    ]
    if not acyc and wit is not None:
        payload["wall_crossing_witness"] = repr(wit)
        lines.append(f"  witness: {wit!r}")
    _print_payload(args, payload, lines)
    return 0


def _cmd_properties(args) -> int:
    doc = _read_doc(args.file)
    pa, lp, _ = carrier_of(doc)
    r = sgs_from_preacycloid(pa, lp)
    rep = check_properties(r, hereditary=True)
    payload = rep.to_jsonable()
    lines = []
    for name, value in rep.flags.items():
        mark = _yesno(value)
        wit = rep.witnesses.get(name)
        lines.append(f"{name}: {mark}" + (f"  [{wit!r}]" if wit else ""))
    _print_payload(args, payload, lines)
    return 0 if all(rep.flags.values()) else 1


def _cmd_handa(args) -> int:
    doc = _read_doc(args.file)
    pa, _, _ = carrier_of(doc)
    report = handa_test(pa)
    payload = {
        "is_matroidal": report.is_matroidal,
        "node_count": report.node_count,
    }
    lines = [
        f"quasicontraction closure: "
        f"{'stays acycloid' if report.is_matroidal else 'escapes'}",
        f"families visited: {report.node_count}",
    ]
    if report.witness is not None:
        w = report.witness
        payload["witness"] = {
            "path": [list(c.labels()) for c in w.path],
            "pair": repr(w.pair),
        }
        lines.append(
            "failing node reached by contracting: "
            + (", ".join("{" + ",".join(c.labels()) + "}" for c in w.path)
               or "(the input itself)")
        )
        lines.append(f"  wall-crossing witness: {w.pair!r}")
    _print_payload(args, payload, lines)
    return 0 if report.is_matroidal else 1


def _cmd_matroid(args) -> int:
    doc = _read_doc(args.file)
    pa, _, _ = carrier_of(doc)
    view = closure_from_topes(pa)
    ax = check_matroid_axioms(view)
    payload = {
        "axioms": dict(ax.axioms),
        "passed": ax.passed,
        "mode": ax.mode,
    }
    lines = [f"closure axioms: {'pass' if ax.passed else 'FAIL'} "
             f"({ax.mode})"]
    for k in sorted(ax.axioms):
        lines.append(f"  {k}: {_yesno(ax.axioms[k])}")
    if not ax.passed:
        payload["witnesses"] = {k: repr(v) for k, v in ax.witnesses.items()}
        for k in ax.failing():
            lines.append(f"  witness {k}: {ax.witnesses.get(k)!r}")
        _print_payload(args, payload, lines)
        return 1
    simp, wit = is_simplicial(view)
    circ = circuits(view)
    payload.update({
        "rank": underlying_rank(view),
        "simple": is_simple_matroid(view),
        "simplicial": simp,
        "circuit_count": len(circ),
        "circuits": [list(c.labels()) for c in circ],
    })
    lines.append(f"rank: {payload['rank']}")
    lines.append(f"simple: {_yesno(payload['simple'])}")
    lines.append(f"simplicial: {_yesno(simp)}"
                 + (f"  [{wit!r}]" if wit is not None else ""))
    lines.append(f"circuits: {len(circ)}")
    for c in circ:
        lines.append("  {" + ",".join(c.labels()) + "}")
    _print_payload(args, payload, lines)
    return 0


def _parse_tope_arg(ground: GroundSet, spec: str) -> RootSet:
    parts = [p.strip() for p in spec.split(",") if p.strip()]
    try:
        return ground.set_of(parts)
    except KeyError as exc:
        raise ParseError(f"bad tope argument {spec!r}: {exc}") from None


def _cmd_hypercontract(args) -> int:
    doc = _read_doc(args.file)
    pa, lp, _ = carrier_of(doc)
    ground = pa.ground
    base = _parse_tope_arg(ground, args.base)
    marks = [_parse_tope_arg(ground, s) for s in (args.marks or [])]
    result = hypercontract_topes(pa, base, marks)
    inner = [m for m in result if m.mask & ~base.mask == 0]
    if len(inner) != 1:
        raise InternalConsistencyError(
            "base tope did not survive its own contraction exactly once"
        )
    dead = RootSet(ground, base.mask & ~inner[0].mask)

    view = closure_from_topes(pa)
    ax = check_matroid_axioms(view)
    simplicial = ax.passed and is_simplicial(view)[0]
    cross = "skipped (source not simplicial)"
    if simplicial:
        r = sgs_from_preacycloid(pa, lp)
        # object keys are positive-system masks: tope | loop split
        split = lp.mask if lp is not None else (
            pa.loops.mask & ((1 << ground.n) - 1))
        base_obj = base.mask | split
        mark_mors = []
        for k in marks:
            hom = r.hom(k.mask | split, base_obj)
            if len(hom) != 1:
                raise InternalConsistencyError(
                    "expected a unique morphism between topes"
                )
            mark_mors.append(hom[0])
        sub = hypercontract(r, BoxObject(base_obj, frozenset(mark_mors)))
        spa = pa_of(sub)
        if spa.tope_masks != tuple(sorted(m.mask for m in result)):
            raise InternalConsistencyError(
                "tope-level contraction disagrees with the groupoid path"
            )
        cross = "agree"

    result_acycloid: Optional[bool]
    try:
        out_pa = check_preacycloid(ground, result)
        result_acycloid = check_acycloid(out_pa)[0]
    except AxiomViolation:
        result_acycloid = None
    payload = {
        "base": list(base.labels()),
        "marks": [list(k.labels()) for k in marks],
        "result_topes": [list(t.labels()) for t in result],
        "imaginary": list(dead.labels()),
        "result_is_acycloid": result_acycloid,
        "sgs_cross_check": cross,
    }
    lines = [
        f"base: {{{','.join(base.labels())}}}",
        "marks: " + (" ".join("{" + ",".join(k.labels()) + "}"
                              for k in marks) or "(none)"),
        f"newly imaginary: {{{','.join(dead.labels())}}}",
        f"result ({len(result)} topes):",
    ]
    lines.extend("  {" + ",".join(t.labels()) + "}" for t in result)
    lines.append(f"groupoid cross-check: {cross}")
    if result_acycloid is None:
        lines.append("result family: not even a preacycloid")
    else:
        lines.append(f"result family acycloid: {_yesno(result_acycloid)}")
    _print_payload(args, payload, lines)
    return 0


def _cmd_pipeline(args) -> int:
    doc = _read_doc(args.file)
    name = Path(args.file).stem.split(".")[0]
    verdict = main_theorem_pipeline(
        doc, name=name, sweep=args.sweep, cone_check=not args.no_cone_check,
    )
    payload = verdict.to_jsonable()
    lines = [f"verdict: {verdict.summary}"]
    flags = verdict.properties.flags
    lines.append("properties: "
                 + " ".join(f"{k}={'y' if v else 'n'}"
                            for k, v in flags.items()))
    for key, row in verdict.consistency.items():
        if row["holds"] is None:
            lines.append(f"  {key}: skipped ({row['reason']})")
        else:
            lines.append(f"  {key}: ok")
    matroidal = verdict.matroid["matroidal_by_axioms"]
    lines.append(f"matroidal: {_yesno(matroidal)}")
    _print_payload(args, payload, lines)
    return 0 if matroidal else 1


def _cmd_search(args) -> int:
    found = search_nonmatroid(args.max_pairs)
    if found is None:
        _print_payload(args, {"found": False},
                       [f"no counterexample up to {args.max_pairs} pairs"])
        return 1
    report = handa_test(found)
    payload = {
        "found": True,
        "document": preacycloid_to_json(found),
        "quasicontraction_nodes": report.node_count,
    }
    lines = [
        f"found an acycloid on {found.ground.n} pairs that escapes the "
        f"acycloid class under quasicontraction",
    ]
    lines.extend("  {" + ",".join(t.labels()) + "}" for t in found.topes)
    _print_payload(args, payload, lines)
    return 0


def _cmd_fixtures(args) -> int:
    cat = fixture_catalogue()
    if args.action == "list":
        payload = {
            name: {"filename": fx.filename, "kind": fx.kind,
                   "summary": fx.summary}
            for name, fx in cat.items()
        }
        lines = [f"{name:8s} {fx.kind:8s} {fx.summary}"
                 for name, fx in sorted(cat.items())]
        _print_payload(args, payload, lines)
        return 0
    outdir = Path(args.dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, fx in sorted(cat.items()):
        path = outdir / fx.filename
        path.write_text(_dump_json(fx.doc))
        written.append(str(path))
    if args.with_verdicts:
        golden = outdir / "golden"
        golden.mkdir(exist_ok=True)
        for name, fx in sorted(cat.items()):
            verdict = main_theorem_pipeline(fx.doc, name=name)
            path = golden / f"{name}.verdict.json"
            path.write_text(_dump_json(verdict.to_jsonable()))
            written.append(str(path))
    _print_payload(args, {"written": written},
                   [f"wrote {p}" for p in written])
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topekit",
        description="exact verification for tope families, their "
                    "groupoids, and the matroids they induce",
    )
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="axioms on an input file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("properties", help="groupoid property battery")
    p.add_argument("file")
    p.set_defaults(func=_cmd_properties)

    p = sub.add_parser("handa", help="quasicontraction closure test")
    p.add_argument("file")
    p.set_defaults(func=_cmd_handa)

    p = sub.add_parser("matroid",
                       help="closure axioms, circuits, rank, simpliciality")
    p.add_argument("file")
    p.set_defaults(func=_cmd_matroid)

    p = sub.add_parser("hypercontract",
                       help="contract marks at a base tope")
    p.add_argument("file")
    p.add_argument("--base", required=True,
                   help="comma-separated signed labels of the base tope")
    p.add_argument("--marks", action="append", default=[],
                   help="a mark tope, repeatable; write --marks=-e1,e2 "
                        "when the first label is negated")
    p.set_defaults(func=_cmd_hypercontract)

    p = sub.add_parser("pipeline", help="full verdict with consistency"
                                        " matrix")
    p.add_argument("file")
    p.add_argument("--sweep", action="store_true",
                   help="also check all single-mark hypercontractions")
    p.add_argument("--no-cone-check", action="store_true",
                   help="skip the cone closure comparison on vector input")
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("search-nonmatroid",
                       help="hunt for a non-matroidal acycloid")
    p.add_argument("--max-pairs", type=int, default=5)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("fixtures", help="bundled inputs")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("--dir", default="fixtures",
                   help="target directory for emit")
    p.add_argument("--with-verdicts", action="store_true",
                   help="also emit golden pipeline verdicts")
    p.set_defaults(func=_cmd_fixtures)
    return parser


_USAGE_ERRORS = (ParseError, GroundCapExceeded, GroupCapExceeded,
                 CapExceeded, BadLoopSplit, ValueError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentRun as exc:
        print(f"INTERNAL INCONSISTENCY: {exc}", file=sys.stderr)
        return 1
    except TopekitError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
