"""Statement-level annotation: five interchangeable reification encodings.

An ``AnnotatedStatement`` is a base triple plus metadata pairs.  ``encode``
lowers a list of them into one of five concrete shapes and ``decode`` lifts
complete instances back out, leaving everything else untouched:

  sr   a statement node typed rdf:Statement carrying rdf:subject /
       rdf:predicate / rdf:object plus the annotations; the base triple
       itself is not asserted
  nr   the base triple asserted, plus a relation node hung off the base
       subject by each annotation predicate, with "<predicate>-value"
       triples carrying the annotation objects
  rdr  the base triple quoted as an embedded-triple subject; needs the
       syntax module's embedded-triple extension to write out
  sp   a singleton predicate "{predicate}#k" linked to the original by
       rdf:singletonPropertyOf, the base rewritten through it, and the
       annotations attached to it
  ng   a dataset with one fresh named graph per statement holding the base
       triple, annotations on the graph name in the default graph

The scaffolding cost per statement is 4/2/1/2/1 statements respectively
(rdr counted in extended triples, ng in quads).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Union

from .model import BlankNode, Dataset, Graph, Iri, Literal, Term, Triple, term_sort_key
from . import vocab

__all__ = [
    "AnnotatedStatement",
    "AnnotatedGraph",
    "ReificationScheme",
    "encode",
    "decode",
    "extra_statement_count",
]

FreshNode = Callable[[], Union[Iri, BlankNode]]


@dataclass(frozen=True)
class AnnotatedStatement:
    """A base triple plus a non-empty, order-preserving list of metadata pairs."""

    base: Triple
    annotations: tuple[tuple[Iri, Term], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.base, Triple):
            raise TypeError("base must be a Triple")
        object.__setattr__(self, "annotations", tuple(self.annotations))
        if not self.annotations:
            raise ValueError("an annotated statement needs at least one annotation")
        for pred, obj in self.annotations:
            if not isinstance(pred, Iri):
                raise TypeError("annotation predicates must be IRIs")
            if not isinstance(obj, (Iri, BlankNode, Literal)):
                raise TypeError("annotation objects must be RDF terms")


@dataclass(frozen=True)
class AnnotatedGraph:
    """A plain graph plus statements annotated through embedded-triple subjects."""

    graph: Graph
    annotated: tuple[AnnotatedStatement, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.graph, Graph):
            raise TypeError("graph must be a Graph")
        object.__setattr__(self, "annotated", tuple(self.annotated))
        for st in self.annotated:
            if not isinstance(st, AnnotatedStatement):
                raise TypeError("annotated entries must be AnnotatedStatement values")


class ReificationScheme(str, Enum):
    SR = "sr"
    NR = "nr"
    RDR = "rdr"
    SP = "sp"
    NG = "ng"


_EXTRA_PER_STATEMENT = {
    ReificationScheme.SR: 4,
    ReificationScheme.NR: 2,
    ReificationScheme.RDR: 1,
    ReificationScheme.SP: 2,
    ReificationScheme.NG: 1,
}


def extra_statement_count(scheme: ReificationScheme, n: int) -> int:
    """Scaffolding statements needed for n base statements, payload excluded."""
    if n < 0:
        raise ValueError("statement count must be non-negative")
    return _EXTRA_PER_STATEMENT[ReificationScheme(scheme)] * n


def _statement_terms(stmts: Iterable[AnnotatedStatement]) -> set[Term]:
    out: set[Term] = set()
    for st in stmts:
        out.update(st.base.terms())
        for pred, obj in st.annotations:
            out.add(pred)
            out.add(obj)
    return out


def _default_fresh(stmts: list[AnnotatedStatement]) -> FreshNode:
    used = {t.label for t in _statement_terms(stmts) if isinstance(t, BlankNode)}
    counter = 0

    def fresh() -> BlankNode:
        nonlocal counter
        while f"r{counter}" in used:
            counter += 1
        label = f"r{counter}"
        counter += 1
        return BlankNode(label)

    return fresh


def encode(
    stmts: Iterable[AnnotatedStatement],
    scheme: ReificationScheme,
    fresh: FreshNode | None = None,
) -> Graph | AnnotatedGraph | Dataset:
    """Lower annotated statements into the concrete shape of one scheme.

    ``fresh`` supplies statement nodes (sr), relation nodes (nr), and graph
    names (ng); the default yields blank nodes that avoid the input's labels.
    Singleton predicates (sp) are derived from the base predicate with a
    per-run counter, not drawn from ``fresh``.
    """
    scheme = ReificationScheme(scheme)
    stmt_list = list(stmts)
    for st in stmt_list:
        if not isinstance(st, AnnotatedStatement):
            raise TypeError("encode takes AnnotatedStatement values")
    if fresh is None:
        fresh = _default_fresh(stmt_list)

    if scheme is ReificationScheme.SR:
        triples: list[Triple] = []
        for st in stmt_list:
            node = fresh()
            triples.append(Triple(node, vocab.RDF_TYPE, vocab.RDF_STATEMENT))
            triples.append(Triple(node, vocab.RDF_SUBJECT, st.base.subject))
            triples.append(Triple(node, vocab.RDF_PREDICATE, st.base.predicate))
            triples.append(Triple(node, vocab.RDF_OBJECT, st.base.object))
            triples.extend(Triple(node, pred, obj) for pred, obj in st.annotations)
        return Graph(triples)

    if scheme is ReificationScheme.NR:
        triples = []
        for st in stmt_list:
            relation = fresh()
            triples.append(st.base)
            for pred, obj in st.annotations:
                triples.append(Triple(st.base.subject, pred, relation))
                triples.append(Triple(relation, Iri(pred.value + "-value"), obj))
        return Graph(triples)

    if scheme is ReificationScheme.RDR:
        # Groups sharing a base triple collapse into one annotated statement;
        # the grouping is not recoverable from the embedded-subject form.
        merged: dict[Triple, list[tuple[Iri, Term]]] = {}
        for st in stmt_list:
            merged.setdefault(st.base, []).extend(st.annotations)
        return AnnotatedGraph(
            Graph(),
            tuple(
                AnnotatedStatement(base, tuple(pairs)) for base, pairs in merged.items()
            ),
        )

    if scheme is ReificationScheme.SP:
        triples = []
        counter = 1
        for st in stmt_list:
            singleton = Iri(f"{st.base.predicate.value}#{counter}")
            counter += 1
            triples.append(Triple(singleton, vocab.RDF_SINGLETON_PROPERTY_OF, st.base.predicate))
            triples.append(Triple(st.base.subject, singleton, st.base.object))
            triples.extend(Triple(singleton, pred, obj) for pred, obj in st.annotations)
        return Graph(triples)

    # ng: one fresh named graph per statement, annotations on its name.
    named: list[tuple[Iri | BlankNode, Graph]] = []
    default: list[Triple] = []
    for st in stmt_list:
        name = fresh()
        named.append((name, Graph([st.base])))
        default.extend(Triple(name, pred, obj) for pred, obj in st.annotations)
    return Dataset(Graph(default), named)


def _sorted_pairs(pairs: Iterable[tuple[Iri, Term]]) -> tuple[tuple[Iri, Term], ...]:
    return tuple(sorted(pairs, key=lambda po: (term_sort_key(po[0]), term_sort_key(po[1]))))


def _decode_sr(g: Graph) -> tuple[list[AnnotatedStatement], Graph]:
    by_subject: dict[Term, list[Triple]] = {}
    for t in g.triples:
        by_subject.setdefault(t.subject, []).append(t)

    statements: list[AnnotatedStatement] = []
    consumed: set[Triple] = set()
    nodes = sorted(
        (s for s, ts in by_subject.items() if Triple(s, vocab.RDF_TYPE, vocab.RDF_STATEMENT) in g.triples),
        key=term_sort_key,
    )
    for node in nodes:
        mine = by_subject[node]
        subjects = [t for t in mine if t.predicate == vocab.RDF_SUBJECT]
        predicates = [t for t in mine if t.predicate == vocab.RDF_PREDICATE]
        objects = [t for t in mine if t.predicate == vocab.RDF_OBJECT]
        if len(subjects) != 1 or len(predicates) != 1 or len(objects) != 1:
            continue
        s, p, o = subjects[0].object, predicates[0].object, objects[0].object
        if isinstance(s, Literal) or not isinstance(p, Iri):
            continue
        type_triple = Triple(node, vocab.RDF_TYPE, vocab.RDF_STATEMENT)
        scaffolding = {type_triple, subjects[0], predicates[0], objects[0]}
        annotations = [(t.predicate, t.object) for t in mine if t not in scaffolding]
        if not annotations:
            continue
        statements.append(AnnotatedStatement(Triple(s, p, o), _sorted_pairs(annotations)))
        consumed.update(scaffolding)
        consumed.update(t for t in mine if t not in scaffolding)
    return statements, Graph(g.triples - consumed)


def _decode_nr(g: Graph) -> tuple[list[AnnotatedStatement], Graph]:
    incoming: dict[Term, list[Triple]] = {}
    outgoing: dict[Term, list[Triple]] = {}
    for t in g.triples:
        outgoing.setdefault(t.subject, []).append(t)
        incoming.setdefault(t.object, []).append(t)

    # A relation node: every incoming edge is a link from one shared subject,
    # every outgoing edge pairs with a link via the "-value" naming rule.
    relations: dict[Term, tuple[Term, list[Triple], list[Triple]]] = {}
    for node, links in incoming.items():
        if isinstance(node, Literal):
            continue
        values = outgoing.get(node, [])
        if not links or not values:
            continue
        subjects = {t.subject for t in links}
        if len(subjects) != 1:
            continue
        link_preds = {t.predicate.value for t in links}
        if any(t.predicate.value + "-value" not in {v.predicate.value for v in values} for t in links):
            continue
        if any(
            not v.predicate.value.endswith("-value")
            or v.predicate.value[: -len("-value")] not in link_preds
            for v in values
        ):
            continue
        relations[node] = (subjects.pop(), links, values)

    statements: list[AnnotatedStatement] = []
    consumed: set[Triple] = set()
    link_triples = {t for _, (_, links, _) in relations.items() for t in links}
    for node in sorted(relations, key=term_sort_key):
        subject, links, values = relations[node]
        base_candidates = [
            t
            for t in outgoing.get(subject, [])
            if t not in link_triples and t.object not in relations
        ]
        if len(base_candidates) != 1:
            continue
        base = base_candidates[0]
        annotations = [
            (Iri(v.predicate.value[: -len("-value")]), v.object) for v in values
        ]
        statements.append(AnnotatedStatement(base, _sorted_pairs(annotations)))
        consumed.add(base)
        consumed.update(links)
        consumed.update(values)
    return statements, Graph(g.triples - consumed)


def _decode_sp(g: Graph) -> tuple[list[AnnotatedStatement], Graph]:
    by_predicate: dict[Iri, list[Triple]] = {}
    by_subject: dict[Term, list[Triple]] = {}
    for t in g.triples:
        by_predicate.setdefault(t.predicate, []).append(t)
        by_subject.setdefault(t.subject, []).append(t)

    statements: list[AnnotatedStatement] = []
    consumed: set[Triple] = set()
    for link in sorted(
        by_predicate.get(vocab.RDF_SINGLETON_PROPERTY_OF, []), key=lambda t: term_sort_key(t.subject)
    ):
        singleton, original = link.subject, link.object
        if not isinstance(singleton, Iri) or not isinstance(original, Iri):
            continue
        rewritten = by_predicate.get(singleton, [])
        if len(rewritten) != 1:
            continue
        base = Triple(rewritten[0].subject, original, rewritten[0].object)
        annotations = [
            (t.predicate, t.object)
            for t in by_subject.get(singleton, [])
            if t != link
        ]
        if not annotations:
            continue
        statements.append(AnnotatedStatement(base, _sorted_pairs(annotations)))
        consumed.add(link)
        consumed.add(rewritten[0])
        consumed.update(t for t in by_subject.get(singleton, []) if t != link)
    return statements, Graph(g.triples - consumed)


def _decode_ng(ds: Dataset) -> tuple[list[AnnotatedStatement], Dataset]:
    statements: list[AnnotatedStatement] = []
    consumed_default: set[Triple] = set()
    consumed_names: set[Iri | BlankNode] = set()
    for name in sorted(ds.named, key=term_sort_key):
        graph = ds.named[name]
        if len(graph) != 1:
            continue
        annotations = [
            (t.predicate, t.object) for t in ds.default.triples if t.subject == name
        ]
        if not annotations:
            continue
        (base,) = graph.triples
        statements.append(AnnotatedStatement(base, _sorted_pairs(annotations)))
        consumed_names.add(name)
        consumed_default.update(t for t in ds.default.triples if t.subject == name)
    residual = Dataset(
        Graph(ds.default.triples - consumed_default),
        {n: g for n, g in ds.named.items() if n not in consumed_names},
    )
    return statements, residual


def decode(
    data: Graph | AnnotatedGraph | Dataset, scheme: ReificationScheme
) -> tuple[list[AnnotatedStatement], Graph | Dataset]:
    """Lift complete scheme instances out of the data.

    Only complete patterns are recognized; partial fragments and unrelated
    triples come back unchanged as the residual.  Inverse of ``encode`` up to
    fresh-identifier renaming, except that rdr merges annotation groups that
    shared a base triple.
    """
    scheme = ReificationScheme(scheme)
    if scheme is ReificationScheme.NG:
        if not isinstance(data, Dataset):
            raise TypeError("ng decoding takes a Dataset")
        return _decode_ng(data)
    if scheme is ReificationScheme.RDR:
        if isinstance(data, AnnotatedGraph):
            merged: dict[Triple, list[tuple[Iri, Term]]] = {}
            for st in data.annotated:
                merged.setdefault(st.base, []).extend(st.annotations)
            return (
                [AnnotatedStatement(b, tuple(pairs)) for b, pairs in merged.items()],
                data.graph,
            )
        if isinstance(data, Graph):
            return ([], data)
        raise TypeError("rdr decoding takes a Graph or AnnotatedGraph")
    if not isinstance(data, Graph):
        raise TypeError(f"{scheme.value} decoding takes a Graph")
    if scheme is ReificationScheme.SR:
        return _decode_sr(data)
    if scheme is ReificationScheme.NR:
        return _decode_nr(data)
    return _decode_sp(data)
