"""Core value types for RDF 1.1: terms, triples, graphs, datasets, prefix maps.

Everything in this module is an immutable value. Constructors validate, so any
term or triple you can get your hands on is well formed:

  * ``Iri`` requires a scheme (minimal absoluteness check); equality is
    codepoint equality, no normalization.
  * ``BlankNode`` labels are document scoped and may begin with a digit.
  * ``Literal`` always carries a datatype; a language tag forces
    ``rdf:langString`` and is lowercased on construction.
  * ``Triple`` rejects literal subjects and non-IRI predicates.
  * ``Graph`` and ``Dataset`` are duplicate-free sets with deterministic
    iteration order (IRIs < blank nodes < literals, each ordered by string),
    so serializing the same value twice yields byte-identical output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Union

__all__ = [
    "ModelError",
    "EmptyIriError",
    "RelativeIriError",
    "BadBlankNodeLabelError",
    "LangWithoutLangStringError",
    "MissingLanguageTagError",
    "MalformedLanguageTagError",
    "LiteralSubjectError",
    "NonIriPredicateError",
    "UnknownPrefixError",
    "MalformedNameError",
    "Iri",
    "BlankNode",
    "Literal",
    "Term",
    "SubjectTerm",
    "Triple",
    "Graph",
    "Dataset",
    "PrefixMap",
    "Datatype",
    "ILL_TYPED",
    "UNRECOGNIZED",
    "DEFAULT_DATATYPES",
    "BUILTIN_DATATYPES",
    "expand_prefixed_name",
    "graph_union",
    "is_ground",
    "literal_value",
    "term_sort_key",
    "triple_sort_key",
    "RDF_NS",
    "RDFS_NS",
    "XSD_NS",
]


class ModelError(ValueError):
    """A value failed the construction rules of the data model."""


class EmptyIriError(ModelError):
    pass


class RelativeIriError(ModelError):
    pass


class BadBlankNodeLabelError(ModelError):
    pass


class LangWithoutLangStringError(ModelError):
    """A language tag was supplied with a datatype other than rdf:langString."""


class MissingLanguageTagError(ModelError):
    """Datatype rdf:langString requires a language tag."""


class MalformedLanguageTagError(ModelError):
    pass


class LiteralSubjectError(ModelError):
    pass


class NonIriPredicateError(ModelError):
    pass


class UnknownPrefixError(ModelError):
    pass


class MalformedNameError(ModelError):
    pass


RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

# Scheme per RFC 3986: ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) followed by ":".
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")

# Labels may begin with a digit but may not end with a dot.
_BLANK_LABEL_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.\-]*$")

_LANG_TAG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI. Compared verbatim, codepoint for codepoint."""

    value: str

    def __post_init__(self) -> None:
        if not isinstance(self.value, str):
            raise TypeError(f"Iri value must be str, got {type(self.value).__name__}")
        if not self.value:
            raise EmptyIriError("IRI must not be empty")
        if _SCHEME_RE.match(self.value) is None:
            raise RelativeIriError(f"not an absolute IRI (no scheme): {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A blank node, identified by a document-scoped label."""

    label: str

    def __post_init__(self) -> None:
        if not isinstance(self.label, str):
            raise TypeError(f"BlankNode label must be str, got {type(self.label).__name__}")
        if _BLANK_LABEL_RE.match(self.label) is None or self.label.endswith("."):
            raise BadBlankNodeLabelError(f"bad blank node label: {self.label!r}")

    def __str__(self) -> str:
        return f"_:{self.label}"


_RDF_LANGSTRING_VALUE = RDF_NS + "langString"
_XSD_STRING_VALUE = XSD_NS + "string"


@dataclass(frozen=True, slots=True)
class Literal:
    """A literal: lexical form, datatype IRI, optional language tag.

    With no datatype and no tag the datatype defaults to xsd:string.  A
    language tag is lowercased and forces the datatype rdf:langString; a tag
    together with any other datatype is an error, as is rdf:langString
    without a tag.
    """

    lexical_form: str
    datatype: Iri = None  # type: ignore[assignment]  # normalized in __post_init__
    language_tag: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.lexical_form, str):
            raise TypeError(
                f"Literal lexical form must be str, got {type(self.lexical_form).__name__}"
            )
        tag = self.language_tag
        dt = self.datatype
        if tag is not None:
            if _LANG_TAG_RE.match(tag) is None:
                raise MalformedLanguageTagError(f"bad language tag: {tag!r}")
            if dt is not None and dt.value != _RDF_LANGSTRING_VALUE:
                raise LangWithoutLangStringError(
                    f"language tag requires datatype rdf:langString, got {dt.value}"
                )
            object.__setattr__(self, "language_tag", tag.lower())
            object.__setattr__(self, "datatype", Iri(_RDF_LANGSTRING_VALUE))
        else:
            if dt is None:
                object.__setattr__(self, "datatype", Iri(_XSD_STRING_VALUE))
            elif dt.value == _RDF_LANGSTRING_VALUE:
                raise MissingLanguageTagError("rdf:langString literal requires a language tag")

    def __str__(self) -> str:
        if self.language_tag is not None:
            return f'"{self.lexical_form}"@{self.language_tag}'
        if self.datatype.value == _XSD_STRING_VALUE:
            return f'"{self.lexical_form}"'
        return f'"{self.lexical_form}"^^<{self.datatype.value}>'


Term = Union[Iri, BlankNode, Literal]
SubjectTerm = Union[Iri, BlankNode]


def term_sort_key(term: Term) -> tuple:
    """Canonical term ordering: IRIs < blank nodes < literals, each by string."""
    if isinstance(term, Iri):
        return (0, term.value)
    if isinstance(term, BlankNode):
        return (1, term.label)
    if isinstance(term, Literal):
        return (2, term.lexical_form, term.datatype.value, term.language_tag or "")
    raise TypeError(f"not an RDF term: {term!r}")


@dataclass(frozen=True, slots=True)
class Triple:
    """A statement: subject (IRI or blank node), predicate (IRI), object (any term)."""

    subject: SubjectTerm
    predicate: Iri
    object: Term

    def __post_init__(self) -> None:
        if isinstance(self.subject, Literal):
            raise LiteralSubjectError(f"literal cannot be a subject: {self.subject}")
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"subject must be an IRI or blank node, got {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            if isinstance(self.predicate, (BlankNode, Literal)):
                raise NonIriPredicateError(f"predicate must be an IRI: {self.predicate}")
            raise TypeError(f"predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"object must be an RDF term, got {self.object!r}")

    def terms(self) -> tuple[Term, Term, Term]:
        return (self.subject, self.predicate, self.object)

    def __str__(self) -> str:
        def fmt(t: Term) -> str:
            return f"<{t.value}>" if isinstance(t, Iri) else str(t)

        return f"{fmt(self.subject)} {fmt(self.predicate)} {fmt(self.object)} ."


def triple_sort_key(t: Triple) -> tuple:
    return (term_sort_key(t.subject), term_sort_key(t.predicate), term_sort_key(t.object))


class Graph:
    """A finite, duplicate-free set of triples with deterministic iteration."""

    __slots__ = ("_triples", "_ordered")

    def __init__(self, triples: Iterable[Triple] = ()) -> None:
        frozen = frozenset(triples)
        for t in frozen:
            if not isinstance(t, Triple):
                raise TypeError(f"graphs hold Triple values, got {t!r}")
        self._triples: frozenset[Triple] = frozen
        self._ordered: tuple[Triple, ...] | None = None

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def __iter__(self) -> Iterator[Triple]:
        if self._ordered is None:
            self._ordered = tuple(sorted(self._triples, key=triple_sort_key))
        return iter(self._ordered)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, t: object) -> bool:
        return t in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"

    def terms(self) -> frozenset[Term]:
        out: set[Term] = set()
        for t in self._triples:
            out.update(t.terms())
        return frozenset(out)

    def blank_nodes(self) -> frozenset[BlankNode]:
        return frozenset(x for x in self.terms() if isinstance(x, BlankNode))

    def iris(self) -> frozenset[Iri]:
        return frozenset(x for x in self.terms() if isinstance(x, Iri))


class Dataset:
    """A default graph plus a finite map from names (IRI or blank node) to graphs."""

    __slots__ = ("_default", "_named")

    def __init__(
        self,
        default: Graph | None = None,
        named: Mapping[SubjectTerm, Graph] | Iterable[tuple[SubjectTerm, Graph]] = (),
    ) -> None:
        self._default = default if default is not None else Graph()
        if not isinstance(self._default, Graph):
            raise TypeError("default graph must be a Graph")
        items = named.items() if isinstance(named, Mapping) else named
        acc: dict[SubjectTerm, Graph] = {}
        for name, graph in items:
            if not isinstance(name, (Iri, BlankNode)):
                raise TypeError(f"graph name must be an IRI or blank node, got {name!r}")
            if not isinstance(graph, Graph):
                raise TypeError("named graphs must be Graph values")
            if name in acc:
                raise ModelError(f"duplicate graph name: {name}")
            acc[name] = graph
        self._named = acc

    @property
    def default(self) -> Graph:
        return self._default

    @property
    def named(self) -> dict[SubjectTerm, Graph]:
        return dict(self._named)

    def graph_names(self) -> tuple[SubjectTerm, ...]:
        return tuple(sorted(self._named, key=term_sort_key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self._default == other._default and self._named == other._named

    def __hash__(self) -> int:
        return hash((self._default, frozenset(self._named.items())))

    def __repr__(self) -> str:
        return f"Dataset(default={len(self._default)} triples, named={len(self._named)} graphs)"

    def blank_nodes(self) -> frozenset[BlankNode]:
        """All blank nodes in the dataset, graph names included."""
        out: set[BlankNode] = set(self._default.blank_nodes())
        for name, graph in self._named.items():
            if isinstance(name, BlankNode):
                out.add(name)
            out.update(graph.blank_nodes())
        return frozenset(out)


class PrefixMap:
    """Prefix bindings plus an optional base IRI.

    Values are immutable; ``bind`` and ``with_base`` return updated copies.
    Binding an already-bound prefix replaces the earlier namespace.
    """

    __slots__ = ("_bindings", "_base")

    def __init__(
        self,
        bindings: Mapping[str, Iri] | Iterable[tuple[str, Iri]] = (),
        base: Iri | None = None,
    ) -> None:
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        acc: dict[str, Iri] = {}
        for prefix, ns in items:
            if not isinstance(prefix, str):
                raise TypeError(f"prefix must be str, got {prefix!r}")
            if not isinstance(ns, Iri):
                raise TypeError(f"namespace must be an Iri, got {ns!r}")
            acc[prefix] = ns
        if base is not None and not isinstance(base, Iri):
            raise TypeError("base must be an Iri")
        self._bindings = acc
        self._base = base

    @property
    def bindings(self) -> dict[str, Iri]:
        return dict(self._bindings)

    @property
    def base(self) -> Iri | None:
        return self._base

    def bind(self, prefix: str, namespace: Iri) -> PrefixMap:
        updated = dict(self._bindings)
        updated[prefix] = namespace
        return PrefixMap(updated, self._base)

    def with_base(self, base: Iri | None) -> PrefixMap:
        return PrefixMap(self._bindings, base)

    def lookup(self, prefix: str) -> Iri | None:
        return self._bindings.get(prefix)

    def __contains__(self, prefix: object) -> bool:
        return prefix in self._bindings

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrefixMap):
            return NotImplemented
        return self._bindings == other._bindings and self._base == other._base

    def __repr__(self) -> str:
        return f"PrefixMap({self._bindings!r}, base={self._base!r})"


def expand_prefixed_name(pm: PrefixMap, name: str) -> Iri:
    """Expand ``prefix:reference`` against the bound namespaces.

    The name must contain exactly one colon; the result is the bound
    namespace concatenated with the reference, verbatim.
    """
    if name.count(":") != 1:
        raise MalformedNameError(f"prefixed name needs exactly one colon: {name!r}")
    prefix, reference = name.split(":", 1)
    ns = pm.lookup(prefix)
    if ns is None:
        raise UnknownPrefixError(f"prefix not bound: {prefix!r}")
    return Iri(ns.value + reference)


def graph_union(g1: Graph, g2: Graph) -> Graph:
    """Plain set union; blank node labels are shared, never renamed."""
    return Graph(g1.triples | g2.triples)


def is_ground(g: Graph) -> bool:
    """True iff no triple in the graph contains a blank node."""
    return all(
        not isinstance(t.subject, BlankNode) and not isinstance(t.object, BlankNode)
        for t in g.triples
    )


class _Marker:
    __slots__ = ("_name",)

    def __init__(self, name: str) -> None:
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: Lexical form outside the datatype's lexical space.
ILL_TYPED = _Marker("ILL_TYPED")
#: Datatype not in the recognized set; the literal denotes only itself.
UNRECOGNIZED = _Marker("UNRECOGNIZED")


@dataclass(frozen=True)
class Datatype:
    """A recognized datatype: IRI, lexical-to-value map, value-space membership.

    ``lexical_to_value`` raises ValueError for lexical forms outside the
    lexical space; ``literal_value`` turns that into ILL_TYPED.
    """

    iri: Iri
    lexical_to_value: Callable[[str], object]
    value_space_member: Callable[[object], bool]


def _parse_xsd_integer(lexical: str) -> int:
    if re.match(r"^[+-]?[0-9]+$", lexical) is None:
        raise ValueError(f"not an integer lexical form: {lexical!r}")
    return int(lexical)


def _parse_xsd_unsigned_int(lexical: str) -> int:
    value = _parse_xsd_integer(lexical)
    if not 0 <= value <= 4294967295:
        raise ValueError(f"out of range for unsignedInt: {lexical!r}")
    return value


def _parse_xsd_boolean(lexical: str) -> bool:
    if lexical in ("true", "1"):
        return True
    if lexical in ("false", "0"):
        return False
    raise ValueError(f"not a boolean lexical form: {lexical!r}")


def _is_plain_int(v: object) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


XSD_STRING_DT = Datatype(Iri(XSD_NS + "string"), lambda s: s, lambda v: isinstance(v, str))
RDF_LANGSTRING_DT = Datatype(
    Iri(RDF_NS + "langString"),
    lambda s: s,  # unused: language-tagged values pair the form with the tag
    lambda v: isinstance(v, tuple) and len(v) == 2,
)
XSD_INTEGER_DT = Datatype(Iri(XSD_NS + "integer"), _parse_xsd_integer, _is_plain_int)
XSD_UNSIGNED_INT_DT = Datatype(
    Iri(XSD_NS + "unsignedInt"),
    _parse_xsd_unsigned_int,
    lambda v: _is_plain_int(v) and 0 <= v <= 4294967295,
)
XSD_BOOLEAN_DT = Datatype(
    Iri(XSD_NS + "boolean"), _parse_xsd_boolean, lambda v: isinstance(v, bool)
)

#: Default recognized-datatype set; extensible through the CLI config.
DEFAULT_DATATYPES: tuple[Datatype, ...] = (
    XSD_STRING_DT,
    RDF_LANGSTRING_DT,
    XSD_INTEGER_DT,
    XSD_UNSIGNED_INT_DT,
    XSD_BOOLEAN_DT,
)

#: All datatypes this module knows how to evaluate, keyed by IRI string.
BUILTIN_DATATYPES: dict[str, Datatype] = {d.iri.value: d for d in DEFAULT_DATATYPES}


def literal_value(lit: Literal, recognized: Iterable[Datatype] = DEFAULT_DATATYPES):
    """Evaluate a literal against a recognized-datatype set.

    Returns the value, or ILL_TYPED (lexical form outside the lexical space),
    or UNRECOGNIZED (datatype not in the set).
    """
    by_iri = {d.iri: d for d in recognized}
    dt = by_iri.get(lit.datatype)
    if dt is None:
        return UNRECOGNIZED
    if lit.language_tag is not None:
        # Language-tagged value: the pair of lexical form and lowercased tag.
        return (lit.lexical_form, lit.language_tag)
    try:
        return dt.lexical_to_value(lit.lexical_form)
    except ValueError:
        return ILL_TYPED
