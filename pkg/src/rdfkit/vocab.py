"""IRI constants for the rdf:, rdfs:, and xsd: vocabularies used by the toolkit."""

from __future__ import annotations

from .model import Iri, RDF_NS, RDFS_NS, XSD_NS

RDF_TYPE = Iri(RDF_NS + "type")
RDF_PROPERTY = Iri(RDF_NS + "Property")
RDF_LANGSTRING = Iri(RDF_NS + "langString")
RDF_STATEMENT = Iri(RDF_NS + "Statement")
RDF_SUBJECT = Iri(RDF_NS + "subject")
RDF_PREDICATE = Iri(RDF_NS + "predicate")
RDF_OBJECT = Iri(RDF_NS + "object")
RDF_FIRST = Iri(RDF_NS + "first")
RDF_REST = Iri(RDF_NS + "rest")
RDF_NIL = Iri(RDF_NS + "nil")
RDF_SINGLETON_PROPERTY_OF = Iri(RDF_NS + "singletonPropertyOf")

RDFS_CLASS = Iri(RDFS_NS + "Class")
RDFS_LITERAL = Iri(RDFS_NS + "Literal")
RDFS_RESOURCE = Iri(RDFS_NS + "Resource")
RDFS_DATATYPE = Iri(RDFS_NS + "Datatype")
RDFS_SUB_PROPERTY_OF = Iri(RDFS_NS + "subPropertyOf")
RDFS_SUB_CLASS_OF = Iri(RDFS_NS + "subClassOf")
RDFS_DOMAIN = Iri(RDFS_NS + "domain")
RDFS_RANGE = Iri(RDFS_NS + "range")
RDFS_CONTAINER_MEMBERSHIP_PROPERTY = Iri(RDFS_NS + "ContainerMembershipProperty")
RDFS_MEMBER = Iri(RDFS_NS + "member")
RDFS_LABEL = Iri(RDFS_NS + "label")

XSD_STRING = Iri(XSD_NS + "string")
XSD_INTEGER = Iri(XSD_NS + "integer")
XSD_UNSIGNED_INT = Iri(XSD_NS + "unsignedInt")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")
XSD_DECIMAL = Iri(XSD_NS + "decimal")
