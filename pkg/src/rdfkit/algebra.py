"""Blank-node-aware structural operations on graphs and datasets.

Isomorphism, dataset isomorphism, merge, skolemization, well-behavedness,
leanness, and the homomorphism search primitive the entailment checker is
built on.

The searches (isomorphism, homomorphism, leanness) are exact backtracking
procedures; signature refinement is used only to prune candidates, never to
decide.  Long searches accept a caller-supplied ``StepBudget``; exhausting it
raises ``BudgetExhaustedError`` rather than returning a wrong answer.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .model import (
    BlankNode,
    Dataset,
    Graph,
    Iri,
    Literal,
    SubjectTerm,
    Term,
    Triple,
    term_sort_key,
)

__all__ = [
    "BudgetExhaustedError",
    "StepBudget",
    "BlankBijection",
    "TermMapping",
    "SkolemPolicy",
    "isomorphic",
    "dataset_isomorphic",
    "merge",
    "skolemize",
    "is_well_behaved",
    "find_homomorphism",
    "is_lean",
]


class BudgetExhaustedError(RuntimeError):
    """The step budget ran out before the search finished; the answer is unknown."""


@dataclass
class StepBudget:
    """Mutable step counter with an optional hard limit.

    Searches call ``tick`` once per candidate they try; with ``limit=None``
    the budget only counts (useful for asserting how much work a call did).
    """

    limit: int | None = None
    steps: int = 0

    def tick(self, n: int = 1) -> None:
        self.steps += n
        if self.limit is not None and self.steps > self.limit:
            raise BudgetExhaustedError(f"step budget of {self.limit} exhausted")


class BlankBijection:
    """A bijection between two graphs' blank nodes (identity on IRIs and literals)."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping[BlankNode, BlankNode]) -> None:
        items = dict(mapping)
        for k, v in items.items():
            if not isinstance(k, BlankNode) or not isinstance(v, BlankNode):
                raise TypeError("blank bijections map blank nodes to blank nodes")
        if len(set(items.values())) != len(items):
            raise ValueError("mapping is not injective")
        self._map = items

    @property
    def mapping(self) -> dict[BlankNode, BlankNode]:
        return dict(self._map)

    def __getitem__(self, b: BlankNode) -> BlankNode:
        return self._map[b]

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlankBijection):
            return NotImplemented
        return self._map == other._map

    def __repr__(self) -> str:
        return f"BlankBijection({self._map!r})"

    def apply_term(self, t: Term) -> Term:
        return self._map.get(t, t) if isinstance(t, BlankNode) else t

    def apply(self, g: Graph) -> Graph:
        return Graph(
            Triple(self.apply_term(t.subject), t.predicate, self.apply_term(t.object))
            for t in g.triples
        )

    def inverse(self) -> BlankBijection:
        return BlankBijection({v: k for k, v in self._map.items()})

    def compose(self, then: BlankBijection) -> BlankBijection:
        """The bijection mapping b through self and then through ``then``."""
        return BlankBijection({k: then._map.get(v, v) for k, v in self._map.items()})


class TermMapping:
    """A map from blank nodes to arbitrary terms, fixing IRIs and literals."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping[BlankNode, Term]) -> None:
        items = dict(mapping)
        for k, v in items.items():
            if not isinstance(k, BlankNode):
                raise TypeError("term mappings are keyed by blank nodes")
            if not isinstance(v, (Iri, BlankNode, Literal)):
                raise TypeError(f"term mapping image must be an RDF term, got {v!r}")
        self._map = items

    @property
    def mapping(self) -> dict[BlankNode, Term]:
        return dict(self._map)

    def __getitem__(self, b: BlankNode) -> Term:
        return self._map[b]

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TermMapping):
            return NotImplemented
        return self._map == other._map

    def __repr__(self) -> str:
        return f"TermMapping({self._map!r})"

    def is_identity(self) -> bool:
        return all(k == v for k, v in self._map.items())

    def apply_term(self, t: Term) -> Term:
        return self._map.get(t, t) if isinstance(t, BlankNode) else t

    def apply(self, g: Graph) -> Graph:
        """Image of the graph; raises if some image triple is ill-formed."""
        return Graph(
            Triple(self.apply_term(t.subject), t.predicate, self.apply_term(t.object))
            for t in g.triples
        )


# ---------------------------------------------------------------------------
# Graph isomorphism
# ---------------------------------------------------------------------------


def _ground_triples(g: Graph) -> frozenset[Triple]:
    return frozenset(
        t
        for t in g.triples
        if not isinstance(t.subject, BlankNode) and not isinstance(t.object, BlankNode)
    )


def _term_color_key(t: Term) -> tuple:
    return ("g",) + term_sort_key(t)


def _initial_colors(g: Graph) -> dict[BlankNode, tuple]:
    sig: dict[BlankNode, list] = {b: [] for b in g.blank_nodes()}
    for t in g.triples:
        s_blank = isinstance(t.subject, BlankNode)
        o_blank = isinstance(t.object, BlankNode)
        if s_blank:
            other = ("b",) if o_blank else _term_color_key(t.object)
            sig[t.subject].append(("s", t.predicate.value, other))
        if o_blank:
            other = ("b",) if s_blank else _term_color_key(t.subject)
            sig[t.object].append(("o", t.predicate.value, other))
    return {b: tuple(sorted(entries)) for b, entries in sig.items()}


def _refine_colors(g: Graph, colors: dict[BlankNode, tuple]) -> dict[BlankNode, tuple]:
    """One round of neighborhood color refinement (pruning only, never deciding)."""
    sig: dict[BlankNode, list] = {b: [] for b in colors}
    for t in g.triples:
        s_blank = isinstance(t.subject, BlankNode)
        o_blank = isinstance(t.object, BlankNode)
        if s_blank:
            other = colors[t.object] if o_blank else _term_color_key(t.object)
            sig[t.subject].append(("s", t.predicate.value, other))
        if o_blank:
            other = colors[t.subject] if s_blank else _term_color_key(t.subject)
            sig[t.object].append(("o", t.predicate.value, other))
    return {b: tuple(sorted(entries)) for b, entries in sig.items()}


def _stable_colors(g: Graph) -> dict[BlankNode, tuple]:
    colors = _initial_colors(g)
    for _ in range(max(len(colors), 1)):
        refined = _refine_colors(g, colors)
        if len(set(refined.values())) == len(set(colors.values())):
            return refined
        colors = refined
    return colors


def isomorphic(g1: Graph, g2: Graph, budget: StepBudget | None = None) -> BlankBijection | None:
    """Search for a blank-node bijection making the two graphs identical.

    Returns a witness bijection, or None when no such bijection exists.
    Quick rejection on triple counts and ground-triple sets, then
    signature-refined backtracking over blank-node candidates.
    """
    if len(g1) != len(g2):
        return None
    if _ground_triples(g1) != _ground_triples(g2):
        return None
    blanks1 = sorted(g1.blank_nodes(), key=term_sort_key)
    blanks2 = g2.blank_nodes()
    if len(blanks1) != len(blanks2):
        return None
    if not blanks1:
        return BlankBijection({})

    colors1 = _stable_colors(g1)
    colors2 = _stable_colors(g2)
    by_color2: dict[tuple, list[BlankNode]] = {}
    for b, c in colors2.items():
        by_color2.setdefault(c, []).append(b)
    # Color class sizes must agree between the two graphs.
    counts1: dict[tuple, int] = _histogram(colors1.values())
    counts2: dict[tuple, int] = _histogram(colors2.values())
    if counts1 != counts2:
        return None

    # Order variables: smallest candidate class first for earlier pruning.
    order = sorted(blanks1, key=lambda b: (counts1[colors1[b]], term_sort_key(b)))
    triples_by_blank: dict[BlankNode, list[Triple]] = {b: [] for b in blanks1}
    for t in g1.triples:
        if isinstance(t.subject, BlankNode):
            triples_by_blank[t.subject].append(t)
        if isinstance(t.object, BlankNode) and t.object != t.subject:
            triples_by_blank[t.object].append(t)

    assignment: dict[BlankNode, BlankNode] = {}
    used: set[BlankNode] = set()

    def image(term: Term) -> Term | None:
        if isinstance(term, BlankNode):
            return assignment.get(term)
        return term

    def consistent(b: BlankNode) -> bool:
        # Every triple touching b whose blanks are now all assigned must map into g2.
        for t in triples_by_blank[b]:
            s = image(t.subject)
            o = image(t.object)
            if s is None or o is None:
                continue
            if Triple(s, t.predicate, o) not in g2.triples:
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        b = order[i]
        for cand in sorted(by_color2.get(colors1[b], ()), key=term_sort_key):
            if cand in used:
                continue
            if budget is not None:
                budget.tick()
            assignment[b] = cand
            used.add(cand)
            if consistent(b) and extend(i + 1):
                return True
            del assignment[b]
            used.discard(cand)
        return False

    if extend(0):
        # Full injective assignment with mapped triples contained in g2 and
        # equal sizes forces set equality.
        return BlankBijection(assignment)
    return None


def _histogram(values: Iterable) -> dict:
    out: dict = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Dataset isomorphism
# ---------------------------------------------------------------------------


def dataset_isomorphic(ds1: Dataset, ds2: Dataset, budget: StepBudget | None = None) -> bool:
    """True iff a single blank-node bijection maps default graph onto default
    graph and the named-graph pair set onto the named-graph pair set, blank
    graph names included."""
    named1, named2 = ds1.named, ds2.named
    if len(ds1.default) != len(ds2.default) or len(named1) != len(named2):
        return False
    iri_names1 = {n for n in named1 if isinstance(n, Iri)}
    iri_names2 = {n for n in named2 if isinstance(n, Iri)}
    if iri_names1 != iri_names2:
        return False
    for name in iri_names1:
        if len(named1[name]) != len(named2[name]):
            return False
    blanks1 = sorted(ds1.blank_nodes(), key=term_sort_key)
    blanks2 = sorted(ds2.blank_nodes(), key=term_sort_key)
    if len(blanks1) != len(blanks2):
        return False
    if not blanks1:
        return ds1 == ds2

    def signature(ds: Dataset, b: BlankNode) -> tuple:
        entries = []
        for t in ds.default.triples:
            if t.subject == b:
                entries.append(("ds", t.predicate.value))
            if t.object == b:
                entries.append(("do", t.predicate.value))
        for name, graph in ds.named.items():
            ctx = ("iri", name.value) if isinstance(name, Iri) else ("bname",)
            if name == b:
                entries.append(("name", len(graph)))
            for t in graph.triples:
                if t.subject == b:
                    entries.append(("ns", ctx, t.predicate.value))
                if t.object == b:
                    entries.append(("no", ctx, t.predicate.value))
        return tuple(sorted(entries))

    sig1 = {b: signature(ds1, b) for b in blanks1}
    sig2 = {b: signature(ds2, b) for b in blanks2}
    if _histogram(sig1.values()) != _histogram(sig2.values()):
        return False
    candidates = {b: [c for c in blanks2 if sig2[c] == sig1[b]] for b in blanks1}
    order = sorted(blanks1, key=lambda b: (len(candidates[b]), term_sort_key(b)))

    assignment: dict[BlankNode, BlankNode] = {}
    used: set[BlankNode] = set()

    def full_check() -> bool:
        m = BlankBijection(assignment)
        if m.apply(ds1.default) != ds2.default:
            return False
        mapped_pairs = {}
        for name, graph in named1.items():
            mapped_name = m.apply_term(name)
            if not isinstance(mapped_name, (Iri, BlankNode)):
                return False
            mapped_pairs[mapped_name] = m.apply(graph)
        return mapped_pairs == named2

    def extend(i: int) -> bool:
        if i == len(order):
            return full_check()
        b = order[i]
        for cand in candidates[b]:
            if cand in used:
                continue
            if budget is not None:
                budget.tick()
            assignment[b] = cand
            used.add(cand)
            if extend(i + 1):
                return True
            del assignment[b]
            used.discard(cand)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# Merge and skolemization
# ---------------------------------------------------------------------------


def merge(g1: Graph, g2: Graph) -> Graph:
    """Union after making the operands' blank nodes disjoint.

    The first graph keeps its labels; colliding labels in the second graph
    are renamed with a numeric suffix.
    """
    labels1 = {b.label for b in g1.blank_nodes()}
    labels2 = {b.label for b in g2.blank_nodes()}
    taken = labels1 | labels2
    renaming: dict[BlankNode, BlankNode] = {}
    for label in sorted(labels1 & labels2):
        k = 2
        while f"{label}_{k}" in taken:
            k += 1
        fresh = f"{label}_{k}"
        taken.add(fresh)
        renaming[BlankNode(label)] = BlankNode(fresh)

    def rename(t: Term) -> Term:
        return renaming.get(t, t) if isinstance(t, BlankNode) else t

    moved = (
        Triple(rename(t.subject), t.predicate, rename(t.object)) for t in g2.triples
    )
    return Graph(list(g1.triples) + list(moved))


@dataclass(frozen=True)
class SkolemPolicy:
    """How skolem IRIs are minted: base IRI plus deterministic or random ids.

    Deterministic ids are "b0", "b1", ... in first-occurrence order; random
    ids are 128-bit hex strings.  Either way the generated IRIs avoid every
    IRI already present in the input graph.
    """

    base: Iri
    deterministic: bool = True


def skolemize(g: Graph, policy: SkolemPolicy) -> Graph:
    """Replace every blank node with a fresh IRI ``{base}/.well-known/genid/{id}``."""
    existing = {iri.value for iri in g.iris()}
    prefix = policy.base.value + "/.well-known/genid/"

    order: list[BlankNode] = []
    seen: set[BlankNode] = set()
    for t in g:
        for term in (t.subject, t.object):
            if isinstance(term, BlankNode) and term not in seen:
                seen.add(term)
                order.append(term)

    mapping: dict[BlankNode, Iri] = {}
    minted: set[str] = set()
    counter = 0
    for b in order:
        while True:
            ident = f"b{counter}" if policy.deterministic else secrets.token_hex(16)
            counter += 1
            value = prefix + ident
            if value not in existing and value not in minted:
                minted.add(value)
                mapping[b] = Iri(value)
                break

    def repl(term: Term) -> Term:
        return mapping.get(term, term) if isinstance(term, BlankNode) else term

    return Graph(Triple(repl(t.subject), t.predicate, repl(t.object)) for t in g.triples)


# ---------------------------------------------------------------------------
# Well-behavedness
# ---------------------------------------------------------------------------


def is_well_behaved(g: Graph, deprecated: Iterable[Iri] = ()) -> bool:
    """True iff the blank-node structure serializes in Turtle with bracket
    nesting only: every blank node occurs in at most one object position and
    the blank-to-blank subject/object relation is acyclic.

    ``deprecated`` is an optional term blocklist; any occurrence disqualifies
    the graph (empty by default).
    """
    banned = set(deprecated)
    if banned:
        for t in g.triples:
            if t.subject in banned or t.predicate in banned or t.object in banned:
                return False

    object_counts: dict[BlankNode, int] = {}
    edges: dict[BlankNode, set[BlankNode]] = {}
    for t in g.triples:
        if isinstance(t.object, BlankNode):
            object_counts[t.object] = object_counts.get(t.object, 0) + 1
            if object_counts[t.object] > 1:
                return False
        if isinstance(t.subject, BlankNode) and isinstance(t.object, BlankNode):
            edges.setdefault(t.subject, set()).add(t.object)

    # Cycle detection over blank-to-blank edges; a self-loop is a cycle.
    WHITE, GREY, BLACK = 0, 1, 2
    state: dict[BlankNode, int] = {}

    def dfs(node: BlankNode) -> bool:
        state[node] = GREY
        for nxt in edges.get(node, ()):
            mark = state.get(nxt, WHITE)
            if mark == GREY:
                return False
            if mark == WHITE and not dfs(nxt):
                return False
        state[node] = BLACK
        return True

    for node in edges:
        if state.get(node, WHITE) == WHITE:
            if not dfs(node):
                return False
    return True


# ---------------------------------------------------------------------------
# Homomorphism search and leanness
# ---------------------------------------------------------------------------


def _predicate_index(g: Graph) -> dict[Iri, list[Triple]]:
    idx: dict[Iri, list[Triple]] = {}
    for t in g.triples:
        idx.setdefault(t.predicate, []).append(t)
    return idx


def find_homomorphism(
    h: Graph, g: Graph, budget: StepBudget | None = None
) -> TermMapping | None:
    """Map h's blank nodes to terms of g so that the image of h is contained in g.

    Ground triples of h are checked by plain membership first (no search
    steps); the remaining patterns are solved by backtracking, always
    extending the pattern with the fewest candidate triples.
    """
    patterns: list[Triple] = []
    for t in h.triples:
        if isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode):
            patterns.append(t)
        elif t not in g.triples:
            return None
    if not patterns:
        return TermMapping({})

    index = _predicate_index(g)
    env: dict[BlankNode, Term] = {}

    def candidates(pattern: Triple) -> list[Triple]:
        s = env.get(pattern.subject) if isinstance(pattern.subject, BlankNode) else pattern.subject
        o = env.get(pattern.object) if isinstance(pattern.object, BlankNode) else pattern.object
        out = []
        for t in index.get(pattern.predicate, ()):
            if s is not None and t.subject != s:
                continue
            if o is not None and t.object != o:
                continue
            out.append(t)
        return out

    def solve(remaining: list[Triple]) -> bool:
        if not remaining:
            return True
        scored = sorted(
            ((len(candidates(p)), i) for i, p in enumerate(remaining)), key=lambda x: x[0]
        )
        _, pick = scored[0]
        pattern = remaining[pick]
        rest = remaining[:pick] + remaining[pick + 1 :]
        for t in candidates(pattern):
            if budget is not None:
                budget.tick()
            bound: list[BlankNode] = []
            ok = True
            for pat_term, g_term in ((pattern.subject, t.subject), (pattern.object, t.object)):
                if isinstance(pat_term, BlankNode):
                    cur = env.get(pat_term)
                    if cur is None:
                        env[pat_term] = g_term
                        bound.append(pat_term)
                    elif cur != g_term:
                        ok = False
                        break
            if ok and solve(rest):
                return True
            for b in bound:
                del env[b]
        return False

    if solve(patterns):
        return TermMapping(env)
    return None


def is_lean(
    g: Graph, budget: StepBudget | None = None
) -> tuple[bool, TermMapping | None]:
    """Check for blank-node redundancy.

    Returns (False, witness) when some mapping of g's blank nodes into g's own
    terms sends the graph onto a proper subset of itself; (True, None)
    otherwise.  The search enumerates self-homomorphisms and tests each for
    properness, so ground graphs are trivially lean.
    """
    blanks = g.blank_nodes()
    if not blanks:
        return (True, None)

    ground = [t for t in g.triples if not isinstance(t.subject, BlankNode) and not isinstance(t.object, BlankNode)]
    patterns = [t for t in g.triples if isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode)]
    index = _predicate_index(g)
    total = len(g)
    env: dict[BlankNode, Term] = {}

    def candidates(pattern: Triple) -> list[Triple]:
        s = env.get(pattern.subject) if isinstance(pattern.subject, BlankNode) else pattern.subject
        o = env.get(pattern.object) if isinstance(pattern.object, BlankNode) else pattern.object
        out = []
        for t in index.get(pattern.predicate, ()):
            if s is not None and t.subject != s:
                continue
            if o is not None and t.object != o:
                continue
            out.append(t)
        return out

    witness: dict[BlankNode, Term] = {}

    def solve(remaining: list[Triple], image: list[Triple]) -> bool:
        if not remaining:
            if len(set(ground) | set(image)) < total:
                witness.update(env)
                return True
            return False
        scored = sorted(
            ((len(candidates(p)), i) for i, p in enumerate(remaining)), key=lambda x: x[0]
        )
        _, pick = scored[0]
        pattern = remaining[pick]
        rest = remaining[:pick] + remaining[pick + 1 :]
        for t in candidates(pattern):
            if budget is not None:
                budget.tick()
            bound: list[BlankNode] = []
            ok = True
            for pat_term, g_term in ((pattern.subject, t.subject), (pattern.object, t.object)):
                if isinstance(pat_term, BlankNode):
                    cur = env.get(pat_term)
                    if cur is None:
                        env[pat_term] = g_term
                        bound.append(pat_term)
                    elif cur != g_term:
                        ok = False
                        break
            if ok and solve(rest, image + [t]):
                return True
            for b in bound:
                del env[b]
        return False

    if solve(patterns, []):
        return (False, TermMapping(witness))
    return (True, None)
