"""Certification ledger: which descriptors bound rational homology circles.

A descriptor is a monodromy word, a plumbing graph, or a named graph inside a
construction (trees combined by joins and self-joins).  Evaluation applies:

* axioms -- negative parabolic words (trace -2) bound; hyperbolic family
  words bound; a tree whose boundary has the integral homology of
  S^1 x S^2 is the base seed (recorded as homology-level);
* closure rules -- a self-join of a bounding tree with nonsingular
  intersection form bounds; a join bounds when one side passes the
  homology-level hypotheses and the other side bounds;
* the obstruction -- a boundary whose torsion order is not a perfect square
  never bounds.

Anything else is reported unknown.  ``bounds-QSB`` and ``obstructed`` are
mutually exclusive by construction: every certified descriptor has square
torsion order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import DomainError
from .intmat import AbelianGroupDesc, det, is_perfect_square
from .plumbing import (
    PlumbingGraph,
    boundary_homology,
    canonical_key,
    check_join_hypotheses,
    cycle_traversal,
    intersection_form,
    is_pure_cycle,
    join,
    parse_graph,
    self_join,
)
from .sl2 import MonodromyWord, format_word, lex_min_rotation, parse_word, word_to_matrix
from .strings import format_int_string, recognize_family

__all__ = [
    "STATUS_BOUNDS",
    "STATUS_OBSTRUCTED",
    "STATUS_UNKNOWN",
    "LedgerEntry",
    "Construction",
    "evaluate_word",
    "evaluate_graph",
    "evaluate_descriptor",
    "parse_construction",
    "format_entry",
]

STATUS_BOUNDS = "bounds-QSB"
STATUS_OBSTRUCTED = "obstructed"
STATUS_UNKNOWN = "unknown"


@dataclass(frozen=True)
class LedgerEntry:
    descriptor: str
    status: str
    reason: str


def _word_descriptor(w: MonodromyWord) -> str:
    canonical = MonodromyWord(lex_min_rotation(w.coeffs), w.sign)
    return f"word:{format_word(canonical)}"


def _graph_descriptor(g: PlumbingGraph) -> str:
    return f"graph:{canonical_key(g)}"


def _square_fallback(torsion: int, context: str) -> tuple[str, str]:
    """Square-order test on a torsion order; returns (status, reason)."""
    if not is_perfect_square(torsion):
        return STATUS_OBSTRUCTED, f"torsion-not-square({torsion})"
    return STATUS_UNKNOWN, f"square-condition-holds({torsion});{context}"


def evaluate_word(w: MonodromyWord) -> LedgerEntry:
    """Certify or obstruct a torus bundle given by a monodromy word."""
    descriptor = _word_descriptor(w)
    m = word_to_matrix(w)
    t = m.trace
    if t == -2:
        return LedgerEntry(descriptor, STATUS_BOUNDS, "negative-parabolic")
    if w.sign > 0 and w.coeffs and all(c >= 2 for c in w.coeffs):
        params = recognize_family(w.coeffs)
        if params is not None:
            reason = (
                f"hyperbolic-family(k={params.k};x={format_int_string(params.xs)})"
            )
            return LedgerEntry(descriptor, STATUS_BOUNDS, reason)
    if t == 2:
        return LedgerEntry(descriptor, STATUS_UNKNOWN, "trace-2-degenerate")
    status, reason = _square_fallback(abs(t - 2), "no-certificate")
    return LedgerEntry(descriptor, status, reason)


def evaluate_graph(g: PlumbingGraph) -> LedgerEntry:
    """Certify or obstruct a plumbing graph with no construction history."""
    descriptor = _graph_descriptor(g)
    if is_pure_cycle(g):
        # pure cycle: defer to the word-level rules via the traversal word
        weights, sign = cycle_traversal(g)
        word = MonodromyWord(tuple(-w for w in weights), sign)
        entry = evaluate_word(word)
        return LedgerEntry(descriptor, entry.status, entry.reason)
    homology = boundary_homology(g)
    if g.is_tree() and homology == AbelianGroupDesc(1, ()):
        return LedgerEntry(descriptor, STATUS_BOUNDS, "s1xs2-base(homology-level)")
    status, reason = _square_fallback(homology.torsion_order, "no-certificate")
    return LedgerEntry(descriptor, status, reason)


@dataclass
class Construction:
    """An explicit build history: seed trees combined by joins/self-joins.

    Steps are recorded in order; evaluation is pure and walks the history
    bottom-up, so re-evaluating after appending steps never changes earlier
    verdicts.
    """

    _graphs: dict[str, PlumbingGraph] = field(default_factory=dict)
    _steps: dict[str, tuple] = field(default_factory=dict)
    _order: list[str] = field(default_factory=list)

    def _record(self, name: str, graph: PlumbingGraph, step: tuple) -> None:
        if name in self._graphs:
            raise DomainError("duplicate-name", f"{name} is already defined")
        self._graphs[name] = graph
        self._steps[name] = step
        self._order.append(name)

    def add_tree(self, name: str, graph: PlumbingGraph) -> PlumbingGraph:
        self._record(name, graph, ("tree",))
        return graph

    def add_join(self, name: str, left: str, v1: str, right: str, v2: str) -> PlumbingGraph:
        g = join(self.graph(left), v1, self.graph(right), v2)
        self._record(name, g, ("join", left, v1, right, v2))
        return g

    def add_self_join(self, name: str, src: str, v1: str, v2: str, sign: int) -> PlumbingGraph:
        g = self_join(self.graph(src), v1, v2, sign)
        self._record(name, g, ("selfjoin", src, v1, v2, sign))
        return g

    def graph(self, name: str) -> PlumbingGraph:
        if name not in self._graphs:
            raise DomainError("unknown-name", f"no graph named {name}")
        return self._graphs[name]

    def names(self) -> tuple[str, ...]:
        return tuple(self._order)

    def evaluate(self, name: str) -> LedgerEntry:
        """Ledger verdict for a named graph, chaining provenance through the
        recorded construction steps."""
        memo: dict[str, LedgerEntry] = {}

        def visit(n: str) -> LedgerEntry:
            if n in memo:
                return memo[n]
            graph = self.graph(n)
            step = self._steps[n]
            entry = None
            if step[0] == "selfjoin":
                src = step[1]
                src_entry = visit(src)
                if src_entry.status == STATUS_BOUNDS:
                    q_det = det(intersection_form(graph))
                    if q_det != 0:
                        entry = LedgerEntry(
                            _graph_descriptor(graph),
                            STATUS_BOUNDS,
                            f"self-join-nonsingular(det={q_det})<-{src_entry.reason}",
                        )
            elif step[0] == "join":
                _, left, v1, right, v2 = step
                left_entry, right_entry = visit(left), visit(right)
                for pivot, pivot_v, other in (
                    (left, v1, right_entry),
                    (right, v2, left_entry),
                ):
                    if other.status != STATUS_BOUNDS:
                        continue
                    if check_join_hypotheses(self.graph(pivot), pivot_v).all_pass:
                        entry = LedgerEntry(
                            _graph_descriptor(graph),
                            STATUS_BOUNDS,
                            f"join-transfer({pivot}-hypotheses;homology-level)"
                            f"<-{other.reason}",
                        )
                        break
            if entry is None:
                entry = evaluate_graph(graph)
            memo[n] = entry
            return entry

        return visit(name)


def parse_construction(text: str, base_dir: Path | None = None) -> tuple[Construction, str]:
    """Parse a construction script.  Lines::

        tree <name> <graph-file>
        join <name> <left> <left-vertex> <right> <right-vertex>
        selfjoin <name> <src> <v1> <v2> <+|->
        target <name>

    Graph-file paths resolve relative to ``base_dir``.  Returns the
    construction and the target name (defaults to the last definition).
    """
    base = base_dir or Path(".")
    build = Construction()
    target: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "tree" and len(parts) == 3:
                path = base / parts[2]
                build.add_tree(parts[1], parse_graph(path.read_text()))
            elif parts[0] == "join" and len(parts) == 6:
                build.add_join(parts[1], parts[2], parts[3], parts[4], parts[5])
            elif parts[0] == "selfjoin" and len(parts) == 6 and parts[5] in ("+", "-"):
                build.add_self_join(
                    parts[1], parts[2], parts[3], parts[4], 1 if parts[5] == "+" else -1
                )
            elif parts[0] == "target" and len(parts) == 2:
                target = parts[1]
            else:
                raise DomainError("build-syntax", f"line {lineno}: cannot parse {raw!r}")
        except OSError as exc:
            raise DomainError("build-io", f"line {lineno}: {exc}") from exc
    if not build.names():
        raise DomainError("build-empty", "construction defines no graphs")
    return build, target or build.names()[-1]


def _parse_parabolic_sugar(text: str) -> MonodromyWord | None:
    """``-T^n`` / ``-T^-n`` shorthand: the exact word (∓n, 0) since
    T^{∓n} S S = -T^{∓n}."""
    if not text.startswith("-T^"):
        return None
    try:
        n = int(text[3:])
    except ValueError as exc:
        raise DomainError("descriptor-syntax", f"bad parabolic exponent in {text!r}") from exc
    return MonodromyWord((-n, 0), 1)


def evaluate_descriptor(text: str, base_dir: Path | None = None) -> LedgerEntry:
    """Evaluate a CLI descriptor: ``word:<word>``, ``-T^<n>``,
    ``graph:<file>``, or ``build:<file>``."""
    text = text.strip()
    sugar = _parse_parabolic_sugar(text)
    if sugar is not None:
        return evaluate_word(sugar)
    if text.startswith("word:"):
        return evaluate_word(parse_word(text[len("word:"):]))
    base = base_dir or Path(".")
    if text.startswith("graph:"):
        path = base / text[len("graph:"):]
        try:
            return evaluate_graph(parse_graph(path.read_text()))
        except OSError as exc:
            raise DomainError("descriptor-io", str(exc)) from exc
    if text.startswith("build:"):
        path = base / text[len("build:"):]
        try:
            build, target = parse_construction(path.read_text(), path.parent)
        except OSError as exc:
            raise DomainError("descriptor-io", str(exc)) from exc
        return build.evaluate(target)
    raise DomainError(
        "descriptor-syntax",
        "descriptor must start with word:, graph:, build:, or be -T^<n>",
    )


def format_entry(entry: LedgerEntry) -> str:
    return f"descriptor={entry.descriptor} status={entry.status} reason={entry.reason}"
