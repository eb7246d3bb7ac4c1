"""Motivational model: a tree of functional goals plus model-wide label sets."""

from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import (
    AmbiguousLabel,
    CycleDetected,
    DuplicateId,
    DuplicateLabelInSet,
    EmptyLabel,
    InvalidId,
    NotATree,
    UnknownNode,
)
from .labels import AliasTable, normalize_label, resolve_alias

# Ids travel through `;`-separated CSV cells and the DSL's `goal[id]:` syntax.
ID_PATTERN = re.compile(r"[^\s;,\[\]\"#:]+")


class GoalKind(enum.Enum):
    FUNCTIONAL = "functional"
    QUALITY = "quality"
    EMOTIONAL = "emotional"
    CONCERN = "concern"


@dataclass(frozen=True)
class GoalNode:
    id: str
    label: str
    children: tuple[str, ...] = ()


@dataclass(frozen=True)
class MotivationalModel:
    """Immutable, validated model. Build with :func:`build_model`."""

    root: str
    nodes: Mapping[str, GoalNode]
    roles: tuple[str, ...] = ()
    qualities: tuple[str, ...] = ()
    emotions: tuple[str, ...] = ()
    concerns: tuple[str, ...] = ()
    # derived indexes, excluded from equality
    _parent: Mapping[str, str | None] = field(default_factory=dict, compare=False, repr=False)
    _order: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MotivationalModel):
            return NotImplemented
        return (
            self.root == other.root
            and dict(self.nodes) == dict(other.nodes)
            and self.roles == other.roles
            and self.qualities == other.qualities
            and self.emotions == other.emotions
            and self.concerns == other.concerns
        )

    __hash__ = None  # type: ignore[assignment]

    def node(self, node_id: str) -> GoalNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(f"unknown goal node {node_id!r}") from None

    def parent(self, node_id: str) -> str | None:
        self.node(node_id)
        return self._parent[node_id]

    def preorder(self) -> tuple[str, ...]:
        """Node ids in depth-first pre-order."""
        return self._order

    def ancestors(self, node_id: str) -> list[str]:
        """``node_id`` followed by its ancestors up to the root."""
        chain = [node_id]
        parent = self.parent(node_id)
        while parent is not None:
            chain.append(parent)
            parent = self._parent[parent]
        return chain

    def depth(self, node_id: str) -> int:
        return len(self.ancestors(node_id)) - 1

    def labels_of(self, kind: GoalKind) -> tuple[str, ...]:
        if kind is GoalKind.FUNCTIONAL:
            return tuple(self.nodes[n].label for n in self._order)
        return {
            GoalKind.QUALITY: self.qualities,
            GoalKind.EMOTIONAL: self.emotions,
            GoalKind.CONCERN: self.concerns,
        }[kind]

    def without_concerns(self) -> MotivationalModel:
        return build_model(self.root, self.nodes.values(), self.roles, self.qualities, self.emotions)


def _check_label(label: str, what: str) -> str:
    if not isinstance(label, str) or not label.strip():
        raise EmptyLabel(f"{what} label must be non-empty")
    return label


def _label_set(labels: Iterable[str], what: str) -> tuple[str, ...]:
    seen: dict[str, str] = {}
    out = []
    for label in labels:
        _check_label(label, what)
        key = normalize_label(label)
        if key in seen:
            raise DuplicateLabelInSet(f"{what} {label!r} duplicates {seen[key]!r}")
        seen[key] = label
        out.append(label)
    return tuple(out)


def build_model(
    root: str,
    nodes: Iterable[GoalNode],
    roles: Iterable[str] = (),
    qualities: Iterable[str] = (),
    emotions: Iterable[str] = (),
    concerns: Iterable[str] = (),
) -> MotivationalModel:
    """Validate the pieces of a model and assemble it.

    Raises DuplicateId, InvalidId, EmptyLabel, DuplicateLabelInSet,
    UnknownNode, CycleDetected or NotATree.
    """
    table: dict[str, GoalNode] = {}
    for node in nodes:
        if not isinstance(node.id, str) or not ID_PATTERN.fullmatch(node.id):
            raise InvalidId(f"invalid goal id {node.id!r}")
        if node.id in table:
            raise DuplicateId(f"duplicate goal id {node.id!r}")
        _check_label(node.label, f"goal {node.id}")
        table[node.id] = GoalNode(node.id, node.label, tuple(node.children))
    if root not in table:
        raise UnknownNode(f"root {root!r} is not among the nodes")

    parent: dict[str, str | None] = {root: None}
    order: list[str] = []
    on_path: set[str] = set()

    def visit(node_id: str) -> None:
        # iterative to survive deep chains
        stack: list[tuple[str, int]] = [(node_id, 0)]
        order.append(node_id)
        on_path.add(node_id)
        while stack:
            current, i = stack.pop()
            children = table[current].children
            if i == len(children):
                on_path.discard(current)
                continue
            stack.append((current, i + 1))
            child = children[i]
            if child not in table:
                raise UnknownNode(f"goal {current!r} has unknown child {child!r}")
            if child in on_path:
                raise CycleDetected(f"cycle through goal {child!r}")
            if child in parent:
                raise NotATree(f"goal {child!r} has more than one parent")
            parent[child] = current
            order.append(child)
            on_path.add(child)
            stack.append((child, 0))

    visit(root)
    unreachable = [n for n in table if n not in parent]
    if unreachable:
        raise NotATree(f"goals unreachable from root: {', '.join(unreachable)}")

    return MotivationalModel(
        root=root,
        nodes=MappingProxyType(table),
        roles=_label_set(roles, "role"),
        qualities=_label_set(qualities, "quality"),
        emotions=_label_set(emotions, "emotion"),
        concerns=_label_set(concerns, "concern"),
        _parent=MappingProxyType(parent),
        _order=tuple(order),
    )


def model_from_tree(
    tree: tuple[str, Sequence] | str,
    roles: Iterable[str] = (),
    qualities: Iterable[str] = (),
    emotions: Iterable[str] = (),
    concerns: Iterable[str] = (),
) -> MotivationalModel:
    """Build a model from nested ``(label, [children...])`` tuples.

    Ids are assigned ``G1``, ``G2``, ... in pre-order, as the DSL does.
    """
    nodes: list[GoalNode] = []

    def walk(item) -> str:
        label, children = (item, ()) if isinstance(item, str) else item
        node_id = f"G{len(nodes) + 1}"
        nodes.append(GoalNode(node_id, label))
        index = len(nodes) - 1
        child_ids = tuple(walk(c) for c in children)
        nodes[index] = GoalNode(node_id, label, child_ids)
        return node_id

    root = walk(tree)
    return build_model(root, nodes, roles, qualities, emotions, concerns)


def leaf_goals(model: MotivationalModel) -> list[str]:
    return [n for n in model.preorder() if not model.nodes[n].children]


def subtree_of(model: MotivationalModel, node_id: str) -> set[str]:
    model.node(node_id)
    found = set()
    stack = [node_id]
    while stack:
        current = stack.pop()
        found.add(current)
        stack.extend(model.nodes[current].children)
    return found


def lowest_common_ancestor(model: MotivationalModel, node_ids: Iterable[str]) -> str:
    """Deepest node whose subtree contains every id in ``node_ids``."""
    ids = list(node_ids)
    if not ids:
        raise ValueError("lowest_common_ancestor needs at least one node")
    common = model.ancestors(ids[0])
    for other in ids[1:]:
        chain = set(model.ancestors(other))
        common = [a for a in common if a in chain]
    return common[0]


def top_level_ancestor(model: MotivationalModel, node_id: str) -> str | None:
    """Child of the root whose subtree holds ``node_id``; None for the root itself."""
    chain = model.ancestors(node_id)
    return chain[-2] if len(chain) >= 2 else None


def find_goal(
    model: MotivationalModel,
    kind: GoalKind,
    label: str,
    aliases: AliasTable | None = None,
) -> str | None:
    """Look up a goal by alias-resolved, normalised label.

    Returns the node id for functional goals, the model's own spelling for the
    other kinds, or None. Raises AmbiguousLabel when several entries match.
    """
    wanted = resolve_alias(aliases, label)
    if kind is GoalKind.FUNCTIONAL:
        candidates = [(n, model.nodes[n].label) for n in model.preorder()]
    else:
        candidates = [(x, x) for x in model.labels_of(kind)]
    matches = [key for key, text in candidates if resolve_alias(aliases, text) == wanted]
    if len(matches) > 1:
        raise AmbiguousLabel(wanted, matches)
    return matches[0] if matches else None
