"""Rough-set machinery: indiscernibility partitions, set approximations,
rough membership, rule induction, and rule-based classification.

Objects are indiscernible when their discretized condition vectors agree on
every attribute considered; each equivalence class becomes one if-then rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .discretize import DiscretizedTable


@dataclass(frozen=True)
class Partition:
    """Equivalence classes of the indiscernibility relation.

    Classes are ordered by the first object index they contain; ``class_of``
    maps every object index to its class index.
    """

    classes: tuple[frozenset[int], ...]
    class_of: np.ndarray

    def __post_init__(self):
        class_of = np.asarray(self.class_of, dtype=np.int64)
        class_of.setflags(write=False)
        object.__setattr__(self, "class_of", class_of)

    @property
    def n_objects(self) -> int:
        return self.class_of.shape[0]


@dataclass(frozen=True)
class Approximation:
    """Lower/upper approximations and boundary region for one decision class."""

    lower: frozenset[int]
    upper: frozenset[int]
    boundary: frozenset[int]
    target_class: int

    @property
    def is_crisp(self) -> bool:
        return not self.boundary


@dataclass(frozen=True)
class Rule:
    """One if-then rule: a full condition bin vector implying a decision.

    ``confidence`` is the rough membership of the decision within the rule's
    equivalence class; ``certain`` rules come from the lower approximation
    (confidence exactly 1).
    """

    conditions: dict[int, int]
    decision: int
    support: int
    confidence: float
    certain: bool


@dataclass(frozen=True)
class RuleSet:
    """All rules induced from a training table plus a majority-class fallback."""

    rules: tuple[Rule, ...]
    default_decision: int
    attribute_bin_counts: tuple[int, ...]
    _index: dict = field(init=False, default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        n_attrs = len(self.attribute_bin_counts)
        for rule in self.rules:
            key = tuple(rule.conditions[a] for a in range(n_attrs))
            if key in index:
                raise ValueError("duplicate rule conditions")
            index[key] = rule
        object.__setattr__(self, "_index", index)

    @property
    def n_certain(self) -> int:
        return sum(1 for r in self.rules if r.certain)

    def lookup(self, key: tuple[int, ...]) -> Rule | None:
        return self._index.get(key)


def partition(table: DiscretizedTable, attributes: Iterable[int]) -> Partition:
    """Group objects by exact equality of their projected bin vectors."""
    attrs = sorted(set(int(a) for a in attributes))
    if not attrs:
        raise ValueError("attribute subset must be non-empty")
    if attrs[0] < 0 or attrs[-1] >= table.n_attributes:
        raise ValueError("attribute index out of range")
    projected = table.bins[:, attrs]
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, row in enumerate(map(tuple, projected.tolist())):
        groups.setdefault(row, []).append(i)
    class_of = np.empty(table.n_objects, dtype=np.int64)
    classes = []
    for c, members in enumerate(groups.values()):
        classes.append(frozenset(members))
        class_of[members] = c
    return Partition(tuple(classes), class_of)


def approximate(part: Partition, decisions: Sequence[int], target: int) -> Approximation:
    """Lower/upper approximation of X = {objects with decision == target}.

    Lower: union of classes entirely inside X. Upper: union of classes
    intersecting X. Boundary: upper minus lower.
    """
    decisions = np.asarray(decisions)
    if decisions.shape[0] != part.n_objects:
        raise ValueError("decisions must label exactly the partitioned objects")
    lower: set[int] = set()
    upper: set[int] = set()
    for members in part.classes:
        labels = decisions[list(members)]
        hits = int((labels == target).sum())
        if hits:
            upper.update(members)
            if hits == len(members):
                lower.update(members)
    return Approximation(frozenset(lower), frozenset(upper), frozenset(upper - lower), target)


def membership(part: Partition, decisions: Sequence[int], obj: int, target: int) -> float:
    """Rough membership: fraction of the object's class carrying the target label."""
    decisions = np.asarray(decisions)
    members = part.classes[int(part.class_of[obj])]
    hits = int((decisions[list(members)] == target).sum())
    return hits / len(members)


def induce_rules(table: DiscretizedTable) -> RuleSet:
    """One rule per equivalence class of the full-attribute partition.

    The rule takes the class's majority label (ties broken toward the
    globally more frequent class, then toward label 1); its confidence is
    the majority fraction, so certain rules are exactly the lower
    approximation's classes.
    """
    if table.n_objects == 0:
        raise ValueError("cannot induce rules from an empty table")
    total_ones = int(table.decisions.sum())
    total_zeros = table.n_objects - total_ones
    if total_ones == 0 or total_zeros == 0:
        raise ValueError("training table must contain both decision classes")
    prior_winner = 1 if total_ones >= total_zeros else 0

    # key -> [class size, count of label 1]
    groups: dict[tuple[int, ...], list[int]] = {}
    decisions = table.decisions.tolist()
    for row, label in zip(map(tuple, table.bins.tolist()), decisions):
        entry = groups.get(row)
        if entry is None:
            groups[row] = [1, label]
        else:
            entry[0] += 1
            entry[1] += label

    rules = []
    for key, (size, ones) in groups.items():
        zeros = size - ones
        if ones > zeros:
            decision = 1
        elif zeros > ones:
            decision = 0
        else:
            decision = prior_winner
        confidence = (ones if decision == 1 else zeros) / size
        rules.append(
            Rule(
                conditions=dict(enumerate(key)),
                decision=decision,
                support=size,
                confidence=confidence,
                certain=confidence == 1.0,
            )
        )
    return RuleSet(tuple(rules), prior_winner, table.attribute_bin_counts)


def classify(rules: RuleSet, bins: Sequence[int]) -> tuple[int, float]:
    """Classify one bin vector; the score is the implied P(class 1).

    An exact-condition rule yields its decision with score equal to its
    confidence (decision 1) or one minus it (decision 0). Unmatched vectors
    fall back to the default decision with a neutral score of 0.5.
    """
    key = tuple(int(b) for b in bins)
    counts = rules.attribute_bin_counts
    if len(key) != len(counts):
        raise ValueError(f"expected {len(counts)} bins, got {len(key)}")
    for a, b in enumerate(key):
        if b < 0 or b >= counts[a]:
            raise ValueError(f"bin index {b} out of range for attribute {a} ({counts[a]} bins)")
    rule = rules.lookup(key)
    if rule is None:
        return rules.default_decision, 0.5
    score = rule.confidence if rule.decision == 1 else 1.0 - rule.confidence
    return rule.decision, score


def classify_table(rules: RuleSet, table: DiscretizedTable) -> tuple[np.ndarray, np.ndarray]:
    """Classify every object of a discretized table; returns (decisions, scores)."""
    if table.n_attributes != len(rules.attribute_bin_counts):
        raise ValueError("table attribute count does not match rule set")
    limits = np.asarray(rules.attribute_bin_counts)
    if table.n_objects and (table.bins >= limits).any():
        raise ValueError("bin index out of range for the rule set's bin counts")
    n = table.n_objects
    decisions = np.empty(n, dtype=np.int64)
    scores = np.empty(n, dtype=np.float64)
    lookup = rules._index
    default = rules.default_decision
    for i, key in enumerate(map(tuple, table.bins.tolist())):
        rule = lookup.get(key)
        if rule is None:
            decisions[i] = default
            scores[i] = 0.5
        elif rule.decision == 1:
            decisions[i] = 1
            scores[i] = rule.confidence
        else:
            decisions[i] = 0
            scores[i] = 1.0 - rule.confidence
    return decisions, scores


def ruleset_to_json(rules: RuleSet) -> dict:
    """Serialize rules as the transparency artifact: one entry per rule."""
    return {
        "rules": [
            {
                "conditions": {str(a): b for a, b in sorted(rule.conditions.items())},
                "decision": rule.decision,
                "support": rule.support,
                "confidence": rule.confidence,
                "certain": rule.certain,
            }
            for rule in rules.rules
        ],
        "default_decision": rules.default_decision,
        "attribute_bin_counts": list(rules.attribute_bin_counts),
    }


def ruleset_from_json(payload: dict) -> RuleSet:
    rules = tuple(
        Rule(
            conditions={int(a): int(b) for a, b in entry["conditions"].items()},
            decision=int(entry["decision"]),
            support=int(entry["support"]),
            confidence=float(entry["confidence"]),
            certain=bool(entry["certain"]),
        )
        for entry in payload["rules"]
    )
    return RuleSet(
        rules,
        int(payload["default_decision"]),
        tuple(int(c) for c in payload["attribute_bin_counts"]),
    )
