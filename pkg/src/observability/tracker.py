"""
Reduction tracking for the recursive evaluator.
Records every degree, genus, split and base step as a tree and replays it.
"""

from collections import Counter, defaultdict
from typing import Any, Dict, List, Literal, Optional

import structlog
from pydantic import BaseModel

logger = structlog.get_logger(__name__)

Rule = Literal["degree", "genus", "split", "base"]


class TraceStep(BaseModel):
    """One node of the reduction tree"""
    id: int
    parent: Optional[int] = None
    term: int = 0
    rule: Rule
    parameters: Dict[str, Any] = {}
    subproblems: int = 0
    value: Optional[str] = None
    source: Optional[str] = None


class ReductionTrace(BaseModel):
    """Ordered steps of one recursive evaluation"""
    steps: List[TraceStep] = []

    @property
    def root(self) -> Optional[TraceStep]:
        return self.steps[0] if self.steps else None

    def breakdown(self) -> Dict[str, int]:
        """Step counts per rule, memo hits counted separately."""
        counts = Counter(step.rule for step in self.steps)
        counts["memo"] = sum(1 for step in self.steps if step.source == "memo")
        return {rule: counts.get(rule, 0) for rule in ("degree", "genus", "split", "base", "memo")}

    def replay(self) -> bool:
        """
        Recompute every inner node from its children

        An inner node's value is the sum over its terms of the product of the
        children recorded under that term.

        Returns:
            True if every node and the root replay to their recorded values
        """
        children: Dict[int, Dict[int, List[TraceStep]]] = defaultdict(lambda: defaultdict(list))
        for step in self.steps:
            if step.parent is not None:
                children[step.parent][step.term].append(step)

        for step in self.steps:
            if step.value is None:
                logger.warning("Trace step without value", step=step.id, rule=step.rule)
                return False
            if step.rule == "base":
                continue
            total = 0
            for term_children in children[step.id].values():
                product = 1
                for child in term_children:
                    product *= int(child.value)
                total += product
            if total != int(step.value):
                logger.warning("Trace step does not replay", step=step.id, rule=step.rule, recorded=step.value, replayed=str(total))
                return False
        return True


class ReductionTracker:
    """
    Recorder used by the evaluator while it reduces an instance
    """

    def __init__(self):
        self.trace = ReductionTrace()

    def open(self, rule: Rule, parameters: Dict[str, Any], parent: Optional[int] = None, term: int = 0) -> int:
        step = TraceStep(id=len(self.trace.steps), parent=parent, term=term, rule=rule, parameters=parameters)
        self.trace.steps.append(step)
        return step.id

    def close(self, step_id: int, value: int, subproblems: int = 0, rule: Optional[Rule] = None, source: Optional[str] = None) -> None:
        step = self.trace.steps[step_id]
        step.value = str(value)
        step.subproblems = subproblems
        if rule is not None:
            step.rule = rule
        if source is not None:
            step.source = source

    def summary(self) -> Dict[str, Any]:
        return {
            "steps": len(self.trace.steps),
            "breakdown": self.trace.breakdown(),
            "value": self.trace.root.value if self.trace.root else None,
        }
