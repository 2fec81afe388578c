"""Incremental construction of derivations, top-down or bottom-up."""

from __future__ import annotations

from .core import Cirquent, NameSupply
from .rules import BACKWARD, FORWARD, Derivation, RuleId, RuleParams, Step, apply_rule


class Builder:
    """Records rule applications starting from `start`.

    With bottom_up=True every rule is applied conclusion-to-premise, so `start`
    ends up as the last cirquent of the finished derivation.
    """

    def __init__(self, start: Cirquent, bottom_up: bool = False, names: NameSupply | None = None):
        self.current = start
        self.bottom_up = bottom_up
        self._cirqs = [start]
        self._steps: list[Step] = []
        self.names = names or NameSupply()
        self.names.reserve(start.nodes)

    def fresh(self, base: str) -> str:
        n = self.names(base)
        while n in self.current:
            n = self.names(base)
        return n

    def apply(self, rule: str | RuleId, params: RuleParams | None = None, **roles) -> Cirquent:
        rid = rule if isinstance(rule, RuleId) else RuleId.parse(rule)
        p = params if params is not None else RuleParams.of(**roles)
        nxt = apply_rule(self.current, rid, p, BACKWARD if self.bottom_up else FORWARD)
        self.names.reserve(nxt.nodes)
        self.current = nxt
        self._cirqs.append(nxt)
        self._steps.append(Step(rid, p))
        return nxt

    def extend(self, d: Derivation) -> None:
        """Splice in a derivation that continues from (or, bottom-up, leads to) current."""
        if self.bottom_up:
            if d.last != self.current:
                raise ValueError("derivation does not end at the current cirquent")
            self._cirqs.extend(reversed(d.cirquents[:-1]))
            self._steps.extend(reversed(d.steps))
            self.current = d.first
        else:
            if d.first != self.current:
                raise ValueError("derivation does not start at the current cirquent")
            self._cirqs.extend(d.cirquents[1:])
            self._steps.extend(d.steps)
            self.current = d.last
        for c in d.cirquents:
            self.names.reserve(c.nodes)

    def __len__(self) -> int:
        return len(self._steps)

    def derivation(self) -> Derivation:
        if self.bottom_up:
            return Derivation(self._cirqs[::-1], self._steps[::-1])
        return Derivation(list(self._cirqs), list(self._steps))
