"""Counters collected while solving; cheap enough to keep always-on."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SolveStats:
    """Mutable tally passed through the solver layers.

    ``depth`` is the deepest divide-and-conquer level reached, root = 1.
    ``sweep_nodes`` counts midpoint subproblems over all sweeps, which is
    the quantity the near-linear bound constrains.
    """

    depth: int = 0
    nodes: int = 0
    sweeps: int = 0
    sweep_nodes: int = 0
    annulus_searches: int = 0
    candidates: int = 0
    discarded: int = 0
    pinched_projections: int = 0
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def enter(self, level: int) -> None:
        self.nodes += 1
        if level > self.depth:
            self.depth = level
