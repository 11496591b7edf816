"""Named metric -> value reports shared by the evaluation commands."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class MetricReport:
    values: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def set(self, name: str, value: float) -> None:
        self.values[name] = float(value)

    def to_json(self) -> str:
        return json.dumps(self.values, ensure_ascii=False, sort_keys=False)

    def format_human(self) -> str:
        width = max((len(k) for k in self.values), default=0)
        return "\n".join(f"{k.ljust(width)}  {v:.4f}" for k, v in self.values.items())
