"""Experiment reports and run manifests, with canonical text and JSON forms."""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from fractions import Fraction
from typing import Any

from . import __version__


def to_plain(value: Any) -> Any:
    """Convert to JSON-compatible values with a fixed, lossless spelling."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value) or math.isnan(value):
            return repr(value)
        return float(repr(value))
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_plain(v) for v in value)
    if dataclasses.is_dataclass(value):
        return to_plain(dataclasses.asdict(value))
    return str(value)


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclasses.dataclass
class RunManifest:
    """Everything needed to replay a command.

    ``elapsed`` is measured but kept out of the canonical text so that a replay
    reproduces the output byte for byte; the CLI prints it on stderr.
    """

    argv: list
    seed: int | None = None
    inputs: dict = dataclasses.field(default_factory=dict)  # path -> sha256
    version: str = __version__
    elapsed: float | None = None

    def lines(self) -> list[str]:
        out = [f"# manifest.version {self.version}", "# manifest.argv " + json.dumps(list(self.argv))]
        if self.seed is not None:
            out.append(f"# manifest.seed {self.seed}")
        for path, sha in sorted(self.inputs.items()):
            out.append(f"# manifest.input {sha} {path}")
        return out

    @classmethod
    def parse(cls, text: str) -> "RunManifest | None":
        argv, seed, inputs, version = None, None, {}, __version__
        for line in text.splitlines():
            if line.startswith("# manifest.argv "):
                argv = json.loads(line[len("# manifest.argv "):])
            elif line.startswith("# manifest.seed "):
                seed = int(line.split()[-1])
            elif line.startswith("# manifest.version "):
                version = line.split()[-1]
            elif line.startswith("# manifest.input "):
                _, _, sha, path = line.split(" ", 3)
                inputs[path] = sha
        if argv is None:
            return None
        return cls(argv=argv, seed=seed, inputs=inputs, version=version)


@dataclasses.dataclass
class ExperimentReport:
    kind: str
    params: dict
    seed: int | None
    trials: int
    outcomes: list
    stats: dict = dataclasses.field(default_factory=dict)
    bounds: dict = dataclasses.field(default_factory=dict)
    notes: list = dataclasses.field(default_factory=list)
    certificates: list = dataclasses.field(default_factory=list)

    def outcomes_digest(self) -> str:
        return digest(json.dumps(to_plain(self.outcomes), separators=(",", ":")).encode())

    def to_dict(self) -> dict:
        data = {
            "kind": self.kind,
            "params": self.params,
            "seed": self.seed,
            "trials": self.trials,
            "outcomes": self.outcomes,
            "outcomes_sha256": self.outcomes_digest(),
            "stats": self.stats,
            "bounds": self.bounds,
            "notes": self.notes,
        }
        return to_plain(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"experiment {self.kind}", f"seed {self.seed}", f"trials {self.trials}"]
        for section, values in (("param", self.params), ("stat", self.stats), ("bound", self.bounds)):
            for key in sorted(values):
                lines.append(f"{section} {key} = {json.dumps(to_plain(values[key]))}")
        if len(self.outcomes) <= 64:
            lines.append("outcomes " + json.dumps(to_plain(self.outcomes), separators=(",", ":")))
        lines.append(f"outcomes_sha256 {self.outcomes_digest()}")
        for note in self.notes:
            lines.append(f"note {note}")
        return "\n".join(lines) + "\n"
