"""
Experiment reports and their JSON / CSV forms.

CSV columns, in order: t, empirical, stderr, adversarial, adversarial_stderr,
bound, passed. The resolved configuration precedes the header as '#' lines.
"""
import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List

SCHEMA_VERSION = 1
CSV_COLUMNS = ('t', 'empirical', 'stderr', 'adversarial', 'adversarial_stderr', 'bound', 'passed')


@dataclass(frozen=True)
class TailRow:
    """Empirical tail at one t with its bound check."""

    t: int
    empirical: float
    stderr: float
    adversarial: float
    adversarial_stderr: float
    bound: float
    passed: bool


@dataclass
class ExperimentReport:
    """Configuration echo plus per-t results of one seeded experiment."""

    config: Dict[str, Any]
    seed: int
    trials: int
    rows: List[TailRow] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': SCHEMA_VERSION,
            'config': self.config,
            'seed': self.seed,
            'trials': self.trials,
            'rows': [asdict(row) for row in self.rows],
            'all_passed': self.all_passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + '\n'

    def to_csv(self) -> str:
        buffer = io.StringIO()
        buffer.write(f"# schema_version={SCHEMA_VERSION}\n")
        buffer.write(f"# seed={self.seed}\n")
        buffer.write(f"# trials={self.trials}\n")
        for key in sorted(self.config):
            buffer.write(f"# {key}={json.dumps(self.config[key], sort_keys=True)}\n")
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow([
                row.t,
                repr(row.empirical),
                repr(row.stderr),
                repr(row.adversarial),
                repr(row.adversarial_stderr),
                repr(row.bound),
                int(row.passed),
            ])
        return buffer.getvalue()

    def render(self, output_format: str) -> str:
        """
        Raises:
            ValueError: On a format other than 'csv' or 'json'
        """
        if output_format == 'json':
            return self.to_json()
        if output_format == 'csv':
            return self.to_csv()
        raise ValueError(f"unknown report format {output_format!r}, expected 'csv' or 'json'")

    def save(self, path: str, output_format: str = 'csv'):
        output = Path(path)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(self.render(output_format), encoding='utf-8')
