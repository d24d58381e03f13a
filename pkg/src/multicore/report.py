"""Run reports and their JSON/CSV forms."""
from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import Optional

from .optimizer import AnalysisResult

SCHEMA_VERSION = 1


def input_digest(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode("utf-8")
    return "sha256:" + hashlib.sha256(text).hexdigest()


def export_matrix_order(result: AnalysisResult) -> list[int]:
    """Vertex ids grouped core by core (core-id order), periphery last; ids ascending within a block."""
    labels = result.optimal_partition.labels
    k = result.optimal_partition.n_cores
    key = [(int(c) if c >= 0 else k, v) for v, c in enumerate(labels)]
    return [v for _, v in sorted(key)]


def _opt(x) -> Optional[float]:
    return None if x is None else float(x)


@dataclass
class RunReport:
    input_digest: str
    vertices: list[tuple[str, str]]  # (label, core id as text or "P")
    summary: dict
    config: dict
    zcurve: list[dict]
    matrix_order: list[str]
    timing: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def build(cls, labels, result: AnalysisResult, digest: str, timing: dict | None = None):
        part = result.optimal_partition
        vertices = [(lab, "P" if c < 0 else str(int(c) + 1)) for lab, c in zip(labels, part.labels)]
        m = result.optimal_metrics
        summary = {
            "optimal_cut": result.optimal_cut,
            "n_cores": part.n_cores,
            "n_periphery": part.n_periphery,
            "core_sizes": list(part.core_sizes),
            "z": result.optimal_z,
            "r": m.r,
            "C": m.C,
            "P": m.P,
            "W_intercore": m.W_intercore,
            "density_cores": m.density_cores,
            "density_periphery": m.density_periphery,
        }
        zcurve = [
            {
                "cut_index": p.cut_index,
                "n_cores": p.n_cores,
                "n_periphery": p.n_periphery,
                "r_obs": _opt(s.r_obs),
                "mean_r": _opt(s.mean_r),
                "std_r": _opt(s.std_r),
                "z": _opt(s.z),
                "n_valid_replicas": s.n_valid_replicas,
            }
            for p, s in zip(result.partitions, result.z_curve.per_partition)
        ]
        order = [labels[v] for v in export_matrix_order(result)]
        return cls(digest, vertices, summary, dict(result.config_echo), zcurve, order, dict(timing or {}))

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "input_digest": self.input_digest,
            "config": self.config,
            "summary": self.summary,
            "vertices": [{"label": lab, "core_id": c} for lab, c in self.vertices],
            "matrix_order": self.matrix_order,
            "zcurve": self.zcurve,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        return cls(
            input_digest=d["input_digest"],
            vertices=[(v["label"], v["core_id"]) for v in d["vertices"]],
            summary=d["summary"],
            config=d["config"],
            zcurve=d["zcurve"],
            matrix_order=d["matrix_order"],
            timing=d["timing"],
            schema_version=d["schema_version"],
        )

    def partition_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["label", "core_id"])
        out.writerows(self.vertices)
        return buf.getvalue()


def read_partition_csv(text: str) -> list[tuple[str, str]]:
    return [(row["label"], row["core_id"]) for row in csv.DictReader(io.StringIO(text))]
