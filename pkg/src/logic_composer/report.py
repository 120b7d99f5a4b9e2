"""Verification report documents (JSON) and their text rendering.

Text output is always rendered from the document, so ``render_text(doc)``
and ``render_text(json.loads(dumps(doc)))`` are byte-identical.
"""

from __future__ import annotations

import json

from . import __version__

SCHEMA = "logic-composer/verification-report"
SCHEMA_VERSION = 1


def build_document(subcommand: str, target: str, cfg, reports, duration: float) -> dict:
    items = [r.to_dict() for r in reports]
    return {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "manifest": {
            "subcommand": subcommand,
            "target": target,
            "config": cfg.to_dict(),
            "tool_version": __version__,
            "duration_seconds": round(duration, 3),
        },
        "reports": items,
        "all_expectations_met": all(r["expectation_met"] for r in items),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def without_duration(doc: dict) -> dict:
    """Copy of ``doc`` without the wall-clock field, for reproducibility checks."""
    out = json.loads(json.dumps(doc))
    out["manifest"].pop("duration_seconds", None)
    return out


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def render_text(doc: dict) -> str:
    m = doc["manifest"]
    cfg = m["config"]
    lines = [
        f"verify {m['target']}  seed={cfg['seed']} samples={cfg['sample_count']} "
        f"tol_verify={cfg['tol_verify']:g} tol_solve={cfg['tol_solve']:g}",
    ]
    for r in doc["reports"]:
        mark = "ok  " if r["expectation_met"] else "FAIL"
        problem = f"[{r['problem']}]" if r["problem"] else "[-]"
        lines.append(
            f"{mark} {r['label']:<24} {problem:<8} {r['premise']} => {r['conclusion']}: "
            f"{r['verdict']} (expected {r['expected']}); "
            f"accepted {r['accepted']}/{r['attempted']}, near-threshold {r['near_threshold']}, "
            f"max residual {_fmt(r['max_residual'])}"
        )
        for f in r["failures"][:3]:
            tri = ", ".join(f"({x:.6f}, {y:.6f})" for x, y in f["triangle"])
            res = ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(f["residuals"].items()))
            lines.append(f"       witness #{f['index']}: {tri}; {res}")
    lines.append("all expectations met" if doc["all_expectations_met"] else "EXPECTATIONS NOT MET")
    return "\n".join(lines) + "\n"
