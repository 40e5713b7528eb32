"""Regenerate the JSON example files in fixtures/ from the in-code fixtures."""
from __future__ import annotations

import json
from pathlib import Path

from mixedborda.fixtures import FIXTURES, impossibility_g2
from mixedborda.graph_core import save_graph
from mixedborda.parametric_limit import ParametricChain

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def parametric_example() -> ParametricChain:
    # v1 splits 2:1 between s1 and s2 at the same order of eps
    one = {0: 1}
    return ParametricChain(
        ("s1", "s2", "v1", "v2"),
        {
            ("v1", "s1"): ({1: 2}, {1: 3, 2: 1}),
            ("v1", "s2"): ({1: 1}, {1: 3, 2: 1}),
            ("v1", "v2"): ({2: 1}, {1: 3, 2: 1}),
            ("v2", "v1"): (one, one),
        },
    )


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for name, make in FIXTURES.items():
        save_graph(make(), OUT / f"{name}.json")
    nested = json.loads((OUT / "nested-cycles.json").read_text())
    nested = {"note": "best-effort reconstruction; exit costs are not fixed by the drawing"} | nested
    (OUT / "nested-cycles.json").write_text(json.dumps(nested, indent=2) + "\n")
    labeled = impossibility_g2().to_dict()
    for node in labeled["nodes"]:
        if node["role"] == "sink":
            node["label"] = {"v2": "left", "v4": "right"}[node["id"]]
    (OUT / "watershed.json").write_text(json.dumps(labeled, indent=2) + "\n")
    (OUT / "parametric.json").write_text(json.dumps(parametric_example().to_dict(), indent=2) + "\n")
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
