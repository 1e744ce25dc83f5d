#!/usr/bin/env python3
"""Record real wire transcripts of the game service for the browser-client tests.

Plays fixed lines through the HTTP app in-process and dumps every
request/response pair as JSON fixtures under frontend/tests/fixtures/.
The frontend test suite replays these against the client with a stubbed
fetch, so UI fidelity is checked against genuine server output without
needing a running server at test time.
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from evasilab.scanner import scan_complement_closed
from evasilab.service import build_app


class Recorder:
    def __init__(self):
        self.client = TestClient(build_app())
        self.exchanges = []

    def post(self, path, body):
        response = self.client.post(path, json=body)
        response.raise_for_status()
        self.exchanges.append(
            {"request": {"method": "POST", "path": path, "body": body}, "response": response.json()}
        )
        return response.json()

    def get(self, path):
        response = self.client.get(path)
        response.raise_for_status()
        self.exchanges.append(
            {"request": {"method": "GET", "path": path}, "response": response.json()}
        )
        return response.json()


def record_bob_game(out_dir: Path) -> None:
    rec = Recorder()
    view = rec.post("/api/game", {"n": 5, "property": "builtin:connected", "human_role": "bob"})
    sid = view["id"]
    rec.get(f"/api/game/{sid}/hint")
    # a fixed human line: ask edges in a scrambled order until the game decides
    for edge in [[1, 2], [3, 4], [2, 5], [1, 4], [4, 5], [2, 3], [1, 3], [3, 5], [2, 4], [1, 5]]:
        view = rec.post(f"/api/game/{sid}/ask", {"edge": edge})
        if view["status"] != "ongoing":
            break
    rec.get(f"/api/game/{sid}")
    (out_dir / "bob_connected.json").write_text(json.dumps(rec.exchanges, indent=1))


def record_alice_game_vs_discovered(out_dir: Path) -> None:
    finding = min(scan_complement_closed(5).findings, key=lambda f: len(f.classes))
    doc = {"n": 5, "classes": list(finding.classes)}
    for name, answers in [
        ("alice_vs_discovered_all_present", ["present"] * 9),
        ("alice_vs_discovered_mixed", ["absent", "present", "absent", "absent",
                                       "present", "present", "absent", "present", "absent"]),
    ]:
        rec = Recorder()
        view = rec.post("/api/game", {"n": 5, "property": doc, "human_role": "alice"})
        sid = view["id"]
        for answer in answers:
            if view["status"] != "ongoing":
                break
            view = rec.post(f"/api/game/{sid}/answer", {"answer": answer})
        assert view["status"] in ("decided_in", "decided_out"), view["status"]
        assert view["questions_used"] <= 9
        (out_dir / f"{name}.json").write_text(json.dumps(rec.exchanges, indent=1))
    (out_dir / "discovered_property.json").write_text(json.dumps(doc, indent=1))


def main() -> int:
    out_dir = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)
    record_bob_game(out_dir)
    record_alice_game_vs_discovered(out_dir)
    print(f"transcripts written to {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
