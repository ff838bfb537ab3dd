#!/usr/bin/env python3
"""Record real review-API responses into frontend test fixtures.

Runs scan over the fixture corpus, mounts the FastAPI app in-process, and
captures the exact JSON the browser client would receive, one candidate
detail per smell kind plus the listing.  The frontend contract tests replay
these files instead of talking to a live server.
"""

from __future__ import annotations

import io
import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from smellvet.cli import main  # noqa: E402
from smellvet.server import create_app  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
OUT_DIR = ROOT / "frontend" / "tests" / "fixtures"


def record() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        candidates_path = Path(tmp) / "candidates.json"
        code = main(
            ["scan", str(ROOT / "fixtures" / "corpus"), "--out", str(candidates_path)],
            stdout=io.StringIO(), stderr=sys.stderr, stdin=io.StringIO(""),
        )
        assert code == 0
        app = create_app(candidates_path=candidates_path, session_dir=Path(tmp) / "sessions")
        client = TestClient(app)

        listing = client.get("/api/candidates").json()
        # Strip the absolute sandbox path prefix so fixtures are stable.
        for c in listing["candidates"]:
            c["path"] = str(Path(c["path"]).relative_to(ROOT))
        (OUT_DIR / "candidates.json").write_text(
            json.dumps(listing, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

        for c in client.get("/api/candidates").json()["candidates"]:
            detail = client.get(f"/api/candidates/{c['id']}").json()
            detail["candidate"]["path"] = str(Path(detail["candidate"]["path"]).relative_to(ROOT))
            name = f"candidate_{c['smell']}.json"
            (OUT_DIR / name).write_text(
                json.dumps(detail, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
        print(f"recorded {1 + len(listing['candidates'])} fixtures into {OUT_DIR}")


if __name__ == "__main__":
    record()
