#!/usr/bin/env python3
"""Record service responses and CLI outputs for the frontend parity tests.

Run from the repository root with the package installed:

    python scripts/record_frontend_fixtures.py

Writes frontend/test/fixtures/.  Service bodies are stored raw (exact bytes)
so the tests can assert byte-level derivation.
"""
import json
import subprocess
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from fuzzydss.fixtures import load_paper_case
from fuzzydss.service import create_app

OUT = Path(__file__).resolve().parents[1] / "frontend" / "test" / "fixtures"


def cli(*args) -> str:
    result = subprocess.run([sys.executable, "-m", "fuzzydss.cli", *args],
                            capture_output=True, text=True, check=True)
    return result.stdout


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())
    doc = load_paper_case().to_document()
    created = client.post("/sessions", json=doc)
    created.raise_for_status()
    sid = created.json()["id"]

    def record(name: str, path: str):
        resp = client.get(path)
        resp.raise_for_status()
        (OUT / name).write_bytes(resp.content)

    # the id is random per upload; pin it so regeneration is reproducible
    # (tests use it only as a routing token, never for byte parity)
    session_doc = created.json()
    session_doc["id"] = "fixture-session"
    (OUT / "service_session.json").write_text(json.dumps(session_doc))
    record("service_ranking.json", f"/sessions/{sid}/ranking")
    for alpha in ("0.2", "0.5", "0.8"):
        record(f"service_scri_{alpha.replace('.', '')}.json",
               f"/sessions/{sid}/scri?alpha={alpha}")
    record("service_scri_sweep.json", f"/sessions/{sid}/scri/sweep?step=0.1")
    record("service_allocation_tvp260.json", f"/sessions/{sid}/allocation?tvp=260")

    (OUT / "cli_rank.json").write_text(cli("--json", "rank", "paper-case"))
    for alpha in ("0.2", "0.5", "0.8"):
        (OUT / f"cli_scri_{alpha.replace('.', '')}.json").write_text(
            cli("--json", "scri", "paper-case", "--alpha", alpha))
    (OUT / "cli_allocate_tvp260.json").write_text(
        cli("--json", "allocate", "paper-case", "--tvp", "260"))
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
