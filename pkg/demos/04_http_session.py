"""Drive the HTTP service end to end: create, select, step, save, seed.

Starts the service on a local port in a background thread, then walks the
same sequence the browser UI performs.

Run with:  python demos/04_http_session.py
"""

import json
import tempfile
import threading
import time
import urllib.request

import uvicorn

from evoshader.api import create_app

PORT = 8765
BASE = f"http://127.0.0.1:{PORT}"


def call(method: str, path: str, payload: dict | None = None) -> dict:
    data = json.dumps(payload).encode() if payload is not None else None
    request = urllib.request.Request(
        BASE + path, data=data, method=method,
        headers={"content-type": "application/json"},
    )
    with urllib.request.urlopen(request) as response:
        return json.loads(response.read())


with tempfile.TemporaryDirectory() as data_dir:
    config = uvicorn.Config(
        create_app(data_dir=data_dir), host="127.0.0.1", port=PORT, log_level="warning"
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        time.sleep(0.05)

    body = call("POST", "/api/sessions", {"params": {"seed": 11}})
    session_id = body["session_id"]
    print(f"session {session_id[:8]}..., generation {body['generation']}")
    for candidate in body["candidates"][:3]:
        print(f"  slot {candidate['slot']}: {candidate['sexpr']}"
              f"  (dynamic={candidate['dynamic']})")

    body = call("POST", f"/api/sessions/{session_id}/step",
                {"selected_slots": [0, 4], "generations": 2})
    print(f"after stepping 2 generations with slots 0+4: generation {body['generation']}")

    record = call("POST", f"/api/sessions/{session_id}/save",
                  {"slot": 0, "name": "keeper"})
    print(f"saved transformation {record['id'][:8]}...: {record['expr']}")

    listing = call("GET", "/api/transformations")
    print(f"store now lists {len(listing)} transformation(s)")

    body = call("POST", f"/api/sessions/{session_id}/seed",
                {"transformation_id": record["id"]})
    shown = [c["sexpr"] for c in body["candidates"]]
    print(f"seeded expression back into the display: {record['expr'] in shown}")

    server.should_exit = True
    thread.join(timeout=5)
    print("done")
