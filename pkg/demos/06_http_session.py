"""The HTTP session API end to end: create an interactive session, poll
for pending queries, answer them, watch the bounds close.

This drives a real server over localhost; the answering policy here
plays the role of the human.

Run:  python3 demos/06_http_session.py
"""

import json
import threading
import time
import urllib.request

import uvicorn

from learnopt.harness.service import create_app

PORT = 8797
BASE = f"http://127.0.0.1:{PORT}"


def http(method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(f"{BASE}{path}", data=data, method=method)
    if data is not None:
        req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req) as resp:
            raw = resp.read()
            return resp.status, json.loads(raw) if raw else None
    except urllib.error.HTTPError as err:
        return err.code, None


server = uvicorn.Server(
    uvicorn.Config(create_app(), host="127.0.0.1", port=PORT, log_level="error")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.02)

problem = {
    "variables": ["x1", "x2", "x3"],
    "domains": {v: {"min": 1, "max": 3} for v in ("x1", "x2", "x3")},
    "objective": {"coefficients": {"x1": 1, "x2": 1, "x3": 1}, "sense": "min"},
    "oracle": {"type": "interactive"},
    "seed_solution": {"x1": 1, "x2": 2, "x3": 3},
    "epsilon": 0,
    "cutoff_seconds": 30.0,
}

# the knowledge the "human" answers from (the server never sees it)
def feasible(bindings):
    pairs = [("x1", "x2"), ("x2", "x3")]
    return all(bindings[a] < bindings[b] for a, b in pairs if a in bindings and b in bindings)


_, created = http("POST", "/sessions", problem)
sid = created["session_id"]
print("session:", sid)

while True:
    status, pending = http("GET", f"/sessions/{sid}/query")
    if status == 200:
        answer = "yes" if feasible(pending["bindings"]) else "no"
        print(f"  q{pending['query_id']} {pending['bindings']} -> {answer}")
        http("POST", f"/sessions/{sid}/answer",
             {"query_id": pending["query_id"], "answer": answer})
        continue
    _, view = http("GET", f"/sessions/{sid}")
    if view["status"] not in ("starting", "running"):
        break
    time.sleep(0.02)

_, view = http("GET", f"/sessions/{sid}")
print("\nfinal status:", view["status"])
print("bounds:", view["lb"], "..", view["ub"])
print("learned:", view["learned_constraints"])
print("queries asked:", view["queries_asked"])

server.should_exit = True
thread.join(timeout=5)
