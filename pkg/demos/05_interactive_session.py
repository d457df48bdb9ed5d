"""Drive the session service the way the web client does, but scripted.

Starts the HTTP service in-process on a free port, plays a short customer
dialogue against the bundled engineer corpus, accepts the two strongest
proposals, and prints the finalized mutual model.

Run:  python demos/05_interactive_session.py
"""

import json
import threading
import urllib.request
from importlib import resources

from reqdialog.nlp import build_noun_set
from reqdialog.protocol import KnowledgeBase
from reqdialog.service import SessionService, make_server


def call(method: str, url: str, body: dict | None = None) -> dict:
    data = json.dumps(body).encode() if body is not None else None
    request = urllib.request.Request(url, data=data, method=method)
    request.add_header("Content-Type", "application/json")
    with urllib.request.urlopen(request) as response:
        return json.loads(response.read())


engineer_text = (resources.files("reqdialog.data") / "corpus" / "engineer.txt").read_text("utf-8")
kb = KnowledgeBase.from_noun_set(build_noun_set("engineer", [engineer_text]))
service = SessionService({"default": kb})
server = make_server(service, "127.0.0.1", 0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = "http://%s:%s" % server.server_address[:2]
print(f"service on {base}\n")

session = call("POST", f"{base}/sessions", {"kb_id": "default"})["session_id"]

for text in (
    "We want a calm Akita dog for our family.",
    "The thick coat worries my wife because of the loose hair.",
):
    print(f"customer: {text}")
    reactions = call("POST", f"{base}/sessions/{session}/utterance", {"text": text})["reactions"]
    for r in reactions:
        label = {
            "KNOWN": "I know what you are talking about",
            "SIMILAR": f"I know something similar: {r['nearest']}",
            "UNKNOWN": "I don't know what you are talking about",
        }[r["verdict"]]
        print(f"  engineer on {r['lemma']!r}: {label} (score {r['score']:.2f})")
    print()

proposals = call("GET", f"{base}/sessions/{session}/proposals?limit=5")["proposals"]
print("engineer: in addition to what you told me, I would suggest:")
for p in proposals:
    print(f"  {p['lemma']} (weight {p['weight']})")

for p in proposals[:2]:
    call("POST", f"{base}/sessions/{session}/decision", {"lemma": p["lemma"], "verdict": "accepted"})
print(f"\ncustomer accepts: {[p['lemma'] for p in proposals[:2]]}")

model = call("POST", f"{base}/sessions/{session}/finalize")
print("\nfinal mutual model:")
print(json.dumps(model, indent=2))

server.shutdown()
server.server_close()
