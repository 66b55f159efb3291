"""A full annotation session against the backend, in-process.

The same flow the browser UI drives: upload raw sentences, read back the
tagged tokens, write annotation state, lint it, export both formats. Here
the service runs in-process via the test client; `factoie serve` exposes
exactly the same API over HTTP.
"""

import json
import tempfile

from fastapi.testclient import TestClient

from factoie.io_formats import load_state, save_state
from factoie.service import create_app

app = create_app(tempfile.mkdtemp(prefix="factoie-sessions-"))
client = TestClient(app)

upload = client.post(
    "/api/sessions",
    content=b"Michael Jordan was born in Brooklyn.\nThe ball was kicked by John.\n",
)
session = upload.json()["session_id"]
print(f"created session {session} with {upload.json()['sentence_count']} sentences")

tokens = client.get(f"/api/sessions/{session}/sentences/s1").json()["tokens"]
marks = {"VERB": "v", "NAMED_ENTITY": "N", "NONE": "-"}
print("tagged s1:", " ".join(f"{t['text']}/{marks[t['highlight']]}" for t in tokens))

# annotate: one synset for s1, encoded as slot templates over token indices
state = load_state(client.get(f"/api/sessions/{session}/state").content)
doc = json.loads(save_state(state))
doc["synsets"]["s1"] = [
    {
        "id": "g1",
        "triples": [
            {
                "subject": [[{"token_index": 0, "optional": False},
                             {"token_index": 1, "optional": False}]],
                "predicate": [[{"token_index": 2, "optional": False},
                               {"token_index": 3, "optional": False},
                               {"token_index": 4, "optional": False}]],
                "object": [[{"token_index": 5, "optional": False}]],
            }
        ],
    }
]
put = client.put(f"/api/sessions/{session}/state", content=json.dumps(doc).encode())
print(f"saved state: HTTP {put.status_code}")

lint = client.get(f"/api/sessions/{session}/lint").json()
print(f"lint diagnostics: {lint['diagnostics'] or 'none'}")

tsv = client.get(f"/api/sessions/{session}/export?format=tsv")
print("human-readable export:")
for line in tsv.content.decode().splitlines():
    print("  " + line)

exported = client.get(f"/api/sessions/{session}/export?format=json")
print(f"JSON export loads back: {load_state(exported.content).synsets.keys()}")
