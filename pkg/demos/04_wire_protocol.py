"""The HTTP wire mode: one small JSON server per logical node.

Every node listens on base_port + id value and answers /info, /insert,
/remove, /pin and /superset; node-to-node forwarding uses
POST /internal/forward. The same queries give the same answers as the
in-process transport.

Run:  python demos/04_wire_protocol.py
"""

import json

import requests

from keycube import NetworkConfig, build_network
from keycube.network import TRANSPORT_WIRE

BASE = 19300
cfg = NetworkConfig(r=3, transport=TRANSPORT_WIRE, base_port=BASE)
net = build_network(cfg)
try:
    print(f"8 nodes serving on 127.0.0.1:{BASE}..{BASE + 7}\n")

    info = requests.get(f"http://127.0.0.1:{BASE + 5}/info", timeout=5).json()
    print("GET /info on port", BASE + 5, "->", json.dumps(info))

    body = {"cid": "cid-demo", "keywords": ["kw0000", "kw0002"]}
    stored = requests.post(f"http://127.0.0.1:{BASE}/insert", json=body,
                           timeout=5).json()
    print("POST /insert ->", json.dumps(stored))

    found = requests.get(f"http://127.0.0.1:{BASE + 7}/pin",
                         params={"keywords": "kw0000,kw0002"}, timeout=5).json()
    print("GET /pin from the far corner ->", json.dumps(found))

    sup = requests.get(f"http://127.0.0.1:{BASE + 7}/superset",
                       params={"keywords": "kw0000", "limit": "10"},
                       timeout=5).json()
    print("GET /superset ->", json.dumps(sup))
finally:
    net.close()
    print("\nservers stopped")
