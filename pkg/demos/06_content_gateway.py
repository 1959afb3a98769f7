"""Turning query results into file bytes through a content resolver.

The DHT stores only cids. A resolver maps a cid to the stored bytes as a
post-processing step; cids the resolver cannot produce come back paired
with None and never fail the query. The in-memory resolver below stands
in for a daemon client (DaemonResolver) that speaks
POST /api/v0/cat?arg=<cid> to a real content-addressed store.

Run:  python demos/06_content_gateway.py
"""

from keycube import MockResolver, NetworkConfig, NodeId, build_network
from keycube.gateway import pin_search_with_content

net = build_network(NetworkConfig(r=4))

net.insert("cid-report", ["kw0000", "kw0003"])
net.insert("cid-dataset", ["kw0000", "kw0003"])

resolver = MockResolver({
    "cid-report": b"quarterly uptime report",
    # cid-dataset is indexed but its bytes are not on this resolver
})

start = NodeId.parse("0000")
for cid, content in pin_search_with_content(net, start, ["kw0000", "kw0003"], resolver):
    shown = content.decode() if content is not None else "<unresolved>"
    print(f"{cid:>12}: {shown}")
