"""Complete 2**r-node networks over two interchangeable transports.

The in-process transport dispatches envelopes by direct call, but pushes
every envelope and reply through a JSON round-trip so that both transports
move exactly the same payloads; results are identical by construction, not
by luck. The wire transport runs one small HTTP server per logical node
(one OS port each) speaking the JSON protocol below, with node-to-node
legs on POST /internal/forward.

Per node, wire mode:
    POST /insert            {"cid": str, "keywords": [str]}
    POST /remove            {"cid": str, "keywords": [str]}
    GET  /pin?keywords=a,b
    GET  /superset?keywords=a,b&limit=l
    POST /internal/forward  envelope
    GET  /info
"""

from __future__ import annotations

import json
import random
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Iterator
from urllib.parse import parse_qs, urlparse

import requests

from .errors import (
    BootstrapError,
    KeycubeError,
    RoutingFailure,
    error_payload,
    raise_from_payload,
)
from .node import NodeState, ObjectRecord
from .query import LogicalNode, QueryResult
from .topology import (
    HashFn,
    KeywordSet,
    NodeId,
    check_dimension,
    keyword_bit,
    neighbors,
)

TRANSPORT_IN_PROCESS = "in-process"
TRANSPORT_WIRE = "wire"
WIRE_TIMEOUT = 20.0


@dataclass(frozen=True)
class NetworkConfig:
    r: int
    transport: str = TRANSPORT_IN_PROCESS
    host: str = "127.0.0.1"
    base_port: int = 9000
    seed: int = 0
    hash_fn: HashFn = keyword_bit

    def __post_init__(self):
        check_dimension(self.r)
        if self.transport not in (TRANSPORT_IN_PROCESS, TRANSPORT_WIRE):
            raise ValueError(f"unknown transport {self.transport!r}")

    def address_of(self, node: NodeId) -> str:
        """Transport address of a node; a pure function of base and id value."""
        if self.transport == TRANSPORT_WIRE:
            return f"http://{self.host}:{self.base_port + node.value}"
        return f"inproc://{node.text}"


class InProcessTransport:
    """Direct dispatch with JSON round-trips for wire parity."""

    def __init__(self, nodes: dict[NodeId, LogicalNode]):
        self.nodes = nodes

    def call(self, target: NodeId, envelope: dict) -> dict:
        env = json.loads(json.dumps(envelope))
        reply = self.nodes[target].handle_forward(env)
        return json.loads(json.dumps(reply))


class WireTransport:
    """Node-to-node legs as POST /internal/forward to the neighbor's port."""

    def __init__(self, cfg: NetworkConfig):
        self.cfg = cfg
        self._local = threading.local()

    def _session(self) -> requests.Session:
        session = getattr(self._local, "session", None)
        if session is None:
            session = requests.Session()
            self._local.session = session
        return session

    def call(self, target: NodeId, envelope: dict) -> dict:
        url = f"{self.cfg.address_of(target)}/internal/forward"
        try:
            resp = self._session().post(url, json=envelope, timeout=WIRE_TIMEOUT)
        except requests.RequestException as exc:
            raise RoutingFailure(
                f"neighbor {target.text} unreachable: {exc}", envelope.get("visited")
            ) from exc
        return _reply_or_raise(resp)


def _reply_or_raise(resp: requests.Response) -> dict:
    payload = resp.json()
    if resp.status_code != 200:
        raise_from_payload(payload)
    return payload


class _NodeHTTPServer(ThreadingHTTPServer):
    daemon_threads = True
    logical_node: LogicalNode


class _NodeRequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):
        pass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b"{}"
        return json.loads(raw)

    def _run(self, fn) -> None:
        try:
            self._send(200, fn())
        except RoutingFailure as exc:
            self._send(502, error_payload(exc))
        except (KeycubeError, ValueError) as exc:
            self._send(400, error_payload(exc) if isinstance(exc, KeycubeError)
                       else {"error": "ValueError", "detail": str(exc)})

    def do_GET(self):
        node = self.server.logical_node
        url = urlparse(self.path)
        params = parse_qs(url.query)
        if url.path == "/info":
            self._run(node.info)
        elif url.path == "/pin":
            keywords = _split_keywords(params.get("keywords", [""])[0])
            self._run(lambda: node.client_pin(KeywordSet(keywords)))
        elif url.path == "/superset":
            keywords = _split_keywords(params.get("keywords", [""])[0])
            limit = int(params.get("limit", ["10"])[0])
            self._run(lambda: node.client_superset(KeywordSet(keywords), limit))
        else:
            self._send(404, {"error": "NotFound", "detail": self.path})

    def do_POST(self):
        node = self.server.logical_node
        path = urlparse(self.path).path
        try:
            body = self._body()
        except json.JSONDecodeError as exc:
            self._send(400, {"error": "BadRequest", "detail": str(exc)})
            return
        if path == "/insert":
            self._run(lambda: node.client_insert(body["cid"], KeywordSet(body["keywords"])))
        elif path == "/remove":
            self._run(lambda: node.client_remove(body["cid"], KeywordSet(body["keywords"])))
        elif path == "/internal/forward":
            self._run(lambda: node.handle_forward(body))
        else:
            self._send(404, {"error": "NotFound", "detail": self.path})


def _split_keywords(raw: str) -> list[str]:
    return [part for part in raw.split(",") if part] if raw else []


def start_node_server(cfg: NetworkConfig, node: LogicalNode) -> _NodeHTTPServer:
    """Bind and serve one logical node on its wire address."""
    port = cfg.base_port + node.id.value
    try:
        server = _NodeHTTPServer((cfg.host, port), _NodeRequestHandler)
    except OSError as exc:
        raise BootstrapError(f"node {node.id.text} cannot bind {cfg.host}:{port}: {exc}") from exc
    server.logical_node = node
    thread = threading.Thread(target=server.serve_forever, daemon=True,
                              name=f"keycube-node-{node.id.text}")
    thread.start()
    return server


def make_logical_node(cfg: NetworkConfig, node_id: NodeId) -> LogicalNode:
    """A logical node wired for `cfg`, without starting any server."""
    addrs = {n: cfg.address_of(n) for n in neighbors(node_id)}
    state = NodeState(node_id, addrs, cfg.hash_fn)
    node = LogicalNode(state)
    if cfg.transport == TRANSPORT_WIRE:
        node.transport = WireTransport(cfg)
    return node


class Network:
    """Handle over all 2**r logical nodes plus the client-side API.

    In wire mode the client API goes through the nodes' public HTTP
    endpoints, so a query observed here exercises the same code path an
    external client would.
    """

    def __init__(self, cfg: NetworkConfig, nodes: dict[NodeId, LogicalNode],
                 servers: list[_NodeHTTPServer] | None = None):
        self.cfg = cfg
        self.nodes = nodes
        self.servers = servers or []

    # -- client API ---------------------------------------------------------

    def insert(self, cid: str, keywords, start: NodeId | None = None) -> dict:
        keywords = _as_keywords(keywords)
        start = start or self._default_start()
        if self.cfg.transport == TRANSPORT_WIRE:
            return wire_insert(self.cfg.address_of(start), cid, keywords)
        return self.nodes[start].client_insert(cid, keywords)

    def remove(self, cid: str, keywords, start: NodeId | None = None) -> dict:
        keywords = _as_keywords(keywords)
        start = start or self._default_start()
        if self.cfg.transport == TRANSPORT_WIRE:
            return wire_remove(self.cfg.address_of(start), cid, keywords)
        return self.nodes[start].client_remove(cid, keywords)

    def pin_search(self, start: NodeId, keywords) -> QueryResult:
        keywords = _as_keywords(keywords)
        if self.cfg.transport == TRANSPORT_WIRE:
            reply = wire_pin(self.cfg.address_of(start), keywords)
        else:
            reply = self.nodes[start].client_pin(keywords)
        return QueryResult.from_reply(reply, self.cfg.r)

    def superset_search(self, start: NodeId, keywords, limit: int) -> QueryResult:
        keywords = _as_keywords(keywords)
        if self.cfg.transport == TRANSPORT_WIRE:
            reply = wire_superset(self.cfg.address_of(start), keywords, limit)
        else:
            reply = self.nodes[start].client_superset(keywords, limit)
        return QueryResult.from_reply(reply, self.cfg.r)

    def route(self, start: NodeId, target: NodeId) -> QueryResult:
        """Deliver a ping from start to target; measures pure routing cost."""
        reply = self.nodes[start].client_ping(target)
        return QueryResult((), reply["hops"],
                           tuple(NodeId.parse(t) for t in reply["visited"]))

    # -- introspection --------------------------------------------------------

    @property
    def node_ids(self) -> list[NodeId]:
        return sorted(self.nodes)

    def scan_records(self) -> Iterator[tuple[NodeId, ObjectRecord]]:
        """Every stored record with its owner; the brute-force oracle's view."""
        for node_id in self.node_ids:
            for record in self.nodes[node_id].state.records():
                yield node_id, record

    def _default_start(self) -> NodeId:
        return NodeId(self.cfg.r, 0)

    def close(self) -> None:
        for server in self.servers:
            server.shutdown()
            server.server_close()
        self.servers = []

    def __enter__(self) -> "Network":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _as_keywords(keywords) -> KeywordSet:
    return keywords if isinstance(keywords, KeywordSet) else KeywordSet(keywords)


def build_network(cfg: NetworkConfig) -> Network:
    """Bring up all 2**r nodes with full neighbor maps, ready for queries."""
    nodes = {}
    for value in range(1 << cfg.r):
        node_id = NodeId(cfg.r, value)
        nodes[node_id] = make_logical_node(cfg, node_id)

    servers: list[_NodeHTTPServer] = []
    if cfg.transport == TRANSPORT_WIRE:
        try:
            for node_id in sorted(nodes):
                servers.append(start_node_server(cfg, nodes[node_id]))
        except BootstrapError:
            for server in servers:
                server.shutdown()
                server.server_close()
            raise
    else:
        transport = InProcessTransport(nodes)
        for node in nodes.values():
            node.transport = transport
    return Network(cfg, nodes, servers)


# -- wire client helpers -----------------------------------------------------

def wire_info(address: str) -> dict:
    return _reply_or_raise(requests.get(f"{address}/info", timeout=WIRE_TIMEOUT))


def wire_insert(address: str, cid: str, keywords: KeywordSet) -> dict:
    return _reply_or_raise(requests.post(
        f"{address}/insert", json={"cid": cid, "keywords": list(keywords)},
        timeout=WIRE_TIMEOUT))


def wire_remove(address: str, cid: str, keywords: KeywordSet) -> dict:
    return _reply_or_raise(requests.post(
        f"{address}/remove", json={"cid": cid, "keywords": list(keywords)},
        timeout=WIRE_TIMEOUT))


def wire_pin(address: str, keywords: KeywordSet) -> dict:
    return _reply_or_raise(requests.get(
        f"{address}/pin", params={"keywords": ",".join(keywords)},
        timeout=WIRE_TIMEOUT))


def wire_superset(address: str, keywords: KeywordSet, limit: int) -> dict:
    return _reply_or_raise(requests.get(
        f"{address}/superset",
        params={"keywords": ",".join(keywords), "limit": str(limit)},
        timeout=WIRE_TIMEOUT))


# -- population ----------------------------------------------------------------

def experiment_keywords(r: int, per_position: int = 4,
                        hash_fn: HashFn = keyword_bit) -> list[str]:
    """Synthetic keyword universe of per_position * r distinct strings.

    Candidates kw0000, kw0001, ... are screened by their hashed position
    until every position owns exactly `per_position` words, so random
    keyword sets can reach the whole id space.
    """
    check_dimension(r)
    buckets: dict[int, list[str]] = {i: [] for i in range(r)}
    filled = 0
    i = 0
    while filled < r:
        word = f"kw{i:04d}"
        i += 1
        bucket = buckets[hash_fn(word, r)]
        if len(bucket) < per_position:
            bucket.append(word)
            if len(bucket) == per_position:
                filled += 1
    return sorted(word for bucket in buckets.values() for word in bucket)


def populate(net: Network, count: int, seed: int) -> list[ObjectRecord]:
    """Insert `count` objects with random keyword sets, routed from random nodes.

    Each object draws a set size uniformly from [1, r], then that many
    distinct keywords from the experiment universe. A pure function of the
    seed: same seed, same placement.
    """
    rng = random.Random(seed)
    r = net.cfg.r
    universe = experiment_keywords(r, hash_fn=net.cfg.hash_fn)
    inserted = []
    for i in range(count):
        size = rng.randint(1, r)
        words = rng.sample(universe, size)
        start = NodeId(r, rng.randrange(1 << r))
        record = ObjectRecord(f"obj-{i:05d}", KeywordSet(words))
        net.insert(record.cid, record.keywords, start=start)
        inserted.append(record)
    return inserted
