"""Resolving cids to file bytes through a content-addressed storage daemon.

Queries against the DHT return cids. When a resolver is attached the cids
can be mapped to the underlying bytes as a post-processing step; the query
itself is unchanged. Two implementations: an in-memory mock for tests and
walkthroughs, and a client for a daemon exposing the conventional
POST /api/v0/cat?arg=<cid> endpoint.
"""

from __future__ import annotations

import base64
import json
from typing import Protocol

import requests

from .errors import ContentNotFound, GatewayUnavailable
from .network import Network
from .topology import NodeId


class ContentResolver(Protocol):
    def resolve(self, cid: str) -> bytes: ...


class MockResolver:
    """In-memory cid -> bytes map; safe for concurrent reads."""

    def __init__(self, contents: dict[str, bytes] | None = None):
        self._contents = dict(contents or {})

    @classmethod
    def from_seed_file(cls, path) -> "MockResolver":
        """Load a JSON map of cid -> base64-encoded bytes."""
        with open(path) as fh:
            raw = json.load(fh)
        return cls({cid: base64.b64decode(data) for cid, data in raw.items()})

    def resolve(self, cid: str) -> bytes:
        _check_cid(cid)
        try:
            return self._contents[cid]
        except KeyError:
            raise ContentNotFound(cid) from None


class DaemonResolver:
    """Client for a content-addressed storage daemon's HTTP API."""

    def __init__(self, base_url: str, timeout: float = 10.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout

    def resolve(self, cid: str) -> bytes:
        _check_cid(cid)
        url = f"{self.base_url}/api/v0/cat"
        try:
            resp = requests.post(url, params={"arg": cid}, timeout=self.timeout)
        except requests.RequestException as exc:
            raise GatewayUnavailable(f"daemon at {self.base_url} unreachable: {exc}") from exc
        if resp.status_code == 200:
            return resp.content
        raise ContentNotFound(f"{cid}: daemon answered {resp.status_code}")


def _check_cid(cid: str) -> None:
    if not isinstance(cid, str) or not cid:
        raise ValueError(f"cid must be a non-empty string, got {cid!r}")


def pin_search_with_content(net: Network, start: NodeId, keywords,
                            resolver: ContentResolver) -> list[tuple[str, bytes | None]]:
    """Pin search whose cids are mapped through the resolver.

    Resolution happens after the query completes and never fails it; a cid
    the resolver cannot produce is paired with None.
    """
    result = net.pin_search(start, keywords)
    out: list[tuple[str, bytes | None]] = []
    for cid in result.cids:
        try:
            out.append((cid, resolver.resolve(cid)))
        except (ContentNotFound, GatewayUnavailable):
            out.append((cid, None))
    return out
