import pytest

from keycube.errors import NotInSupersetRegion, NotResponsible
from keycube.node import NodeState, make_record
from keycube.topology import KeywordSet, NodeId, node_for_keywords

from conftest import WIKI_POSITIONS


@pytest.fixture
def rome_node(wiki_hash):
    return NodeState(NodeId.parse("001001"), hash_fn=wiki_hash)


def test_insert_stores_under_exact_keyset(rome_node):
    rome_node.insert(make_record("cid-rome-wiki", ["Wikipedia", "Rome"]))
    assert rome_node.entry_count() == 1
    assert rome_node.cid_count() == 1
    assert rome_node.pin_lookup(KeywordSet(["Wikipedia", "Rome"])) == {"cid-rome-wiki"}


def test_insert_is_idempotent(rome_node):
    record = make_record("cid-rome-wiki", ["Wikipedia", "Rome"])
    rome_node.insert(record)
    rome_node.insert(record)
    assert rome_node.cid_count() == 1


def test_insert_rejected_off_owner(wiki_hash):
    zero = NodeState(NodeId.parse("000000"), hash_fn=wiki_hash)
    with pytest.raises(NotResponsible):
        zero.insert(make_record("cid-rome-wiki", ["Wikipedia", "Rome"]))


def test_remove_inverts_insert(rome_node):
    record = make_record("cid-rome-wiki", ["Wikipedia", "Rome"])
    rome_node.insert(record)
    assert rome_node.remove(record) is True
    assert rome_node.entry_count() == 0


def test_remove_missing_is_noop(rome_node):
    record = make_record("cid-rome-wiki", ["Wikipedia", "Rome"])
    assert rome_node.remove(record) is False
    assert rome_node.entry_count() == 0


def test_remove_one_of_two_cids(rome_node):
    rome_node.insert(make_record("cid-a", ["Wikipedia", "Rome"]))
    rome_node.insert(make_record("cid-b", ["Wikipedia", "Rome"]))
    rome_node.remove(make_record("cid-a", ["Wikipedia", "Rome"]))
    assert rome_node.pin_lookup(KeywordSet(["Wikipedia", "Rome"])) == {"cid-b"}


def test_pin_lookup_unused_keyset_is_empty(rome_node):
    assert rome_node.pin_lookup(KeywordSet(["Wikipedia", "Rome"])) == set()


def test_pin_lookup_requires_ownership(rome_node):
    with pytest.raises(NotResponsible):
        rome_node.pin_lookup(KeywordSet(["Wikipedia"]))


def test_colliding_keysets_stay_separate():
    # Two distinct keyword sets forced onto one node id.
    collide = {"x": 1, "y": 1, "z": 2}.get
    hash_fn = lambda kw, r: collide(kw, 0)
    owner = node_for_keywords(["x", "z"], 3, hash_fn)
    node = NodeState(owner, hash_fn=hash_fn)
    assert owner == node_for_keywords(["y", "z"], 3, hash_fn)
    node.insert(make_record("cid-xz", ["x", "z"]))
    node.insert(make_record("cid-yz", ["y", "z"]))
    assert node.pin_lookup(KeywordSet(["x", "z"])) == {"cid-xz"}
    assert node.pin_lookup(KeywordSet(["y", "z"])) == {"cid-yz"}


def test_superset_lookup_includes_keyword_supersets(wiki_hash):
    owner = node_for_keywords(["Wikipedia", "Rome", "PoI"], 6, wiki_hash)
    node = NodeState(owner, hash_fn=wiki_hash)
    node.insert(make_record("cid-rome-poi", ["Wikipedia", "Rome", "PoI"]))
    assert node.superset_lookup(KeywordSet(["Wikipedia", "Rome"]), 10) == ["cid-rome-poi"]


def test_superset_lookup_limit_zero(rome_node):
    rome_node.insert(make_record("cid-rome-wiki", ["Wikipedia", "Rome"]))
    assert rome_node.superset_lookup(KeywordSet(["Wikipedia", "Rome"]), 0) == []


def test_superset_lookup_truncates_deterministically(wiki_hash):
    node = NodeState(NodeId.parse("001001"), hash_fn=wiki_hash)
    for cid in ("cid-e", "cid-c", "cid-a", "cid-d", "cid-b"):
        node.insert(make_record(cid, ["Wikipedia", "Rome"]))
    # One entry, five cids: byte order then cut at three.
    assert node.superset_lookup(KeywordSet(["Wikipedia", "Rome"]), 3) == [
        "cid-a", "cid-b", "cid-c"]


def test_superset_lookup_orders_entries_by_keyset():
    hash_fn = lambda kw, r: 0
    node = NodeState(NodeId.parse("100"), hash_fn=hash_fn)
    node.insert(make_record("cid-late", ["b"]))
    node.insert(make_record("cid-early", ["a"]))
    assert node.superset_lookup(KeywordSet([]), 10) == ["cid-early", "cid-late"]


def test_superset_lookup_outside_region_rejected(rome_node):
    with pytest.raises(NotInSupersetRegion):
        rome_node.superset_lookup(KeywordSet(["Bologna"]), 10)


def test_pin_subset_of_superset(wiki_net):
    start = NodeId.parse("000000")
    wiki_net.insert("cid-1", ["Wikipedia", "Rome"])
    wiki_net.insert("cid-2", ["Wikipedia", "Rome", "PoI"])
    for query in (["Wikipedia", "Rome"], ["Wikipedia", "Rome", "PoI"], ["Urbino"]):
        pin = set(wiki_net.pin_search(start, query).cids)
        sup = set(wiki_net.superset_search(start, query, limit=10**6).cids)
        assert pin <= sup


def test_records_snapshot(rome_node):
    rome_node.insert(make_record("cid-b", ["Wikipedia", "Rome"]))
    rome_node.insert(make_record("cid-a", ["Wikipedia", "Rome"]))
    assert [r.cid for r in rome_node.records()] == ["cid-a", "cid-b"]


def test_state_transfers_between_contexts_at_rest(rome_node):
    import pickle

    rome_node.insert(make_record("cid-rome-wiki", ["Wikipedia", "Rome"]))
    moved = pickle.loads(pickle.dumps(rome_node))
    assert moved.id == rome_node.id
    assert list(moved.records()) == list(rome_node.records())
    moved.insert(make_record("cid-two", ["Wikipedia", "Rome"]))
    assert moved.cid_count() == 2
