import numpy as np
import pytest
from scipy import stats

import triangles.sample_buffer.buffer as buffer_module
from core.errors import BufferContractError
from triangles.sample_buffer.buffer import BufferMode, SampleBuffer
from triangles.sample_buffer.hashing import hash01
from triangles.stream_core.edges import Edge, canonicalize_edge


class FixedDraw:
    """Stands in for numpy's Generator with a predetermined integers() result"""

    def __init__(self, value):
        self.value = value
        self.calls = []

    def integers(self, low, high):
        self.calls.append((low, high))
        return self.value


def _filled(mode=BufferMode.UNIFORM, capacity=3, edges=(Edge(1, 2), Edge(1, 3), Edge(2, 4))):
    buf = SampleBuffer(capacity, mode)
    for e in edges:
        buf.append(e)
    return buf


def test_hash_is_deterministic_and_canonical():
    e = canonicalize_edge(9, 4)
    assert hash01(e, 3) == hash01(e, 3)
    assert hash01(canonicalize_edge(4, 9), 3) == hash01(e, 3)
    assert hash01(e, 3) != hash01(e, 4)


@pytest.mark.montecarlo
def test_hash_values_are_uniform():
    rng = np.random.default_rng(2024)
    pairs = rng.integers(0, 2**31, size=(100_000, 2))
    values = np.array([hash01(Edge(int(min(a, b)), int(max(a, b))), 1) for a, b in pairs if a != b])
    assert np.all((values > 0) & (values < 1))
    stderr = np.sqrt(1 / 12 / len(values))
    assert abs(values.mean() - 0.5) < 4 * stderr
    counts, _ = np.histogram(values, bins=100, range=(0, 1))
    assert stats.chisquare(counts).pvalue > 0.01


def test_append_updates_adjacency_and_occurrence():
    buf = SampleBuffer(3, BufferMode.MINHASH)
    buf.append(Edge(1, 2))
    assert len(buf) == 1
    assert buf.neighbors(1) == {2}
    assert buf.occurrence(Edge(1, 2)) == 1


def test_append_fills_to_capacity_then_fails():
    buf = _filled()
    assert len(buf) == 3 and buf.is_full
    with pytest.raises(BufferContractError):
        buf.append(Edge(5, 6))


def test_append_rejects_buffered_edge():
    buf = SampleBuffer(3)
    buf.append(Edge(1, 2))
    with pytest.raises(BufferContractError):
        buf.append(Edge(1, 2))


def test_unbounded_buffer_never_fills():
    buf = SampleBuffer(None)
    for a in range(50):
        buf.append(Edge(a, a + 1))
    assert len(buf) == 50 and not buf.is_full


def test_replace_uniform_forced_slot_one():
    buf = _filled()
    draw = FixedDraw(1)
    assert buf.replace_uniform(Edge(7, 8), 10, draw)
    assert draw.calls == [(1, 11)]
    assert Edge(1, 2) not in buf and Edge(7, 8) in buf
    assert buf.neighbors(2) == {4}
    assert buf.adjacency() == buf.rebuild_adjacency()


def test_replace_uniform_forced_discard():
    buf = _filled()
    before = buf.edges()
    assert not buf.replace_uniform(Edge(7, 8), 10, FixedDraw(10))
    assert buf.edges() == before


@pytest.mark.montecarlo
def test_uniform_reservoir_marginals():
    M, T, trials = 10, 100, 10_000
    rng = np.random.default_rng(99)
    items = [Edge(2 * t, 2 * t + 1) for t in range(T)]
    hits = np.zeros(T)
    for _ in range(trials):
        buf = SampleBuffer(M)
        for t, e in enumerate(items, start=1):
            if not buf.is_full:
                buf.append(e)
            else:
                buf.replace_uniform(e, t, rng)
        for e in buf:
            hits[e.a // 2] += 1
    freq = hits / trials
    stderr = np.sqrt(0.1 * 0.9 / trials)
    assert np.all(np.abs(freq - 0.1) < 4.5 * stderr)


@pytest.fixture
def fixed_hashes(monkeypatch):
    table = {Edge(1, 2): 0.1, Edge(1, 3): 0.5, Edge(2, 3): 0.9, Edge(3, 4): 0.3, Edge(4, 5): 0.95}
    monkeypatch.setattr(buffer_module, "hash01", lambda e, seed: table[e])
    return table


def test_replace_minhash_direct_rule(fixed_hashes):
    buf = _filled(BufferMode.MINHASH, edges=(Edge(1, 2), Edge(1, 3), Edge(2, 3)))
    assert buf.h_max() == 0.9
    assert buf.replace_minhash(Edge(3, 4))
    assert Edge(2, 3) not in buf
    assert buf.h_max() == 0.5
    assert buf.occurrence(Edge(3, 4)) == 1


def test_replace_minhash_rejects_large_hash(fixed_hashes):
    buf = _filled(BufferMode.MINHASH, edges=(Edge(1, 2), Edge(1, 3), Edge(2, 3)))
    assert not buf.replace_minhash(Edge(4, 5))
    assert buf.edges() == {Edge(1, 2), Edge(1, 3), Edge(2, 3)}


def test_h_max_requires_full_minhash_buffer():
    buf = SampleBuffer(3, BufferMode.MINHASH)
    buf.append(Edge(1, 2))
    with pytest.raises(BufferContractError):
        buf.h_max()
    with pytest.raises(BufferContractError):
        _filled().h_max()


@pytest.mark.montecarlo
def test_minhash_buffer_matches_offline_sort():
    M, hash_seed = 8, 5
    rng = np.random.default_rng(17)
    for _ in range(1000):
        raw = rng.integers(0, 12, size=(40, 2))
        stream = [canonicalize_edge(int(u), int(v)) for u, v in raw if u != v]
        distinct = set(stream)
        if len(distinct) <= M:
            continue
        buf = SampleBuffer(M, BufferMode.MINHASH, hash_seed)
        last_h_max = 1.0
        for e in stream:
            if e in buf:
                buf.increment_occurrence(e)
            elif not buf.is_full:
                buf.append(e)
            else:
                buf.replace_minhash(e)
            if buf.is_full:
                assert buf.h_max() <= last_h_max
                last_h_max = buf.h_max()
            assert len(buf) <= M
        expected = set(sorted(distinct, key=lambda e: hash01(e, hash_seed))[:M])
        assert buf.edges() == expected
        assert buf.adjacency() == buf.rebuild_adjacency()


def test_common_neighbors():
    buf = SampleBuffer(4)
    for e in (Edge(1, 2), Edge(1, 3), Edge(2, 3), Edge(2, 4)):
        buf.append(e)
    assert buf.common_neighbors(1, 2) == {3}
    assert buf.common_neighbors(1, 4) == {2}
    assert buf.common_neighbors(3, 4) == {2}
    assert buf.common_neighbors(1, 99) == set()


def test_occurrence_counts():
    buf = SampleBuffer(3, BufferMode.MINHASH)
    e = Edge(1, 2)
    buf.append(e)
    assert buf.occurrence(e) == 1
    for _ in range(3):
        buf.increment_occurrence(e)
    assert buf.occurrence(e) == 4
    absent = Edge(5, 6)
    assert not buf.contains(absent)
    assert buf.occurrence(absent) == 0
    with pytest.raises(BufferContractError):
        buf.increment_occurrence(absent)


def test_uniform_occurrence_is_membership():
    buf = _filled()
    assert buf.occurrence(Edge(1, 2)) == 1
    assert buf.occurrence(Edge(8, 9)) == 0
    with pytest.raises(BufferContractError):
        buf.increment_occurrence(Edge(1, 2))


def test_dump_format():
    buf = SampleBuffer(2, BufferMode.MINHASH, hash_seed=3)
    buf.append(Edge(2, 5))
    buf.increment_occurrence(Edge(2, 5))
    a, b, h, occurrence = buf.dump().split()
    assert (a, b, occurrence) == ("2", "5", "2")
    assert float(h) == hash01(Edge(2, 5), 3)
