"""Deciding group connectivity.

A graph is G-connected when every forbidden mapping h (one group element
per edge) is avoided by some flow: a flow f with f(e) != h(e) on every
edge.  The solvers here either report YES or return a certificate: a
forbidden mapping no flow avoids.

Three engines of increasing sophistication share the same contract:

* ``solve_ultra_naive``  -- enumerate every mapping, check each against
  every flow.  The baseline oracle.
* ``solve_naive``        -- enumerate one tree-normalized representative
  per flow-equivalence class.
* ``solve_fast``         -- enumerate only mappings that the zero flow
  avoids, restricted further around edge 2-cuts, mark their class keys
  in a table, and sweep the table for an unmarked class.

``preprocess`` shrinks an instance with always-sound reductions (loops,
bridges, short cycles, long threads) and knows how to lift certificates
back to the original graph; ``decide`` glues everything together.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._pack import Packer, pack_supported
from .classes import ClassFunction
from .flows import (
    EdgeVector,
    SpanningStructure,
    find_satisfying_flow,
    flow_from_nontree,
    iter_flow_assignments,
    spanning_structure,
)
from .graphs import Digraph, structure_report, thread_profile
from .groups import Group

ULTRA_NAIVE_LIMIT = 10**8  # cap on |G|^m work items
NAIVE_KEY_LIMIT = 2**27  # cap on tree-representative enumeration
FAST_TABLE_LIMIT = 2**28  # cap on the class-marking table (one byte per key)
CHUNK = 1 << 21  # vectorized enumeration chunk size

PackedCols = tuple  # one numpy uint64 array per group factor


@dataclass
class Verdict:
    """Outcome of a connectivity decision.

    ``certificate`` is a forbidden mapping on the *original* edge set
    that no flow avoids (present exactly when ``connected`` is False).
    """

    graph: Digraph
    group: Group
    connected: bool
    certificate: Optional[EdgeVector]
    algorithm: str
    stats: dict = field(default_factory=dict)
    preprocessing: tuple[str, ...] = ()

    def to_json(self, indent: Optional[int] = 2) -> str:
        payload = {
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]},
            "group": self.group.spec_string(),
            "connected": self.connected,
            "certificate": None,
            "algorithm": self.algorithm,
            "stats": self.stats,
            "preprocessing": list(self.preprocessing),
        }
        if self.certificate is not None:
            payload["certificate"] = [
                {
                    "tail": self.graph.edges[e][0],
                    "head": self.graph.edges[e][1],
                    "forbidden": self.group.format_element(v),
                }
                for e, v in enumerate(self.certificate)
            ]
        return json.dumps(payload, indent=indent)


# ---------------------------------------------------------------------------
# preprocessing
# ---------------------------------------------------------------------------


@dataclass
class ReducedComponent:
    """A connected piece of the reduced graph, with edges relabeled locally."""

    graph: Digraph
    orig_edges: tuple[int, ...]  # local edge id -> original edge id


@dataclass
class ReducedInstance:
    original: Digraph
    group: Group
    components: tuple[ReducedComponent, ...]
    early_no: Optional[EdgeVector]  # certificate on the original graph
    forced_threads: tuple[tuple[tuple[int, int], ...], ...]  # ((orig_edge, sign), ...)
    steps: tuple[str, ...]

    def lift(self, assignment: dict[int, int]) -> EdgeVector:
        """Extend a partial certificate on original edge ids to all edges.

        Edges of deleted saturated threads receive distinct nonzero
        sign-normalized values, which pins the flow through the thread
        to zero; everything else deleted is filled with zero.
        """
        grp = self.group
        cert = [0] * self.original.m
        for thread in self.forced_threads:
            for j, (e, sign) in enumerate(thread):
                v = j + 1  # 1..|G|-1, all distinct and nonzero
                cert[e] = v if sign > 0 else grp.neg(v)
        for e, v in assignment.items():
            cert[e] = v
        return tuple(cert)


def _relabel_components(edges: list[tuple[int, int, int]]) -> list[ReducedComponent]:
    """Split surviving (u, v, orig_id) edges into locally-labeled components."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in edges:
        parent[find(u)] = find(v)
    buckets: dict[int, list[tuple[int, int, int]]] = {}
    for u, v, eid in edges:
        buckets.setdefault(find(u), []).append((u, v, eid))
    out = []
    for root in sorted(buckets):
        comp = buckets[root]
        verts = sorted({x for u, v, _ in comp for x in (u, v)})
        vmap = {x: i for i, x in enumerate(verts)}
        out.append(
            ReducedComponent(
                Digraph(len(verts), tuple((vmap[u], vmap[v]) for u, v, _ in comp)),
                tuple(eid for _, _, eid in comp),
            )
        )
    return out


@dataclass
class _Cur:
    graph: Digraph
    orig: tuple[int, ...]


def _current_digraph(edges: list[tuple[int, int, int]]) -> _Cur:
    verts = sorted({x for u, v, _ in edges for x in (u, v)})
    vmap = {x: i for i, x in enumerate(verts)}
    return _Cur(
        Digraph(len(verts), tuple((vmap[u], vmap[v]) for u, v, _ in edges)),
        tuple(e for _, _, e in edges),
    )


def preprocess(g: Digraph, group: Group) -> ReducedInstance:
    """Apply sound reductions to a fixpoint.

    Rules, restarted from the top after every change:

    1. delete loops (a loop value never constrains a flow);
    2. a bridge makes the instance a NO (the one forced flow value on
       the bridge can be forbidden directly);
    3. a pure-cycle component of length >= |G| is a NO (forbid |G|
       distinct sign-normalized values around it); shorter pure cycles
       carry a flow avoiding any forbidden mapping, so they are deleted;
    4. a thread (maximal path of degree-2 vertices) of length >= |G| is
       a NO for the same pigeonhole reason;
    5. a thread of exactly length |G| - 1 is deleted whole: distinct
       nonzero forbidden values along it force the thread flow to zero,
       so flows of the remainder are unrestricted.
    """
    k = group.order
    steps: list[str] = []
    forced: list[tuple[tuple[int, int], ...]] = []
    edges = [(u, v, i) for i, (u, v) in enumerate(g.edges)]

    def early(partial: dict[int, int]) -> ReducedInstance:
        inst = ReducedInstance(g, group, (), None, tuple(forced), tuple(steps))
        return ReducedInstance(g, group, (), inst.lift(partial), tuple(forced), tuple(steps))

    while True:
        loops = [t for t in edges if t[0] == t[1]]
        if loops:
            edges = [t for t in edges if t[0] != t[1]]
            steps.append(f"deleted {len(loops)} loop(s)")
            continue
        if not edges:
            break

        cur = _current_digraph(edges)
        bridges, _, _ = structure_report(cur.graph)
        if bridges:
            b = min(bridges)
            steps.append("bridge found: not connected")
            return early({cur.orig[b]: 0})

        profile = thread_profile(cur.graph)

        if profile.cycle_components:
            cyc = profile.cycle_components[0]
            if len(cyc.edge_ids) >= k:
                steps.append(f"cycle component of length {len(cyc.edge_ids)} >= {k}: not connected")
                partial = {}
                for j, (e, sign) in enumerate(zip(cyc.edge_ids, cyc.signs)):
                    v = j % k
                    partial[cur.orig[e]] = v if sign > 0 else group.neg(v)
                return early(partial)
            steps.append(f"deleted cycle component of length {len(cyc.edge_ids)}")
            drop = set(cyc.edge_ids)
            edges = [t for i, t in enumerate(edges) if i not in drop]
            continue

        long_threads = [t for t in profile.threads if len(t) >= k]
        if long_threads:
            t = long_threads[0]
            steps.append(f"thread of length {len(t)} >= {k}: not connected")
            partial = {}
            for j, (e, sign) in enumerate(zip(t.edge_ids, t.signs)):
                v = j % k
                partial[cur.orig[e]] = v if sign > 0 else group.neg(v)
            return early(partial)

        saturated = [t for t in profile.threads if len(t) == k - 1]
        if saturated:
            t = saturated[0]
            steps.append(f"deleted saturated thread of length {k - 1}")
            forced.append(tuple((cur.orig[e], s) for e, s in zip(t.edge_ids, t.signs)))
            drop = set(t.edge_ids)
            edges = [e for i, e in enumerate(edges) if i not in drop]
            continue
        break

    components = _relabel_components(edges)
    return ReducedInstance(g, group, tuple(components), None, tuple(forced), tuple(steps))


# ---------------------------------------------------------------------------
# packed machinery shared by the engines
# ---------------------------------------------------------------------------


def _packed_flows(g: Digraph, group: Group, s: SpanningStructure):
    """All flows of g, packed into per-factor uint64 arrays, or None if unsupported."""
    if not pack_supported(group, g.m):
        return None
    k = group.order
    rank = s.rank
    if k**rank > ULTRA_NAIVE_LIMIT:
        return None
    packer = Packer(group, g.m)
    total = k**rank
    words = tuple(np.zeros(total, dtype=np.uint64) for _ in group.factors)
    for j in range(rank):
        table = _pack_columns(
            packer,
            [
                flow_from_nontree(g, group, s, [v if i == j else 0 for i in range(rank)])
                for v in range(k)
            ],
        )
        digits = (np.arange(total, dtype=np.uint64) // np.uint64(k ** (rank - 1 - j))) % np.uint64(k)
        words = packer.add(words, tuple(col[digits] for col in table))
    return packer, words


def _pack_columns(packer: Packer, vectors: Sequence[Sequence[int]]) -> PackedCols:
    """Pack a list of vectors into per-factor numpy columns."""
    packed = [packer.pack(tuple(v)) for v in vectors]
    nfac = len(packer.group.factors)
    return tuple(np.array([p[f] for p in packed], dtype=np.uint64) for f in range(nfac))


_FLOW_PASS_CAP = 512
_SCREEN_CHUNK = 16384


def _satisfied_mask(packer: Packer, flows: PackedCols, hs: PackedCols, need: str = "all") -> np.ndarray:
    """For each packed mapping in hs, whether some flow avoids it everywhere.

    Two phases: sweep the first few hundred flows over the whole batch
    (satisfies almost everything on YES-like instances), then settle the
    stragglers one by one against the full flow space.  With
    ``need="first"`` the straggler phase stops at the first mapping
    confirmed unsatisfied, which is all the enumeration loops use.
    """
    n = len(hs[0])
    total_flows = len(flows[0])
    out = np.zeros(n, dtype=bool)
    # flows with many nonzero lanes satisfy far more mappings (a flow must
    # be nonzero wherever the mapping is zero), so scan those first
    order = np.argsort(-_nonzero_lane_counts(packer, flows), kind="stable")
    neg_hs = packer.neg(hs)
    scanned = 0
    idx = np.arange(n)
    while scanned < total_flows:
        if len(idx) == 0:
            return out
        if scanned >= _FLOW_PASS_CAP and len(idx) <= 32:
            break  # settle the few stragglers with bulk scans instead
        flow = tuple(w[order[scanned]] for w in flows)
        diff = packer.add(flow, tuple(h[idx] for h in neg_hs))
        ok = packer.all_nonzero(diff)
        out[idx[ok]] = True
        idx = idx[~ok]
        scanned += 1
    block = max(1, CHUNK // 4)
    for j in idx:
        neg_h = tuple(w[j] for w in neg_hs)
        for start in range(scanned, total_flows, block):
            pick = order[start : start + block]
            fb = tuple(w[pick] for w in flows)
            if bool(packer.all_nonzero(packer.add(fb, neg_h)).any()):
                out[j] = True
                break
        if not out[j] and need == "first":
            break
    return out


def _nonzero_lane_counts(packer: Packer, vecs: PackedCols) -> np.ndarray:
    """Number of nonzero lanes in each packed vector."""
    folded = None
    for j in range(len(vecs)):
        b, off, *_ = packer._masks[j]
        y = vecs[j] >> np.uint64(off)
        for s in range(1, b):
            y = y | (vecs[j] >> np.uint64(off + s))
        y = y & np.uint64(packer.lane_ones)
        folded = y if folded is None else folded | y
    return np.bitwise_count(folded).astype(np.int64)


def _enumerate_packed(packer: Packer, tables: list[PackedCols], sizes: list[int], start: int, count: int) -> PackedCols:
    """Packed sums over a mixed-radix product of contribution tables.

    ``tables[c]`` holds per-factor columns for coordinate c; coordinate 0
    is the most significant digit of the enumeration index.
    """
    idx = np.arange(start, start + count, dtype=np.uint64)
    words = None
    period = 1
    for c in reversed(range(len(sizes))):
        digit = (idx // np.uint64(period)) % np.uint64(sizes[c])
        period *= sizes[c]
        cols = tuple(tables[c][f][digit] for f in range(len(tables[c])))
        words = cols if words is None else packer.add(words, cols)
    return words


def _unit_vectors(m: int, e: int, k: int) -> list[tuple[int, ...]]:
    return [tuple(v if i == e else 0 for i in range(m)) for v in range(k)]


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------


def verify_certificate(g: Digraph, group: Group, h: Sequence[int]) -> bool:
    """True when h is a valid NO-certificate: no flow avoids it everywhere."""
    if len(h) != g.m:
        raise ValueError("certificate length mismatch")
    for v in h:
        group.check(v)
    core = [i for i, (u, v) in enumerate(g.edges) if u != v]
    if len(core) != g.m:
        # a flow puts arbitrary values on loops, so loops never block one
        gg = Digraph(g.n, tuple(g.edges[i] for i in core))
        return verify_certificate(gg, group, [h[i] for i in core])
    if g.m == 0:
        return False
    s = spanning_structure(g)
    packed = _packed_flows(g, group, s)
    if packed is not None:
        packer, flows = packed
        hs = _pack_columns(packer, [tuple(h)])
        return not bool(_satisfied_mask(packer, flows, hs)[0])
    return find_satisfying_flow(g, group, tuple(h)) is None


def _digits_of(index: int, k: int, width: int) -> list[int]:
    """Big-endian digits (position 0 most significant) of an enumeration index."""
    out = []
    for _ in range(width):
        out.append(index % k)
        index //= k
    out.reverse()
    return out


def solve_ultra_naive(g: Digraph, group: Group) -> Verdict:
    """Check every forbidden mapping against every flow.

    The reference oracle: no preprocessing assumptions at all (loops and
    disconnected graphs are fine).  Guarded by ULTRA_NAIVE_LIMIT.
    """
    k = group.order
    t0 = time.perf_counter()
    if k**g.m > ULTRA_NAIVE_LIMIT:
        raise ValueError(f"|G|^m = {k}**{g.m} exceeds the ultra-naive limit")
    core = [i for i, (u, v) in enumerate(g.edges) if u != v]
    gg = Digraph(g.n, tuple(g.edges[i] for i in core))
    s = spanning_structure(gg)

    stats = {"mappings_enumerated": 0, "flows": k**s.rank}
    total = k**gg.m
    first_bad = None
    packed = _packed_flows(gg, group, s) if gg.m else None
    if packed is not None:
        packer, flows = packed
        tables = [_pack_columns(packer, _unit_vectors(gg.m, e, k)) for e in range(gg.m)]
        sizes = [k] * gg.m
        for start in range(0, total, CHUNK):
            count = min(CHUNK, total - start)
            hs = _enumerate_packed(packer, tables, sizes, start, count)
            sat = _satisfied_mask(packer, flows, hs, need="first")
            stats["mappings_enumerated"] += count
            bad = np.flatnonzero(~sat)
            if len(bad):
                first_bad = start + int(bad[0])
                break
    elif gg.m:
        for i, h in enumerate(iter_flow_assignments(group, gg.m)):
            stats["mappings_enumerated"] += 1
            if find_satisfying_flow(gg, group, h) is None:
                first_bad = i
                break
    stats["elapsed"] = time.perf_counter() - t0
    if first_bad is None:
        return Verdict(g, group, True, None, "ultra-naive", stats)
    digits = _digits_of(first_bad, k, gg.m)
    cert = [0] * g.m
    for i, e in enumerate(core):
        cert[e] = digits[i]
    return Verdict(g, group, False, tuple(cert), "ultra-naive", stats)


def solve_naive(g: Digraph, group: Group) -> Verdict:
    """Enumerate one tree-normalized mapping per flow-equivalence class.

    Requires a loop-free graph.  Still exponential, but in n rather
    than m.
    """
    if any(u == v for u, v in g.edges):
        raise ValueError("solve_naive requires a loop-free graph")
    k = group.order
    t0 = time.perf_counter()
    s = spanning_structure(g)
    tree = s.tree_edges
    total = k ** len(tree)
    if total > NAIVE_KEY_LIMIT:
        raise ValueError(f"|G|^(tree size) = {k}**{len(tree)} exceeds the naive limit")
    stats = {"classes_total": total, "mappings_enumerated": 0, "flows": k**s.rank}

    first_bad = None
    packed = _packed_flows(g, group, s) if g.m else None
    if packed is not None:
        packer, flows = packed
        tables = [_pack_columns(packer, _unit_vectors(g.m, e, k)) for e in tree]
        sizes = [k] * len(tree)
        for start in range(0, total, CHUNK):
            count = min(CHUNK, total - start)
            hs = _enumerate_packed(packer, tables, sizes, start, count)
            sat = _satisfied_mask(packer, flows, hs, need="first")
            stats["mappings_enumerated"] += count
            bad = np.flatnonzero(~sat)
            if len(bad):
                first_bad = start + int(bad[0])
                break
    elif g.m:
        for i, digits in enumerate(iter_flow_assignments(group, len(tree))):
            h = [0] * g.m
            for pos, e in enumerate(tree):
                h[e] = digits[pos]
            stats["mappings_enumerated"] += 1
            if find_satisfying_flow(g, group, tuple(h)) is None:
                first_bad = i
                break
    stats["elapsed"] = time.perf_counter() - t0
    if first_bad is None:
        return Verdict(g, group, True, None, "naive", stats)
    digits = _digits_of(first_bad, k, len(tree))
    cert = [0] * g.m
    for i, e in enumerate(tree):
        cert[e] = digits[i]
    return Verdict(g, group, False, tuple(cert), "naive", stats)


class FastInstance:
    """Precomputed state for solve_fast on one preprocessed component.

    Separated from the solve itself so that the screening path and the
    benchmark script can reuse the contribution tables.
    """

    def __init__(self, g: Digraph, group: Group, thread_opt: bool = True):
        self.graph = g
        self.group = group
        self.thread_opt = thread_opt
        self.cf = ClassFunction(g, group, use_threads=thread_opt)
        k = group.order
        ndig = self.cf.num_digits
        if k**ndig > FAST_TABLE_LIMIT:
            raise ValueError(f"class table |G|**{ndig} exceeds the fast-engine limit")
        if not pack_supported(group, max(ndig, 1)):
            raise ValueError("group/graph does not fit the packed key representation")
        self.key_packer = Packer(group, max(ndig, 1))

        # enumeration coordinates: one per length-2 thread (distinct
        # sign-normalized nonzero value pairs), one per remaining edge
        # (single nonzero values)
        thread_edges = {e for t in self.cf.pair_threads for e in t.edges}
        self.coords: list[dict] = []
        for t in self.cf.pair_threads:
            vectors = []
            for a in range(1, k):
                for b in range(a + 1, k):
                    h = [0] * g.m
                    h[t.edges[0]] = a if t.signs[0] > 0 else group.neg(a)
                    h[t.edges[1]] = b if t.signs[1] > 0 else group.neg(b)
                    vectors.append(tuple(h))
            self.coords.append({"kind": "thread", "thread": t, "vectors": vectors})
        for e in range(g.m):
            if e in thread_edges:
                continue
            vectors = []
            for v in range(1, k):
                h = [0] * g.m
                h[e] = v
                vectors.append(tuple(h))
            self.coords.append({"kind": "edge", "edge": e, "vectors": vectors})

        # packed key-digit contribution of every coordinate value
        self.tables = [
            _pack_columns(self.key_packer, [self._key_digits(h) for h in c["vectors"]])
            for c in self.coords
        ]
        self.sizes = [len(c["vectors"]) for c in self.coords]
        self.total = 1
        for sz in self.sizes:
            self.total *= sz

    def _key_digits(self, h: EdgeVector) -> tuple[int, ...]:
        norm = self.cf.tree_normalize(h)
        digits = tuple(norm[e] for e in self.cf.structure.tree_edges)
        return digits if digits else (0,)

    # -- marking phase ---------------------------------------------------------

    def mark_table(self) -> np.ndarray:
        """Mark the class key of every enumerated mapping (all avoided by the zero flow)."""
        k = self.group.order
        table = np.zeros(k**self.cf.num_digits, dtype=bool)
        if self.total == 0:  # a thread coordinate with no admissible pair
            return table
        for start in range(0, self.total, CHUNK):
            count = min(CHUNK, self.total - start)
            words = _enumerate_packed(self.key_packer, self.tables, self.sizes, start, count)
            table[self.key_packer.key(words).astype(np.int64)] = True
        return table

    # -- sweep phase -------------------------------------------------------------

    def _sweep_coords(self):
        """Candidate tree-digit patterns and their packed swap deltas.

        One coordinate per length-2 thread (locally-valid digit patterns,
        one side of each swap pair) plus one per uncovered tree digit.
        Each thread coordinate also carries the packed key delta that a
        swap of that thread applies; swap deltas only depend on the
        thread's own digits, so they tabulate per coordinate value.
        """
        k, grp, cf = self.group.order, self.group, self.cf
        coords: list[list[tuple[int, ...]]] = []
        deltas: list[Optional[list[tuple[int, ...]]]] = []
        covered = set()
        for t in cf.pair_threads:
            pos = t.tree_positions
            covered.update(pos)
            values, swapped = [], []
            if t.kind == "tree":
                i, j = pos  # aligned with t.edges order
                si, sj = t.signs
                for a in range(k):
                    for b in range(a + 1, k):
                        digits = [0] * cf.num_digits
                        digits[i] = a if si > 0 else grp.neg(a)
                        digits[j] = b if sj > 0 else grp.neg(b)
                        sw = [0] * cf.num_digits
                        sw[i] = b if si > 0 else grp.neg(b)
                        sw[j] = a if sj > 0 else grp.neg(a)
                        values.append(tuple(digits))
                        swapped.append(tuple(sw))
            else:
                (i,) = pos
                for d in range(1, k):
                    digits = [0] * cf.num_digits
                    digits[i] = d
                    key = sum(dv * k**p for p, dv in enumerate(digits))
                    partner = cf.tree_normalize(cf.swap_thread(cf.representative(key), t))
                    values.append(tuple(digits))
                    swapped.append(tuple(partner[e] for e in cf.structure.tree_edges))
            coords.append(values)
            deltas.append([tuple(grp.sub(s_, v_) for s_, v_ in zip(s, v)) for s, v in zip(swapped, values)])
        for p in range(cf.num_digits):
            if p in covered:
                continue
            values = []
            for d in range(k):
                digits = [0] * cf.num_digits
                digits[p] = d
                values.append(tuple(digits))
            coords.append(values)
            deltas.append(None)
        return coords, deltas

    def sweep(self, table: np.ndarray) -> Optional[EdgeVector]:
        """Find a class with no marked swap-orbit member; None means all marked.

        Candidates run over locally-valid digit patterns (distinct
        sign-normalized values across threads); for each, the 2^t swap
        orbit of keys is OR-ed against the marking table.
        """
        packer = self.key_packer
        coords, deltas = self._sweep_coords()
        tabs = [_pack_columns(packer, values) for values in coords]
        dtabs = [None if d is None else _pack_columns(packer, d) for d in deltas]
        sizes = [len(v) for v in coords]
        total = 1
        for sz in sizes:
            total *= sz
        nthreads = len(self.cf.pair_threads)

        for start in range(0, total, CHUNK):
            count = min(CHUNK, total - start)
            idx = np.arange(start, start + count, dtype=np.uint64)
            words = None
            dcols = []
            period = 1
            for c in reversed(range(len(sizes))):
                digit = (idx // np.uint64(period)) % np.uint64(sizes[c])
                period *= sizes[c]
                cols = tuple(tabs[c][f][digit] for f in range(len(tabs[c])))
                words = cols if words is None else packer.add(words, cols)
                if dtabs[c] is not None:
                    dcols.append(tuple(dtabs[c][f][digit] for f in range(len(dtabs[c]))))
            dcols.reverse()

            marked = np.zeros(count, dtype=bool)
            for mask in range(1 << nthreads):
                cur = words
                for i in range(nthreads):
                    if mask & (1 << i):
                        cur = packer.add(cur, dcols[i])
                marked |= table[packer.key(cur).astype(np.int64)]
                if marked.all():
                    break
            bad = np.flatnonzero(~marked)
            if len(bad):
                pick = tuple(w[bad[0] : bad[0] + 1] for w in words)
                return self.cf.representative(int(packer.key(pick)[0]))
        return None


def solve_fast(g: Digraph, group: Group, thread_opt: bool = True) -> Verdict:
    """Marking-table engine for a preprocessed connected component.

    Enumerates only mappings the zero flow avoids, restricted to distinct
    sign-normalized pairs across length-2 threads when ``thread_opt`` is
    on; marks their class keys; sweeps for an unmarked class.
    """
    t0 = time.perf_counter()
    inst = FastInstance(g, group, thread_opt=thread_opt)
    table = inst.mark_table()
    if thread_opt:
        cert = inst.sweep(table)
    else:
        bad = np.flatnonzero(~table)
        cert = inst.cf.representative(int(bad[0])) if len(bad) else None
    stats = {
        "classes_total": int(group.order**inst.cf.num_digits),
        "classes_marked": int(table.sum()),
        "mappings_enumerated": int(inst.total),
        "pair_threads": len(inst.cf.pair_threads),
        "elapsed": time.perf_counter() - t0,
    }
    if cert is None:
        return Verdict(g, group, True, None, "fast", stats)
    if not verify_certificate(g, group, cert):
        raise AssertionError(
            "fast engine produced an invalid certificate; the class function is inconsistent"
        )
    return Verdict(g, group, False, tuple(cert), "fast", stats)


# ---------------------------------------------------------------------------
# screening (cheap randomized NO detection, used by the search)
# ---------------------------------------------------------------------------


def screen_no(
    g: Digraph,
    group: Group,
    budget: int = 4096,
    seed: int = 0,
    reduced: Optional[ReducedInstance] = None,
) -> Optional[Verdict]:
    """Try to find a NO-certificate cheaply; None means 'no verdict'.

    Samples random mappings from the restricted enumeration domain of the
    fast engine (nonzero everywhere, distinct sign-normalized pairs
    across 2-cuts) and checks them against all flows of each reduced
    component.  Any hit is a verified certificate.
    """
    inst = reduced if reduced is not None else preprocess(g, group)
    if inst.early_no is not None:
        return Verdict(g, group, False, inst.early_no, "preprocess", {}, inst.steps)
    rng = np.random.default_rng(seed)
    for comp in inst.components:
        cg = comp.graph
        if not pack_supported(group, cg.m):
            continue
        try:
            fi = FastInstance(cg, group)
        except ValueError:
            continue
        packed = _packed_flows(cg, group, fi.cf.structure)
        if packed is None:
            continue
        packer, flows = packed

        # sample candidate class representatives: locally-valid tree digit
        # patterns (distinct sign-normalized pairs across threads, zeros
        # allowed elsewhere), placed on tree edges and checked against the
        # full flow space -- unsatisfiable classes live only here, never
        # in the nowhere-zero enumeration domain
        coords, _ = fi._sweep_coords()
        tree = fi.cf.structure.tree_edges
        edge_tables = []
        for values in coords:
            vecs = []
            for digits in values:
                h = [0] * cg.m
                for pos, d in enumerate(digits):
                    if d:
                        h[tree[pos]] = d
                vecs.append(tuple(h))
            edge_tables.append(_pack_columns(packer, vecs))
        # sample in chunks so dense NO instances hit early without paying
        # for the full budget
        remaining = budget
        while remaining > 0:
            size = min(remaining, _SCREEN_CHUNK)
            remaining -= size
            words = None
            for tab, values in zip(edge_tables, coords):
                pick = rng.integers(0, len(values), size=size).astype(np.uint64)
                cols = tuple(tab[f][pick] for f in range(len(tab)))
                words = cols if words is None else packer.add(words, cols)
            sat = _satisfied_mask(packer, flows, words, need="first")
            bad = np.flatnonzero(~sat)
            if len(bad):
                h = packer.unpack(tuple(w[bad[0]] for w in words))
                cert = inst.lift({comp.orig_edges[e]: h[e] for e in range(cg.m)})
                return Verdict(g, group, False, cert, "screen", {"budget": budget}, inst.steps)
    return None


# ---------------------------------------------------------------------------
# top level
# ---------------------------------------------------------------------------


def exists_nowhere_zero_flow(g: Digraph, group: Group) -> bool:
    """Whether g has a flow avoiding zero on every non-loop edge."""
    core = [i for i, (u, v) in enumerate(g.edges) if u != v]
    gg = Digraph(g.n, tuple(g.edges[i] for i in core))
    if gg.m == 0:
        return True
    s = spanning_structure(gg)
    packed = _packed_flows(gg, group, s)
    if packed is not None:
        packer, flows = packed
        return bool(packer.all_nonzero(flows).any())
    from .flows import has_nowhere_zero_flow

    return has_nowhere_zero_flow(gg, group)


def decide(
    g: Digraph,
    group: Group,
    algorithm: str = "auto",
    use_preprocessing: bool = True,
    thread_opt: bool = True,
) -> Verdict:
    """Decide group connectivity of an arbitrary graph.

    ``algorithm`` is one of "ultra", "naive", "fast", "auto".  Only the
    ultra-naive engine supports ``use_preprocessing=False`` (it is the
    oracle the preprocessing is validated against).
    """
    t0 = time.perf_counter()
    if algorithm == "auto":
        if group.order**g.m <= 4**8:
            algorithm = "ultra"
        elif g.n <= 7:
            algorithm = "naive"
        else:
            algorithm = "fast"
    if not use_preprocessing:
        if algorithm != "ultra":
            raise ValueError("only the ultra-naive engine can run without preprocessing")
        v = solve_ultra_naive(g, group)
        v.stats["elapsed_total"] = time.perf_counter() - t0
        return v

    inst = preprocess(g, group)
    if inst.early_no is not None:
        return Verdict(
            g,
            group,
            False,
            inst.early_no,
            "preprocess",
            {"elapsed_total": time.perf_counter() - t0},
            inst.steps,
        )

    stats: dict = {"components": len(inst.components)}
    for comp in inst.components:
        if algorithm == "ultra":
            v = solve_ultra_naive(comp.graph, group)
        elif algorithm == "naive":
            v = solve_naive(comp.graph, group)
        elif algorithm == "fast":
            v = solve_fast(comp.graph, group, thread_opt=thread_opt)
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        for key, val in v.stats.items():
            if isinstance(val, bool):
                stats[key] = val
            elif isinstance(val, (int, float)):
                stats[key] = stats.get(key, 0) + val
            else:
                stats[key] = val
        if not v.connected:
            cert = inst.lift({comp.orig_edges[e]: v.certificate[e] for e in range(comp.graph.m)})
            stats["elapsed_total"] = time.perf_counter() - t0
            return Verdict(g, group, False, cert, v.algorithm, stats, inst.steps)
    stats["elapsed_total"] = time.perf_counter() - t0
    algo = algorithm if inst.components else "preprocess"
    return Verdict(g, group, True, None, algo, stats, inst.steps)
