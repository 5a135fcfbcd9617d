"""Permitted and forbidden threads, their matchings, and the AG walk.

A permitted thread is a maximal nonzero path (or a vertex through which
composition is nonzero); a forbidden thread is a maximal path whose
consecutive pairs all lie in the ideal (or a vertex through which
composition is zero).  Start/end signs extend the arrow signs to threads,
and matching on (endpoint, opposite sign) pairs permitted threads with
forbidden ones.

Relation cycles (cyclic arrow sequences that stay inside the ideal) break
the matching: the forbidden threads supported on them are tracked as
"critical" and kept out of the matching and out of mouth candidacy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import GentleAlgebra, InternalCheckError, Path

PERMITTED = "permitted"
FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class Thread:
    kind: str                 # "permitted" | "forbidden"
    path: Path                # trivial Path for a vertex thread
    s_sign: int
    e_sign: int

    @property
    def start(self) -> str:
        return self.path.source

    @property
    def end(self) -> str:
        return self.path.target

    @property
    def length(self) -> int:
        return len(self.path)

    @property
    def is_trivial(self) -> bool:
        return self.path.is_trivial

    def label(self) -> str:
        if self.is_trivial:
            return f"triv:{self.path.source}"
        return "".join(reversed(self.path.arrows))

    def __repr__(self):
        return f"<{self.kind} {self.label()}>"


@dataclass
class ThreadTables:
    algebra: GentleAlgebra
    permitted: list[Thread]
    forbidden: list[Thread]
    phi1: dict[Thread, Thread]          # permitted -> forbidden, matched at the end
    phi2: dict[Thread, Thread]          # forbidden -> permitted, matched at the start
    critical_forbidden: set[Thread]
    critical_cycles: list[tuple[str, ...]]

    def noncritical_forbidden(self) -> list[Thread]:
        return [w for w in self.forbidden if w not in self.critical_forbidden]

    def phi1_inverse(self, w: Thread) -> Thread:
        inv = {f: p for p, f in self.phi1.items()}
        return inv[w]

    def phi2_inverse(self, v: Thread) -> Thread:
        inv = {p: f for f, p in self.phi2.items()}
        return inv[v]


def detect_critical_cycles(a: GentleAlgebra) -> list[tuple[str, ...]]:
    """Cyclic arrow sequences whose cyclically consecutive pairs are all zero.

    Cycles are returned in application order, starting at their least arrow
    (in declaration order).  Each arrow has at most one ideal-successor, so
    these cycles are the cycles of a partial permutation.
    """
    succ: dict[str, str] = {}
    for (first, second) in a.relations:
        succ[first] = second
    index = {arr.name: i for i, arr in enumerate(a.arrows)}
    cycles = []
    seen: set[str] = set()
    for arr in a.arrows:
        x = arr.name
        if x in seen:
            continue
        trail: list[str] = []
        pos: dict[str, int] = {}
        while x is not None and x not in pos:
            if x in seen:
                break
            pos[x] = len(trail)
            trail.append(x)
            x = succ.get(x)
        else:
            if x is not None:
                cyc = trail[pos[x]:]
                k = min(range(len(cyc)), key=lambda i: index[cyc[i]])
                cycles.append(tuple(cyc[k:] + cyc[:k]))
        seen.update(trail)
    cycles.sort(key=lambda c: index[c[0]])
    return cycles


def _trivial_thread_signs(a: GentleAlgebra, v: str, kind: str) -> tuple[int, int] | None:
    """(s_sign, e_sign) for a vertex thread, or None when the vertex fails."""
    outs = a.out_arrows[v]
    ins = a.in_arrows[v]
    if len(outs) > 1 or len(ins) > 1:
        return None
    if outs and ins:
        through_zero = (ins[0].name, outs[0].name) in a.relations
        if kind == PERMITTED and through_zero:
            return None
        if kind == FORBIDDEN and not through_zero:
            return None
    if outs:
        base = -a.s_prime(outs[0].name)
    elif ins:
        base = a.e_prime(ins[0].name) if kind == PERMITTED else -a.e_prime(ins[0].name)
    else:
        # isolated vertex: only the one-vertex algebra; pick signs that close
        # the matching (permitted (+1,-1) against forbidden (-1,+1))
        return (1, -1) if kind == PERMITTED else (-1, 1)
    if kind == PERMITTED:
        return (base, -base)
    return (base, base)


def _nontrivial_permitted(a: GentleAlgebra) -> list[Thread]:
    out = []
    for q in a.path_basis:
        if q.is_trivial:
            continue
        first, last = q.arrows[0], q.arrows[-1]
        if any((b.name, first) not in a.relations for b in a.in_arrows[q.source]):
            continue
        if any((last, b.name) not in a.relations for b in a.out_arrows[q.target]):
            continue
        out.append(Thread(PERMITTED, q, a.s_prime(q), a.e_prime(q)))
    return out


def _nontrivial_forbidden(a: GentleAlgebra) -> list[Thread]:
    succ: dict[str, str] = {}
    pred: dict[str, str] = {}
    for (first, second) in a.relations:
        succ[first] = second
        pred[second] = first

    def walk(start: str) -> tuple[str, ...]:
        arrows = [start]
        used = {start}
        while True:
            nxt = succ.get(arrows[-1])
            if nxt is None or nxt in used:
                return tuple(arrows)
            arrows.append(nxt)
            used.add(nxt)

    threads: set[tuple[str, ...]] = set()
    for arr in a.arrows:
        x = arr.name
        if x not in pred:
            threads.add(walk(x))
    for cyc in detect_critical_cycles(a):
        n = len(cyc)
        for k in range(n):
            threads.add(tuple(cyc[k:] + cyc[:k]))

    index = {arr.name: i for i, arr in enumerate(a.arrows)}
    out = []
    for arrows in sorted(threads, key=lambda t: (len(t), tuple(index[x] for x in t))):
        src = a.arrow_map[arrows[0]].source
        tgt = a.arrow_map[arrows[-1]].target
        q = Path(src, arrows, tgt)
        out.append(Thread(FORBIDDEN, q, a.s_prime(arrows[0]), a.e_prime(arrows[-1])))
    return out


def enumerate_threads(a: GentleAlgebra) -> ThreadTables:
    """All threads with signs, the two matchings, and the critical set."""
    key = "thread_tables"
    if key in a._cache:
        return a._cache[key]
    permitted = _nontrivial_permitted(a)
    forbidden = _nontrivial_forbidden(a)
    for v in a.vertices:
        sp = _trivial_thread_signs(a, v, PERMITTED)
        if sp is not None:
            permitted.append(Thread(PERMITTED, a.trivial_path(v), sp[0], sp[1]))
        sf = _trivial_thread_signs(a, v, FORBIDDEN)
        if sf is not None:
            forbidden.append(Thread(FORBIDDEN, a.trivial_path(v), sf[0], sf[1]))

    cycles = detect_critical_cycles(a)
    cycle_arrows = [set(c) for c in cycles]
    critical = {w for w in forbidden
                if not w.is_trivial and any(set(w.path.arrows) <= s for s in cycle_arrows)}

    phi1: dict[Thread, Thread] = {}
    for v in permitted:
        matches = [w for w in forbidden if w.end == v.end and w.e_sign == -v.e_sign]
        if len(matches) != 1:
            raise InternalCheckError(
                f"end-matching of {v} is not unique: candidates {matches}")
        phi1[v] = matches[0]
    phi2: dict[Thread, Thread] = {}
    for w in forbidden:
        if w in critical:
            continue
        matches = [v for v in permitted if v.start == w.start and v.s_sign == -w.s_sign]
        if len(matches) != 1:
            raise InternalCheckError(
                f"start-matching of {w} is not unique: candidates {matches}")
        phi2[w] = matches[0]

    noncritical = [w for w in forbidden if w not in critical]
    if set(phi1.values()) != set(noncritical) or len(set(phi1.values())) != len(phi1):
        raise InternalCheckError(
            "end-matching is not a bijection onto non-critical forbidden threads: "
            f"permitted={permitted} image={sorted(phi1.values(), key=str)} "
            f"noncritical={sorted(noncritical, key=str)}")
    if len(set(phi2.values())) != len(phi2) or len(phi2) != len(permitted):
        raise InternalCheckError(
            f"start-matching is not a bijection: phi2={phi2}")

    tables = ThreadTables(a, permitted, forbidden, phi1, phi2, critical, cycles)
    a._cache[key] = tables
    return tables


@dataclass(frozen=True)
class ThreadCycle:
    n: int                       # number of permitted threads on the cycle
    m: int                       # total length of forbidden threads crossed
    permitted: tuple[Thread, ...]
    forbidden: tuple[Thread, ...]


def aag_cycles(t: ThreadTables) -> list[ThreadCycle]:
    """Partition permitted threads into walk cycles, with their (n, m) data.

    One step of the walk moves from a permitted thread to its end-matched
    forbidden thread, then start-matches back into a permitted thread; m
    accumulates the lengths of the forbidden threads crossed.
    """
    remaining = list(t.permitted)
    cycles = []
    while remaining:
        start = remaining[0]
        perm: list[Thread] = []
        forb: list[Thread] = []
        m = 0
        v = start
        for _ in range(len(t.permitted) + 1):
            perm.append(v)
            remaining.remove(v)
            w = t.phi1[v]
            if w in t.critical_forbidden:
                raise InternalCheckError(f"walk entered critical thread {w} from {v}")
            forb.append(w)
            m += w.length
            v = t.phi2[w]
            if v == start:
                break
        else:
            raise InternalCheckError("thread walk failed to close")
        cycles.append(ThreadCycle(len(perm), m, tuple(perm), tuple(forb)))
    return cycles
