"""Independent oracles validating the production routes.

chain_height searches the raw definition: longest strictly increasing chain
of nonempty closed invariant sets (order ideals of the cell poset), by
exhaustive bitmask dynamic programming, and emits a certificate chain that a
separate small verifier re-checks from cell pointsets alone.
enumerate_automorphisms lists every valid symmetry triple by brute force,
against which the engine's generator/order computation is compared.
search_min_height scans connected multigraph classes in (edge count, vertex
count) order for the first space whose base height hits a target.
cross_check runs engine, closed form, and chain search on one scheme and
reports whether all routes agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from .automorphisms import AutGroup, AutTriple, ColoredGraph, check_triple
from .closures import ClosureFamily, Height, closure_family
from .errors import CircleInputError, GraphInputError, OracleBoundError
from .graphs import Edge, TopoGraph
from .schemes import ROTATION, TRIVIAL, Scheme, apply_scheme, closed_form_height, scheme_height

CHAIN_CELL_BOUND = 18


@dataclass(frozen=True)
class ChainCertificate:
    """A maximal chain of closed invariant sets, each a set of cell indices."""

    height: int
    steps: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"height": self.height, "steps": [list(s) for s in self.steps]}

    @classmethod
    def from_json(cls, raw: dict) -> "ChainCertificate":
        return cls(raw["height"], tuple(tuple(s) for s in raw["steps"]))


def chain_height(f: ClosureFamily, bound: int = CHAIN_CELL_BOUND) -> tuple[Height, ChainCertificate]:
    """Longest ideal chain by exhaustive search over all cell subsets."""
    n = len(f.cells)
    if n > bound:
        raise OracleBoundError(
            f"chain search is bounded at {bound} cells; this family has {n}"
        )
    below = [1 << i for i in range(n)]
    above = [0] * n
    for (i, j) in f.containment:
        below[j] |= 1 << i
        above[i] |= 1 << j
    full = (1 << n) - 1
    length = [-1] * (full + 1)
    removed = [0] * (full + 1)
    for mask in range(1, full + 1):
        mm = mask
        ideal = True
        while mm:
            bit = mm & (-mm)
            if below[bit.bit_length() - 1] & ~mask:
                ideal = False
                break
            mm ^= bit
        if not ideal:
            continue
        if mask & (mask - 1) == 0:
            length[mask] = 0
            continue
        best = -1
        best_bit = 0
        mm = mask
        while mm:
            bit = mm & (-mm)
            mm ^= bit
            if above[bit.bit_length() - 1] & mask:
                continue  # not maximal inside mask
            val = length[mask ^ bit]
            if val > best:
                best = val
                best_bit = bit
        length[mask] = best + 1
        removed[mask] = best_bit
    steps = []
    cur = full
    while True:
        steps.append(cur)
        if length[cur] == 0:
            break
        cur ^= removed[cur]
    steps.reverse()
    chain = tuple(tuple(i for i in range(n) if mask >> i & 1) for mask in steps)
    return Height.finite(length[full]), ChainCertificate(length[full], chain)


def verify_chain_certificate(f: ClosureFamily, cert: ChainCertificate) -> bool:
    """Re-check a chain certificate directly from cell pointsets; shares no
    code with the search."""
    n = len(f.cells)
    points = [c.pointset() for c in f.cells]

    def contained(a: int, b: int) -> bool:
        return all(points[a][k] <= points[b][k] for k in range(3))

    steps = [set(s) for s in cert.steps]
    if len(steps) != cert.height + 1:
        return False
    if not steps or not steps[0] or steps[-1] != set(range(n)):
        return False
    for s in steps:
        if any(i < 0 or i >= n for i in s):
            return False
        for i in s:
            for j in range(n):
                if j not in s and contained(j, i) and points[j] != points[i]:
                    return False
    for prev, cur in zip(steps, steps[1:]):
        if not prev < cur:
            return False
    return True


def enumerate_automorphisms(c: ColoredGraph, limit: int = 10**6) -> AutGroup:
    """Every valid symmetry triple, by brute force. The group order is the
    element count; the generator set is the whole group."""
    if c.reduced.is_circle:
        raise CircleInputError("the circle has no finite triple group to enumerate")
    g = c.reduced.graph
    n = len(g.vertices)
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}

    pair_members: dict[tuple[int, int], list[Edge]] = {}
    for e in g.edges:
        i, j = index[e.u], index[e.v]
        if i > j:
            i, j = j, i
        pair_members.setdefault((i, j), []).append(e)

    estimate = factorial(n)
    for members in pair_members.values():
        estimate *= factorial(len(members))
    elements_sigma = c.palette_elements()
    estimate *= len(elements_sigma)
    if estimate > limit:
        raise OracleBoundError(
            f"enumeration bound exceeded: {estimate} candidate triples > limit {limit}"
        )

    def eff(eid: str, sigma: dict[str, str]) -> tuple:
        ec = c.edge_color[eid]
        labels = tuple(sorted(sigma.get(l, l) for l in c.edge_labels(eid)))
        return (sigma.get(ec, ec), labels)

    def sig_table(sigma: dict[str, str]) -> dict[tuple[int, int], tuple]:
        return {
            pair: tuple(sorted(eff(e.id, sigma) for e in members))
            for pair, members in pair_members.items()
        }

    empty_sig: tuple = ()
    sig_id = sig_table({})

    found: list[AutTriple] = []
    for sigma in elements_sigma:
        want_vcol = [sigma.get(c.vertex_color[v], c.vertex_color[v]) for v in verts]
        sig_src = sig_table(sigma)
        assignment = [-1] * n
        used = [False] * n

        def backtrack(v: int):
            if v == n:
                _expand_edges(sigma, assignment)
                return
            for w in range(n):
                if used[w]:
                    continue
                if c.vertex_color[verts[w]] != want_vcol[v]:
                    continue
                ok = True
                for u in range(v):
                    a, b = (u, v) if u <= v else (v, u)
                    x, y = assignment[u], w
                    if x > y:
                        x, y = y, x
                    if sig_src.get((a, b), empty_sig) != sig_id.get((x, y), empty_sig):
                        ok = False
                        break
                if ok:
                    if sig_src.get((v, v), empty_sig) != sig_id.get((w, w), empty_sig):
                        ok = False
                if ok:
                    assignment[v] = w
                    used[w] = True
                    backtrack(v + 1)
                    assignment[v] = -1
                    used[w] = False

        def _expand_edges(sigma: dict[str, str], assignment: list[int]):
            # per class and per effective color, try every bijection
            slots: list[tuple[list[str], list[str]]] = []
            for (i, j), members in sorted(pair_members.items()):
                a, b = assignment[i], assignment[j]
                if a > b:
                    a, b = b, a
                targets = pair_members[(a, b)]
                by_col_src: dict[tuple, list[str]] = {}
                for e in members:
                    by_col_src.setdefault(eff(e.id, sigma), []).append(e.id)
                by_col_dst: dict[tuple, list[str]] = {}
                for e in targets:
                    by_col_dst.setdefault(eff(e.id, {}), []).append(e.id)
                for col, src_ids in sorted(by_col_src.items()):
                    slots.append((src_ids, by_col_dst[col]))
            vm = {verts[i]: verts[assignment[i]] for i in range(n)}
            cm = {cid: sigma.get(cid, cid) for cid in sorted(c.palette_universe())}
            for combo in itertools.product(
                *(itertools.permutations(dst) for (_, dst) in slots)
            ):
                em: dict[str, str] = {}
                for (src_ids, _), perm in zip(slots, combo):
                    for s_id, d_id in zip(src_ids, perm):
                        em[s_id] = d_id
                t = AutTriple(vm, em, cm)
                if check_triple(c, t):
                    found.append(t)

        backtrack(0)
    return AutGroup(tuple(found), len(found))


@dataclass(frozen=True)
class CrossCheck:
    engine: Height
    formula: Height
    chain: Height | None
    agree: bool
    certificate: ChainCertificate | None
    certificate_ok: bool | None
    claimed: Height | None = None

    @property
    def reference_status(self) -> str | None:
        if self.claimed is None:
            return None
        return "pass" if self.claimed == self.engine else "flagged-discrepancy"

    def to_json(self) -> dict:
        out = {
            "engine": self.engine.to_json(),
            "paperFormula": self.formula.to_json(),
            "chainSearch": self.chain.to_json() if self.chain is not None else None,
            "agree": self.agree,
            "certificate": self.certificate.to_json() if self.certificate else None,
        }
        if self.certificate_ok is not None:
            out["certificateVerified"] = self.certificate_ok
        if self.claimed is not None:
            out["reference"] = {
                "claimed": self.claimed.to_json(),
                "status": self.reference_status,
            }
        return out


def cross_check(
    g: TopoGraph,
    s: Scheme,
    bound: int = CHAIN_CELL_BOUND,
    claimed: Height | None = None,
) -> CrossCheck:
    """Run engine, closed form, and definitional chain search on one scheme."""
    engine = scheme_height(g, s)
    formula = closed_form_height(g, s)
    if s.variant in (TRIVIAL, ROTATION):
        return CrossCheck(engine, formula, None, engine == formula, None, None, claimed)
    fam = closure_family(apply_scheme(g, s))
    chain, cert = chain_height(fam, bound)
    cert_ok = verify_chain_certificate(fam, cert)
    agree = engine == formula == chain and cert_ok
    return CrossCheck(engine, formula, chain, agree, cert, cert_ok, claimed)


@dataclass(frozen=True)
class SearchResult:
    target: int
    witness: TopoGraph | None
    classes_examined: int
    vmax: int
    emax: int


def _connected(nv: int, combo) -> bool:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j) in combo:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return len({find(v) for v in range(nv)}) == 1


def _canonical(nv: int, combo) -> bool:
    enc = tuple(sorted(combo))
    for perm in itertools.permutations(range(nv)):
        relabeled = []
        for (i, j) in combo:
            a, b = perm[i], perm[j]
            if a > b:
                a, b = b, a
            relabeled.append((a, b))
        if tuple(sorted(relabeled)) < enc:
            return False
    return True


def search_min_height(p: int, vmax: int = 6, emax: int = 8) -> SearchResult:
    """First connected multigraph class (by edge count, then vertex count,
    then encoding order) whose base height equals p."""
    from .closures import base_height

    if p < 0:
        raise GraphInputError("target base height must be nonnegative")
    if not (1 <= vmax <= 6) or not (1 <= emax <= 8):
        raise GraphInputError("search bounds: 1 <= vmax <= 6 and 1 <= emax <= 8")
    examined = 0
    for ne in range(1, emax + 1):
        for nv in range(1, min(vmax, ne + 1) + 1):
            pairs = [(i, j) for i in range(nv) for j in range(i, nv)]
            for combo in itertools.combinations_with_replacement(pairs, ne):
                if not _connected(nv, combo):
                    continue
                if not _canonical(nv, combo):
                    continue
                examined += 1
                g = TopoGraph(
                    tuple(f"v{i}" for i in range(nv)),
                    tuple(
                        Edge(f"e{k}", f"v{i}", f"v{j}") for k, (i, j) in enumerate(combo)
                    ),
                )
                if base_height(g) == Height.finite(p):
                    return SearchResult(p, g, examined, vmax, emax)
    return SearchResult(p, None, examined, vmax, emax)
