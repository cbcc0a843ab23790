"""Resolution function, choice of centers and the resolution tree."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import (
    BlowUpRecord,
    blow_up_chart,
    transform_divisors,
    transform_hypersurfaces,
    transform_ideal,
)
from .core import Q, ONE, Chart, reduced_set
from .eorder import eord_ideal, esing, esing_all, sort_strata
from .gamma import GammaValue, gamma_invariant
from .mobile import DimensionState, companion, factor_monomial_part, junior, select_max_contact

INF, RAT, GAMMA = "INF", "RAT", "GAMMA"


class NotESingularHere(ValueError):
    pass


class AlreadyResolved(ValueError):
    pass


class CheckFailure(AssertionError):
    """A descent or commutation check failed on a tree edge."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge
        self.tree = None


@dataclass(frozen=True)
class TComponent:
    tag: str
    q: Fraction | None = None
    g: GammaValue | None = None

    def key(self) -> tuple:
        if self.tag == INF:
            return (2,)
        if self.tag == RAT:
            return (1, self.q)
        return (0, self.g.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __str__(self):
        if self.tag == INF:
            return "INF"
        if self.tag == RAT:
            return f"RAT {self.q}"
        return f"GAMMA({self.g.g1}, {self.g.g2}, {self.g.g3})"


INF_C = TComponent(INF)


def rat(q) -> TComponent:
    return TComponent(RAT, q=Q(q))


@dataclass(frozen=True)
class TValue:
    components: tuple

    def key(self) -> tuple:
        return tuple(c.key() for c in self.components)

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __str__(self):
        return "(" + ", ".join(map(str, self.components)) + ")"


@dataclass(frozen=True)
class BBOE:
    """A basic object on one chart.

    ``ref_t`` and ``ref_k0`` come from the parent node; the per-dimension
    divisors stored on the chart are only trusted at points where the leading
    components of t agree with ``ref_t``.
    """

    chart: Chart
    J: tuple
    c: int
    stage: int = 0
    ref_t: TValue | None = None
    ref_k0: tuple = ()
    ref_contacts: tuple = ()


def root_bboe(chart: Chart, J, c: int) -> BBOE:
    """Initial basic object: the common monomial factor of J is the top divisor."""
    J = tuple(J)
    if c < 1:
        raise ValueError("control must be >= 1")
    if not J:
        raise ValueError("empty ideal")
    gcd = {}
    for i in chart.xvars:
        m = min(f.weight * f.nu[i - 1] for f in J)
        if m:
            gcd[i] = m
    D = [()] * chart.n
    D[-1] = tuple(sorted(gcd.items()))
    chart = Chart(chart.n, chart.invertible, chart.H, tuple(D), chart.history, chart.p)
    return BBOE(chart, J, c, 0, None, (0,) * chart.n, (None,) * chart.n)


@dataclass
class Descent:
    t: TValue
    states: list
    juniors: dict  # dimension i -> J_i
    controls: dict  # dimension i -> control paired with J_i
    contacts: list
    center: frozenset
    stratum: frozenset


def _prefix_equal(comps, ref: TValue | None, k: int) -> bool:
    if ref is None:
        return True
    return list(comps[:k]) == list(ref.components[:k])


def descend(b: BBOE, lam, bound: TValue | None = None) -> Descent | None:
    """Evaluate t at the stratum ``lam`` and record every intermediate object.

    With ``bound`` set, give up (returning None) as soon as the partial value
    falls strictly below it.
    """
    lam = frozenset(lam)
    n = b.chart.n
    if eord_ideal(b.J, lam) < b.c:
        raise NotESingularHere("not E-singular here")
    comps, states, contacts = [], [], []
    juniors, controls = {}, {}
    J = b.J
    c_next = Q(b.c)
    rest = set(lam)
    gamma_center = frozenset()
    for i in range(n, 0, -1):
        k = n - i
        juniors[i], controls[i] = J, c_next
        if bound is not None and comps and comps < list(bound.components[: len(comps)]):
            return None
        if J is ONE:
            comps.append(INF_C)
            break
        D = b.chart.divisor(i) if _prefix_equal(comps, b.ref_t, k) else {}
        # the factorization is local: coordinates off the stratum are units
        M, I = factor_monomial_part(J, {v: m for v, m in D.items() if v in rest})
        if eord_ideal(J, lam) < c_next:
            raise NotESingularHere(f"not E-singular here at dimension {i}")
        theta = eord_ideal(I, lam)
        if theta == 0:
            g, gamma_center = gamma_invariant({v: m for v, m in M.items() if v in rest}, c_next, rest)
            comps.append(TComponent(GAMMA, g=g))
            states.append(DimensionState(i, M, I, None, c_next, theta, None, D))
            break
        comps.append(rat(theta / c_next))
        P = companion(I, M, theta, c_next)
        c_i = eord_ideal(P, lam)
        prefer = None
        if b.ref_t is not None and _prefix_equal(comps, b.ref_t, k + 1):
            k0 = b.ref_k0[i - 1]
            prefer = b.ref_contacts[i - 1]
        else:
            k0 = b.stage
        young = {v for v, birth in b.chart.H if birth > k0}
        permissible = set(rest) - young
        j = select_max_contact(P, b.chart, permissible, rest, prefer)
        contacts.append(j)
        states.append(DimensionState(i, M, I, P, c_next, theta, j, D))
        J = junior(P, c_i, j)
        c_next = c_i
        rest.discard(j)
    else:
        juniors[0], controls[0] = J, c_next
    comps += [INF_C] * (n - len(comps))
    return Descent(TValue(tuple(comps)), states, juniors, controls, contacts, frozenset(contacts) | gamma_center, lam)


def t_value(b: BBOE, lam) -> TValue:
    return descend(b, lam).t


def emax_center(b: BBOE, exhaustive: bool = False) -> Descent:
    """Maximal value of t over the E-singular strata, with its center.

    Among strata sharing the maximum the smallest (in a fixed order) wins.
    The default search starts at the origin, where t peaks, and moves to the
    stratum of the proposed center while t stays put.  ``exhaustive`` visits
    every E-singular stratum instead.
    """
    full = frozenset(b.chart.xvars)
    if eord_ideal(b.J, full) < b.c:
        raise AlreadyResolved("already resolved")
    if not exhaustive:
        d = descend(b, full)
        while d.center != d.stratum and eord_ideal(b.J, d.center) >= b.c:
            e = descend(b, d.center)
            if e.t != d.t:
                break
            d = e
        return d
    order = sort_strata(esing_all(b.J, b.c, b.chart))
    rank = {lam: k for k, lam in enumerate(order)}
    best = None
    # large strata tend to carry the maximum, so visiting them first prunes more
    for lam in reversed(order):
        d = descend(b, lam, best.t if best else None)
        if d is None:
            continue
        if best is None or best.t < d.t or (d.t == best.t and rank[lam] < rank[best.stratum]):
            best = d
    return best


@dataclass
class Node:
    id: int
    parent: int | None
    bboe: BBOE
    record: BlowUpRecord | None
    depth: int
    H_dims: tuple
    singular: bool = False
    descent: Descent | None = None
    k0: tuple = ()
    children: list = field(default_factory=list)
    expanded: bool = False

    @property
    def t_max(self) -> TValue | None:
        return self.descent.t if self.descent else None

    @property
    def center(self) -> frozenset | None:
        return self.descent.center if self.descent else None

    @property
    def is_leaf(self) -> bool:
        return not self.singular

    @property
    def strata(self) -> list:
        """Minimal E-singular strata of the node."""
        b = self.bboe
        return esing(b.J, b.c, b.chart)


@dataclass
class ResolutionTree:
    nodes: list
    exhausted: bool = False
    blowups: int = 0

    @property
    def leaves(self) -> list:
        return [v for v in self.nodes if v.is_leaf]

    @property
    def depth(self) -> int:
        return max((v.depth for v in self.nodes), default=0)

    def edges(self):
        for v in self.nodes:
            if v.parent is not None:
                yield self.nodes[v.parent], v


def _own_k0(t: TValue, b: BBOE) -> tuple:
    n = b.chart.n
    out = []
    for i in range(1, n + 1):
        k = n - i + 1
        if b.ref_t is not None and _prefix_equal(t.components, b.ref_t, k):
            out.append(b.ref_k0[i - 1])
        else:
            out.append(b.stage)
    return tuple(out)


def _t_constant_upto(t: TValue, ref: TValue) -> int:
    n = len(t)
    k = 0
    while k < n and t[k] == ref[k]:
        k += 1
    return n + 1 - k


def evaluate(node: Node) -> Node:
    """Fill in singularity, maximal descent and stage bookkeeping of a node."""
    b = node.bboe
    # E-singular strata form an up-set, so the origin decides
    node.singular = eord_ideal(b.J, frozenset(b.chart.xvars)) >= b.c
    if node.singular:
        node.descent = emax_center(b)
        node.k0 = _own_k0(node.descent.t, b)
    return node


def check_edge(parent: Node, child: Node, level: str):
    """Assertions along one edge; raises CheckFailure."""
    edge = (parent.id, child.id)
    if child.descent is None:
        return
    if not child.descent.t < parent.descent.t:
        raise CheckFailure(
            f"t did not drop on edge {edge}: {parent.descent.t} -> {child.descent.t}", edge
        )
    if level != "full":
        return
    pb = parent.bboe
    ref = emax_center(pb, exhaustive=True)
    if ref.t != parent.descent.t or ref.stratum != parent.descent.stratum:
        raise CheckFailure(f"shortcut search missed the maximum on node {parent.id}", edge)
    if eord_ideal(pb.J, parent.descent.center) < pb.c:
        raise CheckFailure(f"center outside the E-singular locus on node {parent.id}", edge)
    # juniors commute with the blow-up while the leading components hold;
    # compare the two chart origins, the child's lying over the parent's
    rec = child.record
    here = descend(pb, frozenset(pb.chart.xvars))
    over = descend(child.bboe, frozenset(child.bboe.chart.xvars))
    higher = set()
    for k, state in enumerate(here.states):
        i = state.dim_index
        if state.contact_var is None or here.t[: k + 1] != over.t[: k + 1]:
            break
        if k >= len(over.contacts) or over.contacts[k] != state.contact_var:
            break
        higher.add(state.contact_var)
        if rec.j in higher:
            break
        mine, theirs = here.juniors.get(i - 1), over.juniors.get(i - 1)
        if mine is None or theirs is None:
            break
        if mine is ONE or theirs is ONE:
            if (mine is ONE) != (theirs is ONE):
                raise CheckFailure(f"junior of dimension {i - 1} changed kind on edge {edge}", edge)
            continue
        c_i = here.controls[i - 1]
        moved = transform_ideal(mine, rec.center, rec.j, "controlled", c=c_i, invertible=pb.chart.invertible)
        if reduced_set(moved) != reduced_set(theirs):
            raise CheckFailure(f"junior of dimension {i - 1} does not commute on edge {edge}", edge)


def expand(node: Node, next_stage: int) -> list:
    """Child basic objects of a node whose center has been chosen."""
    b = node.bboe
    d = node.descent
    n = b.chart.n
    theta, cvals, Deff = {}, {}, [dict() for _ in range(n)]
    level_of = {}
    for s in d.states:
        theta[s.dim_index] = s.theta
        cvals[s.dim_index] = s.c_next
        Deff[s.dim_index - 1] = s.D
        if s.contact_var is not None:
            level_of[s.contact_var] = s.dim_index
    children = []
    for j in sorted(d.center):
        rec = BlowUpRecord(d.center, j, next_stage)
        chart = blow_up_chart(b.chart, d.center, j, next_stage)
        D, _ = transform_divisors(Deff, node.H_dims, rec, 1, theta, cvals)
        if j in level_of:
            # the strict transform of a contact hyperplane misses this chart
            D = tuple(dv if i + 1 >= level_of[j] else {} for i, dv in enumerate(D))
        D = tuple(tuple(sorted(dv.items())) for dv in D)
        chart = Chart(chart.n, chart.invertible, chart.H, D, chart.history, chart.p)
        J = transform_ideal(b.J, d.center, j, "controlled", c=b.c, invertible=chart.invertible)
        contacts = [None] * n
        for s in d.states:
            contacts[s.dim_index - 1] = s.contact_var
        child = BBOE(chart, J, b.c, next_stage, d.t, node.k0, tuple(contacts))
        children.append((child, rec))
    return children


def resolve(b: BBOE, max_steps: int = 10000, check_level: str = "fast", traversal: str = "dfs") -> ResolutionTree:
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if check_level not in ("none", "fast", "full"):
        raise ValueError(f"unknown check level {check_level!r}")
    n = b.chart.n
    tree = ResolutionTree([])
    try:
        pending = deque([(b, None, None, 0)])
        while pending:
            bb, parent, rec, depth = pending.pop() if traversal == "dfs" else pending.popleft()
            node = Node(len(tree.nodes), parent, bb, rec, depth, (frozenset(),) * n)
            tree.nodes.append(node)
            evaluate(node)
            if parent is not None:
                up = tree.nodes[parent]
                up.children.append(node.id)
                kept = _t_constant_upto(node.descent.t, up.descent.t) if node.descent else n + 1
                node.H_dims = transform_hypersurfaces(up.H_dims, rec, kept)
            if not node.singular:
                continue
            if parent is not None and check_level != "none":
                check_edge(tree.nodes[parent], node, check_level)
            if tree.blowups >= max_steps:
                tree.exhausted = True
                continue
            tree.blowups += 1
            node.expanded = True
            kids = expand(node, bb.stage + 1)
            items = [(child, node.id, r, depth + 1) for child, r in kids]
            if traversal == "dfs":
                items.reverse()
            pending.extend(items)
        if check_level != "none":
            for leaf in tree.leaves:
                if esing(leaf.bboe.J, leaf.bboe.c, leaf.bboe.chart):
                    raise CheckFailure(f"leaf {leaf.id} is not resolved", (leaf.parent, leaf.id))
    except CheckFailure as err:
        err.tree = tree  # the partial tree, for traces of failed runs
        raise
    return tree
