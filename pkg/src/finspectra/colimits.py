"""Finite colimits of simplicial sets: quotients, wedges, coequalizers,
pushouts.

Quotients are computed dimensionwise: union-find over all formal simplices
of the target up to its top nondegenerate dimension (no nondegenerate class
can appear above it), followed by re-extraction of a nondegenerate
presentation.  A class of the quotient is degenerate exactly when it
contains a degenerate member, and its normal form is recovered by peeling
one degeneracy at a time; uniqueness of the Eilenberg-Zilber form makes the
choices immaterial.
"""

from dataclasses import dataclass

from .config import InvalidInput
from .simplicial import (
    FormalSimplex,
    SimplicialMap,
    check_map,
    compose,
    degenerate,
    degenerate_word,
    enumerate_pointed_maps,
    make_sset,
    trivial_formal,
)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class QuotientData:
    """A quotient presentation with enough bookkeeping to descend maps.

    space       -- the quotient as a FiniteSimplicialSet
    projection  -- the canonical SimplicialMap onto it
    rep(m, c)   -- a representative formal simplex (in the source) of the
                   c-th nondegenerate m-class
    class_of(fs)-- the image of a formal simplex as a formal simplex of the
                   quotient
    """

    def __init__(self, B, identifications):
        self._B = B
        top = B.top_dim
        ufs = [_UnionFind() for _ in range(top + 1)]
        members = [dict() for _ in range(top + 1)]  # root -> sorted member list
        for m in range(top + 1):
            uf = ufs[m]
            for fs in B.all_formal(m):
                uf.find(fs)
            for a, b in identifications.get(m, ()):
                uf.union(a, b)
            buckets = {}
            for fs in uf.parent:
                buckets.setdefault(uf.find(fs), []).append(fs)
            for root, elems in buckets.items():
                elems.sort()
            members[m] = buckets
        self._ufs = ufs

        # nondegenerate classes: those with no degenerate member
        class_ids = [dict() for _ in range(top + 1)]
        reps = []
        dims = []
        for m in range(top + 1):
            nondeg_roots = [
                root
                for root, elems in members[m].items()
                if not any(fs.is_degenerate for fs in elems)
            ]
            nondeg_roots.sort(key=lambda root: members[m][root][0])
            for c, root in enumerate(nondeg_roots):
                class_ids[m][root] = c
            reps.append([members[m][root][0] for root in nondeg_roots])
            dims.append(len(nondeg_roots))
        self._class_ids = class_ids
        self._members = members
        self._nf_cache = {}

        faces = [()]
        for m in range(1, top + 1):
            per_dim = []
            for c in range(dims[m]):
                rep = reps[m][c]
                per_dim.append(
                    tuple(self.class_of(B.face(rep, i)) for i in range(m + 1))
                )
            faces.append(tuple(per_dim))
        basepoint = None
        if B.is_pointed:
            basepoint = self.class_of(trivial_formal(0, B.basepoint)).index
        self.space = make_sset(dims, faces, basepoint)
        self._reps = reps

        images = tuple(
            tuple(
                self.class_of(trivial_formal(m, j)) for j in range(B.dims[m])
            )
            for m in range(top + 1)
        )
        self.projection = SimplicialMap(B, self.space, images)

    def class_of(self, fs):
        """Normal form of the class of a formal simplex of the source.

        The projection is simplicial, so degenerate simplices push through
        their word; the union-find is only consulted for nondegenerate
        simplices (whose classes may still be degenerate in the quotient,
        in which case one degeneracy of a degenerate member is peeled off,
        well-defined by uniqueness of the normal form).
        """
        if fs.word:
            inner = FormalSimplex(fs.word[1:], fs.dim, fs.index)
            return degenerate(self.class_of(inner), fs.word[0])
        m = fs.total_dim
        root = self._ufs[m].find(fs)
        key = (m, root)
        cached = self._nf_cache.get(key)
        if cached is not None:
            return cached
        cid = self._class_ids[m].get(root)
        if cid is not None:
            out = trivial_formal(m, cid)
        else:
            member = next(
                fs2 for fs2 in self._members[m][root] if fs2.is_degenerate
            )
            j = member.word[0]
            inner = FormalSimplex(member.word[1:], member.dim, member.index)
            out = degenerate(self.class_of(inner), j)
        self._nf_cache[key] = out
        return out

    def rep(self, m, c):
        return self._reps[m][c]

    def lift(self, fs):
        """A representative in the source of a formal simplex of the quotient."""
        return degenerate_word(self.rep(fs.dim, fs.index), fs.word)

    def induce(self, images_of, target, check=True):
        """The map out of the quotient determined by `images_of` on the source.

        `images_of` maps formal simplices of the source to formal simplices
        of `target`; it must be constant on classes (checked exhaustively
        unless check=False), i.e. it must coequalize the identifications.
        """
        if check:
            B = self._B
            for m in range(B.top_dim + 1):
                seen = {}
                for fs in B.all_formal(m):
                    root = self._ufs[m].find(fs)
                    val = images_of(fs)
                    if root in seen:
                        if seen[root] != val:
                            raise InvalidInput(
                                "map does not respect the identifications "
                                f"(class of {fs} in dim {m})"
                            )
                    else:
                        seen[root] = val
        images = tuple(
            tuple(images_of(self.rep(m, c)) for c in range(self.space.dims[m]))
            for m in range(self.space.top_dim + 1)
        )
        return check_map(
            SimplicialMap(self.space, target, images), "induced map"
        )


# ---------------------------------------------------------------------------
# wedges


class WedgeData:
    """A wedge of pointed sets with inclusion maps and factor lookup."""

    def __init__(self, factors):
        if not factors:
            raise InvalidInput("wedge of no factors")
        for X in factors:
            if not X.is_pointed:
                raise InvalidInput("wedge factors must be pointed")
        self.factors = tuple(factors)
        top = max(X.top_dim for X in factors)
        fwd = []   # fwd[i][m][j] = wedge id
        dims = [0] * (top + 1)
        dims[0] = 1  # shared basepoint, id 0
        owner = [[] for _ in range(top + 1)]   # wedge id -> (factor, orig id)
        owner[0].append(None)
        for i, X in enumerate(self.factors):
            table = [dict() for _ in range(X.top_dim + 1)]
            for m in range(X.top_dim + 1):
                for j in range(X.dims[m]):
                    if m == 0 and j == X.basepoint:
                        table[m][j] = 0
                        continue
                    table[m][j] = dims[m]
                    owner[m].append((i, j))
                    dims[m] += 1
            fwd.append(table)
        self._fwd = fwd
        self._owner = owner

        faces = [()]
        for m in range(1, top + 1):
            per_dim = []
            for wid in range(dims[m]):
                i, j = owner[m][wid]
                X = self.factors[i]
                per_dim.append(
                    tuple(self._relabel(i, f) for f in X.faces[m][j])
                )
            faces.append(tuple(per_dim))
        self.space = make_sset(dims, faces, 0)
        self.inclusions = tuple(
            SimplicialMap(
                X,
                self.space,
                tuple(
                    tuple(
                        trivial_formal(m, fwd[i][m][j]) for j in range(X.dims[m])
                    )
                    for m in range(X.top_dim + 1)
                ),
            )
            for i, X in enumerate(self.factors)
        )

    def _relabel(self, i, fs):
        return FormalSimplex(fs.word, fs.dim, self._fwd[i][fs.dim][fs.index])

    def include(self, i, fs):
        return self._relabel(i, fs)

    def factor_of(self, m, wid):
        """(factor index, original id) of a nondegenerate simplex, or None
        for the shared basepoint vertex."""
        return self._owner[m][wid]

    def copair(self, maps):
        """The map out of the wedge given by pointed maps off each factor."""
        if len(maps) != len(self.factors):
            raise InvalidInput("copair needs one map per wedge factor")
        target = maps[0].target
        for h in maps:
            if h.target != target:
                raise InvalidInput("copair maps must share a target")
            if not target.is_pointed:
                raise InvalidInput("copair target must be pointed")
        images = []
        for m in range(self.space.top_dim + 1):
            row = []
            for wid in range(self.space.dims[m]):
                own = self._owner[m][wid]
                if own is None:
                    row.append(trivial_formal(0, target.basepoint))
                else:
                    i, j = own
                    row.append(maps[i].images[m][j])
            images.append(tuple(row))
        return SimplicialMap(self.space, target, tuple(images))


def wedge_data(*factors):
    return WedgeData(factors)


def wedge(X, Y):
    """Disjoint union with basepoints identified."""
    return WedgeData((X, Y)).space


# ---------------------------------------------------------------------------
# coequalizers and pushouts


def coequalize(f, g):
    """QuotientData of the coequalizer of f, g : A => B."""
    if f.source != g.source or f.target != g.target:
        raise InvalidInput("coequalizer needs maps with common source and target")
    A, B = f.source, f.target
    identifications = {}
    for m in range(B.top_dim + 1):
        pairs = []
        for fs in A.all_formal(m):
            pairs.append((f.apply(fs), g.apply(fs)))
        identifications[m] = pairs
    return QuotientData(B, identifications)


def coequalizer(f, g):
    """The coequalizer and its projection."""
    q = coequalize(f, g)
    return q.space, q.projection


def collapse_subcomplex(B, member_test):
    """Quotient collapsing a pointed subcomplex to the basepoint.

    member_test(fs) decides membership for formal simplices whose target is
    nondegenerate in B; the subcomplex must be closed under faces and
    contain the basepoint (not checked).
    """
    if not B.is_pointed:
        raise InvalidInput("collapse needs a pointed set")
    identifications = {}
    for m in range(B.top_dim + 1):
        bp = B.basepoint_formal(m)
        identifications[m] = [
            (fs, bp) for fs in B.all_formal(m) if member_test(fs)
        ]
    return QuotientData(B, identifications)


class PushoutData:
    """Pushout of f : A -> X, g : A -> Y with its two cocone maps."""

    def __init__(self, f, g):
        if f.source != g.source:
            raise InvalidInput("pushout needs maps with a common source")
        X, Y = f.target, g.target
        if not (X.is_pointed and Y.is_pointed and f.source.is_pointed):
            raise InvalidInput("pushout implemented for pointed maps")
        self.wedge = WedgeData((X, Y))
        left = compose(self.wedge.inclusions[0], f)
        right = compose(self.wedge.inclusions[1], g)
        self.quotient = coequalize(left, right)
        self.space = self.quotient.space
        self.into_first = compose(
            self.quotient.projection, self.wedge.inclusions[0]
        )
        self.into_second = compose(
            self.quotient.projection, self.wedge.inclusions[1]
        )

    def induce(self, on_first, on_second, check=True):
        """Map out of the pushout from a commuting cocone."""
        h = self.wedge.copair((on_first, on_second))
        return self.quotient.induce(h.apply, h.target, check=check)


def pushout(f, g):
    """Pushout of f : A -> X, g : A -> Y; returns (space, incl_X, incl_Y)."""
    data = PushoutData(f, g)
    return data.space, data.into_first, data.into_second


def coequalizer_universal_check(f, g, Bprime, budget=None):
    """Enumerative check of the coequalizer's universal property.

    Maps B -> B' equalizing (f, g) must correspond bijectively, by
    composition with the projection, to maps coeq -> B'.
    """
    q = coequalize(f, g)
    through = enumerate_pointed_maps(q.space, Bprime, budget)
    factored = {compose(h, q.projection) for h in through}
    direct = [
        h
        for h in enumerate_pointed_maps(f.target, Bprime, budget)
        if compose(h, f) == compose(h, g)
    ]
    return len(direct) == len(through) == len(factored) and all(
        h in factored for h in direct
    )
