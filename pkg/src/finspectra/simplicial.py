"""Finite simplicial sets in degeneracy normal form.

Every simplex is stored as a strictly decreasing word of degeneracy
operators applied to a nondegenerate simplex (the Eilenberg-Zilber normal
form), so equality of simplices is plain tuple equality.  A finite
simplicial set records, per dimension, how many nondegenerate simplices it
has and the faces of each as formal simplices; faces and degeneracies of
arbitrary formal simplices are computed by the standard rewriting rules

    d_i s_j = s_{j-1} d_i   (i < j)
    d_j s_j = d_{j+1} s_j = id
    d_i s_j = s_j d_{i-1}   (i > j + 1)
    s_i s_j = s_{j+1} s_i   (i <= j)

which terminate in normal form.  Maps carry one formal image per
nondegenerate simplex of the source and are pushed through words by the
same rules.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .config import BudgetError, InvalidInput, check_dim, default_budget


@dataclass(frozen=True, order=True)
class FormalSimplex:
    """A possibly degenerate simplex: s_{i_1}...s_{i_r} applied to a
    nondegenerate simplex, word strictly decreasing."""

    word: tuple
    dim: int        # dimension of the nondegenerate target
    index: int      # id of the target within its dimension

    @property
    def total_dim(self):
        return self.dim + len(self.word)

    @property
    def is_degenerate(self):
        return bool(self.word)

    def well_formed(self):
        if self.dim < 0 or self.index < 0:
            return False
        return all(a > b for a, b in zip(self.word, self.word[1:])) and all(
            0 <= j < self.total_dim for j in self.word
        )


def trivial_formal(dim, index):
    return FormalSimplex((), dim, index)


def degenerate(fs, j):
    """Apply s_j to a formal simplex, renormalizing the word."""
    word = fs.word
    out = []
    k = 0
    while k < len(word) and j <= word[k]:
        out.append(word[k] + 1)
        k += 1
    out.append(j)
    out.extend(word[k:])
    return FormalSimplex(tuple(out), fs.dim, fs.index)


def degenerate_word(fs, word):
    """Apply s_{word} (strictly decreasing) to a formal simplex."""
    for j in reversed(word):
        fs = degenerate(fs, j)
    return fs


def compose_words(outer, inner):
    """Normal form of s_outer . s_inner as a single decreasing word."""
    fs = FormalSimplex(tuple(inner), 0, 0)
    fs = degenerate_word(fs, tuple(outer))
    return fs.word


def full_degeneracy_word(m):
    """The word collapsing a vertex up to dimension m: (m-1, ..., 0)."""
    return tuple(range(m - 1, -1, -1))


class ValidationReport:
    """Outcome of a structural validation; collects violations."""

    def __init__(self, subject):
        self.subject = subject
        self.violations = []

    def add(self, kind, location, detail):
        self.violations.append({"kind": kind, "location": location, "detail": detail})

    @property
    def ok(self):
        return not self.violations

    def as_dict(self):
        return {"subject": self.subject, "ok": self.ok, "violations": self.violations}

    def __repr__(self):
        status = "valid" if self.ok else f"{len(self.violations)} violation(s)"
        return f"<ValidationReport {self.subject}: {status}>"


@dataclass(frozen=True)
class FiniteSimplicialSet:
    """Finitely many nondegenerate simplices with faces in normal form.

    dims[m] counts the nondegenerate m-simplices; faces[m][j] is the tuple
    (d_0 x, ..., d_m x) of formal (m-1)-simplices for the j-th one (empty
    for vertices).  basepoint, when present, is the id of a 0-simplex.
    """

    dims: tuple
    faces: tuple
    basepoint: object = None

    def __post_init__(self):
        if len(self.faces) != len(self.dims):
            raise InvalidInput("faces and dims must have the same length")
        object.__setattr__(self, "_hash", hash((self.dims, self.faces, self.basepoint)))

    def __hash__(self):
        return self._hash

    @property
    def top_dim(self):
        return len(self.dims) - 1

    @property
    def is_pointed(self):
        return self.basepoint is not None

    def n_cells(self, m):
        return self.dims[m] if 0 <= m <= self.top_dim else 0

    def cells(self, m):
        return range(self.n_cells(m))

    def size(self):
        return sum(self.dims)

    def face(self, fs, i):
        """d_i of a formal simplex, in normal form."""
        word = fs.word
        if not word:
            return self.faces[fs.dim][fs.index][i]
        j = word[0]
        inner = FormalSimplex(word[1:], fs.dim, fs.index)
        if i < j:
            return degenerate(self.face(inner, i), j - 1)
        if i == j or i == j + 1:
            return inner
        return degenerate(self.face(inner, i - 1), j)

    def all_formal(self, m):
        """Every m-dimensional formal simplex, deterministically ordered."""
        out = []
        for k in range(min(m, self.top_dim) + 1):
            r = m - k
            if r == 0:
                words = [()]
            else:
                words = [tuple(reversed(c)) for c in combinations(range(m), r)]
            for index in range(self.dims[k]):
                for w in words:
                    out.append(FormalSimplex(w, k, index))
        return out

    def basepoint_formal(self, m):
        """The basepoint degenerated up to dimension m."""
        if self.basepoint is None:
            raise InvalidInput("simplicial set is not pointed")
        return FormalSimplex(full_degeneracy_word(m), 0, self.basepoint)

    def contains(self, fs):
        return (
            fs.well_formed()
            and fs.dim <= self.top_dim
            and fs.index < self.dims[fs.dim]
        )


def validate(X):
    """Check all type invariants; report every violation with its simplex."""
    report = ValidationReport("FiniteSimplicialSet")
    for m, count in enumerate(X.dims):
        if count < 0:
            report.add("negative-count", {"dim": m}, "negative simplex count")
        if m == 0:
            continue
        for j in range(count):
            fs_faces = X.faces[m][j]
            if len(fs_faces) != m + 1:
                report.add(
                    "face-arity",
                    {"dim": m, "index": j},
                    f"expected {m + 1} faces, found {len(fs_faces)}",
                )
                continue
            for i, f in enumerate(fs_faces):
                if not (f.well_formed() and X.contains(f) and f.total_dim == m - 1):
                    report.add(
                        "malformed-face",
                        {"dim": m, "index": j, "face": i},
                        f"face d_{i} = {f} is not a well-formed ({m - 1})-simplex",
                    )
    if not report.ok:
        return report
    # simplicial identities d_i d_j = d_{j-1} d_i for i < j
    for m in range(2, X.top_dim + 1):
        for j in range(X.dims[m]):
            x = trivial_formal(m, j)
            for hi in range(m + 1):
                for lo in range(hi):
                    left = X.face(X.face(x, hi), lo)
                    right = X.face(X.face(x, lo), hi - 1)
                    if left != right:
                        report.add(
                            "simplicial-identity",
                            {"dim": m, "index": j},
                            f"d_{lo} d_{hi} != d_{hi - 1} d_{lo} on simplex ({m},{j})",
                        )
    if X.basepoint is not None:
        if not (X.dims and 0 <= X.basepoint < X.dims[0]):
            report.add(
                "basepoint",
                {"index": X.basepoint},
                "basepoint is not a 0-dimensional nondegenerate simplex",
            )
    return report


def _canonical_dims_faces(dims, faces):
    """Strip trailing dimensions without nondegenerate simplices."""
    dims = list(dims)
    faces = [tuple(f) for f in faces]
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
        faces.pop()
    return tuple(dims), tuple(faces)


def make_sset(dims, faces, basepoint=None):
    dims, faces = _canonical_dims_faces(dims, faces)
    return FiniteSimplicialSet(dims, faces, basepoint)


# ---------------------------------------------------------------------------
# basic constructions


def point():
    """The one-vertex pointed simplicial set."""
    return FiniteSimplicialSet((1,), ((),), 0)


def standard_simplex(n):
    """Delta[n]: one nondegenerate k-face per (k+1)-subset of {0..n}."""
    check_dim(n, "standard simplex")
    subsets = []
    index = {}
    for k in range(n + 1):
        level = list(combinations(range(n + 1), k + 1))
        for j, s in enumerate(level):
            index[s] = j
        subsets.append(level)
    dims = tuple(len(level) for level in subsets)
    faces = [()]
    for m in range(1, n + 1):
        per_dim = []
        for s in subsets[m]:
            per_dim.append(
                tuple(
                    trivial_formal(m - 1, index[s[:i] + s[i + 1 :]])
                    for i in range(m + 1)
                )
            )
        faces.append(tuple(per_dim))
    return FiniteSimplicialSet(dims, tuple(faces), None)


def add_disjoint_basepoint(X):
    """X_+: adjoin a fresh basepoint vertex (appended as the last vertex)."""
    if X.is_pointed:
        raise InvalidInput("input already pointed")
    dims = (X.dims[0] + 1,) + X.dims[1:]
    return FiniteSimplicialSet(dims, X.faces, X.dims[0])


def interval_pointed_at_one():
    """Delta[1] pointed at vertex 1; smashing with it builds reduced cones."""
    d1 = standard_simplex(1)
    return FiniteSimplicialSet(d1.dims, d1.faces, 1)


def three_edge_circle():
    """Simplicial circle with three vertices and three edges, pointed at 0.

    Edge k runs from vertex k to vertex k+1 mod 3 (d_1 = source, d_0 =
    target); the smallest model admitting a degree-2 map onto S^1.
    """
    v = trivial_formal
    faces1 = (
        (v(0, 1), v(0, 0)),
        (v(0, 2), v(0, 1)),
        (v(0, 0), v(0, 2)),
    )
    return FiniteSimplicialSet((3, 3), ((), faces1), 0)


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class SimplicialMap:
    """A simplicial map, one formal image per nondegenerate source simplex."""

    source: FiniteSimplicialSet
    target: FiniteSimplicialSet
    images: tuple   # images[m][j]

    def __post_init__(self):
        if len(self.images) != len(self.source.dims):
            raise InvalidInput("images must cover every source dimension")
        object.__setattr__(
            self, "_hash", hash((self.source, self.target, self.images))
        )

    def __hash__(self):
        return self._hash

    def apply(self, fs):
        img = self.images[fs.dim][fs.index]
        return degenerate_word(img, fs.word)

    def __call__(self, fs):
        return self.apply(fs)


def validate_map(f):
    """Face-commutation and basepoint checks, reported per simplex."""
    report = ValidationReport("SimplicialMap")
    X, Y = f.source, f.target
    for m in range(X.top_dim + 1):
        if len(f.images[m]) != X.dims[m]:
            report.add(
                "arity", {"dim": m}, f"expected {X.dims[m]} images in dim {m}"
            )
            return report
        for j in range(X.dims[m]):
            img = f.images[m][j]
            if not (img.well_formed() and Y.contains(img) and img.total_dim == m):
                report.add(
                    "malformed-image",
                    {"dim": m, "index": j},
                    f"image {img} is not an m-simplex of the target",
                )
    if not report.ok:
        return report
    for m in range(1, X.top_dim + 1):
        for j in range(X.dims[m]):
            x = trivial_formal(m, j)
            fx = f.images[m][j]
            for i in range(m + 1):
                if f.apply(X.face(x, i)) != Y.face(fx, i):
                    report.add(
                        "face-commutation",
                        {"dim": m, "index": j, "face": i},
                        f"f(d_{i} x) != d_{i} f(x) on simplex ({m},{j})",
                    )
    if X.is_pointed and Y.is_pointed:
        if f.images[0][X.basepoint] != trivial_formal(0, Y.basepoint):
            report.add("basepoint", {}, "basepoint not preserved")
    return report


def check_map(f, what="simplicial map"):
    report = validate_map(f)
    if not report.ok:
        raise InvalidInput(f"invalid {what}: {report.violations[:3]}")
    return f


def identity_map(X):
    images = tuple(
        tuple(trivial_formal(m, j) for j in range(X.dims[m]))
        for m in range(X.top_dim + 1)
    )
    return SimplicialMap(X, X, images)


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise InvalidInput("composition mismatch: f.target != g.source")
    images = tuple(
        tuple(g.apply(f.images[m][j]) for j in range(f.source.dims[m]))
        for m in range(f.source.top_dim + 1)
    )
    return SimplicialMap(f.source, g.target, images)


def constant_map(X, Y):
    """The pointed map collapsing everything to the basepoint of Y."""
    if not Y.is_pointed:
        raise InvalidInput("target must be pointed")
    images = tuple(
        tuple(Y.basepoint_formal(m) for _ in range(X.dims[m]))
        for m in range(X.top_dim + 1)
    )
    return SimplicialMap(X, Y, images)


def is_injective(f):
    """True iff f is injective on simplices in every dimension.

    Equivalent to: nondegenerate simplices have nondegenerate images, with
    no collisions per dimension (degenerate simplices then separate for
    free by uniqueness of the normal form).
    """
    for m in range(f.source.top_dim + 1):
        seen = set()
        for j in range(f.source.dims[m]):
            img = f.images[m][j]
            if img.is_degenerate or img in seen:
                return False
            seen.add(img)
    return True


def is_isomorphism(f):
    """Bijective on nondegenerate simplices in every dimension."""
    if f.source.dims != f.target.dims:
        return False
    return is_injective(f)


def inverse(f):
    """Inverse of a simplicial isomorphism."""
    if not is_isomorphism(f):
        raise InvalidInput("map is not an isomorphism")
    images = [
        [None] * f.source.dims[m] for m in range(f.source.top_dim + 1)
    ]
    for m in range(f.source.top_dim + 1):
        for j in range(f.source.dims[m]):
            img = f.images[m][j]
            images[m][img.index] = trivial_formal(m, j)
    return SimplicialMap(
        f.target, f.source, tuple(tuple(row) for row in images)
    )


def enumerate_pointed_maps(K, L, budget=None):
    """All pointed simplicial maps K -> L, by exhaustive backtracking.

    Raises BudgetError once more than `budget` partial assignments have
    been explored (never truncates silently).
    """
    if not (K.is_pointed and L.is_pointed):
        raise InvalidInput("enumerate_pointed_maps needs pointed inputs")
    if budget is None:
        budget = default_budget()
    cells = [(m, j) for m in range(K.top_dim + 1) for j in range(K.dims[m])]
    formal_by_dim = {m: L.all_formal(m) for m in range(K.top_dim + 1)}
    explored = 0
    results = []
    assignment = {}

    def apply_partial(fs):
        img = assignment[(fs.dim, fs.index)]
        return degenerate_word(img, fs.word)

    def candidates(m, j):
        if m == 0:
            if j == K.basepoint:
                return [trivial_formal(0, L.basepoint)]
            return [trivial_formal(0, v) for v in range(L.dims[0])]
        out = []
        kfaces = K.faces[m][j]
        for cand in formal_by_dim[m]:
            if all(
                L.face(cand, i) == apply_partial(kfaces[i]) for i in range(m + 1)
            ):
                out.append(cand)
        return out

    def search(pos):
        nonlocal explored
        if pos == len(cells):
            images = tuple(
                tuple(assignment[(m, j)] for j in range(K.dims[m]))
                for m in range(K.top_dim + 1)
            )
            results.append(SimplicialMap(K, L, images))
            return
        m, j = cells[pos]
        for cand in candidates(m, j):
            explored += 1
            if explored > budget:
                raise BudgetError(
                    f"map enumeration exceeded budget {budget}", explored
                )
            assignment[(m, j)] = cand
            search(pos + 1)
            del assignment[(m, j)]

    search(0)
    return results
