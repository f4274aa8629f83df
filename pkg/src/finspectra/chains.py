"""Bounded integer chain complexes, Smith normal form, and homology.

All arithmetic is exact: matrices are tuples of tuples of Python ints, and
the Smith normal form routine tracks unimodular row/column transforms plus
their inverses so that kernels, images, and induced maps on homology can be
read off in compatible bases.  Homology groups are reported as a free rank
plus torsion coefficients in divisor-chain order, which makes isomorphism
a normal-form equality.
"""

from dataclasses import dataclass

from .config import InvalidInput


# ---------------------------------------------------------------------------
# integer matrices (tuples of tuples; rows x cols)


def zero_matrix(rows, cols):
    return tuple((0,) * cols for _ in range(rows))


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_shape(M):
    return len(M), len(M[0]) if M else 0


def mat_mul(A, B):
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return zero_matrix(rows, cols)
    n = len(B)
    if any(len(row) != n for row in A):
        raise InvalidInput("matrix shape mismatch in product")
    Bt = list(zip(*B)) if B[0] else [()] * 0
    out = []
    for row in A:
        out.append(
            tuple(sum(a * b for a, b in zip(row, col)) for col in Bt)
            if B[0]
            else ()
        )
    return tuple(out)


def mat_mul_shaped(A, B, rows, mid, cols):
    """A * B with explicit shapes; safe when any dimension is zero."""
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(mid)) for j in range(cols))
        for i in range(rows)
    )


def mat_eq_zero(M):
    return all(all(x == 0 for x in row) for row in M)


def bareiss_determinant(M):
    """Fraction-free determinant; independent oracle for unimodularity."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise InvalidInput("determinant needs a square matrix")
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """R * M * C = diag(diagonal), with R, C unimodular.

    row_inverse and col_inverse are the exact inverses of the transforms;
    diagonal entries are nonnegative and each divides the next.
    """

    diagonal: tuple
    row_transform: tuple
    col_transform: tuple
    row_inverse: tuple
    col_inverse: tuple

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


class _Worker:
    """Mutable elimination state: W = R M C maintained with inverses."""

    def __init__(self, M, rows, cols):
        self.rows, self.cols = rows, cols
        self.w = [list(row) for row in M]
        self.r = [list(row) for row in identity_matrix(self.rows)]
        self.rinv = [list(row) for row in identity_matrix(self.rows)]
        self.c = [list(row) for row in identity_matrix(self.cols)]
        self.cinv = [list(row) for row in identity_matrix(self.cols)]

    def swap_rows(self, i, k):
        if i == k:
            return
        self.w[i], self.w[k] = self.w[k], self.w[i]
        self.r[i], self.r[k] = self.r[k], self.r[i]
        for row in self.rinv:
            row[i], row[k] = row[k], row[i]

    def swap_cols(self, j, k):
        if j == k:
            return
        for row in self.w:
            row[j], row[k] = row[k], row[j]
        for row in self.c:
            row[j], row[k] = row[k], row[j]
        self.cinv[j], self.cinv[k] = self.cinv[k], self.cinv[j]

    def add_row(self, i, k, t):
        """row_i += t * row_k."""
        if t == 0:
            return
        wi, wk = self.w[i], self.w[k]
        for j in range(self.cols):
            wi[j] += t * wk[j]
        ri, rk = self.r[i], self.r[k]
        for j in range(self.rows):
            ri[j] += t * rk[j]
        for row in self.rinv:
            row[k] -= t * row[i]

    def add_col(self, j, k, t):
        """col_j += t * col_k."""
        if t == 0:
            return
        for row in self.w:
            row[j] += t * row[k]
        for row in self.c:
            row[j] += t * row[k]
        cj, ck = self.cinv[j], self.cinv[k]
        for s in range(self.cols):
            ck[s] -= t * cj[s]

    def negate_row(self, i):
        self.w[i] = [-x for x in self.w[i]]
        self.r[i] = [-x for x in self.r[i]]
        for row in self.rinv:
            row[i] = -row[i]


def smith_normal_form(M, cols=None):
    """Exact Smith normal form with unimodular transforms and inverses.

    `cols` disambiguates the width of a matrix with no rows (the empty
    tuple carries no shape).
    """
    M = tuple(tuple(int(x) for x in row) for row in M)
    rows = len(M)
    if rows:
        cols = len(M[0])
        if any(len(row) != cols for row in M):
            raise InvalidInput("ragged matrix")
    else:
        cols = 0 if cols is None else cols
    st = _Worker(M, rows, cols)
    n = min(rows, cols)
    t = 0
    while t < n:
        # find a pivot of least absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = st.w[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        st.swap_rows(t, pivot[0])
        st.swap_cols(t, pivot[1])
        # clear row and column t; restart if a remainder shrinks the pivot
        while True:
            p = st.w[t][t]
            dirty = False
            for i in range(t + 1, rows):
                x = st.w[i][t]
                if x:
                    st.add_row(i, t, -(x // p))
                    if st.w[i][t]:
                        st.swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, cols):
                x = st.w[t][j]
                if x:
                    st.add_col(j, t, -(x // p))
                    if st.w[t][j]:
                        st.swap_cols(t, j)
                        dirty = True
                        break
            if not dirty:
                break
        t += 1
    rank = t
    # divisibility chain: fold each later diagonal entry into earlier ones
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = st.w[i][i], st.w[i + 1][i + 1]
            if b % a != 0:
                changed = True
                st.add_col(i, i + 1, 1)
                # re-eliminate the 2x2 block
                while True:
                    p = st.w[i][i]
                    x = st.w[i + 1][i]
                    if x == 0:
                        break
                    st.add_row(i + 1, i, -(x // p))
                    if st.w[i + 1][i]:
                        st.swap_rows(i, i + 1)
                x = st.w[i][i + 1]
                if x:
                    st.add_col(i + 1, i, -(x // st.w[i][i]))
    for i in range(rank):
        if st.w[i][i] < 0:
            st.negate_row(i)
    diagonal = tuple(st.w[i][i] for i in range(n))
    return SNFResult(
        diagonal,
        tuple(tuple(row) for row in st.r),
        tuple(tuple(row) for row in st.c),
        tuple(tuple(row) for row in st.rinv),
        tuple(tuple(row) for row in st.cinv),
    )


# ---------------------------------------------------------------------------
# homology groups


@dataclass(frozen=True)
class HomologyGroup:
    """Z^rank plus cyclic torsion in divisor-chain order (entries > 1)."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise InvalidInput("negative rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise InvalidInput("torsion not in divisor-chain order")
        if any(t <= 1 for t in self.torsion):
            raise InvalidInput("torsion entries must exceed 1")

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_dict(self, degree=None):
        d = {"rank": self.rank, "torsion": list(self.torsion)}
        if degree is not None:
            d["degree"] = degree
        return d


def trim_homology(groups):
    """Drop trivial degrees; canonical form for comparisons."""
    return {d: g for d, g in groups.items() if not g.is_trivial}


def homology_equal(a, b):
    return trim_homology(a) == trim_homology(b)


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class ChainComplex:
    """Bounded Z-graded complex; boundaries[i] maps degree lo+i+1 -> lo+i."""

    lo: int
    ranks: tuple
    boundaries: tuple

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.ranks) - 1, 0):
            raise InvalidInput("need one boundary per adjacent pair of degrees")
        for i, M in enumerate(self.boundaries):
            if len(M) != self.ranks[i] or any(
                len(row) != self.ranks[i + 1] for row in M
            ):
                raise InvalidInput(
                    f"boundary into degree {self.lo + i} has the wrong shape"
                )
        object.__setattr__(
            self, "_hash", hash((self.lo, self.ranks, self.boundaries))
        )

    def __hash__(self):
        return self._hash

    @property
    def hi(self):
        return self.lo + len(self.ranks) - 1

    def rank(self, d):
        if self.lo <= d <= self.hi:
            return self.ranks[d - self.lo]
        return 0

    def boundary(self, d):
        """The matrix of the differential C_d -> C_{d-1}."""
        i = d - self.lo - 1
        if 0 <= i < len(self.boundaries):
            return self.boundaries[i]
        return zero_matrix(self.rank(d - 1), self.rank(d))

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def differential_squared_is_zero(self):
        return all(
            mat_eq_zero(mat_mul(self.boundary(d), self.boundary(d + 1)))
            for d in self.degrees()
        )

    def shift(self, k):
        """Degree shift; differentials kept verbatim (homology unaffected)."""
        return ChainComplex(self.lo + k, self.ranks, self.boundaries)

    def total_rank(self):
        return sum(self.ranks)


def zero_complex():
    return ChainComplex(0, (0,), ())


def make_complex(lo, ranks, boundaries):
    """Canonicalize: strip zero-rank padding at both ends."""
    ranks = list(ranks)
    boundaries = list(boundaries)
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
        boundaries.pop()
    while len(ranks) > 1 and ranks[0] == 0:
        ranks.pop(0)
        boundaries.pop(0)
        lo += 1
    if len(ranks) == 1 and ranks[0] == 0:
        return zero_complex()
    return ChainComplex(lo, tuple(ranks), tuple(boundaries))


def check_complex(C):
    if not C.differential_squared_is_zero():
        raise InvalidInput("differential does not square to zero")
    return C


@dataclass(frozen=True)
class ChainMap:
    """Degreewise integer matrices commuting with the boundaries."""

    source: ChainComplex
    target: ChainComplex
    mats: dict = None  # degree -> matrix

    def __post_init__(self):
        object.__setattr__(self, "mats", dict(self.mats or {}))

    def matrix(self, d):
        M = self.mats.get(d)
        if M is None:
            return zero_matrix(self.target.rank(d), self.source.rank(d))
        return M

    def commutes(self):
        src, tgt = self.source, self.target
        degrees = set(src.degrees()) | set(tgt.degrees())
        for d in degrees:
            left = mat_mul_shaped(
                self.matrix(d - 1),
                src.boundary(d),
                tgt.rank(d - 1),
                src.rank(d - 1),
                src.rank(d),
            )
            right = mat_mul_shaped(
                tgt.boundary(d),
                self.matrix(d),
                tgt.rank(d - 1),
                tgt.rank(d),
                src.rank(d),
            )
            if left != right:
                return False
        return True


def check_chain_map(f):
    for d in f.source.degrees():
        M = f.matrix(d)
        if len(M) != f.target.rank(d) or any(
            len(row) != f.source.rank(d) for row in M
        ):
            raise InvalidInput(f"chain map has wrong shape in degree {d}")
    if not f.commutes():
        raise InvalidInput("chain map does not commute with boundaries")
    return f


# ---------------------------------------------------------------------------
# homology


class _DegreeData:
    """SNF bookkeeping for one degree: cycles, presentation, coordinates."""

    def __init__(self, C, d):
        n = C.rank(d)
        snf_d = smith_normal_form(C.boundary(d), cols=n)
        r = snf_d.rank
        self.cycle_rank = n - r
        # columns r.. of col_transform span ker boundary(d)
        self.kernel_cols = tuple(
            tuple(snf_d.col_transform[i][j] for j in range(r, n))
            for i in range(n)
        )
        self.col_inverse = snf_d.col_inverse
        self.first_kernel_row = r
        # image of boundary(d+1) in kernel coordinates
        incoming = mat_mul(snf_d.col_inverse, C.boundary(d + 1))
        pres = tuple(
            incoming[i][:] for i in range(r, n)
        )
        self.presentation = tuple(tuple(row) for row in pres)
        psnf = smith_normal_form(self.presentation)
        self.psnf = psnf
        ppr = psnf.rank
        free = []
        torsion = []
        self.coord_slots = []  # (kind, position in psnf coords, modulus)
        for i in range(self.cycle_rank):
            dval = psnf.diagonal[i] if i < len(psnf.diagonal) else 0
            if i < ppr:
                if dval > 1:
                    torsion.append(dval)
                    self.coord_slots.append(("torsion", i, dval))
            else:
                free.append(i)
                self.coord_slots.append(("free", i, 0))
        self.coord_slots.sort(key=lambda s: (s[0] == "torsion", s[1]))
        self.group = HomologyGroup(len(free), tuple(sorted(torsion)))

    def cycle_coordinates(self, vec):
        """Coordinates of a cycle (column vector) in the homology
        presentation: free coordinates first, then torsion residues."""
        kc = mat_mul(self.col_inverse, tuple((x,) for x in vec))
        y = tuple(kc[i][0] for i in range(self.first_kernel_row, len(kc)))
        w = mat_mul(self.psnf.row_transform, tuple((x,) for x in y))
        out = []
        for kind, i, modulus in self.coord_slots:
            val = w[i][0]
            out.append(val % modulus if kind == "torsion" else val)
        return tuple(out)

    def generator_cycles(self):
        """One cycle per homology coordinate, as columns in C_d."""
        gens = []
        for kind, i, modulus in self.coord_slots:
            y = tuple(
                (self.psnf.row_inverse[s][i],) for s in range(self.cycle_rank)
            )
            vec = mat_mul(self.kernel_cols, y)
            gens.append(tuple(v[0] for v in vec))
        return gens


def _degree_data(C):
    check_complex(C)
    return {d: _DegreeData(C, d) for d in C.degrees()}


def homology(C):
    """Per-degree homology groups via Smith normal form; exact."""
    data = _degree_data(C)
    return {d: data[d].group for d in C.degrees()}


@dataclass(frozen=True)
class HomologyMap:
    """Induced map on homology, in the canonical presentations.

    For each degree: a matrix whose columns are the coordinates of the
    images of the source generators (free coordinates first, then torsion
    residues), together with both groups.
    """

    groups_source: dict
    groups_target: dict
    matrices: dict

    def matrix(self, d):
        return self.matrices.get(d)


def induced_homology_map(f):
    """The map on homology presentations induced by a chain map."""
    check_chain_map(f)
    src = _degree_data(f.source)
    tgt = _degree_data(f.target)
    matrices = {}
    degrees = sorted(set(f.source.degrees()) | set(f.target.degrees()))
    for d in degrees:
        sgroup = src[d].group if d in src else HomologyGroup(0)
        tgroup = tgt[d].group if d in tgt else HomologyGroup(0)
        scoords = sgroup.rank + len(sgroup.torsion)
        tcoords = tgroup.rank + len(tgroup.torsion)
        cols = []
        if d in src and d in tgt:
            F = f.matrix(d)
            for gen in src[d].generator_cycles():
                img = mat_mul(F, tuple((x,) for x in gen))
                cols.append(tgt[d].cycle_coordinates(tuple(v[0] for v in img)))
        else:
            cols = [(0,) * tcoords] * scoords
        matrices[d] = tuple(
            tuple(col[i] for col in cols) for i in range(tcoords)
        )
    gs = {d: (src[d].group if d in src else HomologyGroup(0)) for d in degrees}
    gt = {d: (tgt[d].group if d in tgt else HomologyGroup(0)) for d in degrees}
    return HomologyMap(gs, gt, matrices)


def mapping_cone_complex(f):
    """Algebraic cone of a chain map; acyclic iff f is a homology iso."""
    C, D = f.source, f.target
    lo = min(C.lo + 1, D.lo)
    hi = max(C.hi + 1, D.hi)
    ranks = tuple(C.rank(d - 1) + D.rank(d) for d in range(lo, hi + 1))
    boundaries = []
    for d in range(lo + 1, hi + 1):
        rows_c, rows_d = C.rank(d - 2), D.rank(d - 1)
        cols_c, cols_d = C.rank(d - 1), D.rank(d)
        dc = C.boundary(d - 1)
        dd = D.boundary(d)
        fm = f.matrix(d - 1)
        top = [
            tuple(-dc[i][j] for j in range(cols_c)) + (0,) * cols_d
            for i in range(rows_c)
        ]
        bottom = [
            tuple(fm[i][j] for j in range(cols_c))
            + tuple(dd[i][j] for j in range(cols_d))
            for i in range(rows_d)
        ]
        boundaries.append(tuple(top + bottom))
    return make_complex(lo, ranks, tuple(boundaries))


def is_homology_iso(f):
    """True iff f induces an isomorphism on homology in every degree."""
    check_chain_map(f)
    cone = mapping_cone_complex(f)
    return all(g.is_trivial for g in homology(cone).values())


# ---------------------------------------------------------------------------
# tensor products


def tensor(C, D):
    """C (x) D with the Koszul sign: d(x(x)y) = dx(x)y + (-1)^|x| x(x)dy."""
    if C.total_rank() == 0 or D.total_rank() == 0:
        return zero_complex()
    lo = C.lo + D.lo
    hi = C.hi + D.hi

    def basis(n):
        out = []
        for i in C.degrees():
            j = n - i
            if D.lo <= j <= D.hi:
                for a in range(C.rank(i)):
                    for b in range(D.rank(j)):
                        out.append((i, a, b))
        return out

    bases = {n: basis(n) for n in range(lo, hi + 1)}
    index = {
        n: {key: pos for pos, key in enumerate(bases[n])}
        for n in range(lo, hi + 1)
    }
    ranks = tuple(len(bases[n]) for n in range(lo, hi + 1))
    boundaries = []
    for n in range(lo + 1, hi + 1):
        rows = len(bases[n - 1])
        mat = [[0] * len(bases[n]) for _ in range(rows)]
        tgt_index = index[n - 1]
        for col, (i, a, b) in enumerate(bases[n]):
            dC = C.boundary(i)
            for ap in range(C.rank(i - 1)):
                coef = dC[ap][a]
                if coef:
                    mat[tgt_index[(i - 1, ap, b)]][col] += coef
            dD = D.boundary(n - i)
            sign = -1 if i % 2 else 1
            for bp in range(D.rank(n - i - 1)):
                coef = dD[bp][b]
                if coef:
                    mat[tgt_index[(i, a, bp)]][col] += sign * coef
        boundaries.append(tuple(tuple(row) for row in mat))
    return check_complex(make_complex(lo, ranks, tuple(boundaries)))


# ---------------------------------------------------------------------------
# chains of simplicial sets


def reduced_chain_complex(X):
    """Normalized chains on nondegenerate simplices, basepoint removed.

    Degree-d rank is the number of nondegenerate d-simplices (one less in
    degree 0); the boundary is the alternating face sum with degenerate
    faces dropped.
    """
    if not X.is_pointed:
        raise InvalidInput("reduced chains need a pointed simplicial set")
    top = X.top_dim

    def col_index(m):
        if m > 0:
            return {j: j for j in range(X.dims[m])}
        return {
            j: pos
            for pos, j in enumerate(
                jj for jj in range(X.dims[0]) if jj != X.basepoint
            )
        }

    indices = {m: col_index(m) for m in range(top + 1)}
    ranks = tuple(len(indices[m]) for m in range(top + 1))
    boundaries = []
    for m in range(1, top + 1):
        mat = [[0] * ranks[m] for _ in range(ranks[m - 1])]
        for j in range(X.dims[m]):
            for i, face in enumerate(X.faces[m][j]):
                if face.is_degenerate:
                    continue
                if m == 1 and face.index == X.basepoint:
                    continue
                row = indices[m - 1][face.index]
                mat[row][indices[m][j]] += -1 if i % 2 else 1
        boundaries.append(tuple(tuple(row) for row in mat))
    return check_complex(make_complex(0, ranks, tuple(boundaries)))


def reduced_homology(X):
    return homology(reduced_chain_complex(X))


def chain_map(f):
    """The chain map induced by a pointed simplicial map on reduced chains."""
    X, Y = f.source, f.target
    C = reduced_chain_complex(X)
    D = reduced_chain_complex(Y)

    def col_index(Z, m):
        if m > 0:
            return {j: j for j in range(Z.dims[m])}
        return {
            j: pos
            for pos, j in enumerate(
                jj for jj in range(Z.dims[0]) if jj != Z.basepoint
            )
        }

    mats = {}
    for m in range(X.top_dim + 1):
        rows = D.rank(m)
        cols = C.rank(m)
        mat = [[0] * cols for _ in range(rows)]
        if rows and cols:
            src_idx = col_index(X, m)
            tgt_idx = col_index(Y, m)
            for j in range(X.dims[m]):
                if m == 0 and j == X.basepoint:
                    continue
                img = f.images[m][j]
                if img.is_degenerate:
                    continue
                if m == 0 and img.index == Y.basepoint:
                    continue
                mat[tgt_idx[img.index]][src_idx[j]] = 1
        mats[m] = tuple(tuple(row) for row in mat)
    return check_chain_map(ChainMap(C, D, mats))
