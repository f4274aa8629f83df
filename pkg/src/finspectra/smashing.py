"""Products, smash products, and their canonical coherence isomorphisms.

A nondegenerate m-simplex of X x Y is a pair of formal m-simplices whose
degeneracy words are disjoint (the shuffle criterion); a general pair is
renormalized by stripping the largest shared degeneracy index, largest
first.  The smash X ^ Y collapses the wedge axes of the product to the
basepoint.  Every coherence map (swap, units, associator, interchange) is
built by rewriting representative pairs and is validated simplex by
simplex; nothing is taken on faith from abstract coherence.

Results are cached by value, so repeated constructions of the same smash
return the identical object and pointer-equality fast paths apply.
"""

from .colimits import collapse_subcomplex
from .config import InvalidInput, check_dim
from .simplicial import (
    FiniteSimplicialSet,
    FormalSimplex,
    SimplicialMap,
    check_map,
    degenerate_word,
    identity_map,
    inverse,
    is_isomorphism,
    make_sset,
    trivial_formal,
)


class ProductData:
    """X x Y with a codec between product simplices and component pairs."""

    def __init__(self, X, Y):
        check_dim(X.top_dim + Y.top_dim, "product")
        self.X, self.Y = X, Y
        top = X.top_dim + Y.top_dim
        pair_table = []
        index = []
        for m in range(top + 1):
            fx = X.all_formal(m)
            fy = Y.all_formal(m)
            pairs = [
                (u, v)
                for u in fx
                for v in fy
                if not set(u.word) & set(v.word)
            ]
            pairs.sort()
            pair_table.append(pairs)
            index.append({pair: j for j, pair in enumerate(pairs)})
        self._pair_table = pair_table
        self._index = index

        dims = [len(p) for p in pair_table]
        faces = [()]
        for m in range(1, top + 1):
            per_dim = []
            for u, v in pair_table[m]:
                per_dim.append(
                    tuple(
                        self.from_components(X.face(u, i), Y.face(v, i))
                        for i in range(m + 1)
                    )
                )
            faces.append(tuple(per_dim))
        basepoint = None
        if X.is_pointed and Y.is_pointed:
            basepoint = self._index[0][
                (trivial_formal(0, X.basepoint), trivial_formal(0, Y.basepoint))
            ]
        self.space = make_sset(dims, faces, basepoint)

    def components(self, fs):
        """The pair of factor simplices underlying a formal product simplex."""
        u, v = self._pair_table[fs.dim][fs.index]
        return degenerate_word(u, fs.word), degenerate_word(v, fs.word)

    def from_components(self, u, v):
        """The formal product simplex with the given components."""
        if u.total_dim != v.total_dim:
            raise InvalidInput("component dimensions differ")
        word = []
        while True:
            common = set(u.word) & set(v.word)
            if not common:
                break
            k = max(common)
            word.append(k)
            u = self.X.face(u, k)
            v = self.Y.face(v, k)
        j = self._index[u.total_dim][(u, v)]
        return FormalSimplex(tuple(word), u.total_dim, j)


_product_cache = {}


def product_data(X, Y):
    key = (X, Y)
    data = _product_cache.get(key)
    if data is None:
        data = ProductData(X, Y)
        _product_cache[key] = data
    return data


def product(X, Y):
    """The levelwise product, nondegenerate simplices via shuffles."""
    return product_data(X, Y).space


class SmashData:
    """X ^ Y = (X x Y)/(X v Y) with a codec through the product."""

    def __init__(self, X, Y):
        if not (X.is_pointed and Y.is_pointed):
            raise InvalidInput("smash needs pointed inputs")
        self.X, self.Y = X, Y
        self.prod = product_data(X, Y)
        xbp, ybp = X.basepoint, Y.basepoint

        def in_wedge(fs):
            u, v = self.prod.components(fs)
            return (u.dim == 0 and u.index == xbp) or (
                v.dim == 0 and v.index == ybp
            )

        self.quot = collapse_subcomplex(self.prod.space, in_wedge)
        self.space = self.quot.space
        self.projection = self.quot.projection

    def from_components(self, u, v):
        """Image in the smash of a pair of factor simplices."""
        return self.quot.class_of(self.prod.from_components(u, v))

    def components(self, fs):
        """Components of a representative product simplex of a smash simplex."""
        return self.prod.components(self.quot.lift(fs))


_smash_cache = {}


def smash_data(X, Y):
    key = (X, Y)
    data = _smash_cache.get(key)
    if data is None:
        data = SmashData(X, Y)
        _smash_cache[key] = data
    return data


def smash(X, Y):
    """(X x Y)/(X v Y)."""
    return smash_data(X, Y).space


def clear_caches():
    _product_cache.clear()
    _smash_cache.clear()


# ---------------------------------------------------------------------------
# spheres


def s0():
    """S^0: two vertices, the second one the basepoint."""
    return FiniteSimplicialSet((2,), ((),), 1)


def circle():
    """S^1 = Delta[1]/boundary: one vertex, one edge."""
    v = trivial_formal(0, 0)
    return FiniteSimplicialSet((1, 1), ((), ((v, v),)), 0)


_sphere_cache = {}


def simplicial_sphere(n):
    """S^n as the right-nested smash S^1 ^ (S^1 ^ ... ^ S^0-free tail).

    S^0 is two points, S^1 the one-edge circle, and S^n = S^1 ^ S^(n-1)
    for n >= 2; reduced homology is Z concentrated in degree n.
    """
    if n < 0:
        raise InvalidInput("sphere dimension must be nonnegative")
    check_dim(n, "sphere")
    if n not in _sphere_cache:
        if n == 0:
            _sphere_cache[n] = s0()
        elif n == 1:
            _sphere_cache[n] = circle()
        else:
            _sphere_cache[n] = smash(circle(), simplicial_sphere(n - 1))
    return _sphere_cache[n]


def suspend(X):
    """One smash with S^1 on the right; the free-extension step."""
    return smash(X, circle())


def suspend_map(f):
    """f ^ id_{S^1}."""
    return smash_map(f, identity_map(circle()))


# ---------------------------------------------------------------------------
# maps between smashes


def _build_map(source, target, image_of, what):
    images = tuple(
        tuple(image_of(m, j) for j in range(source.dims[m]))
        for m in range(source.top_dim + 1)
    )
    return check_map(SimplicialMap(source, target, images), what)


def smash_map(f, g):
    """f ^ g between the corresponding smashes."""
    sd = smash_data(f.source, g.source)
    td = smash_data(f.target, g.target)

    def image_of(m, j):
        u, v = sd.components(trivial_formal(m, j))
        return td.from_components(f.apply(u), g.apply(v))

    return _build_map(sd.space, td.space, image_of, "smash of maps")


def smash_map_left(f, Y):
    """f ^ id_Y."""
    return smash_map(f, identity_map(Y))


def smash_map_right(X, g):
    """id_X ^ g."""
    return smash_map(identity_map(X), g)


def swap_iso(X, Y):
    """The twist X ^ Y -> Y ^ X."""
    sd = smash_data(X, Y)
    td = smash_data(Y, X)

    def image_of(m, j):
        u, v = sd.components(trivial_formal(m, j))
        return td.from_components(v, u)

    return _build_map(sd.space, td.space, image_of, "twist")


def left_unit(Y):
    """S^0 ^ Y -> Y, the canonical unit isomorphism."""
    sd = smash_data(s0(), Y)

    def image_of(m, j):
        u, v = sd.components(trivial_formal(m, j))
        return v

    return _build_map(sd.space, Y, image_of, "left unit")


def right_unit(X):
    """X ^ S^0 -> X."""
    sd = smash_data(X, s0())

    def image_of(m, j):
        u, v = sd.components(trivial_formal(m, j))
        return u

    return _build_map(sd.space, X, image_of, "right unit")


def associator(X, Y, Z):
    """(X ^ Y) ^ Z -> X ^ (Y ^ Z)."""
    sd_xy = smash_data(X, Y)
    src = smash_data(sd_xy.space, Z)
    sd_yz = smash_data(Y, Z)
    tgt = smash_data(X, sd_yz.space)

    def image_of(m, j):
        w, c = src.components(trivial_formal(m, j))
        u, v = sd_xy.components(w)
        return tgt.from_components(u, sd_yz.from_components(v, c))

    return _build_map(src.space, tgt.space, image_of, "associator")


def interchange(X, Y, Z):
    """(X ^ Y) ^ Z -> (X ^ Z) ^ Y, commuting the last two factors."""
    sd_xy = smash_data(X, Y)
    src = smash_data(sd_xy.space, Z)
    sd_xz = smash_data(X, Z)
    tgt = smash_data(sd_xz.space, Y)

    def image_of(m, j):
        w, c = src.components(trivial_formal(m, j))
        u, v = sd_xy.components(w)
        return tgt.from_components(sd_xz.from_components(u, c), v)

    return _build_map(src.space, tgt.space, image_of, "interchange")


def inner_interchange(X, K):
    """X ^ (K ^ S^1) -> (X ^ S^1) ^ K, the structure-map shuffle."""
    sd_ks = smash_data(K, circle())
    src = smash_data(X, sd_ks.space)
    sd_xs = smash_data(X, circle())
    tgt = smash_data(sd_xs.space, K)

    def image_of(m, j):
        u, w = src.components(trivial_formal(m, j))
        v, c = sd_ks.components(w)
        return tgt.from_components(sd_xs.from_components(u, c), v)

    return _build_map(src.space, tgt.space, image_of, "inner interchange")


def iso_inverse(f):
    if not is_isomorphism(f):
        raise InvalidInput("expected an isomorphism")
    return inverse(f)
