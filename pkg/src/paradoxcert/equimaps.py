"""Catalog of equivariant maps between the spaces, plus a selftest harness.

Each map instance knows how to apply itself, how to sample domain points and
compatible acting-group pairs, and (when exact) how to lift target points
back through a section. The selftest draws (point, group element) samples
and measures f(g x) against g f(x): exact maps must agree identically,
float-lane maps within a tolerance.

Two maps have no exact backend and always run in the float lane: the
stereographic chart identifying the projective line over C (resp. H) with
S^2 (resp. S^4), and the induced rotation carrying a 2x2 unitary to the
orthogonal matrix it acts by on that sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GapCaseError, ParadoxError
from .linalg import (
    Matrix,
    block_embed_matrix,
    mat_vec,
    matmul,
    max_abs_diff,
    to_float_matrix,
)
from .sampling import (
    random_flag,
    random_projective_point,
    random_scalar,
    random_sphere_point,
    random_star_unitary,
    random_subspace,
    random_unitary,
    rng_for,
)
from .scalars import (
    Quaternion,
    RING_QUAT_FLOAT,
    RING_RATIONAL,
    abs_float,
    ring_of,
    to_float_scalar,
)
from .spaces import (
    FlagPoint,
    ProjectivePoint,
    SpherePoint,
    Subspace,
    act,
    equals,
    exact_ring_for_field,
    intersect,
    orthogonal_complement,
)


@dataclass
class MapInstance:
    """One concrete equivariant map with its sampling recipe."""

    name: str
    source: str
    target: str
    exact: bool
    apply: callable
    in_domain: callable
    section: callable | None
    sample_source: callable          # rng -> point
    sample_pair: callable            # rng -> (g_source, g_target) matrices
    kind: str = "equivariant"        # equivariant | homomorphism

    def __repr__(self):
        return f"MapInstance({self.name}: {self.source} -> {self.target})"


def _resample(f, rng, tries=100):
    for _ in range(tries):
        try:
            return f(rng)
        except (DomainError, GapCaseError):
            continue
    raise ParadoxError("could not sample a domain point")


# --------------------------------------------------------------------------
# sphere_drop: S^{k+1} minus poles -> equator copy of S^k (zero-padded)
# --------------------------------------------------------------------------

def sphere_drop(k: int) -> MapInstance:
    ambient = k + 2

    def apply(p: SpherePoint):
        if len(p.direction) != ambient:
            raise DomainError(f"expected a point of S^{k + 1}")
        head = p.direction[:-1]
        if p.exact:
            if not any(head):
                raise DomainError("poles have no equator image")
            zero = head[0] - head[0]
            # leading-1 form survives: the first nonzero entry is retained
            return SpherePoint(p.sign, head + (zero,), True)
        if all(abs(x) < 1e-12 for x in head):
            raise DomainError("poles have no equator image")
        return SpherePoint.from_vector(head + (0.0,))

    def in_domain(p):
        if p.exact:
            return any(p.direction[:-1])
        return any(abs(x) >= 1e-12 for x in p.direction[:-1])

    def section(q: SpherePoint):
        # the equator copy embeds in the source sphere as itself
        if q.exact and q.direction[-1]:
            raise DomainError("section expects a zero last coordinate")
        return q

    def sample_source(rng):
        return random_sphere_point(ambient, rng, avoid_zero_prefix=ambient - 1)

    def sample_pair(rng):
        g = random_star_unitary(k + 1, ambient, RING_RATIONAL, rng)
        return g, g

    return MapInstance(
        name=f"sphere_drop({k + 1})",
        source=f"sphere({k + 1}) minus poles",
        target=f"sphere({k})* in R^{ambient}",
        exact=True,
        apply=apply, in_domain=in_domain, section=section,
        sample_source=sample_source, sample_pair=sample_pair)


# --------------------------------------------------------------------------
# proj_drop: lines in K^n minus the e_n axis -> lines in K^{n-1} (padded)
# --------------------------------------------------------------------------

def proj_drop(field: str, n: int) -> MapInstance:
    ring = exact_ring_for_field(field)

    def apply(p: ProjectivePoint):
        if p.ambient_dim != n:
            raise DomainError(f"expected a line in K^{n}")
        rep = p.representative()
        head = rep[:-1]
        if p.exact:
            if not any(head):
                raise DomainError("the dropped coordinate axis has no image")
            zero = rep[0] - rep[0]
            return ProjectivePoint.from_vector(head + (zero,))
        if all(abs_float(x) < 1e-12 for x in head):
            raise DomainError("the dropped coordinate axis has no image")
        return ProjectivePoint.from_vector(head + (0.0 * rep[0],))

    def in_domain(p):
        rep = p.representative()
        if p.exact:
            return any(rep[:-1])
        return any(abs_float(x) >= 1e-12 for x in rep[:-1])

    def section(q: ProjectivePoint):
        rep = q.representative()
        if q.exact and rep[-1]:
            raise DomainError("section expects a line inside the hyperplane")
        return ProjectivePoint.from_vector(rep)

    def sample_source(rng):
        def draw(r):
            p = random_projective_point(n, ring, r)
            if not in_domain(p):
                raise DomainError("resample")
            return p
        return _resample(draw, rng)

    def sample_pair(rng):
        g = random_star_unitary(n - 1, n, ring, rng)
        return g, g

    return MapInstance(
        name=f"proj_drop({field},{n})",
        source=f"proj({field},{n}) minus the e_{n} axis",
        target=f"proj({field},{n - 1})* in K^{n}",
        exact=True,
        apply=apply, in_domain=in_domain, section=section,
        sample_source=sample_source, sample_pair=sample_pair)


# --------------------------------------------------------------------------
# grass_slice: V -> V n H_m for V not inside H_m, m = n0 + 1 - k
# --------------------------------------------------------------------------

def grass_slice(field: str, n0: int, k: int) -> MapInstance:
    ring = exact_ring_for_field(field)
    m = n0 + 1 - k
    hyper = Subspace.coordinate(n0, range(m), ring)
    hyper_float = Subspace(to_float_matrix(hyper.projector), hyper.dim)

    def _hyper_for(v):
        return hyper if v.exact else hyper_float

    def apply(v: Subspace):
        if v.ambient_dim != n0 or v.dim != k:
            raise DomainError(f"expected a {k}-plane in K^{n0}")
        h = _hyper_for(v)
        if h.contains(v):
            raise DomainError(
                "subspaces inside the hyperplane copy are excluded")
        x = intersect(v, h)
        if x.dim != 1:
            raise GapCaseError(
                f"slice intersection has dimension {x.dim}, not 1")
        return ProjectivePoint(x.projector)

    def in_domain(v):
        h = _hyper_for(v)
        if h.contains(v):
            return False
        return intersect(v, h).dim == 1

    def section(line: ProjectivePoint):
        rep = line.representative()
        if line.exact:
            inside = not any(rep[m:])
        else:
            inside = all(abs_float(x) < 1e-9 for x in rep[m:])
        if not inside:
            raise DomainError("section expects a line inside the hyperplane")
        cols = [rep]
        pad = ring_of(rep[0])
        z, o = pad.zero, pad.one
        for j in range(m, n0):
            cols.append(tuple(o if i == j else z for i in range(n0)))
        return Subspace.from_basis(cols)

    def sample_source(rng):
        def draw(r):
            v = random_subspace(n0, k, ring, r)
            x = intersect(v, hyper)
            if hyper.contains(v) or x.dim != 1:
                raise DomainError("resample")
            return v
        return _resample(draw, rng)

    def sample_pair(rng):
        g = random_star_unitary(m, n0, ring, rng)
        return g, g

    return MapInstance(
        name=f"grass_slice({field},{n0},{k})",
        source=f"grass({field},{n0},{k}) minus the hyperplane copy",
        target=f"proj({field},{m})* in K^{n0}",
        exact=True,
        apply=apply, in_domain=in_domain, section=section,
        sample_source=sample_source, sample_pair=sample_pair)


# --------------------------------------------------------------------------
# duality: V -> orthogonal complement, an involution Gr_k -> Gr_{n-k}
# --------------------------------------------------------------------------

def duality(field: str, n: int, k: int) -> MapInstance:
    ring = exact_ring_for_field(field)

    def apply(v: Subspace):
        if v.ambient_dim != n or v.dim != k:
            raise DomainError(f"expected a {k}-plane in K^{n}")
        return orthogonal_complement(v)

    def section(w: Subspace):
        return orthogonal_complement(w)

    def sample_source(rng):
        return random_subspace(n, k, ring, rng)

    def sample_pair(rng):
        g = random_unitary(n, ring, rng)
        return g, g

    return MapInstance(
        name=f"duality({field},{n},{k})",
        source=f"grass({field},{n},{k})",
        target=f"grass({field},{n},{n - k})",
        exact=True,
        apply=apply, in_domain=lambda v: True, section=section,
        sample_source=sample_source, sample_pair=sample_pair)


# --------------------------------------------------------------------------
# flag_to_grass: a flag to its i-th component
# --------------------------------------------------------------------------

def flag_to_grass(field: str, dims: tuple, i: int) -> MapInstance:
    ring = exact_ring_for_field(field)
    n = dims[-1]
    proper = dims[:-1]
    if not 0 <= i < len(proper):
        raise ParadoxError(f"component index {i} out of range")
    di = proper[i]

    def apply(f: FlagPoint):
        return f.components[i]

    def section(v: Subspace):
        """Deterministic flag completion around the given component."""
        from .linalg import column_space
        basis = list(column_space(v.projector))
        comps = []
        for d in proper[:i]:
            comps.append(Subspace.from_basis(basis[:d]))
        comps.append(v)
        # extend upward with coordinate vectors that increase the rank
        current = list(basis)
        pad = ring_of(basis[0][0]) if basis else ring
        z, o = pad.zero, pad.one
        for d in proper[i + 1:]:
            j = 0
            while len(current) < d:
                if j >= n:
                    raise ParadoxError("flag completion ran out of vectors")
                e = tuple(o if r == j else z for r in range(n))
                m = Matrix.from_columns(current + [e])
                from .linalg import rank
                if rank(m) == len(current) + 1:
                    current.append(e)
                j += 1
            comps.append(Subspace.from_basis(current[:d]))
        return FlagPoint(comps)

    def sample_source(rng):
        return random_flag(proper, n, ring, rng)

    def sample_pair(rng):
        g = random_unitary(n, ring, rng)
        return g, g

    dims_text = ",".join(str(d) for d in dims)
    return MapInstance(
        name=f"flag_to_grass({field};{dims_text};i={i})",
        source=f"flag({field};{dims_text})",
        target=f"grass({field},{n},{di})",
        exact=True,
        apply=apply, in_domain=lambda f: True, section=section,
        sample_source=sample_source, sample_pair=sample_pair)


# --------------------------------------------------------------------------
# stereographic chart: projective line over C/H to S^2/S^4 (float lane)
# --------------------------------------------------------------------------

def _scalar_to_real_coords(q):
    """Flatten a float complex/quaternion into real coordinates."""
    if isinstance(q, complex):
        return [q.real, q.imag]
    if isinstance(q, Quaternion):
        return [q.w, q.x, q.y, q.z]
    return [float(q)]


def _chart_point_to_sphere(q) -> SpherePoint:
    """[q : 1] -> (2q, |q|^2 - 1) / (|q|^2 + 1)."""
    coords = _scalar_to_real_coords(q)
    norm_sq = sum(c * c for c in coords)
    scale = 1.0 / (norm_sq + 1.0)
    vec = tuple(2.0 * c * scale for c in coords) + ((norm_sq - 1.0) * scale,)
    return SpherePoint(1, vec, exact=False)


def _sphere_dim(field: str) -> int:
    return 2 if field == "C" else 4


def stereographic_apply(field: str, line: ProjectivePoint) -> SpherePoint:
    if line.ambient_dim != 2:
        raise DomainError("expected a line in K^2")
    rep = line.representative()
    if line.exact:
        v1, v2 = rep
        if not v2:
            # the line [1 : 0] maps to the north pole
            d = _sphere_dim(field)
            return SpherePoint(1, (0.0,) * d + (1.0,), exact=False)
        q = to_float_scalar(v1 * v2.inverse())
        return _chart_point_to_sphere(q)
    v1, v2 = rep
    if abs_float(v2) < 1e-14 * max(1.0, abs_float(v1)):
        d = _sphere_dim(field)
        return SpherePoint(1, (0.0,) * d + (1.0,), exact=False)
    if isinstance(v2, complex):
        q = v1 / v2
    else:
        q = v1 * v2.inverse()
    return _chart_point_to_sphere(q)


def stereographic_lift(field: str, p: SpherePoint) -> ProjectivePoint:
    """Inverse chart: a float sphere point to the float line through it."""
    vec = p.to_float_vector()
    h = vec[-1]
    if 1.0 - h < 1e-14:
        if field == "C":
            v = (complex(1.0), complex(0.0))
        else:
            v = (RING_QUAT_FLOAT.one, RING_QUAT_FLOAT.zero)
        return ProjectivePoint.from_vector(v)
    scale = 1.0 / (1.0 - h)
    coords = [c * scale for c in vec[:-1]]
    if field == "C":
        q = complex(coords[0], coords[1])
        v = (q, complex(1.0))
    else:
        q = Quaternion(coords[0], coords[1], coords[2], coords[3])
        v = (q, RING_QUAT_FLOAT.one)
    return ProjectivePoint.from_vector(v)


def induced_rotation(field: str, g: Matrix) -> Matrix:
    """The orthogonal matrix by which a 2x2 unitary acts on S^2 / S^4.

    Solved from chart samples by least squares: rows are stereographic
    images of a spanning set of lines and of their g-translates. Float lane
    only; callers check orthogonality and residuals.
    """
    if g.rows != 2 or g.cols != 2:
        raise DomainError("expected a 2x2 unitary")
    ring = g.scalar_ring()
    if field == "C":
        charts = [complex(c) for c in
                  (0, 1, -1, 1j, -1j, 2, 1 + 1j, 3 - 2j)]
        mk = lambda q: (q, complex(1.0))
        inf_line = (complex(1.0), complex(0.0))
    else:
        o, z = 1.0, 0.0
        qs = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0),
              (0, 0, 0, 1), (-1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0),
              (1, 0, 0, 1), (2, -1, 0, 0), (0, 1, 1, 0), (1, -1, 1, -1)]
        charts = [Quaternion(float(a), float(b), float(c), float(d))
                  for a, b, c, d in qs]
        mk = lambda q: (q, Quaternion(o, z, z, z))
        inf_line = (Quaternion(o, z, z, z), Quaternion(z, z, z, z))
    gf = to_float_matrix(g) if ring.exact else g
    sources, targets = [], []
    lines = [mk(q) for q in charts] + [inf_line]
    for v in lines:
        line = ProjectivePoint.from_vector(v)
        s = stereographic_apply(field, line)
        t = stereographic_apply(field, act(gf, line))
        sources.append(s.to_float_vector())
        targets.append(t.to_float_vector())
    a = np.array(sources, dtype=float)
    b = np.array(targets, dtype=float)
    # rows satisfy R s_i = t_i, so solve a R^T = b
    rt, *_ = np.linalg.lstsq(a, b, rcond=None)
    r = rt.T
    return Matrix(tuple(tuple(float(x) for x in row) for row in r))


def _random_su2_like(field: str, rng) -> Matrix:
    ring = exact_ring_for_field(field)
    return random_unitary(2, ring, rng)


def stereographic(field: str) -> MapInstance:
    if field not in ("C", "H"):
        raise ParadoxError("stereographic charts exist for C and H only")
    ring = exact_ring_for_field(field)
    d = _sphere_dim(field)

    def apply(line):
        return stereographic_apply(field, line)

    def sample_source(rng):
        return random_projective_point(2, ring, rng)

    def sample_pair(rng):
        g = _random_su2_like(field, rng)
        return g, induced_rotation(field, g)

    return MapInstance(
        name=f"stereographic({field})",
        source=f"proj({field},2)",
        target=f"sphere({d})",
        exact=False,
        apply=apply, in_domain=lambda p: True, section=None,
        sample_source=sample_source, sample_pair=sample_pair)


def induced_rotation_map(field: str) -> MapInstance:
    """Homomorphism checks for the induced rotation itself."""
    if field not in ("C", "H"):
        raise ParadoxError("induced rotations exist for C and H only")
    d = _sphere_dim(field)

    def apply(g):
        return induced_rotation(field, g)

    def sample_source(rng):
        return _random_su2_like(field, rng)

    return MapInstance(
        name=f"induced_rotation({field})",
        source=f"U(2)-like over {field}",
        target=f"SO({d + 1}) (float)",
        exact=False,
        apply=apply, in_domain=lambda g: True, section=None,
        sample_source=sample_source, sample_pair=None,
        kind="homomorphism")


# --------------------------------------------------------------------------
# selftest harness
# --------------------------------------------------------------------------

def _deviation(p, q) -> float:
    """Float distance between two points of the same space type."""
    if isinstance(p, SpherePoint):
        from .linalg import max_abs_diff_vec
        return max_abs_diff_vec(p.to_float_vector(), q.to_float_vector())
    if isinstance(p, Subspace):
        return max_abs_diff(p.projector, q.projector)
    if isinstance(p, FlagPoint):
        return max(_deviation(a, b)
                   for a, b in zip(p.components, q.components))
    raise ParadoxError(f"cannot compare {p!r}")


def _check_equivariance_once(m: MapInstance, rng, tol: float):
    x = _resample(lambda r: m.sample_source(r), rng)
    g_src, g_tgt = m.sample_pair(rng)
    try:
        lhs = m.apply(act(g_src, x))
    except (DomainError, GapCaseError):
        return None  # g moved x out of the domain; counted, not a failure
    rhs = act(g_tgt, m.apply(x))
    if m.exact:
        return 0.0 if equals(lhs, rhs, 0.0) else float("inf")
    return _deviation(lhs, rhs)


def _check_homomorphism_once(m: MapInstance, rng, tol: float):
    g = m.sample_source(rng)
    h = m.sample_source(rng)
    rg, rh = m.apply(g), m.apply(h)
    rgh = m.apply(matmul(g, h))
    dev = max_abs_diff(rgh, matmul(rg, rh))
    # orthogonality of each output
    n = rg.rows
    from .scalars import RING_FLOAT
    ident = Matrix.identity(n, RING_FLOAT)
    dev_orth = max_abs_diff(matmul(rg.transpose(), rg), ident)
    return max(dev, dev_orth)


def selftest(m: MapInstance, samples: int, seed, tol: float = 1e-9) -> dict:
    """Sampled equivariance (or homomorphism) checks for one map."""
    worst = 0.0
    failures = 0
    skipped = 0
    ran = 0
    for i in range(samples):
        rng = rng_for(seed, "selftest", m.name, i)
        if m.kind == "homomorphism":
            dev = _check_homomorphism_once(m, rng, tol)
        else:
            dev = _check_equivariance_once(m, rng, tol)
        if dev is None:
            skipped += 1
            continue
        ran += 1
        if dev > worst:
            worst = dev
        if dev > tol:
            failures += 1
    return {
        "map": m.name,
        "samples": ran,
        "skipped": skipped,
        "failures": failures,
        "max_deviation": worst,
        "exact": m.exact,
        "ok": failures == 0,
    }


def corrupted(m: MapInstance) -> MapInstance:
    """Negative control: post-compose with a fixed nontrivial motion."""
    import copy

    def bad_apply(x):
        y = m.apply(x)
        if isinstance(y, SpherePoint):
            vec = y.to_float_vector()
            # swap two coordinates: almost never commutes with the action
            v = (vec[1], vec[0]) + vec[2:]
            return SpherePoint(1, v, exact=False) if not y.exact else \
                SpherePoint(y.sign, (y.direction[1], y.direction[0])
                            + y.direction[2:], True)
        if isinstance(y, ProjectivePoint):
            rep = y.representative()
            v = (rep[1], rep[0]) + rep[2:]
            return ProjectivePoint.from_vector(v)
        if isinstance(y, Subspace):
            p = y.projector
            perm = list(range(p.rows))
            perm[0], perm[1] = perm[1], perm[0]
            newp = Matrix(tuple(p.data[perm[i]][perm[j]]
                                for j in range(p.cols))
                          for i in range(p.rows))
            return Subspace(newp, y.dim)
        if isinstance(y, FlagPoint):
            raise ParadoxError("corrupt a component map instead")
        return y

    out = copy.copy(m)
    out.name = f"corrupted:{m.name}"
    out.apply = bad_apply
    return out


def default_catalog() -> list:
    """Representative instances used by the bulk selftest."""
    return [
        sphere_drop(2),
        sphere_drop(3),
        proj_drop("R", 4),
        proj_drop("C", 3),
        proj_drop("H", 3),
        grass_slice("R", 4, 2),
        grass_slice("C", 4, 2),
        duality("R", 4, 2),
        duality("R", 4, 3),
        duality("C", 3, 1),
        duality("H", 3, 1),
        flag_to_grass("R", (1, 2, 3), 0),
        flag_to_grass("C", (1, 2, 3), 1),
        stereographic("C"),
        stereographic("H"),
        induced_rotation_map("C"),
        induced_rotation_map("H"),
    ]
