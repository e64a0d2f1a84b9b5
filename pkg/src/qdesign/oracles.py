"""Independent verification oracles for design-order answers.

Two cross-checks that share no code path with the lattice solver:

* ``collision_exists`` asks the dual question in occupation space: whether
  two distinct nonnegative sector occupation vectors of weight at most t
  agree on every constraint projection.  A minimum-cost kernel vector of
  cost c splits into exactly such a pair at weight c, so the order answer
  t_max must make collisions appear first at t_max + 1.

* ``commutant_check`` compares moment operators directly: the t-th moments
  of the k-local symmetric gate ensemble match the full symmetric ensemble
  exactly when the commutants of the t-fold lifted algebras have equal
  dimension.  Everything is computed over exact Gaussian rationals, so the
  dimensions are integers, not numerical estimates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvariantError, PreconditionError, ResourceLimitError
from .symmetry import ConstraintSystem, IrrepTable, SymmetrySpec

DEFAULT_COLLISION_BUDGET = 10_000_000
MOMENT_SIZE_CAP = 6  # largest allowed n * t for the commutant comparison


# ---------------------------------------------------------------------------
# occupation-collision oracle


@dataclass(frozen=True)
class CollisionReport:
    t: int
    found: bool
    pair: tuple[tuple[int, ...], tuple[int, ...]] | None


def collision_exists(
    table: IrrepTable,
    system: ConstraintSystem,
    t: int,
    budget: int = DEFAULT_COLLISION_BUDGET,
) -> CollisionReport:
    """First pair of distinct occupation vectors sharing all projections.

    Enumerates y >= 0 with <m, y> <= t grade by grade (and in lexicographic
    order within a grade), bucketing by the tuple of constraint-row values;
    the first bucket collision therefore happens at the minimal weight.
    """
    if t < 0:
        raise PreconditionError(f"need t >= 0, got {t}")
    m = table.multiplicities
    L = len(m)
    rows = system.rows
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    nodes = 0
    y = [0] * L

    def scan(pos: int, remaining: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ResourceLimitError(
                f"collision enumeration budget exhausted at weight <= {t}"
            )
        if pos == L - 1:
            q, r = divmod(remaining, m[pos])
            if r:
                return None
            y[pos] = q
            vec = tuple(y)
            key = tuple(sum(a * b for a, b in zip(row, vec)) for row in rows)
            prior = seen.get(key)
            if prior is not None:
                return prior, vec
            seen[key] = vec
            y[pos] = 0
            return None
        for val in range(remaining // m[pos] + 1):
            y[pos] = val
            hit = scan(pos + 1, remaining - val * m[pos])
            if hit:
                return hit
        y[pos] = 0
        return None

    for grade in range(t + 1):
        hit = scan(0, grade)
        if hit:
            return CollisionReport(t, True, hit)
    return CollisionReport(t, False, None)


def collision_pair_from_vector(vector) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a balanced kernel vector x into the colliding pair (x+, x-)."""
    plus = tuple(v if v > 0 else 0 for v in vector)
    minus = tuple(-v if v < 0 else 0 for v in vector)
    return plus, minus


# ---------------------------------------------------------------------------
# exact Gaussian-rational scalars and sparse matrices


class GaussianRational:
    """Exact complex number a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        o = _coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        o = _coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)

# Sparse matrices are dicts {row: {col: GaussianRational}} with zero entries
# absent; the ambient dimension travels separately.


def _mat_set(mat, r, c, v):
    if v:
        mat.setdefault(r, {})[c] = v


def _mat_add(mat, r, c, v):
    row = mat.setdefault(r, {})
    new = row.get(c, GR_ZERO) + v
    if new:
        row[c] = new
    else:
        row.pop(c, None)
        if not row:
            mat.pop(r, None)


def _is_diagonal(mat) -> bool:
    return all(r == c for r, row in mat.items() for c in row)


# ---------------------------------------------------------------------------
# sparse exact elimination


def _sparse_rank(rows) -> int:
    """Rank of a list of sparse rows {index: GaussianRational} over Q(i)."""
    pivots: dict[int, dict] = {}
    for row in rows:
        work = {j: v for j, v in row.items() if v}
        while work:
            j = min(work)
            piv = pivots.get(j)
            if piv is None:
                inv = work[j]
                pivots[j] = {c: v / inv for c, v in work.items()}
                break
            f = work[j]
            for c, v in piv.items():
                new = work.get(c, GR_ZERO) - f * v
                if new:
                    work[c] = new
                else:
                    work.pop(c, None)
    return len(pivots)


def _sparse_nullspace(rows, num_unknowns: int):
    """Basis of the nullspace of sparse rows, as sparse vectors."""
    pivots: dict[int, dict] = {}
    for row in rows:
        work = {j: v for j, v in row.items() if v}
        # reduce against existing (mutually reduced) pivot rows
        while True:
            hit = next((j for j in sorted(work) if j in pivots), None)
            if hit is None:
                break
            f = work[hit]
            for c, v in pivots[hit].items():
                new = work.get(c, GR_ZERO) - f * v
                if new:
                    work[c] = new
                else:
                    work.pop(c, None)
        if not work:
            continue
        j = min(work)
        inv = work[j]
        work = {c: v / inv for c, v in work.items()}
        for prow in pivots.values():
            if j in prow:
                f = prow[j]
                for c, v in work.items():
                    new = prow.get(c, GR_ZERO) - f * v
                    if new:
                        prow[c] = new
                    else:
                        prow.pop(c, None)
        pivots[j] = work
    basis = []
    for f_col in range(num_unknowns):
        if f_col in pivots:
            continue
        vec = {f_col: GR_ONE}
        for p_col, prow in pivots.items():
            coeff = prow.get(f_col)
            if coeff:
                vec[p_col] = -coeff
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# symmetric operator algebras


def _weight(u: int) -> int:
    return bin(u).count("1")


def _collective_paulis(n: int):
    """Sparse sum-of-single-site X, Y, Z operators on n qubits."""
    sx: dict = {}
    sy: dict = {}
    sz: dict = {}
    for u in range(1 << n):
        _mat_add(sz, u, u, GaussianRational(n - 2 * _weight(u)))
        for q in range(n):
            bit = 1 << (n - 1 - q)
            _mat_add(sx, u ^ bit, u, GR_ONE)
            # Y maps |0> to i|1> and |1> to -i|0>
            _mat_add(sy, u ^ bit, u, GR_I if not u & bit else -GR_I)
    return sx, sy, sz


def _matrix_units(dim: int, classes) -> list:
    """All matrix units e_{ab} with a, b in the same class."""
    gens = []
    for cls in classes:
        for a in cls:
            for b in cls:
                gens.append({a: {b: GR_ONE}})
    return gens


def _local_symmetric_basis(spec: SymmetrySpec, nq: int) -> list:
    """Basis of the algebra of nq-qubit operators commuting with the symmetry."""
    dim = 1 << nq
    if spec.kind == "z2":
        classes = [
            [u for u in range(dim) if _weight(u) % 2 == 0],
            [u for u in range(dim) if _weight(u) % 2 == 1],
        ]
        return _matrix_units(dim, classes)
    if spec.kind == "u1":
        classes = [[u for u in range(dim) if _weight(u) == w] for w in range(nq + 1)]
        return _matrix_units(dim, classes)
    if spec.kind == "su2":
        # unknowns: entries within equal-weight blocks (commutation with the
        # diagonal collective Z); rows: commutation with collective X and Y.
        allowed = [
            (a, b) for a in range(dim) for b in range(dim) if _weight(a) == _weight(b)
        ]
        sx, sy, _ = _collective_paulis(nq)
        rows = _commutation_rows([sx, sy], allowed)
        basis = []
        for vec in _sparse_nullspace(rows, len(allowed)):
            mat: dict = {}
            for idx, v in vec.items():
                a, b = allowed[idx]
                _mat_set(mat, a, b, v)
            basis.append(mat)
        return basis
    raise PreconditionError("moment oracle supports built-in symmetries only")


def _commutation_rows(mats, allowed):
    """Sparse equations [M, L] = 0 in the unknown entries L[a][b] of allowed."""
    rows = []
    for M in mats:
        cols: dict[int, dict] = {}
        for r, row in M.items():
            for c, v in row.items():
                cols.setdefault(c, {})[r] = v
        eqs: dict[tuple[int, int], dict] = {}
        for idx, (a, b) in enumerate(allowed):
            # M @ L picks up L[a][b] in entries (r, b) with M[r][a] != 0
            for r, v in cols.get(a, {}).items():
                d = eqs.setdefault((r, b), {})
                d[idx] = d.get(idx, GR_ZERO) + v
            # L @ M picks it up in entries (a, c) with M[b][c] != 0
            for c, v in M.get(b, {}).items():
                d = eqs.setdefault((a, c), {})
                d[idx] = d.get(idx, GR_ZERO) - v
        rows.extend(eqs.values())
    return rows


def _embed(local: dict, nq: int, positions, n: int) -> dict:
    """Lift an nq-qubit sparse operator onto chosen positions of n qubits."""
    rest = [q for q in range(n) if q not in positions]
    out: dict = {}
    for r_loc, row in local.items():
        for c_loc, v in row.items():
            for w in range(1 << len(rest)):
                r_full = 0
                c_full = 0
                for i, q in enumerate(positions):
                    bit = 1 << (n - 1 - q)
                    if r_loc & (1 << (nq - 1 - i)):
                        r_full |= bit
                    if c_loc & (1 << (nq - 1 - i)):
                        c_full |= bit
                for i, q in enumerate(rest):
                    if w & (1 << (len(rest) - 1 - i)):
                        r_full |= 1 << (n - 1 - q)
                        c_full |= 1 << (n - 1 - q)
                _mat_add(out, r_full, c_full, v)
    return out


def symmetric_algebra_generators(spec: SymmetrySpec, n: int, k: int | None) -> list:
    """Generators of the k-local symmetric gate algebra on n qubits.

    With k None, returns a basis of the full n-qubit symmetric algebra;
    otherwise the union over all k-subsets of the local symmetric algebras,
    each embedded with identity elsewhere.  Both sets are closed under
    conjugate transpose, so their commutants are genuine *-algebra
    commutants.
    """
    if n < 1:
        raise PreconditionError(f"need n >= 1, got n={n}")
    if k is None:
        return _local_symmetric_basis(spec, n)
    if not 2 <= k <= n - 1:
        raise PreconditionError(f"need 2 <= k <= n-1, got n={n}, k={k}")
    local = _local_symmetric_basis(spec, k)
    gens = []
    for positions in combinations(range(n), k):
        for mat in local:
            gens.append(_embed(mat, k, positions, n))
    return gens


# ---------------------------------------------------------------------------
# moment-operator commutants


def _omega(mat: dict, dim: int, t: int) -> dict:
    """Sum of the t single-slot embeddings of mat on the t-fold space."""
    out: dict = {}
    rest_count = dim ** (t - 1)
    for s in range(t):
        hi = dim ** (t - 1 - s)
        for r, row in mat.items():
            for c, v in row.items():
                for w in range(rest_count):
                    upper, lower = divmod(w, hi)
                    base = upper * hi * dim
                    r_full = base + r * hi + lower
                    c_full = base + c * hi + lower
                    _mat_add(out, r_full, c_full, v)
    return out


def _commutant_dimension(mats, dim: int) -> int:
    """dim of {L : [L, M] = 0 for all M} inside dim x dim complex matrices.

    Diagonal members first partition the index set by their joint diagonal
    signature (L must vanish between different signatures); the remaining
    members contribute sparse linear conditions on the surviving entries.
    """
    diags = [M for M in mats if _is_diagonal(M)]
    others = [M for M in mats if not _is_diagonal(M)]
    groups: dict[tuple, list[int]] = {}
    for u in range(dim):
        key = tuple(M.get(u, {}).get(u, GR_ZERO) for M in diags)
        groups.setdefault(key, []).append(u)
    allowed = []
    for cls in groups.values():
        for a in cls:
            for b in cls:
                allowed.append((a, b))
    rows = _commutation_rows(others, allowed)
    return len(allowed) - _sparse_rank(rows)


@dataclass(frozen=True)
class CommutantReport:
    t: int
    dim_gateset: int
    dim_full: int

    @property
    def is_design(self) -> bool:
        return self.dim_gateset == self.dim_full


def commutant_check(
    spec: SymmetrySpec,
    n: int,
    k: int | None,
    t: int,
    gate_generators=None,
) -> CommutantReport:
    """Whether k-local symmetric circuits reproduce t-th moments exactly.

    Compares the commutant dimension of the t-fold lifted gate algebra with
    that of the t-fold lifted full symmetric algebra; equality is exactly
    the t-design property.  ``gate_generators`` substitutes an explicit gate
    algebra (used by the named fixtures), in which case k is ignored.
    """
    if t < 1:
        raise PreconditionError(f"need t >= 1, got t={t}")
    if n * t > MOMENT_SIZE_CAP:
        raise ResourceLimitError(
            f"moment oracle capped at n*t <= {MOMENT_SIZE_CAP}, got n={n}, t={t}"
        )
    dim = 1 << n
    if gate_generators is None:
        gate_generators = symmetric_algebra_generators(spec, n, k)
    full_generators = symmetric_algebra_generators(spec, n, None)
    lifted_gate = [_omega(M, dim, t) for M in gate_generators]
    lifted_full = [_omega(M, dim, t) for M in full_generators]
    dim_gate = _commutant_dimension(lifted_gate, dim**t)
    dim_full = _commutant_dimension(lifted_full, dim**t)
    if dim_gate < dim_full:
        raise InvariantError(
            "gate commutant smaller than full commutant; "
            "the gate algebra must sit inside the symmetric algebra"
        )
    return CommutantReport(t, dim_gate, dim_full)


# ---------------------------------------------------------------------------
# named fixtures


@dataclass(frozen=True)
class MomentFixture:
    name: str
    spec: SymmetrySpec
    n: int
    generators: tuple
    note: str
    expected: tuple[tuple[int, bool], ...]


def _fixture_z2_n2_gamma134() -> MomentFixture:
    # two qubits; gate algebra generated by XX and the single-site Zs
    xx: dict = {}
    z0: dict = {}
    z1: dict = {}
    for u in range(4):
        _mat_add(xx, u ^ 0b11, u, GR_ONE)
        _mat_add(z0, u, u, GR_ONE if not u & 0b10 else -GR_ONE)
        _mat_add(z1, u, u, GR_ONE if not u & 0b01 else -GR_ONE)
    return MomentFixture(
        name="z2-n2-gamma134",
        spec=SymmetrySpec.z2(),
        n=2,
        generators=(xx, z0, z1),
        note="two qubits; gates generated by XX, Z1, Z2",
        expected=((1, True), (2, False)),
    )


FIXTURES = {fx.name: fx for fx in (_fixture_z2_n2_gamma134(),)}
