"""Maximal design order of symmetric local circuits, by exact minimization.

The order question reduces to integer lattice geometry: a symmetric gate set
fails to reproduce t-th moments exactly when some nonzero integer vector x
over the sectors satisfies all locality constraint rows and has weighted
positive part <m, x+> at most t.  The largest achievable order is therefore

    t_max = (minimum of <m, x+> over nonzero constraint-kernel vectors) - 1,

with an infinite order exactly when the kernel is trivial.  This module
computes the kernel exactly, minimizes the weighted cost by branch and
bound over kernel coordinates, and offers closed-form answers for the
parameter ranges where they are known.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .combinatorics import b_bound, c_bound, su2_witness, u1_witness
from .errors import InvariantError, PreconditionError, ResourceLimitError
from .linalg import integer_kernel_basis, pseudo_inverse
from .symmetry import ConstraintSystem, IrrepTable, SymmetrySpec, constraint_system, irrep_table

DEFAULT_NODE_BUDGET = 100_000_000


@dataclass(frozen=True)
class KernelBasis:
    """Basis of the saturated integer kernel of a constraint system."""

    vectors: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class SolutionCertificate:
    """A minimum-cost kernel vector together with its weighted cost."""

    vector: tuple[int, ...]
    cost: int


@dataclass(frozen=True)
class DesignOrder:
    """Design order answer: t_max with a witness vector, or infinite.

    ``t_max is None`` encodes an infinite order (trivial kernel); otherwise
    ``certificate`` holds a kernel vector of cost exactly t_max + 1.
    """

    t_max: int | None
    certificate: SolutionCertificate | None

    @property
    def infinite(self) -> bool:
        return self.t_max is None

    @classmethod
    def finite_order(cls, t_max: int, certificate: SolutionCertificate) -> "DesignOrder":
        return cls(t_max, certificate)

    @classmethod
    def infinite_order(cls) -> "DesignOrder":
        return cls(None, None)


def positive_weight(vector, multiplicities) -> int:
    """<m, x+>: the multiplicity-weighted sum of the positive entries."""
    return sum(m * x for m, x in zip(multiplicities, vector) if x > 0)


def integer_kernel(system: ConstraintSystem) -> KernelBasis:
    """Saturated integer kernel of the system's rows."""
    basis = integer_kernel_basis([list(r) for r in system.rows])
    return KernelBasis(tuple(tuple(v) for v in basis))


def seed_upper_bound(spec: SymmetrySpec, n: int, k: int, kernel: KernelBasis) -> int | None:
    """Cost of some known kernel point, to prime the minimizer; None if trivial.

    Takes the cheapest kernel basis vector, improved by the closed-form
    witness cost when the symmetry has one in range.
    """
    if not kernel.vectors:
        return None
    m = irrep_table(spec, n).multiplicities
    best = min(positive_weight(v, m) for v in kernel.vectors)
    if spec.kind == "z2":
        best = min(best, 1 << (n - 1))
    elif spec.kind == "u1":
        best = min(best, b_bound(n, k))
    elif spec.kind == "su2" and n >= 2 * (k // 2 + 1):
        best = min(best, c_bound(n, k))
    return best


def _canonical(vector) -> tuple[int, ...]:
    """The lexicographically preferred representative of {x, -x}."""
    lead = next((v for v in vector if v), 0)
    return tuple(-a for a in vector) if lead < 0 else tuple(vector)


def minimize_cost(
    kernel: KernelBasis,
    multiplicities,
    upper_bound: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SolutionCertificate:
    """Minimum positive-weight nonzero kernel vector, by branch and bound.

    Searches integer combinations of the kernel basis, pre-sorted so the
    heaviest basis directions are fixed first.  Coefficients are confined by
    exact pseudo-inverse bounds on the box |x_lam| <= floor(t/m_lam) (valid
    because a vector of cost <= t can place at most t weight on each side of
    any coordinate), tightened per level by interval propagation, and pruned
    by the positive/negative partial weights on finalized coordinates and by
    the shrinking incumbent.  Ties at the final cost resolve to the
    lexicographically smallest vector whose first nonzero entry is positive,
    so the result is independent of search order.

    Raises ResourceLimitError (carrying the bracketing interval found so
    far) if more than node_budget coefficient assignments are explored.
    """
    if not kernel.vectors:
        raise PreconditionError("kernel is trivial; no nonzero vector to minimize")
    if upper_bound < 1:
        raise PreconditionError("upper bound must be a positive cost")
    m = list(multiplicities)
    L = len(m)
    rank = kernel.rank
    base_costs = [positive_weight(v, m) for v in kernel.vectors]
    order = sorted(range(rank), key=lambda i: (-base_costs[i], i))
    basis = [list(kernel.vectors[i]) for i in order]

    # Static coefficient bounds: c = B+ x for any kernel point x, and any
    # candidate at cost <= upper_bound lies in the weight box.
    bplus = pseudo_inverse(basis)
    box0 = [upper_bound // m[lam] for lam in range(L)]
    static = [
        int(sum(abs(bplus[i][lam]) * box0[lam] for lam in range(L)))
        for i in range(rank)
    ]

    col = [[basis[lvl][lam] for lvl in range(rank)] for lam in range(L)]
    # suffix[lam][i] bounds the largest coordinate movement levels >= i can
    # still apply; suffix[lam][level+1] is the slack after fixing c_level.
    suffix = [[0] * (rank + 1) for _ in range(L)]
    for lam in range(L):
        for i in range(rank - 1, -1, -1):
            suffix[lam][i] = suffix[lam][i + 1] + static[i] * abs(col[lam][i])
    active = [[lam for lam in range(L) if col[lam][lvl]] for lvl in range(rank)]
    newly_final = [[] for _ in range(rank)]
    for lam in range(L):
        last = max((lvl for lvl in range(rank) if col[lam][lvl]), default=-1)
        if last >= 0:
            newly_final[last].append(lam)

    partial = [0] * L
    best_cost = upper_bound
    best_vec: tuple[int, ...] | None = None
    nodes = 0

    def descend(level: int, pos: int, neg: int, any_nonzero: bool) -> None:
        nonlocal best_cost, best_vec, nodes
        if level == rank:
            if not any_nonzero:
                return
            if pos != neg:
                raise InvariantError("kernel point with unbalanced weight")
            if pos < best_cost or (pos == best_cost and best_vec is None):
                best_cost = pos
                best_vec = _canonical(partial)
            elif pos == best_cost:
                cand = _canonical(partial)
                if cand < best_vec:
                    best_vec = cand
            return
        lo = 0 if not any_nonzero else -static[level]
        hi = static[level]
        for lam in active[level]:
            b = col[lam][level]
            cap = best_cost // m[lam]
            s = suffix[lam][level + 1]
            low_num = -cap - s - partial[lam]
            high_num = cap + s - partial[lam]
            if b > 0:
                lo = max(lo, -((-low_num) // b))
                hi = min(hi, high_num // b)
            else:
                lo = max(lo, -(high_num // -b))
                hi = min(hi, (-low_num) // -b)
        if lo > hi:
            return
        for c in _centered(lo, hi):
            nodes += 1
            if nodes > node_budget:
                raise ResourceLimitError(
                    "node budget exhausted; minimum cost is in "
                    f"[1, {best_cost}]",
                    lower=1,
                    upper=best_cost,
                )
            if c:
                for lam in active[level]:
                    partial[lam] += c * col[lam][level]
            new_pos, new_neg = pos, neg
            ok = True
            for lam in newly_final[level]:
                value = partial[lam]
                if value > 0:
                    new_pos += m[lam] * value
                    if new_pos > best_cost:
                        ok = False
                        break
                elif value < 0:
                    new_neg -= m[lam] * value
                    if new_neg > best_cost:
                        ok = False
                        break
            if ok:
                descend(level + 1, new_pos, new_neg, any_nonzero or c != 0)
            if c:
                for lam in active[level]:
                    partial[lam] -= c * col[lam][level]
        return

    descend(0, 0, 0, False)
    if best_vec is None:
        raise InvariantError("seeded search found no kernel point within its own bound")
    return SolutionCertificate(best_vec, best_cost)


def _centered(lo: int, hi: int):
    """Integers of [lo, hi] ordered by distance from zero (ties: positive first)."""
    if lo <= 0 <= hi:
        yield 0
        step = 1
        while lo <= -step or step <= hi:
            if step <= hi:
                yield step
            if lo <= -step:
                yield -step
            step += 1
    elif lo > 0:
        yield from range(lo, hi + 1)
    else:
        yield from range(hi, lo - 1, -1)


def _resolve_budget(node_budget: int | None) -> int:
    if node_budget is not None:
        return node_budget
    env = os.environ.get("QDESIGN_NODE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise PreconditionError(f"QDESIGN_NODE_BUDGET must be an integer, got {env!r}") from exc
    return DEFAULT_NODE_BUDGET


def max_design_order(
    spec: SymmetrySpec, n: int, k: int, node_budget: int | None = None
) -> DesignOrder:
    """Exact maximal design order of k-local spec-symmetric circuits on n qubits."""
    table = irrep_table(spec, n)
    system = constraint_system(spec, n, k)
    kernel = integer_kernel(system)
    if not kernel.vectors:
        return DesignOrder.infinite_order()
    bound = seed_upper_bound(spec, n, k, kernel)
    cert = minimize_cost(kernel, table.multiplicities, bound, _resolve_budget(node_budget))
    return DesignOrder.finite_order(cert.cost - 1, cert)


# Exceptional small-n answers for the su2 tables: {(k-class, n): (t_max, vector)}.
# Vectors are minimum-cost kernel points in the j-indexed sector order.
_SU2_EXCEPTIONS_K23 = {
    6: (9, (1, -1, 1, -1)),
    7: (19, (6, -1, -1, 1)),
    8: (19, (6, 0, -1, 0, 1)),
}
_SU2_EXCEPTIONS_K4 = {
    8: (34, (1, -1, 1, -1, 1)),
    9: (89, (-15, 6, -1, -1, 1)),
    10: (95, (-21, 6, 0, -1, 0, 1)),
    11: (191, (27, -6, 0, 0, 1, -1)),
    12: (329, (33, -6, 0, 0, 0, 1, -2)),
}


def _finite(t_max: int, vector, m) -> DesignOrder:
    cert = SolutionCertificate(tuple(vector), positive_weight(vector, m))
    if cert.cost != t_max + 1:
        raise InvariantError("tabulated certificate cost does not bracket t_max")
    return DesignOrder.finite_order(t_max, cert)


def theorem_order(spec: SymmetrySpec, n: int, k: int) -> DesignOrder | None:
    """Closed-form design order where the known tables apply, else None.

    Coverage: z2 everywhere; u1 for k <= 4 and for n >= 2^k; su2 for
    k <= 4 and for n >= 2^(2 (floor(k/2) + 1)), including the tabulated
    small-n exceptions.  Custom symmetries are never covered.
    """
    if spec.kind == "custom":
        return None
    if not 2 <= k <= n - 1:
        raise PreconditionError(f"need 2 <= k <= n-1, got n={n}, k={k}")
    m = irrep_table(spec, n).multiplicities
    if spec.kind == "z2":
        return _finite((1 << (n - 1)) - 1, (1, -1), m)
    if spec.kind == "u1":
        if k <= 4 or n >= 1 << k:
            return _finite(b_bound(n, k) - 1, u1_witness(n, k), m)
        return None
    # su2
    half = k // 2
    if k in (2, 3):
        if n == 3:
            return DesignOrder.infinite_order()
        if n in _SU2_EXCEPTIONS_K23:
            t_max, vec = _SU2_EXCEPTIONS_K23[n]
            return _finite(t_max, vec, m)
        return _finite(c_bound(n, k) - 1, su2_witness(n, k), m)
    if k == 4:
        if n == 5:
            return DesignOrder.infinite_order()
        if n in _SU2_EXCEPTIONS_K4:
            t_max, vec = _SU2_EXCEPTIONS_K4[n]
            return _finite(t_max, vec, m)
        return _finite(c_bound(n, k) - 1, su2_witness(n, k), m)
    if n >= 1 << (2 * (half + 1)):
        return _finite(c_bound(n, k) - 1, su2_witness(n, k), m)
    return None
