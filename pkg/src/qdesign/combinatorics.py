"""Arbitrary-precision combinatorial primitives.

Everything here is exact integer arithmetic; no floating point is used
anywhere.  Division steps that must be exact are checked and abort with
:class:`InvariantError` if a remainder appears.
"""
from __future__ import annotations

import math

from .errors import InvariantError, PreconditionError


def binomial(n: int, r: int) -> int:
    """n-choose-r, returning 0 whenever (n, r) falls outside Pascal's triangle.

    The out-of-range convention (r < 0, r > n, or n < 0 gives 0) matches how
    the constraint-row and witness formulas implicitly use binomials.
    """
    if n < 0 or r < 0 or r > n:
        return 0
    return math.comb(n, r)


def _exact_div(numerator: int, denominator: int) -> int:
    q, rem = divmod(numerator, denominator)
    if rem:
        raise InvariantError(
            f"non-exact division {numerator}/{denominator}; this is a bug"
        )
    return q


def a_sequence(n: int, k: int, j: int) -> int:
    """The sum  sum_{p=0}^{j} C(n, j-p) * C(n-k+p-1, p).

    Requires 0 <= k <= n-1 and j >= 0.
    """
    if not (0 <= k <= n - 1):
        raise PreconditionError(f"a_sequence requires 0 <= k <= n-1, got n={n}, k={k}")
    if j < 0:
        raise PreconditionError(f"a_sequence requires j >= 0, got j={j}")
    return sum(binomial(n, j - p) * binomial(n - k + p - 1, p) for p in range(j + 1))


def b_bound(n: int, k: int) -> int:
    """2^floor(k/2) / ceil(k/2)! * prod_{a=1}^{ceil(k/2)} (n-k+2a-1), exactly.

    This is the weighted half-L1 cost of the U(1) witness vector; the product
    is always divisible by the factorial, and the division is checked.
    """
    if not (2 <= k <= n - 1):
        raise PreconditionError(f"b_bound requires 2 <= k <= n-1, got n={n}, k={k}")
    half_up = (k + 1) // 2
    prod = 1
    for alpha in range(1, half_up + 1):
        prod *= n - k + 2 * alpha - 1
    return _exact_div((1 << (k // 2)) * prod, math.factorial(half_up))


def c_bound(n: int, k: int) -> int:
    """2^floor(k/2) / (floor(k/2)+1)! * prod_{a=1}^{floor(k/2)+1} (n-2a+1), exactly.

    Weighted half-L1 cost of the SU(2) witness vector.
    """
    half = k // 2
    if k < 2 or n < 2 * (half + 1):
        raise PreconditionError(
            f"c_bound requires k >= 2 and n >= 2*(floor(k/2)+1), got n={n}, k={k}"
        )
    prod = 1
    for alpha in range(1, half + 2):
        prod *= n - 2 * alpha + 1
    return _exact_div((1 << half) * prod, math.factorial(half + 1))


def u1_witness(n: int, k: int) -> list[int]:
    """Integer vector y over the U(1) labels {0, ..., n} annihilated by every
    U(1) constraint row, with weighted half-L1 cost equal to ``b_bound(n, k)``.

    Entry lambda is (-1)^lambda / (n-k-1)! * prod_{a=1}^{n-k-1} (lambda - ceil(k/2) - a);
    the quotient is an exact integer (a shifted binomial), and that is checked.
    """
    if not (2 <= k <= n - 1):
        raise PreconditionError(f"u1_witness requires 2 <= k <= n-1, got n={n}, k={k}")
    half_up = (k + 1) // 2
    fact = math.factorial(n - k - 1)
    out = []
    for lam in range(n + 1):
        prod = 1
        for alpha in range(1, n - k):
            prod *= lam - half_up - alpha
        sign = -1 if lam % 2 else 1
        out.append(sign * _exact_div(prod, fact))
    return out


def su2_witness(n: int, k: int) -> list[int]:
    """Integer vector over the SU(2) labels (stored index j = n/2 - spin),
    annihilated by every SU(2) constraint row, cost ``c_bound(n, k)``.

    Entry j is (-1)^j * C(n - j - floor(k/2) - 1, floor(k/2) + 1 - j); support
    is j <= floor(k/2)+1 and the entry at j = floor(k/2)+1 is +-1.
    """
    half = k // 2
    if k < 2 or n < 2 * (half + 1):
        raise PreconditionError(
            f"su2_witness requires k >= 2 and n >= 2*(floor(k/2)+1), got n={n}, k={k}"
        )
    out = []
    for j in range(n // 2 + 1):
        sign = -1 if j % 2 else 1
        out.append(sign * binomial(n - j - half - 1, half + 1 - j))
    return out


def permutation_trace_vector(n: int, cycle_lengths: list[int]) -> list[int]:
    """Trace vector f of a permutation of qubits with the given nontrivial
    cycle type, over the SU(2) labels of n qubits (stored index j).

    f(j) = ftilde(j) - ftilde(j-1), where ftilde(j) counts the computational
    basis strings with j ones that the permutation fixes: a fixed string is
    constant on every cycle, so with P = sum of cycle lengths,

        ftilde(j) = sum over q in {0,1}^L of C(n - P, j - sum_l q_l * p_l).

    The empty cycle list (the identity permutation) reproduces the SU(2)
    multiplicity vector.
    """
    total = sum(cycle_lengths)
    if any(p < 2 for p in cycle_lengths):
        raise PreconditionError(f"cycle lengths must be >= 2, got {cycle_lengths}")
    if total > n:
        raise PreconditionError(
            f"cycle lengths sum to {total}, exceeding n={n} qubits"
        )

    def ftilde(j: int) -> int:
        if j < 0:
            return 0
        acc = 0
        for mask in range(1 << len(cycle_lengths)):
            ones = sum(p for l, p in enumerate(cycle_lengths) if mask >> l & 1)
            acc += binomial(n - total, j - ones)
        return acc

    return [ftilde(j) - ftilde(j - 1) for j in range(n // 2 + 1)]
