"""End-to-end acceptance checks.

Each test covers one numbered criterion, prints a single
``criterion NN: PASS/FAIL`` line (visible with ``pytest -s``), and enforces
the runtime budget where one applies.  Run order follows the numbering.
"""
import math
import random
import time

from qdesign.combinatorics import (
    a_sequence,
    b_bound,
    c_bound,
    permutation_trace_vector,
    su2_witness,
    u1_witness,
)
from qdesign.linalg import fraction_rows, integer_kernel_basis, rref
from qdesign.oracles import FIXTURES, collision_exists, commutant_check
from qdesign.solver import max_design_order, minimize_cost
from qdesign.symmetry import SymmetrySpec, constraint_system, irrep_table
from oracle_utils import (
    annihilated,
    box_kernel_points,
    brute_min_cost,
    integer_combination,
    random_custom_system,
)

Z2, U1, SU2 = SymmetrySpec.z2(), SymmetrySpec.u1(), SymmetrySpec.su2()


def _report(num, failures, elapsed, budget, detail):
    ok = not failures and (budget is None or elapsed < budget)
    line = "PASS" if ok else "FAIL"
    timing = f"{elapsed:.2f}s" + (f" (budget {budget:.0f}s)" if budget else "")
    print(f"criterion {num:02d}: {line} - {detail} [{timing}]")
    assert not failures, failures[:10]
    if budget is not None:
        assert elapsed < budget, f"criterion {num} exceeded {budget}s: {elapsed:.2f}s"


def test_criterion_01_z2_table():
    start = time.perf_counter()
    failures = []
    count = 0
    for n in range(3, 17):
        for k in range(2, n):
            got = max_design_order(Z2, n, k).t_max
            want = 2 ** (n - 1) - 1
            if got != want:
                failures.append((n, k, got, want))
            count += 1
    _report(1, failures, time.perf_counter() - start, 5.0,
            f"z2 exact orders, {count} (n,k) pairs, n<=16")


def test_criterion_02_u1_small_k():
    start = time.perf_counter()
    failures = []
    count = 0
    closed = {2: lambda n: 2 * (n - 1), 3: lambda n: n * (n - 2),
              4: lambda n: 2 * (n - 1) * (n - 3)}
    for k, formula in closed.items():
        for n in range(k + 1, 15):
            got = max_design_order(U1, n, k).t_max
            if got != formula(n) - 1:
                failures.append((n, k, got, formula(n) - 1))
            count += 1
    _report(2, failures, time.perf_counter() - start, 60.0,
            f"u1 exact orders for k=2,3,4, {count} pairs, n<=14")


def test_criterion_03_u1_exception():
    start = time.perf_counter()
    got = max_design_order(U1, 7, 5).t_max
    failures = [] if got == 63 else [(7, 5, got, 63)]
    _report(3, failures, time.perf_counter() - start, 10.0,
            "u1 n=7 k=5 gives 63, below the witness cost 70")


def _su2_expected(n, k):
    if k in (2, 3):
        if n == 3:
            return None  # infinite
        if n in (6, 7, 8):
            return {6: 9, 7: 19, 8: 19}[n]
        return (n - 1) * (n - 3) - 1
    assert k == 4
    if n == 5:
        return None
    special = {8: 34, 9: 89, 10: 95, 11: 191, 12: 329}
    if n in special:
        return special[n]
    return 2 * (n - 1) * (n - 3) * (n - 5) // 3 - 1


def test_criterion_04_su2_k23():
    start = time.perf_counter()
    failures = []
    count = 0
    for k in (2, 3):
        for n in range(max(3, k + 1), 15):
            order = max_design_order(SU2, n, k)
            got = None if order.infinite else order.t_max
            if got != _su2_expected(n, k):
                failures.append((n, k, got, _su2_expected(n, k)))
            count += 1
    _report(4, failures, time.perf_counter() - start, 60.0,
            f"su2 exact orders for k=2,3, {count} pairs, n<=14")


def test_criterion_05_su2_k4():
    start = time.perf_counter()
    failures = []
    count = 0
    for n in range(5, 15):
        order = max_design_order(SU2, n, 4)
        got = None if order.infinite else order.t_max
        if got != _su2_expected(n, 4):
            failures.append((n, 4, got, _su2_expected(n, 4)))
        count += 1
    _report(5, failures, time.perf_counter() - start, 300.0,
            f"su2 exact orders for k=4, {count} values of n, n<=14")


def test_criterion_06_witness_consistency():
    start = time.perf_counter()
    failures = []
    count = 0
    for k in range(2, 9):
        for n in range(k + 1, 31):
            w = u1_witness(n, k)
            system = constraint_system(U1, n, k)
            m = irrep_table(U1, n).multiplicities
            cost = sum(mi * wi for mi, wi in zip(m, w) if wi > 0)
            if not system.annihilates(w) or cost != b_bound(n, k):
                failures.append(("u1", n, k))
            count += 1
        for n in range(2 * (k // 2 + 1), 31):
            w = su2_witness(n, k)
            system = constraint_system(SU2, n, k)
            m = irrep_table(SU2, n).multiplicities
            cost = sum(mi * wi for mi, wi in zip(m, w) if wi > 0)
            if not system.annihilates(w) or cost != c_bound(n, k):
                failures.append(("su2", n, k))
            count += 1
    _report(6, failures, time.perf_counter() - start, None,
            f"witness kernel membership and exact cost, {count} cases, n<=30")


def test_criterion_07_identity_suite():
    start = time.perf_counter()
    failures = []
    count = 0
    for k in range(1, 15):
        for n in range(2 * k + 1, 41):
            lhs = a_sequence(n, 2 * k, k) * math.factorial(k)
            rhs = 2 ** k
            for alpha in range(1, k + 1):
                rhs *= n - 2 * alpha + 1
            if lhs != rhs:
                failures.append(("product", n, k))
            count += 1
        if k < 2:
            continue
        for n in range(k + 1, 41):
            lhs = a_sequence(n, k, (k + 1) // 2) + a_sequence(n, k, k // 2)
            if lhs != 2 * b_bound(n, k):
                failures.append(("pair-sum", n, k))
            count += 1
    _report(7, failures, time.perf_counter() - start, None,
            f"a-sequence identities, {count} cases, k<=14, n<=40")


def _collision_instances():
    for n in range(3, 17):
        for k in range(2, n):
            yield Z2, n, k
    for k in (2, 3, 4):
        for n in range(k + 1, 15):
            yield U1, n, k
    yield U1, 7, 5
    for k in (2, 3):
        for n in range(max(3, k + 1), 15):
            yield SU2, n, k
    for n in range(5, 15):
        yield SU2, n, 4


def test_criterion_08_collision_agreement():
    start = time.perf_counter()
    failures = []
    count = 0
    for spec, n, k in _collision_instances():
        order = max_design_order(spec, n, k)
        if order.infinite or order.t_max > 200:
            continue
        table = irrep_table(spec, n)
        if len(table) > 8:
            continue
        system = constraint_system(spec, n, k)
        at = collision_exists(table, system, order.t_max)
        above = collision_exists(table, system, order.t_max + 1)
        if at.found or not above.found:
            failures.append((spec.kind, n, k, order.t_max, at.found, above.found))
        count += 1
    _report(8, failures, time.perf_counter() - start, 600.0,
            f"collision oracle flips exactly at t_max+1, {count} instances")


def test_criterion_09_moment_fixture():
    start = time.perf_counter()
    failures = []
    fixture = FIXTURES["z2-n2-gamma134"]
    for t, expect_design, dims in ((1, True, (2, 2)), (2, False, (10, 8))):
        rep = commutant_check(fixture.spec, fixture.n, None, t,
                              gate_generators=fixture.generators)
        if rep.is_design is not expect_design or (rep.dim_gateset, rep.dim_full) != dims:
            failures.append(("fixture", t, rep))
    for t in (1, 2):
        rep = commutant_check(Z2, 3, 2, t)
        if not rep.is_design:
            failures.append(("z2 n=3 k=2", t, rep))
    _report(9, failures, time.perf_counter() - start, 120.0,
            "moment oracle on the two-qubit gate-set fixture and z2 n=3 k=2")


def test_criterion_10_property_suites():
    start = time.perf_counter()
    failures = []

    for n in range(1, 31):
        for spec in (Z2, U1, SU2):
            table = irrep_table(spec, n)
            total = sum(d * m for d, m in
                        zip(table.irrep_dims, table.multiplicities))
            if total != 2 ** n:
                failures.append(("bookkeeping", spec.kind, n))

    rng = random.Random(20260816)
    randomized = 0

    # kernel saturation: every annihilated integer point in a small box is an
    # integer combination of the returned basis
    while randomized < 300:
        width = rng.randint(2, 4)
        rows = [[rng.randint(-3, 3) for _ in range(width)]
                for _ in range(rng.randint(1, 2))]
        basis = integer_kernel_basis(rows)
        bounds = [4] * width
        for point in box_kernel_points(rows, bounds):
            if not integer_combination(basis, point):
                failures.append(("saturation", rows, point))
                break
        if any(not annihilated(rows, v) for v in basis):
            failures.append(("basis-validity", rows))
        randomized += 1

    # negation invariance and lex tie-break against brute force
    while randomized < 1000:
        case = random_custom_system(rng)
        if case is None:
            continue
        system, m, kernel, bound = case
        cert = minimize_cost(kernel, m, bound)
        again = minimize_cost(kernel, m, bound)
        flipped = type(kernel)(tuple(tuple(-a for a in v) for v in kernel.vectors))
        negated = minimize_cost(flipped, m, bound)
        want_cost, want_vec = brute_min_cost(system.rows, m, bound)
        if not (cert == again == negated):
            failures.append(("determinism", system.rows))
        elif cert.cost != want_cost or cert.vector != want_vec:
            failures.append(("tie-break", system.rows, cert, want_cost, want_vec))
        randomized += 1

    _report(10, failures, time.perf_counter() - start, None,
            f"bookkeeping + {randomized} randomized saturation/determinism cases")


def test_su2_trace_vectors_lie_in_constraint_row_space():
    # permutation trace vectors are linear combinations of the su2 rows, so
    # adding them to the constraint systems would change nothing
    failures = []
    for n in range(4, 11):
        for k in (2, 3, 4):
            if k > n - 1:
                continue
            system = constraint_system(SU2, n, k)
            base = fraction_rows([list(r) for r in system.rows])
            reduced, pivots = rref(base)
            rank = len(pivots)
            for parts in _partitions_at_most(k):
                vec = permutation_trace_vector(n, list(parts))
                _, with_vec = rref(base + [fraction_rows([vec])[0]])
                if len(with_vec) != rank:
                    failures.append((n, k, parts))
    assert not failures, failures


def _partitions_at_most(total):
    out = []

    def grow(prefix, remaining, smallest):
        for part in range(smallest, remaining + 1):
            out.append(prefix + (part,))
            grow(prefix + (part,), remaining - part, part)

    grow((), total, 2)
    return out
