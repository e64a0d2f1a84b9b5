"""Symmetry sector bookkeeping for qubit chains.

For each supported on-site symmetry this module produces the list of
inequivalent irrep sectors of n qubits together with their multiplicities
(the dimensions m_lam of the multiplicity spaces) and the integer constraint
rows that k-local symmetric gates impose on charge-vector differences.

Built-in symmetries:

* ``z2``  -- global spin flip; two sectors (even/odd), each of multiplicity
  2^(n-1).
* ``u1``  -- particle number; sectors lam = 0..n with m_lam = C(n, lam).
* ``su2`` -- global spin; sectors indexed here by j = 0..floor(n/2) counting
  down from the top spin, with m_j = C(n, j) - C(n, j-1) and irrep dimension
  n - 2j + 1.

Custom symmetries carry explicit multiplicities and constraint rows loaded
from JSON; see parse_custom.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .combinatorics import binomial
from .errors import FormatError, PreconditionError

BUILTIN_KINDS = ("z2", "u1", "su2")


@dataclass(frozen=True)
class SymmetrySpec:
    """A symmetry selection: one of the built-in kinds or a custom table."""

    kind: str
    multiplicities: tuple[int, ...] | None = None
    rows: tuple[tuple[int, ...], ...] | None = None
    labels: tuple[str, ...] | None = None

    @classmethod
    def z2(cls) -> "SymmetrySpec":
        return cls("z2")

    @classmethod
    def u1(cls) -> "SymmetrySpec":
        return cls("u1")

    @classmethod
    def su2(cls) -> "SymmetrySpec":
        return cls("su2")

    @classmethod
    def custom(cls, multiplicities, rows, labels=None) -> "SymmetrySpec":
        mult = tuple(int(m) for m in multiplicities)
        rws = tuple(tuple(int(a) for a in row) for row in rows)
        labs = tuple(str(s) for s in labels) if labels is not None else None
        if any(m <= 0 for m in mult):
            raise PreconditionError("multiplicities must be positive")
        for row in rws:
            if len(row) != len(mult):
                raise PreconditionError("constraint row length must match sector count")
        if labs is not None and len(labs) != len(mult):
            raise PreconditionError("labels length must match sector count")
        return cls("custom", mult, rws, labs)

    @property
    def is_builtin(self) -> bool:
        return self.kind in BUILTIN_KINDS


@dataclass(frozen=True)
class IrrepTable:
    """Sector labels, multiplicities and irrep dimensions for n qubits.

    irrep_dims is None for custom symmetries, where the on-site action is
    not specified; only the multiplicities enter any computation.
    """

    labels: tuple[str, ...]
    multiplicities: tuple[int, ...]
    irrep_dims: tuple[int, ...] | None

    def __len__(self) -> int:
        return len(self.multiplicities)


@dataclass(frozen=True)
class ConstraintSystem:
    """Integer constraint rows on charge vectors, with human-readable tags.

    The multiplicity row is always included as the final row, so a vector
    annihilated by ``rows`` automatically has zero m-weighted sum.
    """

    rows: tuple[tuple[int, ...], ...]
    tags: tuple[str, ...]

    def annihilates(self, vector) -> bool:
        return all(
            sum(a * x for a, x in zip(row, vector)) == 0 for row in self.rows
        )


def _check_n(n: int) -> None:
    if n < 1:
        raise PreconditionError(f"need n >= 1, got n={n}")


def _check_locality(n: int, k: int) -> None:
    if not 2 <= k <= n - 1:
        raise PreconditionError(f"need 2 <= k <= n-1, got n={n}, k={k}")


def _spin_label(n: int, j: int) -> str:
    two_s = n - 2 * j
    return str(two_s // 2) if two_s % 2 == 0 else f"{two_s}/2"


def irrep_table(spec: SymmetrySpec, n: int) -> IrrepTable:
    """Sector table of n qubits under the chosen symmetry."""
    _check_n(n)
    if spec.kind == "z2":
        m = 1 << (n - 1)
        return IrrepTable(("even", "odd"), (m, m), (1, 1))
    if spec.kind == "u1":
        lams = range(n + 1)
        return IrrepTable(
            tuple(str(lam) for lam in lams),
            tuple(binomial(n, lam) for lam in lams),
            (1,) * (n + 1),
        )
    if spec.kind == "su2":
        js = range(n // 2 + 1)
        return IrrepTable(
            tuple(_spin_label(n, j) for j in js),
            tuple(binomial(n, j) - binomial(n, j - 1) for j in js),
            tuple(n - 2 * j + 1 for j in js),
        )
    if spec.kind == "custom":
        labels = spec.labels or tuple(str(i) for i in range(len(spec.multiplicities)))
        return IrrepTable(labels, spec.multiplicities, None)
    raise PreconditionError(f"unknown symmetry kind {spec.kind!r}")


def constraint_system(spec: SymmetrySpec, n: int, k: int) -> ConstraintSystem:
    """Constraint rows k-local symmetric gates impose on n-qubit charge vectors.

    The built-in rows express that a charge vector difference must vanish
    against every way of restricting sectors to n-k spectator qubits; the
    multiplicity row is appended in every case (redundant for the built-ins,
    required for custom tables).
    """
    table = irrep_table(spec, n)
    rows: list[tuple[int, ...]] = []
    tags: list[str] = []
    if spec.kind == "custom":
        rows.extend(spec.rows)
        tags.extend(f"row {i}" for i in range(len(spec.rows)))
    else:
        _check_locality(n, k)
        if spec.kind == "z2":
            rows.append((1, 1))
            tags.append("parity sum")
        elif spec.kind == "u1":
            for j in range(k + 1):
                rows.append(
                    tuple(binomial(n - k, lam - j) for lam in range(n + 1))
                )
                tags.append(f"spectator charge {j}")
        else:  # su2
            top = n // 2
            for jp in range(k // 2 + 1):
                rows.append(
                    tuple(
                        binomial(n - 2 * jp, j - jp) - binomial(n - 2 * jp, j - jp - 1)
                        for j in range(top + 1)
                    )
                )
                tags.append(f"spectator spin drop {jp}")
    rows.append(table.multiplicities)
    tags.append("multiplicity")
    return ConstraintSystem(tuple(rows), tuple(tags))


def parse_custom(text: str) -> SymmetrySpec:
    """Parse a custom symmetry description from JSON text.

    Expected shape::

        {
          "multiplicities": [3, 2, 1],
          "constraints": [[1, -1, 0], ["1/2", 0, "-3/2"]],
          "labels": ["a", "b", "c"]          # optional
        }

    Constraint entries may be integers or rational strings "p/q"; each row
    is scaled by the least common denominator so the stored system is
    integral.  Raises FormatError with a location for anything malformed.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise FormatError("top level must be a JSON object")
    unknown = set(data) - {"multiplicities", "constraints", "labels"}
    if unknown:
        raise FormatError(f"unknown field(s): {', '.join(sorted(unknown))}")

    mult = data.get("multiplicities")
    if not isinstance(mult, list) or not mult:
        raise FormatError("'multiplicities' must be a nonempty array")
    for i, m in enumerate(mult):
        if isinstance(m, bool) or not isinstance(m, int) or m <= 0:
            raise FormatError(f"'multiplicities[{i}]' must be a positive integer")

    raw_rows = data.get("constraints")
    if not isinstance(raw_rows, list):
        raise FormatError("'constraints' must be an array of rows")
    rows: list[tuple[int, ...]] = []
    for i, raw in enumerate(raw_rows):
        if not isinstance(raw, list):
            raise FormatError(f"'constraints[{i}]' must be an array")
        if len(raw) != len(mult):
            raise FormatError(
                f"'constraints[{i}]' has {len(raw)} entries, expected {len(mult)}"
            )
        entries: list[Fraction] = []
        for f, cell in enumerate(raw):
            if isinstance(cell, bool):
                raise FormatError(f"'constraints[{i}][{f}]' must be an integer or 'p/q' string")
            if isinstance(cell, int):
                entries.append(Fraction(cell))
            elif isinstance(cell, str):
                try:
                    entries.append(Fraction(cell))
                except (ValueError, ZeroDivisionError) as exc:
                    raise FormatError(
                        f"'constraints[{i}][{f}]' is not a valid rational: {cell!r}"
                    ) from exc
            else:
                raise FormatError(f"'constraints[{i}][{f}]' must be an integer or 'p/q' string")
        scale = lcm(*(e.denominator for e in entries)) if entries else 1
        rows.append(tuple(int(e * scale) for e in entries))

    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(mult):
            raise FormatError("'labels' must be an array matching 'multiplicities'")
        if not all(isinstance(s, str) for s in labels):
            raise FormatError("'labels' entries must be strings")

    return SymmetrySpec.custom(mult, rows, labels)
