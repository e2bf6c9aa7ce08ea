"""Mechanism dataset: geometry, masses, inertias and FEA link compliances.

Datasets are stored as TOML with unit-suffixed keys. Matrices are flat
row-major lists (9 numbers for inertias, 36 for compliances). Values are kept
exactly as supplied; known misprints are listed separately as errata and
applied when a compliance matrix is requested.
"""

import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .errors import NotSymmetric, ParseError, ValidationError
from .mechanism import Geometry
from .numerics import SYMMETRY_RTOL, asymmetry, is_positive_definite, symmetrize

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib
import tomli_w

COMPLIANCES = ("foot", "leg1", "leg2", "tool")
INERTIAS = ("foot", "leg1", "leg2")


@dataclass(frozen=True)
class Erratum:
    """Replacement of one printed compliance entry (1-based row/column)."""

    matrix: str
    row: int
    col: int
    printed: float
    value: float
    reason: str = ""

    def apply(self, c):
        if c[self.row - 1, self.col - 1] != self.printed:
            raise ValidationError(
                f"erratum for {self.matrix}[{self.row},{self.col}] expects printed "
                f"{self.printed!r}, found {c[self.row - 1, self.col - 1]!r}")
        c = c.copy()
        c[self.row - 1, self.col - 1] = self.value
        return c


@dataclass(frozen=True, eq=False)
class MechanismDataset:
    name: str
    a: float
    L1: float
    L2: float
    L_tool: float
    m_leg1: float
    m_leg2: float
    m_tool: float
    L_G1: float
    L_G2: float
    J_foot: np.ndarray
    J_leg1: np.ndarray
    J_leg2: np.ndarray
    k_foot: np.ndarray
    k_leg1: np.ndarray
    k_leg2: np.ndarray
    k_tool: np.ndarray
    drive_stiffness: float = 1e9
    errata: tuple = field(default=())

    def __post_init__(self):
        for n in ("J_foot", "J_leg1", "J_leg2", "k_foot", "k_leg1", "k_leg2", "k_tool"):
            v = np.array(getattr(self, n), dtype=float)
            v.setflags(write=False)
            object.__setattr__(self, n, v)
        object.__setattr__(self, "errata", tuple(self.errata))

    def __eq__(self, other):
        if not isinstance(other, MechanismDataset):
            return NotImplemented
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            if isinstance(a, np.ndarray):
                if a.shape != b.shape or not np.array_equal(a, b):
                    return False
            elif a != b:
                return False
        return True

    def geometry(self, assembly_sign=-1):
        return Geometry(self.a, self.L1, self.L2, self.L_tool, assembly_sign)

    @property
    def leg_masses(self):
        return (self.m_leg1, self.m_leg2)

    def printed_compliance(self, name):
        return getattr(self, f"k_{name}")

    def corrected_compliance(self, name):
        """Compliance with the errata applied, before symmetrization."""
        c = np.array(self.printed_compliance(name))
        for e in self.errata:
            if e.matrix == name:
                c = e.apply(c)
        return c

    def compliance(self, name):
        """Corrected, symmetrized compliance matrix ready for inversion."""
        return symmetrize(self.corrected_compliance(name), name=f"k_{name}")

    def inertia(self, name):
        return getattr(self, f"J_{name}")

    def check(self):
        """Return a list of invariant violations (empty when valid)."""
        problems = []
        for n in ("a", "L1", "L2", "L_tool", "m_leg1", "m_leg2", "m_tool",
                  "L_G1", "L_G2", "drive_stiffness"):
            v = getattr(self, n)
            if not np.isfinite(v) or v <= 0:
                problems.append(f"{n} must be positive (got {v})")
        if self.L1 + self.L2 <= self.a:
            problems.append("L1 + L2 must exceed a (empty workspace)")
        for n in INERTIAS:
            J = self.inertia(n)
            if J.shape != (3, 3):
                problems.append(f"J_{n} must be 3x3")
            elif asymmetry(J) > SYMMETRY_RTOL:
                problems.append(f"J_{n} is not symmetric")
            elif np.linalg.eigvalsh(J).min() < -1e-12 * np.abs(J).max():
                problems.append(f"J_{n} is not positive semidefinite")
        for n in COMPLIANCES:
            c = self.printed_compliance(n)
            if c.shape != (6, 6):
                problems.append(f"k_{n} must be 6x6")
                continue
            try:
                s = self.compliance(n)
            except NotSymmetric:
                problems.append(f"k_{n} asymmetry {asymmetry(self.corrected_compliance(n)):.3g} "
                                f"exceeds {SYMMETRY_RTOL:g}")
                continue
            except ValidationError as exc:
                problems.append(str(exc))
                continue
            if not is_positive_definite(s):
                problems.append(f"k_{n} is not positive definite")
        for e in self.errata:
            if e.matrix not in COMPLIANCES or not (1 <= e.row <= 6 and 1 <= e.col <= 6):
                problems.append(f"erratum refers to unknown entry {e.matrix}[{e.row},{e.col}]")
        return problems

    def validate(self):
        problems = self.check()
        if problems:
            raise ValidationError("; ".join(problems))
        return self

    def report(self):
        """Human-readable validation summary including flagged errata."""
        lines = [f"dataset {self.name}"]
        for n in COMPLIANCES:
            raw = self.printed_compliance(n)
            lines.append(f"  k_{n}: printed asymmetry {asymmetry(raw):.3g}, "
                         f"printed PD {is_positive_definite(0.5 * (raw + raw.T))}")
        for e in self.errata:
            lines.append(f"  erratum k_{e.matrix}[{e.row},{e.col}]: {e.printed!r} -> "
                         f"{e.value!r} ({e.reason})")
        problems = self.check()
        lines += [f"  FAIL {p}" for p in problems] or ["  all invariants hold"]
        return "\n".join(lines)


# ----------------------------------------------------------- built-in data

def _m(rows):
    return np.array(rows, dtype=float)


IFW = MechanismDataset(
    name="ifw",
    a=0.92, L1=0.85, L2=0.775, L_tool=0.155,
    m_leg1=69.705, m_leg2=49.366, m_tool=46.0,
    L_G1=0.542, L_G2=0.375,
    J_foot=np.diag([0.268, 0.211, 0.261]),
    J_leg1=_m([[1.187, -0.164, -1.247], [-0.164, 3.022, -0.940], [-1.247, -0.940, 2.646]]),
    J_leg2=_m([[6.122, 0.014, 0.312], [0.014, 5.848, -0.314], [0.312, -0.314, 0.635]]),
    k_foot=_m([
        [1.67e-10, 8.85e-13, -7.78e-14, -2.12e-13, 7.95e-12, 2.50e-12],
        [8.85e-13, 5.87e-9, 6.39e-12, -3.58e-11, -2.12e-11, 3.94e-8],
        [-7.78e-14, 6.39e-12, 5.53e-10, 1.35e-11, -4.49e-9, 1.91e-11],
        [-2.12e-13, -3.58e-11, 1.35e-11, 6.96e-8, 5.28e-11, -2.71e-10],
        [7.95e-12, -2.12e-11, -4.49e-9, 5.28e-11, 8.48e-8, 7.40e-9],
        [2.50e-12, 3.94e-8, 1.91e-11, -2.71e-10, 7.40e-9, 3.16e-9]]),
    k_leg1=_m([
        [2.81e-9, -1.01e-8, -1.41e-9, -1.81e-9, 4.42e-9, 2.92e-8],
        [-1.01e-8, 1.77e-7, -1.83e-7, -2.03e-9, 2.93e-9, -2.90e-7],
        [-1.41e-9, -1.83e-9, 3.19e-8, 4.77e-8, -9.94e-8, -2.27e-9],
        [-1.81e-9, -2.03e-9, 4.77e-8, 1.73e-7, -8.02e-8, -1.18e-9],
        [4.42e-9, 2.93e-9, -9.94e-8, -8.02e-8, 8.13e-7, 3.23e-8],
        [2.92e-8, -2.90e-7, -2.27e-9, -1.18e-9, 3.23e-8, 6.08e-7]]),
    k_leg2=_m([
        [2.71e-10, 1.29e-10, -1.99e-10, 4.68e-9, 1.73e-9, -7.06e-11],
        [1.29e-10, 1.26e-8, -3.88e-13, 1.84e-10, 1.67e-8, -2.12e-8],
        [-1.99e-10, -3.88e-13, 1.07e-9, -1.03e-8, -2.38e-10, 3.71e-13],
        [4.68e-9, 1.84e-10, -1.03e-8, 2.52e-7, 3.62e-9, 4.54e-10],
        [1.73e-9, 1.67e-8, -2.38e-10, 3.62e-9, 7.22e-7, 3.95e-8],
        [-7.06e-11, -2.12e-8, 3.71e-13, 4.54e-10, 3.95e-8, 1.70e-7]]),
    k_tool=_m([
        [1.16e-9, -9.70e-11, -1.33e-11, 6.88e-9, 4.89e-8, -2.64e-9],
        [9.70e-11, 1.33e-9, -1.15e-10, -5.91e-8, -7.11e-9, 1.96e-11],
        [-1.33e-11, -1.15e-10, 5.53e-10, 2.30e-9, 6.52e-10, 2.00e-10],
        [6.88e-9, -5.91e-8, 2.30e-9, 3.77e-6, 4.23e-7, -2.87e-8],
        [4.89e-8, -7.11e-9, 6.52e-10, 4.23e-7, 3.15e-6, -6.94e-8],
        [-2.64e-9, 1.96e-11, 2.00e-10, -2.87e-8, -6.94e-8, 3.29e-6]]),
    drive_stiffness=1e9,
    errata=(
        Erratum("foot", 6, 6, 3.16e-9, 3.16e-7,
                "printed value makes the matrix indefinite; exponent slip"),
        Erratum("leg1", 2, 3, -1.83e-7, -1.83e-9,
                "transposed entry reads -1.83e-9; exponent slip"),
        Erratum("tool", 1, 2, -9.70e-11, 9.70e-11,
                "transposed entry reads +9.70e-11; sign slip"),
    ),
)

BUILTIN = {"ifw": IFW}


# -------------------------------------------------------------- file format

def to_dict(ds):
    flat = lambda a: [float(v) for v in np.asarray(a).ravel()]
    return {
        "name": ds.name,
        "drive_stiffness_N_per_m": float(ds.drive_stiffness),
        "geometry": {"a_m": ds.a, "L1_m": ds.L1, "L2_m": ds.L2, "L_tool_m": ds.L_tool},
        "mass": {"leg1_kg": ds.m_leg1, "leg2_kg": ds.m_leg2, "tool_kg": ds.m_tool},
        "center_of_mass": {"L_G1_m": ds.L_G1, "L_G2_m": ds.L_G2},
        "inertia": {f"{n}_kg_m2": flat(ds.inertia(n)) for n in INERTIAS},
        "compliance": {f"{n}_si": flat(ds.printed_compliance(n)) for n in COMPLIANCES},
        "errata": [{"matrix": e.matrix, "row": e.row, "col": e.col,
                    "printed": e.printed, "value": e.value, "reason": e.reason}
                   for e in ds.errata],
    }


def _get(d, path):
    cur = d
    for key in path.split("."):
        if not isinstance(cur, dict) or key not in cur:
            raise ParseError(f"missing field '{path}'")
        cur = cur[key]
    return cur


def _number(d, path):
    v = _get(d, path)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"field '{path}' must be a number, got {v!r}")
    return float(v)


def _matrix(d, path, n):
    v = _get(d, path)
    if not isinstance(v, list) or len(v) != n * n:
        raise ParseError(f"field '{path}' must hold {n * n} numbers")
    if any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in v):
        raise ParseError(f"field '{path}' must hold only numbers")
    return np.array(v, dtype=float).reshape(n, n)


def from_dict(d):
    errata = []
    for i, e in enumerate(d.get("errata", [])):
        try:
            errata.append(Erratum(str(e["matrix"]), int(e["row"]), int(e["col"]),
                                  float(e["printed"]), float(e["value"]), str(e.get("reason", ""))))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"errata[{i}] is malformed: {exc}") from exc
    return MechanismDataset(
        name=str(d.get("name", "unnamed")),
        a=_number(d, "geometry.a_m"), L1=_number(d, "geometry.L1_m"),
        L2=_number(d, "geometry.L2_m"), L_tool=_number(d, "geometry.L_tool_m"),
        m_leg1=_number(d, "mass.leg1_kg"), m_leg2=_number(d, "mass.leg2_kg"),
        m_tool=_number(d, "mass.tool_kg"),
        L_G1=_number(d, "center_of_mass.L_G1_m"), L_G2=_number(d, "center_of_mass.L_G2_m"),
        J_foot=_matrix(d, "inertia.foot_kg_m2", 3), J_leg1=_matrix(d, "inertia.leg1_kg_m2", 3),
        J_leg2=_matrix(d, "inertia.leg2_kg_m2", 3),
        k_foot=_matrix(d, "compliance.foot_si", 6), k_leg1=_matrix(d, "compliance.leg1_si", 6),
        k_leg2=_matrix(d, "compliance.leg2_si", 6), k_tool=_matrix(d, "compliance.tool_si", 6),
        drive_stiffness=_number(d, "drive_stiffness_N_per_m"),
        errata=tuple(errata),
    )


def dumps(ds):
    return tomli_w.dumps(to_dict(ds))


def loads(text, validate=True):
    try:
        d = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(str(exc)) from exc
    ds = from_dict(d)
    return ds.validate() if validate else ds


def load_dataset(source="ifw", validate=True):
    """Built-in dataset by name, or a dataset file path."""
    if isinstance(source, MechanismDataset):
        return source.validate() if validate else source
    if str(source) in BUILTIN:
        ds = BUILTIN[str(source)]
        return ds.validate() if validate else ds
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text, validate)


def save_dataset(ds, path):
    Path(path).write_text(dumps(ds))
