"""Bicriteria ATSP instances: construction, generators, I/O and tour evaluation.

Random instances are drawn with numpy's ``Generator(PCG64(seed))`` so a
given ``(parameters, seed)`` pair yields the same weights on every platform.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class InvalidTourError(ValueError):
    """Raised when a successor array is not a single Hamiltonian circuit."""


class TSPLIBParseError(ValueError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True, eq=False)
class Instance:
    """Complete digraph on ``n`` vertices with two arc-weight matrices.

    ``w2`` is ``None`` for single-criterion carriers read from TSPLIB.
    Diagonal entries hold a sentinel larger than any tour weight and are
    never summed.
    """

    n: int
    w1: np.ndarray
    w2: np.ndarray | None = None
    name: str = ""
    sentinel: int = field(init=False, repr=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 3:
            raise ValueError(f"instance needs n >= 3 vertices, got {n}")
        mats = [self.w1] if self.w2 is None else [self.w1, self.w2]
        fixed = []
        top = 1
        for m in mats:
            m = np.array(m, dtype=np.int64)
            if m.shape != (n, n):
                raise ValueError(f"weight matrix has shape {m.shape}, expected {(n, n)}")
            off = m[~np.eye(n, dtype=bool)]
            if off.min() < 1:
                raise ValueError("off-diagonal weights must be positive integers")
            top = max(top, int(off.max()))
            fixed.append(m)
        sentinel = n * top + 1
        for m in fixed:
            np.fill_diagonal(m, sentinel)
            m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "w1", fixed[0])
        object.__setattr__(self, "w2", fixed[1] if len(fixed) > 1 else None)
        object.__setattr__(self, "sentinel", sentinel)

    @property
    def bicriteria(self) -> bool:
        return self.w2 is not None

    def weights(self, criterion: int) -> np.ndarray:
        if criterion == 1:
            return self.w1
        if criterion == 2:
            if self.w2 is None:
                raise ValueError(f"instance {self.name!r} has no second criterion")
            return self.w2
        raise ValueError(f"criterion must be 1 or 2, got {criterion}")

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "n": self.n,
            "w1": _offdiag_list(self.w1),
            "w2": None if self.w2 is None else _offdiag_list(self.w2),
        }
        return json.dumps(doc, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        doc = json.loads(text)
        try:
            return cls(n=doc["n"], w1=_fill_diag(doc["w1"]),
                       w2=None if doc.get("w2") is None else _fill_diag(doc["w2"]),
                       name=doc.get("name", ""))
        except KeyError as exc:
            raise ValueError(f"instance JSON is missing key {exc}") from None

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> "Instance":
        return cls.from_json(Path(path).read_text())


def _offdiag_list(m: np.ndarray) -> list[list[int]]:
    rows = m.tolist()
    for i, row in enumerate(rows):
        row[i] = 0
    return rows


def _fill_diag(rows) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    np.fill_diagonal(m, 1)
    return m


@dataclass(frozen=True)
class Tour:
    """Hamiltonian circuit stored as a successor array: ``succ[v]`` follows ``v``.

    The successor array is a canonical encoding of the arc set, so equality
    of ``Tour`` objects is equality of circuits regardless of start vertex.
    """

    succ: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "succ", tuple(int(v) for v in self.succ))
        check_tour(self.succ)

    @classmethod
    def from_order(cls, order) -> "Tour":
        order = list(order)
        succ = [0] * len(order)
        for a, b in zip(order, order[1:] + order[:1]):
            succ[a] = b
        return cls(tuple(succ))

    @property
    def n(self) -> int:
        return len(self.succ)

    def order(self, start: int = 0) -> list[int]:
        out = [start]
        v = self.succ[start]
        while v != start:
            out.append(v)
            v = self.succ[v]
        return out

    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset(enumerate(self.succ))

    def __str__(self):
        return "-".join(map(str, self.order()))


def check_tour(succ, n: int | None = None) -> None:
    """Raise :class:`InvalidTourError` unless ``succ`` is one circuit over all vertices."""
    m = len(succ)
    if n is not None and m != n:
        raise InvalidTourError(f"tour has length {m}, instance has {n} vertices")
    if m < 2 or sorted(succ) != list(range(m)):
        raise InvalidTourError(f"successor array {list(succ)} is not a permutation")
    v, steps = succ[0], 1
    while v != 0:
        v = succ[v]
        steps += 1
    if steps != m:
        raise InvalidTourError(f"successor array {list(succ)} contains sub-tours")


def evaluate(inst: Instance, t: Tour) -> tuple[int, int]:
    """Total weight ``(D1, D2)`` of tour ``t`` on ``inst``."""
    check_tour(t.succ, inst.n)
    if inst.w2 is None:
        raise ValueError(f"instance {inst.name!r} has no second criterion")
    rows = np.arange(inst.n)
    cols = np.asarray(t.succ)
    return int(inst.w1[rows, cols].sum()), int(inst.w2[rows, cols].sum())


def _check_range(lo: int, hi: int) -> None:
    if not (1 <= lo <= hi):
        raise ValueError(f"weight range [{lo}, {hi}] must satisfy 1 <= lo <= hi")


def generate_random(n: int, lo1: int, hi1: int, lo2: int, hi2: int, seed: int,
                    name: str | None = None) -> Instance:
    """Independent uniform integer weights on ``[lo1, hi1]`` and ``[lo2, hi2]``."""
    _check_range(lo1, hi1)
    _check_range(lo2, hi2)
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    rng = make_rng(seed)
    w1 = rng.integers(lo1, hi1, size=(n, n), endpoint=True)
    w2 = rng.integers(lo2, hi2, size=(n, n), endpoint=True)
    return Instance(n, w1, w2, name=name or f"S{n}[{lo1},{hi1}][{lo2},{hi2}]")


def generate_contradicting(n: int, seed: int, name: str | None = None) -> Instance:
    """Weights in {1, 2} with ``w2 = 3 - w1``, so every tour has ``D1 + D2 = 3n``."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    rng = make_rng(seed)
    w1 = rng.integers(1, 2, size=(n, n), endpoint=True)
    return Instance(n, w1, 3 - w1, name=name or f"S{n}contr[1,2][1,2]")


def generate_ftv_derived(base: Instance, seed: int, name: str | None = None) -> Instance:
    """Keep ``base.w1``; draw ``w2`` uniformly from ``[1, max off-diagonal w1]``."""
    n = base.n
    top = int(base.w1[~np.eye(n, dtype=bool)].max())
    rng = make_rng(seed)
    w2 = rng.integers(1, top, size=(n, n), endpoint=True)
    return Instance(n, base.w1.copy(), w2, name=name or f"{base.name}Rand")


_HEADER = re.compile(r"^\s*([A-Z_]+)\s*:?\s*(.*?)\s*$")


def parse_tsplib(text) -> Instance:
    """Parse an EXPLICIT / FULL_MATRIX ATSP file into a single-criterion instance."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    lines = text.splitlines()
    header: dict[str, tuple[str, int]] = {}
    section_at = None
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        if line.strip().startswith("EDGE_WEIGHT_SECTION"):
            section_at = lineno
            break
        m = _HEADER.match(line)
        if m is None:
            raise TSPLIBParseError(f"line {lineno}: cannot parse header line {line!r}")
        header[m.group(1)] = (m.group(2), lineno)

    for key in ("NAME", "TYPE", "DIMENSION", "EDGE_WEIGHT_TYPE", "EDGE_WEIGHT_FORMAT"):
        if key not in header:
            raise TSPLIBParseError(f"missing required key {key}")
    expect = {"TYPE": "ATSP", "EDGE_WEIGHT_TYPE": "EXPLICIT", "EDGE_WEIGHT_FORMAT": "FULL_MATRIX"}
    for key, want in expect.items():
        got, lineno = header[key]
        if got.upper() != want:
            raise TSPLIBParseError(f"line {lineno}: {key} is {got!r}, only {want} is supported")
    dim, dim_line = header["DIMENSION"]
    try:
        n = int(dim)
    except ValueError:
        raise TSPLIBParseError(f"line {dim_line}: DIMENSION {dim!r} is not an integer") from None
    if section_at is None:
        raise TSPLIBParseError("missing EDGE_WEIGHT_SECTION")

    tokens: list[int] = []
    for lineno in range(section_at + 1, len(lines) + 1):
        line = lines[lineno - 1].strip()
        if not line:
            continue
        if line == "EOF":
            break
        for tok in line.split():
            try:
                tokens.append(int(tok))
            except ValueError:
                raise TSPLIBParseError(f"line {lineno}: non-integer weight {tok!r}") from None
        if len(tokens) > n * n:
            raise TSPLIBParseError(f"line {lineno}: more than {n * n} matrix entries")
    if len(tokens) != n * n:
        raise TSPLIBParseError(
            f"line {section_at}: EDGE_WEIGHT_SECTION has {len(tokens)} entries, expected {n * n}")
    w1 = np.array(tokens, dtype=np.int64).reshape(n, n)
    np.fill_diagonal(w1, 1)
    return Instance(n, w1, None, name=header["NAME"][0])


def format_tsplib(inst: Instance, criterion: int = 1) -> str:
    """Write one criterion as an EXPLICIT / FULL_MATRIX ATSP file."""
    w = inst.weights(criterion).copy()
    np.fill_diagonal(w, 9999999)
    rows = "\n".join(" ".join(str(x) for x in row) for row in w.tolist())
    return (f"NAME: {inst.name}\nTYPE: ATSP\nDIMENSION: {inst.n}\n"
            "EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
            f"EDGE_WEIGHT_SECTION\n{rows}\nEOF\n")
