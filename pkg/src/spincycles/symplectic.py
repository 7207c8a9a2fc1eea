"""Exact symplectic matrix engine over F2 and Z.

Matrices over F2 act by columns: column j of M is the packed image of the
basis vector e_j, so M x is the XOR of the columns selected by the bits of
x.  A whole 2g x 2g matrix packs into a single integer (column j occupies
bits [2g*j, 2g*(j+1))), which is the canonical encoding used for hashing,
ordering and membership.

Group enumeration is a level-synchronous BFS under left multiplication by
the generators.  When the packed matrix fits in 64 bits (2g <= 8) the BFS
runs on numpy uint64 arrays: each generator G is tabulated as the map
x -> G x over all 2^(2g) vectors, and G * (a frontier of packed matrices)
is computed lane by lane with fancy indexing.  Larger dimensions fall back
to a plain Python set BFS.  Either way the result is a sorted array of
canonical encodings, so closure sets, orders and transcripts do not depend
on generator order, chunking (``parts``) or thread scheduling.

Integral transvections use the right-handed convention
x -> x + <x, c> c; the opposite sign is the inverse twist, and every
relation-level verdict in this package is checked under both signs.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .homology import (
    CycleClassF2,
    CycleClassZ,
    pairing_f2_bits,
)
from .spin import QuadraticForm

#: default element budget for closures (override per call or via SPINCYCLES_CAP)
DEFAULT_CAP = 2_000_000

#: full-group enumeration and stabilizer filtering are desk-scale only
MAX_FULL_GROUP_GENUS = 3

#: orbit computations on vectors stay below 2^16 vectors
MAX_ORBIT_GENUS = 8

_GEN_BATCH = 16  # generators per unique() batch, caps peak memory


class NotSymplecticError(ValueError):
    """A matrix expected to preserve the intersection form does not."""


class CapExceededError(RuntimeError):
    """A verification needed a complete closure but the cap cut it short."""


def resolve_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("SPINCYCLES_CAP")
    if not env:
        return DEFAULT_CAP
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"SPINCYCLES_CAP must be an integer, got {env!r}") from None


def _swap_pairs(bits: int) -> int:
    """Exchange the two bits of every (a_i, b_i) pair."""
    ma = int("55" * max(1, (bits.bit_length() + 7) // 8), 16)
    return ((bits & ma) << 1) | ((bits >> 1) & ma)


@dataclass(frozen=True)
class MatF2:
    """2g x 2g matrix over F2, packed columns, acting as M @ x."""

    n: int  # dimension 2g
    cols: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError("dimension must be even and >= 2")
        if len(self.cols) != self.n or any(
            not 0 <= c < (1 << self.n) for c in self.cols
        ):
            raise ValueError("need n packed columns of n bits each")

    @classmethod
    def identity(cls, genus: int) -> "MatF2":
        n = 2 * genus
        return cls(n, tuple(1 << j for j in range(n)))

    @property
    def genus(self) -> int:
        return self.n // 2

    def apply_bits(self, x: int) -> int:
        out = 0
        rest = x
        while rest:
            j = (rest & -rest).bit_length() - 1
            out ^= self.cols[j]
            rest &= rest - 1
        return out

    def apply(self, x: CycleClassF2) -> CycleClassF2:
        if 2 * x.genus != self.n:
            raise ValueError("genus mismatch")
        return CycleClassF2(x.genus, self.apply_bits(x.bits))

    def __matmul__(self, other: "MatF2") -> "MatF2":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return MatF2(self.n, tuple(self.apply_bits(c) for c in other.cols))

    def packed(self) -> int:
        key = 0
        for j, c in enumerate(self.cols):
            key |= c << (self.n * j)
        return key

    @classmethod
    def from_packed(cls, n: int, key: int) -> "MatF2":
        mask = (1 << n) - 1
        return cls(n, tuple((key >> (n * j)) & mask for j in range(n)))

    def is_symplectic(self) -> bool:
        for k in range(self.n):
            for l in range(k + 1, self.n):
                expected = 1 if (k % 2 == 0 and l == k + 1) else 0
                if pairing_f2_bits(self.cols[k], self.cols[l]) != expected:
                    return False
        return True


def transvection_f2(c: CycleClassF2) -> MatF2:
    """x -> x + <c, x> c over F2; an involution, identity iff c = 0."""
    n = 2 * c.genus
    pairing_row = _swap_pairs(c.bits)  # bit j = <c, e_j>
    cols = tuple(
        (1 << j) ^ (c.bits if (pairing_row >> j) & 1 else 0) for j in range(n)
    )
    return MatF2(n, cols)


def symplectic_form_z(genus: int) -> np.ndarray:
    j = np.zeros((2 * genus, 2 * genus), dtype=np.int64)
    for i in range(genus):
        j[2 * i, 2 * i + 1] = 1
        j[2 * i + 1, 2 * i] = -1
    return j


def transvection_z(c: CycleClassZ, sign: int = 1) -> np.ndarray:
    """Integral transvection x -> x + sign * <x, c> c.

    ``sign=+1`` is the right-handed twist convention; ``sign=-1`` is its
    inverse.  Since the rank-one part squares to zero, integer powers are
    I + e * sign * outer(c, Jc).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    v = np.array(c.coords, dtype=np.int64)
    jc = symplectic_form_z(c.genus) @ v
    return np.eye(2 * c.genus, dtype=np.int64) + sign * np.outer(v, jc)


def transvection_z_power(c: CycleClassZ, exponent: int, sign: int = 1) -> np.ndarray:
    v = np.array(c.coords, dtype=np.int64)
    jc = symplectic_form_z(c.genus) @ v
    return np.eye(2 * c.genus, dtype=np.int64) + (exponent * sign) * np.outer(v, jc)


def is_symplectic_z(m: np.ndarray) -> bool:
    n = m.shape[0]
    if m.shape != (n, n) or n % 2 != 0:
        return False
    j = symplectic_form_z(n // 2)
    return bool(np.array_equal(m.T @ j @ m, j))


def mat_f2_from_z(m: np.ndarray) -> MatF2:
    """Reduce an integral matrix modulo 2 into the packed representation."""
    n = m.shape[0]
    cols = []
    for jcol in range(n):
        bits = 0
        for k in range(n):
            if m[k, jcol] & 1:
                bits |= 1 << k
        cols.append(bits)
    return MatF2(n, tuple(cols))


def preserves_q(m: MatF2, q: QuadraticForm) -> bool:
    """Does a symplectic matrix preserve q?  Raises if m is not symplectic.

    Checking q(M e_k) = q(e_k) on the basis suffices: polarization then
    propagates the equality to every class.
    """
    if m.genus != q.genus:
        raise ValueError("genus mismatch")
    if not m.is_symplectic():
        raise NotSymplecticError("matrix does not preserve the intersection form")
    qmask = q.qmask
    return all(
        q.eval_bits(m.cols[k]) == (qmask >> k) & 1 for k in range(m.n)
    )


# ---------------------------------------------------------------------------
# bulk engine: packed matrices in numpy uint64 arrays


def _vector_table(m: MatF2) -> np.ndarray:
    """uint64 table of x -> M x over all 2^n packed vectors (n <= 16)."""
    n = m.n
    table = np.zeros(1 << n, dtype=np.uint64)
    for j in range(n):
        table[1 << j : 1 << (j + 1)] = table[: 1 << j] ^ np.uint64(m.cols[j])
    return table


def _apply_table_mats(packed: np.ndarray, table: np.ndarray, n: int) -> np.ndarray:
    """Left-multiply every packed matrix by the tabulated generator."""
    mask = np.uint64((1 << n) - 1)
    out = np.zeros_like(packed)
    for j in range(n):
        shift = np.uint64(n * j)
        out |= table[(packed >> shift) & mask] << shift
    return out


def _setdiff_sorted(cand: np.ndarray, visited: np.ndarray) -> np.ndarray:
    """cand \\ visited for sorted unique uint64 arrays."""
    if cand.size == 0 or visited.size == 0:
        return cand
    pos = np.searchsorted(visited, cand)
    pos_c = np.minimum(pos, visited.size - 1)
    old = (pos < visited.size) & (visited[pos_c] == cand)
    return cand[~old]


def _chunk_candidates(
    chunk: np.ndarray, tables: list[np.ndarray], n: int
) -> np.ndarray:
    out: np.ndarray | None = None
    for k in range(0, len(tables), _GEN_BATCH):
        batch = [_apply_table_mats(chunk, t, n) for t in tables[k : k + _GEN_BATCH]]
        u = np.unique(np.concatenate(batch))
        out = u if out is None else np.union1d(out, u)
    return out if out is not None else np.empty(0, dtype=np.uint64)


def _closure_np(
    n: int, generators: list[MatF2], cap: int, parts: int
) -> tuple[np.ndarray, bool]:
    tables = [_vector_table(g) for g in generators]
    ident = np.uint64(MatF2.identity(n // 2).packed())
    visited = np.array([ident], dtype=np.uint64)
    frontier = visited
    completed = True
    while frontier.size:
        chunks = [c for c in np.array_split(frontier, max(1, parts)) if c.size]
        if parts > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=parts) as pool:
                results = list(pool.map(lambda c: _chunk_candidates(c, tables, n), chunks))
        else:
            results = [_chunk_candidates(c, tables, n) for c in chunks]
        cand = np.unique(np.concatenate(results)) if results else np.empty(0, np.uint64)
        frontier = _setdiff_sorted(cand, visited)
        if frontier.size:
            visited = np.union1d(visited, frontier)
        if visited.size > cap:
            completed = False
            break
    return visited, completed


def _closure_py(n: int, generators: list[MatF2], cap: int) -> tuple[list[int], bool]:
    gens = [g.cols for g in generators]

    def mul(gcols: tuple[int, ...], mcols: tuple[int, ...]) -> tuple[int, ...]:
        out = []
        for col in mcols:
            acc = 0
            rest = col
            while rest:
                j = (rest & -rest).bit_length() - 1
                acc ^= gcols[j]
                rest &= rest - 1
            out.append(acc)
        return tuple(out)

    ident = tuple(1 << j for j in range(n))
    visited = {ident}
    frontier = [ident]
    completed = True
    while frontier:
        new = set()
        for mcols in frontier:
            for gcols in gens:
                prod = mul(gcols, mcols)
                if prod not in visited:
                    new.add(prod)
        visited |= new
        frontier = sorted(new)
        if len(visited) > cap:
            completed = False
            break
    packed = sorted(
        sum(c << (n * j) for j, c in enumerate(cols)) for cols in visited
    )
    return packed, completed


@dataclass
class GroupClosure:
    """Deterministic closure result: sorted canonical encodings."""

    genus: int
    packed: np.ndarray | list[int] = field(repr=False)
    generators: list[MatF2] = field(repr=False)
    completed: bool = True
    cap: int = DEFAULT_CAP

    @property
    def order(self) -> int:
        return len(self.packed)

    def contains_packed(self, key: int) -> bool:
        arr = self.packed
        if isinstance(arr, np.ndarray):
            pos = int(np.searchsorted(arr, np.uint64(key)))
            return pos < arr.size and int(arr[pos]) == key
        import bisect

        pos = bisect.bisect_left(arr, key)
        return pos < len(arr) and arr[pos] == key

    def matrices(self):
        n = 2 * self.genus
        for key in self.packed:
            yield MatF2.from_packed(n, int(key))


def closure(
    generators: list[MatF2], cap: int | None = None, parts: int = 1
) -> GroupClosure:
    """Left-multiplication BFS closure of symplectic generators.

    Stops (``completed=False``) once the element budget is exceeded; the
    element count at the stop is still deterministic because levels are
    processed synchronously.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValueError("generators must share one genus")
    for g in generators:
        if not g.is_symplectic():
            raise NotSymplecticError("generator does not preserve the form")
    cap = resolve_cap(cap)
    if n * n <= 64:
        packed, completed = _closure_np(n, generators, cap, parts)
    else:
        packed, completed = _closure_py(n, generators, cap)
    return GroupClosure(n // 2, packed, list(generators), completed, cap)


def membership(m: MatF2, group: GroupClosure) -> bool:
    """Canonical-encoding membership; the closure must be completed."""
    if not group.completed:
        raise ValueError("closure incomplete: membership would be unreliable")
    if m.genus != group.genus:
        raise ValueError("genus mismatch")
    return group.contains_packed(m.packed())


def all_transvections(genus: int) -> list[MatF2]:
    """Transvections along every nonzero mod-2 class."""
    return [
        transvection_f2(CycleClassF2(genus, bits))
        for bits in range(1, 1 << (2 * genus))
    ]


def admissible_transvections(q: QuadraticForm) -> list[MatF2]:
    """Transvections along every class with q = 1."""
    out = []
    for bits in range(1, 1 << (2 * q.genus)):
        if q.eval_bits(bits) == 1:
            out.append(transvection_f2(CycleClassF2(q.genus, bits)))
    return out


_FULL_GROUP_CACHE: dict[int, np.ndarray] = {}


def full_symplectic_closure(
    genus: int, cap: int | None = None, parts: int = 1
) -> GroupClosure:
    """The whole symplectic group over F2, as the closure of all transvections.

    Completed enumerations are cached per genus; the cached array is
    returned read-only, so repeat verifications skip the BFS.
    """
    if genus > MAX_FULL_GROUP_GENUS:
        raise ValueError(
            f"full-group enumeration supports genus <= {MAX_FULL_GROUP_GENUS}"
        )
    cap = resolve_cap(cap)
    cached = _FULL_GROUP_CACHE.get(genus)
    if cached is not None and cached.size <= cap:
        return GroupClosure(genus, cached, all_transvections(genus), True, cap)
    result = closure(all_transvections(genus), cap, parts)
    if result.completed:
        arr = np.asarray(result.packed, dtype=np.uint64)
        arr.setflags(write=False)
        _FULL_GROUP_CACHE[genus] = arr
    return result


def _q_basis_values(q: QuadraticForm) -> np.ndarray:
    qmask = q.qmask
    return np.array([(qmask >> k) & 1 for k in range(2 * q.genus)], dtype=np.uint8)


def _filter_preserves_q(packed: np.ndarray, q: QuadraticForm) -> np.ndarray:
    """Vectorized stabilizer filter over packed symplectic matrices."""
    n = 2 * q.genus
    table = q.values_table()
    expect = _q_basis_values(q)
    mask = np.uint64((1 << n) - 1)
    keep = np.ones(packed.size, dtype=bool)
    for k in range(n):
        lane = (packed >> np.uint64(n * k)) & mask
        keep &= table[lane] == expect[k]
    return packed[keep]


def q_stabilizer_bruteforce(
    q: QuadraticForm, cap: int | None = None, parts: int = 1
) -> GroupClosure:
    """Filter the full symplectic group by q-preservation (genus <= 3)."""
    if q.genus > MAX_FULL_GROUP_GENUS:
        raise ValueError(
            f"brute-force stabilizer supports genus <= {MAX_FULL_GROUP_GENUS}"
        )
    full = full_symplectic_closure(q.genus, cap, parts)
    if not full.completed:
        raise CapExceededError(
            f"full group exceeded the cap of {full.cap} elements"
        )
    stab = _filter_preserves_q(np.asarray(full.packed, dtype=np.uint64), q)
    return GroupClosure(q.genus, stab, [], True, full.cap)


def verify_transvection_generation(
    q: QuadraticForm, cap: int | None = None, parts: int = 1
) -> dict:
    """Compare the admissible-transvection closure with the q-stabilizer.

    Returns a transcript dict with both orders and a verdict
    (``equal`` or ``proper_subgroup``).  For genus 3 equality is the
    expected outcome; for smaller genus the verdict is recorded as found.
    """
    if q.genus > MAX_FULL_GROUP_GENUS:
        raise ValueError(f"supported for genus <= {MAX_FULL_GROUP_GENUS}")
    full = full_symplectic_closure(q.genus, cap, parts)
    if not full.completed:
        raise CapExceededError(f"full group exceeded the cap of {full.cap}")
    stab = _filter_preserves_q(np.asarray(full.packed, dtype=np.uint64), q)
    adm = closure(admissible_transvections(q), cap, parts)
    if not adm.completed:
        raise CapExceededError(f"admissible closure exceeded the cap of {adm.cap}")
    adm_arr = np.asarray(adm.packed, dtype=np.uint64)
    equal = adm_arr.size == stab.size and bool(np.array_equal(adm_arr, stab))
    subset = bool(np.all(np.isin(adm_arr, stab, assume_unique=True)))
    return {
        "genus": q.genus,
        "arf": q.arf(),
        "closure_order": int(adm_arr.size),
        "stabilizer_order": int(stab.size),
        "full_group_order": int(full.order),
        "closure_is_subset": subset,
        "verdict": "equal" if equal else "proper_subgroup",
    }


def orbit(
    x: CycleClassF2, generators: list[MatF2], parts: int = 1
) -> set[CycleClassF2]:
    """BFS orbit of a class under the group generated by ``generators``."""
    if x.genus > MAX_ORBIT_GENUS:
        raise ValueError(f"orbit computations support genus <= {MAX_ORBIT_GENUS}")
    if any(g.genus != x.genus for g in generators):
        raise ValueError("genus mismatch")
    packed = _orbit_packed(x.bits, [_vector_table(g) for g in generators], parts)
    return {CycleClassF2(x.genus, int(v)) for v in packed}


def _orbit_packed(
    start_bits: int, tables: list[np.ndarray], parts: int
) -> np.ndarray:
    visited = np.array([start_bits], dtype=np.uint64)
    frontier = visited
    while frontier.size:
        chunks = [c for c in np.array_split(frontier, max(1, parts)) if c.size]
        cands = []
        for chunk in chunks:
            cands.extend(t[chunk] for t in tables)
        cand = np.unique(np.concatenate(cands)) if cands else np.empty(0, np.uint64)
        frontier = _setdiff_sorted(cand, visited)
        if frontier.size:
            visited = np.union1d(visited, frontier)
    return visited


# ---------------------------------------------------------------------------
# orbit structure used by the acceptance checks


def _arf_of_form_masks(masks: np.ndarray, genus: int) -> np.ndarray:
    ma = np.uint64(sum(1 << (2 * i) for i in range(genus)))
    return (np.bitwise_count(masks & (masks >> np.uint64(1)) & ma) & np.uint64(1)).astype(
        np.uint8
    )


def verify_arf_classification(genus: int, parts: int = 1) -> dict:
    """Orbits of the symplectic group on all 2^(2g) quadratic forms.

    A form is encoded by its 2g basis values.  A transvection along c
    fixes a form q when q(c) = 1 and otherwise flips the values on the
    basis vectors pairing with c, which follows from polarization.  The
    transcript records the orbit sizes, that they partition the form
    count, and that the Arf invariant is constant on each orbit.
    """
    if genus > MAX_FULL_GROUP_GENUS:
        raise ValueError(f"supported for genus <= {MAX_FULL_GROUP_GENUS}")
    n = 2 * genus
    total = 1 << n
    ma = np.uint64(sum(1 << (2 * i) for i in range(genus)))
    one = np.uint64(1)

    cs = list(range(1, total))
    flips = [np.uint64(_swap_pairs(c)) for c in cs]
    quads = [
        np.uint64(bin(c & (c >> 1) & int(ma)).count("1") & 1) for c in cs
    ]

    def step(front: np.ndarray) -> list[np.ndarray]:
        out = []
        for c, flip, quad in zip(cs, flips, quads):
            qc = (np.bitwise_count(front & np.uint64(c)) + quad) & one
            out.append(np.where(qc == one, front, front ^ flip))
        return out

    remaining = np.ones(total, dtype=bool)
    orbits = []
    while remaining.any():
        start = int(np.flatnonzero(remaining)[0])
        visited = np.array([start], dtype=np.uint64)
        frontier = visited
        while frontier.size:
            chunks = [c for c in np.array_split(frontier, max(1, parts)) if c.size]
            cands = []
            for chunk in chunks:
                cands.extend(step(chunk))
            cand = np.unique(np.concatenate(cands))
            frontier = _setdiff_sorted(cand, visited)
            if frontier.size:
                visited = np.union1d(visited, frontier)
        arfs = _arf_of_form_masks(visited, genus)
        orbits.append(
            {
                "arf": int(arfs[0]),
                "size": int(visited.size),
                "arf_constant": bool(np.all(arfs == arfs[0])),
            }
        )
        remaining[visited.astype(np.int64)] = False
    orbits.sort(key=lambda o: o["arf"])
    sizes_ok = sum(o["size"] for o in orbits) == total
    return {
        "genus": genus,
        "form_count": total,
        "orbits": orbits,
        "partition_ok": sizes_ok,
        "two_orbits": len(orbits) == 2,
        "arf_constant_on_orbits": all(o["arf_constant"] for o in orbits),
    }


def q_orbit_partition(q: QuadraticForm, cap: int | None = None, parts: int = 1) -> dict:
    """Orbits of the brute-force q-stabilizer on nonzero mod-2 classes.

    Expected partition: {q = 1} and {q = 0} minus zero (zero is a fixed
    point).  The transcript records the orbit sizes with their q values
    and whether the expectation holds.
    """
    stab = q_stabilizer_bruteforce(q, cap, parts)
    arr = np.asarray(stab.packed, dtype=np.uint64)
    n = 2 * q.genus
    mask = np.uint64((1 << n) - 1)
    reps = np.zeros(1 << n, dtype=np.uint64)
    for x in range(1 << n):
        images = np.zeros(arr.size, dtype=np.uint64)
        rest = x
        while rest:
            j = (rest & -rest).bit_length() - 1
            images ^= (arr >> np.uint64(n * j)) & mask
            rest &= rest - 1
        reps[x] = images.min() if arr.size else np.uint64(x)
    table = q.values_table()
    orbit_ids = sorted(set(int(r) for r in reps))
    orbits = []
    for rep in orbit_ids:
        members = np.flatnonzero(reps == np.uint64(rep))
        qvals = set(int(table[m]) for m in members)
        orbits.append(
            {
                "q_value": sorted(qvals),
                "size": int(members.size),
                "contains_zero": bool(0 in members),
            }
        )
    # expected orbits: {0}, the whole of q^-1(1), and q^-1(0) minus zero
    # (the last is empty for genus 1 with Arf 1)
    ones = int(table.sum())
    zeros_nonzero = (1 << n) - ones - 1
    expected = {(1, True, 0)}
    expected.add((ones, False, 1))
    if zeros_nonzero:
        expected.add((zeros_nonzero, False, 0))
    actual = {
        (o["size"], o["contains_zero"], o["q_value"][0])
        for o in orbits
        if len(o["q_value"]) == 1
    }
    ok = len(actual) == len(orbits) and actual == expected
    return {
        "genus": q.genus,
        "arf": q.arf(),
        "stabilizer_order": stab.order,
        "orbits": orbits,
        "matches_expected_partition": bool(ok),
    }
