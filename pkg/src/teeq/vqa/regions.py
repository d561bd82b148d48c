"""Triplet sets over which the TEE regularizer is averaged."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..hamiltonians import LatticeSpec
from ..statevector import Region


@dataclass(frozen=True)
class RegionTriplet:
    """Three pairwise-disjoint regions; the tripartite information over
    them is invariant under any relabeling."""

    a: Region
    b: Region
    c: Region

    def __post_init__(self):
        for x, y in ((self.a, self.b), (self.a, self.c), (self.b, self.c)):
            if not x.isdisjoint(y):
                raise ValueError(f"triplet regions {x.qubits} and {y.qubits} overlap")

    def regions(self) -> tuple[Region, Region, Region]:
        return self.a, self.b, self.c


# region inclusion signs in the 7-term expansion of the tripartite information
_TRIPLET_SIGNS = (
    (("a",), 1),
    (("b",), 1),
    (("c",), 1),
    (("a", "b"), -1),
    (("a", "c"), -1),
    (("b", "c"), -1),
    (("a", "b", "c"), 1),
)


@dataclass(frozen=True)
class OmegaSet:
    """Nonempty collection of region triplets."""

    triplets: tuple[RegionTriplet, ...]

    def __post_init__(self):
        if not self.triplets:
            raise ValueError("omega set must contain at least one triplet")
        object.__setattr__(self, "triplets", tuple(self.triplets))

    def __len__(self) -> int:
        return len(self.triplets)

    @cached_property
    def signed_regions(self) -> list[list[tuple[tuple[int, ...], int]]]:
        """Per triplet: the seven (qubit tuple, sign) entries of the expansion."""
        out = []
        for t in self.triplets:
            named = {"a": t.a.qubits, "b": t.b.qubits, "c": t.c.qubits}
            entries = []
            for names, sign in _TRIPLET_SIGNS:
                qubits = tuple(sorted(q for name in names for q in named[name]))
                entries.append((qubits, sign))
            out.append(entries)
        return out


def _cyclic_block(start: int, size: int, n: int) -> tuple[int, ...]:
    return tuple(sorted((start + j) % n for j in range(size)))


def build_omega_contiguous(n: int, n_s: int) -> OmegaSet:
    """All placements of three disjoint contiguous size-n_s blocks on the
    periodic chain, with the {B, C} exchange deduplicated."""
    if n_s < 1:
        raise ValueError("block size must be positive")
    if 3 * n_s > n:
        raise ValueError(f"three disjoint blocks of size {n_s} do not fit on {n} qubits")
    blocks = [_cyclic_block(s, n_s, n) for s in range(n)]
    triplets = []
    for sa in range(n):
        a = set(blocks[sa])
        for sb in range(n):
            if sb == sa or a & set(blocks[sb]):
                continue
            for sc in range(sb + 1, n):
                if sc == sa:
                    continue
                if (a | set(blocks[sb])) & set(blocks[sc]):
                    continue
                triplets.append(
                    RegionTriplet(Region(blocks[sa]), Region(blocks[sb]), Region(blocks[sc]))
                )
    return OmegaSet(tuple(triplets))


def build_omega_lshape(lattice: LatticeSpec) -> OmegaSet:
    """All L-shaped site triplets: an elbow adjacent to one horizontal and
    one vertical neighbour."""
    if lattice.lx < 2 or lattice.ly < 2:
        raise ValueError("L-shaped triplets need at least a 2x2 lattice")
    triplets = []
    for r in range(lattice.ly):
        for c in range(lattice.lx):
            elbow = lattice.site(r, c)
            horizontal = [lattice.site(r, cc) for cc in (c - 1, c + 1) if 0 <= cc < lattice.lx]
            vertical = [lattice.site(rr, c) for rr in (r - 1, r + 1) if 0 <= rr < lattice.ly]
            for hh in horizontal:
                for vv in vertical:
                    triplets.append(RegionTriplet(Region([hh]), Region([elbow]), Region([vv])))
    return OmegaSet(tuple(triplets))
