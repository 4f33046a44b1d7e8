"""Composition of per-group retrievals into a storage-constrained scheme.

Each file is cut into contiguous regions, one region per distinct column
of the storage design array, sized by that group's fraction; the region
is further split into M-1 equal packets and replicated on the group's M
servers. Retrieval runs one independent storage-full instance per group
and concatenates the decoded regions. All cost accounting is exact.

File lengths must be multiples of N*(M-1)/gcd(N,M) symbols: every group
fraction is a multiple of gcd(N,M)/N and every region splits M-1 ways, so
this granularity (and nothing smaller) makes all packet sizes integral
for every array this package constructs.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .sda import AlphaAssignment
from .sfpir import Answer, GroupStorage, answer, decode, make_queries


@dataclass(frozen=True)
class FileLibrary:
    """K files of exactly file_len symbols each (one symbol = one byte)."""

    k_files: int
    file_len: int
    data: tuple[bytes, ...]

    def __post_init__(self):
        if len(self.data) != self.k_files:
            raise ValueError(f"expected {self.k_files} files, got {len(self.data)}")
        if any(len(f) != self.file_len for f in self.data):
            raise ValueError(f"every file must have exactly {self.file_len} symbols")

    def file(self, index: int) -> bytes:
        """File by 1-based index."""
        return self.data[index - 1]


@dataclass(frozen=True)
class GroupRegion:
    """One group's slice of every file: which servers hold it and where
    in the file it lives."""

    servers: tuple[int, ...]
    multiplicity: int
    group_bytes: int
    packet_bytes: int
    file_offset: int


@dataclass(frozen=True)
class PacketLayout:
    n: int
    m: int
    file_len: int
    groups: tuple[GroupRegion, ...]


@dataclass(frozen=True)
class StoragePlan:
    """Per-server inventory: which groups a server stores and the exact
    symbol count that costs, which always equals M*K*L/N."""

    n: int
    m: int
    k: int
    file_len: int
    per_server: dict[int, tuple[int, ...]]
    capacity_used: dict[int, Fraction]


@dataclass(frozen=True)
class GroupTranscript:
    group: int
    servers: tuple[int, ...]
    base: tuple[int, ...]
    queries: tuple[tuple[int, ...], ...]
    answers: tuple[Answer, ...]


@dataclass(frozen=True)
class RetrievalTranscript:
    theta: int
    groups: tuple[GroupTranscript, ...]
    downloaded_symbols: int
    decoded_file: bytes


def minimal_length(n: int, m: int) -> int:
    """Smallest admissible file length: N*(M-1)/gcd(N,M) symbols."""
    return n * (m - 1) // gcd(n, m)


def random_library(k: int, file_len: int, seed: int) -> FileLibrary:
    """K pseudo-random files, reproducible from the seed."""
    rng = random.Random(seed)
    return FileLibrary(k, file_len, tuple(rng.randbytes(file_len) for _ in range(k)))


def plan_storage(alpha: AlphaAssignment, k: int, file_len: int):
    """Turn a group-fraction assignment into a packet layout and a
    per-server storage plan.

    Groups receive contiguous file regions in assignment order. Raises
    ValueError when file_len is not a multiple of the layout granularity
    or the assignment violates its own invariants.
    """
    alpha.check()
    n, m = alpha.n, alpha.m
    if m < 2:
        raise ValueError("retrieval needs M >= 2; M=1 forces downloading everything")
    if k < 1:
        raise ValueError(f"need at least one file, got K={k}")
    base = minimal_length(n, m)
    if file_len <= 0 or file_len % base:
        raise ValueError(
            f"file length {file_len} is not a positive multiple of {base} = N(M-1)/gcd(N,M)"
        )
    g = gcd(n, m)
    groups = []
    offset = 0
    for servers, fraction in alpha.entries.items():
        group_bytes = fraction * file_len
        if group_bytes.denominator != 1:
            raise ValueError(f"group {servers} gets a fractional region of {group_bytes}")
        group_bytes = int(group_bytes)
        if group_bytes % (m - 1):
            raise ValueError(f"group {servers} region of {group_bytes} does not split {m - 1} ways")
        multiplicity = fraction * n / g
        if multiplicity.denominator != 1:
            raise ValueError(f"group {servers} fraction {fraction} is not a multiple of {g}/{n}")
        multiplicity = int(multiplicity)
        groups.append(
            GroupRegion(
                servers=tuple(sorted(servers)),
                multiplicity=multiplicity,
                group_bytes=group_bytes,
                packet_bytes=group_bytes // (m - 1),
                file_offset=offset,
            )
        )
        offset += group_bytes
    if offset != file_len:
        raise ValueError(f"group regions cover {offset} of {file_len} symbols")
    layout = PacketLayout(n, m, file_len, tuple(groups))

    per_server = {
        server: tuple(i for i, region in enumerate(groups) if server in region.servers)
        for server in range(1, n + 1)
    }
    capacity = {
        server: Fraction(k * sum(groups[i].group_bytes for i in stored))
        for server, stored in per_server.items()
    }
    plan = StoragePlan(n, m, k, file_len, per_server, capacity)
    return layout, plan


def group_storage(layout: PacketLayout, group: int, library: FileLibrary) -> GroupStorage:
    """The K x (M-1) packet grid every server of one group holds."""
    region = layout.groups[group]
    p = region.packet_bytes
    packets = tuple(
        tuple(
            library.file(k)[region.file_offset + i * p : region.file_offset + (i + 1) * p]
            for i in range(layout.m - 1)
        )
        for k in range(1, library.k_files + 1)
    )
    return GroupStorage(layout.m, packets)


def retrieve(
    theta: int,
    plan: StoragePlan,
    layout: PacketLayout,
    library: FileLibrary,
    base_vectors: list[tuple[int, ...]],
) -> RetrievalTranscript:
    """Run one full private retrieval of file theta.

    Each group gets its own base vector and an independent protocol round
    over its M servers; the decoded regions concatenate to the file. The
    servers' answer rule never sees theta.
    """
    if not 1 <= theta <= plan.k:
        raise ValueError(f"theta={theta} out of range 1..{plan.k}")
    if len(base_vectors) != len(layout.groups):
        raise ValueError(f"need one base vector per group ({len(layout.groups)})")
    rounds = []
    segments = []
    downloaded = 0
    for index, region in enumerate(layout.groups):
        storage = group_storage(layout, index, library)
        base = tuple(base_vectors[index])
        queries = make_queries(theta, base, layout.m)
        answers = [answer(q, storage) for q in queries]
        segments.append(b"".join(decode(theta, base, answers)))
        downloaded += sum(len(a.payload) for a in answers if not a.silent)
        rounds.append(
            GroupTranscript(index, region.servers, base, tuple(queries), tuple(answers))
        )
    return RetrievalTranscript(theta, tuple(rounds), downloaded, b"".join(segments))


def average_download(layout: PacketLayout, k: int) -> Fraction:
    """Exact expected download in symbols over the uniform base-vector draw:
    (1 + 1/M + ... + 1/M^(K-1)) * L, i.e. file length over capacity."""
    overhead = sum(Fraction(1, layout.m**i) for i in range(k))
    return sum((overhead * region.group_bytes for region in layout.groups), Fraction(0))


def subpacketization(layout: PacketLayout) -> int:
    """Packets per file: groups times M-1."""
    return len(layout.groups) * (layout.m - 1)
