"""Feedback shift registers: evaluation, stepping, cycle structure, cycle counts.

States are words from :mod:`debruijn.bitword`; a state also has an integer
index obtained by reading its bits most-significant-first (bit 0 of the word
is the top bit of the index). The same convention indexes truth tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitword import Bits, necklace_of, word_str

# Cycle sweeps use a 2^n-bit visited bitmap; this cap keeps them under 8 MiB.
MAX_SWEEP_ORDER = 26

PCR = "pcr"
PSR = "psr"
CSR = "csr"
TABLE = "table"

_KINDS = (PCR, PSR, CSR, TABLE)


@dataclass(frozen=True)
class FeedbackFunction:
    """A nonsingular feedback map on n-bit states.

    ``kind`` selects one of the fixed registers (pure cycling, pure summing,
    complemented summing) or an explicit truth table of 2^n bits.
    """

    n: int
    kind: str
    table: Bits | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("feedback functions need order n >= 2")
        if self.kind not in _KINDS:
            raise ValueError(f"unknown feedback kind {self.kind!r}")
        if self.kind == TABLE:
            t = self.table
            if t is None or len(t) != 1 << self.n:
                raise ValueError("truth table must hold exactly 2^n bits")
            if any(b not in (0, 1) for b in t):
                raise ValueError("truth table entries must be 0 or 1")
            half = 1 << (self.n - 1)
            for i in range(half):
                if t[i] == t[i + half]:
                    raise ValueError(
                        "table is singular: outputs agree on the conjugate "
                        f"pair with suffix index {i}"
                    )
        elif self.table is not None:
            raise ValueError("only table feedback carries a truth table")


def pcr(n: int) -> FeedbackFunction:
    return FeedbackFunction(n, PCR)


def psr(n: int) -> FeedbackFunction:
    return FeedbackFunction(n, PSR)


def csr(n: int) -> FeedbackFunction:
    return FeedbackFunction(n, CSR)


def table_fsr(n: int, bits) -> FeedbackFunction:
    return FeedbackFunction(n, TABLE, tuple(int(b) for b in bits))


def word_index(w: Bits) -> int:
    x = 0
    for b in w:
        x = (x << 1) | b
    return x


def index_word(idx: int, n: int) -> Bits:
    return tuple((idx >> (n - 1 - i)) & 1 for i in range(n))


def eval_index(f: FeedbackFunction, idx: int) -> int:
    if f.kind == PCR:
        return (idx >> (f.n - 1)) & 1
    if f.kind == PSR:
        return idx.bit_count() & 1
    if f.kind == CSR:
        return 1 ^ (idx.bit_count() & 1)
    return f.table[idx]


def evaluate(f: FeedbackFunction, state: Bits) -> int:
    if len(state) != f.n:
        raise ValueError(f"state length {len(state)} != order {f.n}")
    return eval_index(f, word_index(state))


def step_index(f: FeedbackFunction, idx: int) -> int:
    return ((idx << 1) & ((1 << f.n) - 1)) | eval_index(f, idx)


def step(f: FeedbackFunction, state: Bits) -> Bits:
    if len(state) != f.n:
        raise ValueError(f"state length {len(state)} != order {f.n}")
    return state[1:] + (eval_index(f, word_index(state)),)


def sequence_bits(f: FeedbackFunction, start: Bits, count: int) -> Bits:
    """The first ``count`` output bits of the plain register run from start."""
    idx = word_index(start)
    n = f.n
    out = []
    for _ in range(count):
        out.append((idx >> (n - 1)) & 1)
        idx = step_index(f, idx)
    return tuple(out)


def parse_table_text(n: int, text: str) -> FeedbackFunction:
    """Load a truth table from '0'/'1' characters or hex digits.

    Bit i of the table is the output on the state whose index is i; hex
    digits carry four table bits each, most significant first.
    """
    data = "".join(text.split())
    size = 1 << n
    if len(data) == size and set(data) <= {"0", "1"}:
        return table_fsr(n, (1 if c == "1" else 0 for c in data))
    if len(data) == size // 4:
        try:
            value = int(data, 16)
        except ValueError:
            raise ValueError("truth table text is neither binary nor hex") from None
        return table_fsr(n, ((value >> (size - 1 - i)) & 1 for i in range(size)))
    raise ValueError(
        f"expected {size} binary chars or {size // 4} hex digits, got {len(data)}"
    )


def table_hex(f: FeedbackFunction) -> str:
    """Hex dump of any feedback function's full truth table."""
    size = 1 << f.n
    value = 0
    for i in range(size):
        value = (value << 1) | eval_index(f, i)
    return format(value, f"0{size // 4}x")


@dataclass(frozen=True, order=True)
class CycleRecord:
    """One register cycle, canonicalized by the necklace of its full window.

    The window length is n for the pure cycling register, n+1 for the summing
    registers, and the least period itself for explicit-table feedback.
    """

    necklace: Bits
    least_period: int
    weight: int
    state_count: int

    def __str__(self) -> str:
        return word_str(self.necklace)


def _ambient_length(f: FeedbackFunction) -> int | None:
    if f.kind == PCR:
        return f.n
    if f.kind in (PSR, CSR):
        return f.n + 1
    return None


def decompose(f: FeedbackFunction) -> tuple[CycleRecord, ...]:
    """All cycles of the register, sorted by necklace."""
    records, _ = cycle_map(f)
    return records


def cycle_map(f: FeedbackFunction) -> tuple[tuple[CycleRecord, ...], list[int]]:
    """Cycles plus a state-index -> cycle-position lookup.

    The lookup maps every state index to the position of its cycle in the
    returned (necklace-sorted) record tuple.
    """
    n = f.n
    if n > MAX_SWEEP_ORDER:
        raise ValueError(f"order {n} exceeds the sweep budget ({MAX_SWEEP_ORDER})")
    total = 1 << n
    visited = bytearray(total >> 3 or 1)
    owner = [0] * total
    raw: list[tuple[CycleRecord, list[int]]] = []
    ambient = _ambient_length(f)
    for start in range(total):
        if visited[start >> 3] & (1 << (start & 7)):
            continue
        idx = start
        members = []
        bits = []
        while not visited[idx >> 3] & (1 << (idx & 7)):
            visited[idx >> 3] |= 1 << (idx & 7)
            members.append(idx)
            bits.append((idx >> (n - 1)) & 1)
            idx = step_index(f, idx)
        period = len(members)
        window = ambient if ambient is not None else period
        full = tuple(bits) * (window // period)
        record = CycleRecord(
            necklace=necklace_of(full),
            least_period=period,
            weight=sum(full),
            state_count=period,
        )
        raw.append((record, members))
    raw.sort(key=lambda item: item[0].necklace)
    records = tuple(rec for rec, _ in raw)
    for pos, (_, members) in enumerate(raw):
        for idx in members:
            owner[idx] = pos
    return records, owner


def _totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def pcr_cycle_count(n: int) -> int:
    """Number of cycles of the pure cycling register of order n."""
    if n < 1:
        raise ValueError("order must be positive")
    total = sum(_totient(d) * (1 << (n // d)) for d in _divisors(n))
    assert total % n == 0
    return total // n


def psr_cycle_count(n: int) -> int:
    """Number of cycles of the pure summing register of order n.

    Uses the closed form with the odd-order correction term; for even n the
    correction collapses to half the cycling-register count of order n+1.
    """
    if n < 2:
        raise ValueError("order must be at least 2")
    m = n + 1
    t = (m & -m).bit_length() - 1
    odd = m >> t
    correction = sum(_totient(odd // d) * (1 << (d << t)) for d in _divisors(odd))
    assert correction % (2 * m) == 0
    return pcr_cycle_count(m) - correction // (2 * m)


def extend_psr_state(c: Bits) -> Bits:
    """Embed an n-bit state into its (n+1)-periodic summing-register window."""
    return c + (sum(c) & 1,)


def ambient_window(f: FeedbackFunction, state: Bits) -> Bits:
    """The cyclic window that names the cycle containing ``state``."""
    if len(state) != f.n:
        raise ValueError(f"state length {len(state)} != order {f.n}")
    if f.kind == PCR:
        return state
    if f.kind == PSR:
        return extend_psr_state(state)
    if f.kind == CSR:
        return state + (1 ^ (sum(state) & 1),)
    idx = start = word_index(state)
    bits = []
    while True:
        bits.append((idx >> (f.n - 1)) & 1)
        idx = step_index(f, idx)
        if idx == start:
            return tuple(bits)
