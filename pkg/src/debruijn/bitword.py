"""Fixed-length binary words: rotations, necklace tests, structured shift operators.

Words are immutable tuples of 0/1 ints with the oldest bit first (index 0 is
the leftmost bit of the printed form). Everything here is a pure function, so
values can be shared freely between threads.
"""

from __future__ import annotations

import math
from collections.abc import Iterable

Bits = tuple[int, ...]

# Returned by max_zero_run for the all-zero word; compares above every int.
INFINITE_RUN = math.inf


def word(bits: Iterable[int]) -> Bits:
    """Build a validated word from any iterable of 0/1 values."""
    w = tuple(int(b) for b in bits)
    if not w:
        raise ValueError("a word needs at least one bit")
    if any(b not in (0, 1) for b in w):
        raise ValueError("word bits must be 0 or 1")
    return w


def parse_word(text: str) -> Bits:
    """Parse an ASCII string of '0'/'1' characters, oldest bit first."""
    stripped = text.strip()
    if not stripped or any(c not in "01" for c in stripped):
        raise ValueError(f"not a binary word: {text!r}")
    return tuple(1 if c == "1" else 0 for c in stripped)


def word_str(w: Bits) -> str:
    return "".join("1" if b else "0" for b in w)


def weight(w: Bits) -> int:
    """Number of 1 bits."""
    return sum(w)


def complement(w: Bits) -> Bits:
    return tuple(b ^ 1 for b in w)


def conjugate(w: Bits) -> Bits:
    """Flip the first bit."""
    return (w[0] ^ 1,) + w[1:]


def companion(w: Bits) -> Bits:
    """Flip the last bit."""
    return w[:-1] + (w[-1] ^ 1,)


def rotate_left(w: Bits, k: int = 1) -> Bits:
    k %= len(w)
    return w[k:] + w[:k]


def rotate_right(w: Bits, k: int = 1) -> Bits:
    return rotate_left(w, -k)


def least_rotation_index(w: Bits) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm).

    Returns the smallest such index when the minimum is attained more than
    once, so periodic words report index 0 exactly when they are their own
    least rotation.
    """
    s = w + w
    fail = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def necklace_of(w: Bits) -> Bits:
    """The lexicographically least rotation of w."""
    return rotate_left(w, least_rotation_index(w))


def is_necklace(w: Bits) -> bool:
    return least_rotation_index(w) == 0


def leading_zeros(w: Bits) -> int:
    """Length of the zero prefix, read as a linear (non-cyclic) word."""
    count = 0
    for b in w:
        if b:
            break
        count += 1
    return count


def max_zero_run(w: Bits) -> int | float:
    """Maximal length of a cyclic run of zeros.

    INFINITE_RUN for the all-zero word, 0 for the all-one word.
    """
    if 1 not in w:
        return INFINITE_RUN
    if 0 not in w:
        return 0
    aligned = rotate_left(w, w.index(1))
    best = current = 0
    for b in aligned:
        if b == 0:
            current += 1
            if current > best:
                best = current
        else:
            current = 0
    return best


def zero_positions(w: Bits) -> list[int]:
    return [i for i, b in enumerate(w) if b == 0]


def one_positions(w: Bits) -> list[int]:
    return [i for i, b in enumerate(w) if b == 1]


def max_run_starts(w: Bits) -> list[int]:
    """Rotation offsets whose zero prefix has maximal cyclic length.

    The all-one word starts a (length zero) maximal run everywhere; the
    all-zero word is reported as a single fixed position.
    """
    run = max_zero_run(w)
    if run == INFINITE_RUN:
        return [0]
    if run == 0:
        return list(range(len(w)))
    return [i for i in range(len(w)) if leading_zeros(rotate_left(w, i)) == run]


def double_zero_starts(w: Bits) -> list[int]:
    """Rotation offsets where two cyclically adjacent zeros begin."""
    m = len(w)
    return [i for i in range(m) if w[i] == 0 and w[(i + 1) % m] == 0]


def shift_lz(v: Bits) -> Bits:
    """Next rotation beginning with 0, scanning in left-shift order.

    Fixes v when it is the only zero-led rotation.
    """
    if v[0] != 0:
        raise ValueError(f"shift_lz needs a word starting with 0, got {word_str(v)}")
    m = len(v)
    for j in range(1, m + 1):
        if v[j % m] == 0:
            return rotate_left(v, j)
    raise AssertionError("unreachable: v[0] is 0")


def shift_eo(u: Bits) -> Bits:
    """Next rotation ending with 1, scanning in left-shift order."""
    if u[-1] != 1:
        raise ValueError(f"shift_eo needs a word ending with 1, got {word_str(u)}")
    m = len(u)
    for j in range(1, m + 1):
        if u[j - 1] == 1:
            return rotate_left(u, j)
    raise AssertionError("unreachable: u[-1] is 1")


def shift_rz(v: Bits) -> Bits:
    """Next rotation starting with a maximal-length cyclic zero run."""
    run = max_zero_run(v)
    if run == INFINITE_RUN:
        return v
    if leading_zeros(v) != run:
        raise ValueError(
            f"shift_rz needs a word led by a maximal zero run, got {word_str(v)}"
        )
    m = len(v)
    for j in range(1, m + 1):
        if leading_zeros(rotate_left(v, j)) == run:
            return rotate_left(v, j)
    raise AssertionError("unreachable: v itself qualifies")


def shift_dz(v: Bits) -> Bits:
    """Next rotation starting with two zeros, scanning in left-shift order."""
    m = len(v)
    if m < 2 or v[0] != 0 or v[1] != 0:
        raise ValueError(f"shift_dz needs a word starting with 00, got {word_str(v)}")
    for j in range(1, m + 1):
        if v[j % m] == 0 and v[(j + 1) % m] == 0:
            return rotate_left(v, j)
    raise AssertionError("unreachable: v itself qualifies")
