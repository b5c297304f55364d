from collections import Counter
from typing import Tuple

from swengine.state import SWState

Fingerprint = Tuple[Tuple[Tuple[int, int], int], ...]


def check_irreducible(s: SWState) -> bool:
    """
    True iff the support is nonempty and no two basic classes differ by a
    class of square -4.
    """
    if s.is_empty:
        return False
    if s.exceptional:
        # K + E and K - E differ by 2E, (2E)^2 = -4
        return False
    keys = [K for K, _ in s.base_values]
    for i, first in enumerate(keys):
        for second in keys[i + 1:]:
            if s.base_lattice.square(first - second) == -4:
                return False
    return True


def sw_fingerprint(s: SWState) -> Fingerprint:
    """Sorted multiset of (|SW(K)|, K^2) over the support."""
    counts = Counter()
    for K, value in s.base_values:
        counts[(abs(value), s.base_square(K) - s.exceptional)] += 2 ** s.exceptional
    return tuple(sorted(counts.items()))
