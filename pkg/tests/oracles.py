# =============================================================================
# tests/oracles.py
# =============================================================================
# Brute-force containment checks the engines are compared against.
# =============================================================================

from itertools import combinations

from models.matrix import Matrix01


def naive_contains(host: tuple[int, ...], pattern: tuple[int, ...], ordered: bool = False) -> bool:
    """Try every subsequence of the host."""
    for positions in combinations(range(len(host)), len(pattern)):
        mapping: dict[int, int] = {}
        ok = True
        for p, x in zip(positions, pattern):
            if mapping.setdefault(x, host[p]) != host[p]:
                ok = False
                break
        if not ok or len(set(mapping.values())) != len(mapping):
            continue
        if ordered:
            keys = sorted(mapping)
            if any(mapping[a] >= mapping[b] for a, b in zip(keys, keys[1:])):
                continue
        return True
    return False


def naive_matrix_contains(host: Matrix01, pattern: Matrix01) -> bool:
    """Try every row subset and column subset of the host."""
    cells = host.cell_set
    for rows in combinations(range(1, host.rows + 1), pattern.rows):
        for cols in combinations(range(1, host.cols + 1), pattern.cols):
            if all((rows[i - 1], cols[j - 1]) in cells for i, j in pattern.ones):
                return True
    return False
