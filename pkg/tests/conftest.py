from __future__ import annotations

# Reference table rows, index 0..12.
T_POS = [0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504]
T_NEG = [0, 0, 1, -1, 0, 2, -3, 1, 4, -8, 5, 7, -20]
K_POS = [3, 1, 3, 7, 11, 21, 39, 71, 131, 241, 443, 815, 1499]
K_NEG = [3, -1, -1, 5, -5, -1, 11, -15, 3, 23, -41, 21, 43]


def table(pos, neg) -> dict:
    out = {n: v for n, v in enumerate(pos)}
    out.update({-n: v for n, v in enumerate(neg)})
    return out


T_TABLE = table(T_POS, T_NEG)
K_TABLE = table(K_POS, K_NEG)


def naive_t(n: int) -> int:
    """Independent oracle: plain recurrence, written separately from the library."""
    vals = {0: 0, 1: 1, 2: 1}
    if n >= 0:
        for i in range(3, n + 1):
            vals[i] = vals[i - 1] + vals[i - 2] + vals[i - 3]
    else:
        for i in range(-1, n - 1, -1):
            vals[i] = vals[i + 3] - vals[i + 2] - vals[i + 1]
    return vals[n]


def naive_k(n: int) -> int:
    return naive_t(n) + 2 * naive_t(n - 1) + 3 * naive_t(n - 2)
