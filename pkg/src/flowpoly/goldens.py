"""Reference tables used by ``flowpoly tables --seed-check``."""

# A_{k,d} for d = 1..10
EULER = {
    1: [1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800],
    2: [1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521],
    3: [1, 1, 1, 2, 5, 14, 47, 182, 786, 3774],
    4: [1, 1, 1, 1, 2, 5, 14, 42, 146, 574],
}

# S_{k,d} for d = 1..10
SPRINGER = {
    1: [1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800],
    2: [1, 1, 3, 11, 57, 361, 2763, 24611, 250737, 2873041],
    3: [1, 1, 1, 3, 16, 88, 625, 5527, 55760, 640540],
    4: [1, 1, 1, 1, 3, 16, 125, 927, 8357, 91735],
}

# 3-Entringer simplices: for each N, rows with s_1 = N, N-1, ..., 0,
# each row listing s_2 from largest to smallest.
ENTRINGER_K3 = {
    3: [[1], [1, 1], [1, 1, 0], [0, 0, 0, 0]],
    4: [[2], [2, 2], [2, 2, 1], [1, 1, 1, 0], [0, 0, 0, 0, 0]],
    5: [[5], [5, 5], [5, 5, 3], [4, 4, 3, 1], [2, 2, 2, 1, 0], [0, 0, 0, 0, 0, 0]],
}


def entringer_k3_cells(N: int) -> dict[tuple[int, int, int], int]:
    cells = {}
    for depth, row in enumerate(ENTRINGER_K3[N]):
        s1 = N - depth
        for pos, value in enumerate(row):
            s2 = N - s1 - pos
            cells[(s1, s2, N - s1 - s2)] = value
    return cells
