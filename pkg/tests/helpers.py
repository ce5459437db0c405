import random

from qaffine.bichar import validate

SECTION3_L = [
    [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
]


def example_bichar():
    return validate(SECTION3_L, 3)


def random_antisymmetric(rng: random.Random, n: int, bound: int, nonzero: bool = False):
    while True:
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                x = rng.randint(-bound, bound)
                M[i][j], M[j][i] = x, -x
        if not nonzero or any(any(row) for row in M):
            return M


def random_bichar(rng: random.Random, max_n: int = 4, max_m: int = 2, bound: int = 3):
    n = rng.randint(2, max_n)
    m = rng.randint(1, max_m)
    return validate([random_antisymmetric(rng, n, bound) for _ in range(m)], n)


def random_matrix(rng: random.Random, max_rows: int = 4, max_cols: int = 4, bound: int = 4):
    r = rng.randint(1, max_rows)
    c = rng.randint(1, max_cols)
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]
