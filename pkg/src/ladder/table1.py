"""Reference record holders of phi_(2,3)(p), 1 <= p <= 2**15.

Rows are ``(kind, p, d, delta_p, delta_d)`` in increasing p, min before
max on the shared p = 1 row.
"""

_MIN = [
    (1, 1, 1, 1), (3, 2, 2, 1), (5, 3, 2, 1), (17, 10, 12, 7), (29, 17, 12, 7),
    (41, 24, 12, 7), (94, 55, 53, 31), (147, 86, 53, 31), (200, 117, 53, 31),
    (253, 148, 53, 31), (306, 179, 53, 31), (971, 568, 665, 389),
    (1636, 957, 665, 389), (2301, 1346, 665, 389), (2966, 1735, 665, 389),
    (3631, 2124, 665, 389), (4296, 2513, 665, 389), (4961, 2902, 665, 389),
    (5626, 3291, 665, 389), (6291, 3680, 665, 389), (6956, 4069, 665, 389),
    (7621, 4458, 665, 389), (8286, 4847, 665, 389), (8951, 5236, 665, 389),
    (9616, 5625, 665, 389), (10281, 6014, 665, 389), (10946, 6403, 665, 389),
    (11611, 6792, 665, 389), (12276, 7181, 665, 389), (12941, 7570, 665, 389),
    (13606, 7959, 665, 389), (14271, 8348, 665, 389), (14936, 8737, 665, 389),
    (15601, 9126, 665, 389),
]

_MAX = [
    (1, 1, 1, 1), (2, 2, 1, 1), (7, 5, 5, 3), (12, 8, 5, 3), (53, 32, 41, 24),
    (359, 211, 306, 179), (665, 390, 306, 179), (16266, 9516, 15601, 9126),
    (31867, 18642, 15601, 9126),
]

TABLE1 = sorted(
    [("min",) + r for r in _MIN] + [("max",) + r for r in _MAX],
    key=lambda r: (r[1], r[0] != "min"),
)

# reference decimals: ((num_base, num_exp, den_base, den_exp), value to all shown digits)
QUOTED = [
    ((2, 12, 3, 7), "1.87288523"),
    ((2, 20, 3, 12), "1.97308074"),
    ((2, 28, 3, 17), "2.07863650"),
    ((2, 27, 3, 17), "1.03931825"),
    ((2, 85, 3, 53), "1.99582809"),
    ((7, 4, 8, 2), "37.515625"),
]

# the run lengths of same-kind records at the top of the table
INITIAL_LAMBDAS = [1, 2, 2, 3, 1, 5, 2]
