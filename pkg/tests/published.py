"""Published confusion matrices and per-class figures used as reference values.

Rows are actual classes and columns predicted classes, both in the order
Excellent, Average, Poor, Terrible. Per-class tuples are
(TP rate, FP rate, precision, recall).
"""

C45_MATRIX = [
    [223, 34, 2, 0],
    [42, 171, 35, 0],
    [6, 58, 223, 1],
    [0, 0, 7, 15],
]
C45_ACCURACY_PERCENT = 77.3562
C45_PER_CLASS = {
    "Excellent": (0.861, 0.086, 0.823, 0.861),
    "Average": (0.69, 0.162, 0.65, 0.69),
    "Poor": (0.774, 0.083, 0.835, 0.774),
    "Terrible": (0.682, 0.001, 0.938, 0.682),
}

PART_MATRIX = [
    [214, 41, 4, 0],
    [32, 172, 44, 0],
    [3, 48, 236, 1],
    [0, 0, 9, 13],
]
PART_ACCURACY_PERCENT = 77.7234
PART_PER_CLASS = {
    "Excellent": (0.826, 0.063, 0.859, 0.826),
    "Average": (0.694, 0.156, 0.659, 0.694),
    "Poor": (0.819, 0.108, 0.805, 0.819),
    "Terrible": (0.591, 0.001, 0.929, 0.591),
}

# Class bins: inclusive lower bound of each class in tenths of a rating point.
CLASS_LOWER_BOUNDS = {"Excellent": 75, "Average": 50, "Poor": 25, "Terrible": 10}

# Instances kept per rating step of the Average class after balancing.
AVERAGE_CLASS_TOTAL = 250
