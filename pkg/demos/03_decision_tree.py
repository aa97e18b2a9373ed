"""Grow, prune and cross-validate a C4.5 tree on dataset 1.

Run: python3 demos/03_decision_tree.py
"""

from moviepop.evaluation import cross_validate, render_report
from moviepop.learners import LearnerParams, classify_tree, render_tree, train_c45
from moviepop.learners.tree import depth, node_count

from _corpus import dataset

data = dataset(1)

params = LearnerParams(seed=1)
tree = train_c45(data, params)
print(f"pruned tree: {node_count(tree)} nodes, depth {depth(tree)}")
print(render_tree(tree, data.names))

first = data.instances[0]
label, dist = classify_tree(tree, first)
print(f"{first.key.render()} is {first.label.value}; the tree says {label.value} {dist.weights}\n")

# Ten-fold stratified cross-validation, one prediction per instance.
print(render_report(cross_validate("c45", data, k=10, seed=1, params=params)))
