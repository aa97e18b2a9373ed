"""Learn a PART rule list on dataset 1 and compare it with the tree.

Run: python3 demos/04_part_rules.py
"""

from moviepop.evaluation import cross_validate
from moviepop.learners import LearnerParams, classify_rules, part_learn, render_rules

from _corpus import dataset

data = dataset(1)

rules = part_learn(data, LearnerParams(seed=1))
print(f"{len(rules)} rules plus a default:")
print(render_rules(rules, data.names))

# Rules fire in order; the first one whose conditions all hold decides.
hits = sum(classify_rules(rules, inst) == inst.label for inst in data.instances)
print(f"training-set agreement: {hits}/{len(data)}")

for learner in ("c45", "part"):
    report = cross_validate(learner, data, k=10, seed=1)
    print(f"{learner:>4}: 10-fold accuracy {report.accuracy:.4f}")
