"""Rank the dataset 1 features by information gain.

Run: python3 demos/05_rank_attributes.py
"""

from moviepop.learners import ClassDistribution, entropy, rank_attributes

from _corpus import dataset

data = dataset(1)

h = entropy(ClassDistribution.of(data.labels()))
print(f"class entropy: {h:.3f} bits\n")
print(f"{'feature':<18}{'gain (bits)':>12}{'% of entropy':>14}")
for r in rank_attributes(data):
    print(f"{r.name:<18}{r.gain:>12.3f}{r.percent:>13.2f}%")
# The synthetic corpus is generated so director quality drives ratings,
# which is why director_rank leads by a wide margin.
