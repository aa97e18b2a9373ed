"""Derive the pre-release and post-release datasets from the store.

Run: python3 demos/02_build_datasets.py
"""

from moviepop.builder import Filters, build_dataset1, build_dataset2, filter_candidates, person_ranks

from _corpus import load_store

store = load_store()

filters = Filters()
candidates = filter_candidates(store, filters)
print(f"{len(store.movies)} titles in the store, {len(candidates)} pass the filters {filters}")

# A director's rank is the mean rating of every rated movie they made.
directors = person_ranks(store, "director")
best = sorted(directors.values(), key=lambda r: (-r.rank, r.person))[:3]
for r in best:
    print(f"  director {r.person:<24} rank {r.rank:.2f} over {r.support} movie(s)")

d1 = build_dataset1(store, filters)
print(f"\ndataset 1: {len(d1)} instances, features {[d1.names[i] for i in d1.feature_indices]}")
print("  class counts:", {k.value: v for k, v in d1.class_counts().items()})

d2 = build_dataset2(store, filters)
print(f"dataset 2: {len(d2)} instances, features {[d2.names[i] for i in d2.feature_indices]}")
print("  class counts:", {k.value: v for k, v in d2.class_counts().items()})
