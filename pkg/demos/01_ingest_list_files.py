"""Parse the bundled IMDB-style list files and link them into a store.

Run: python3 demos/01_ingest_list_files.py
"""

from moviepop.ingest import parse_attributes, parse_boxoffice_csv, parse_credits, parse_movies, parse_ratings
from moviepop.store import build_store

from _corpus import read

# Each parser returns its records together with how many lines it looked
# at and how many it had to skip, so noisy files never fail silently.
movies = parse_movies(read("movies"))
ratings = parse_ratings(read("ratings"))
print(f"movies.list : {len(movies)} titles, {movies.skipped} unparseable line(s)")
print(f"ratings.list: {len(ratings)} ratings, {ratings.skipped} skipped")

kinds = {}
for m in movies:
    kinds[m.kind] = kinds.get(m.kind, 0) + 1
print("title kinds :", dict(sorted(kinds.items())))

credits = []
for key, role in (("directors", "director"), ("actors", "actor"), ("actresses", "actress")):
    credits += parse_credits(read(key), role).records
attributes = (parse_attributes(read("countries"), "country").records
              + parse_attributes(read("languages"), "language").records
              + parse_attributes(read("business"), "budget-line").records)
finances = parse_boxoffice_csv(read("boxoffice"))

store = build_store(movies, ratings, credits, attributes, finances)
print("store sizes :", store.counts())
print("dropped     :", {k: v for k, v in store.dropped.items() if v})

# Titles are keyed by name plus year, so remakes stay apart.
some = sorted(store.movies)[:3]
for key in some:
    print(f"  {key.render():<32} budget lines: {store.attribute_values(key, 'budget-line')}")
