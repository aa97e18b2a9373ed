"""Shared set-up for the demo scripts: the bundled corpus as a store and datasets."""

from moviepop.builder import build_dataset1, build_dataset2
from moviepop.fixtures import CORPUS_FILES, bundled_corpus
from moviepop.ingest import parse_attributes, parse_boxoffice_csv, parse_credits, parse_movies, parse_ratings
from moviepop.store import build_store


def read(key):
    return (bundled_corpus() / CORPUS_FILES[key]).read_text(encoding="utf-8")


def load_store():
    credits = []
    for key, role in (("directors", "director"), ("actors", "actor"), ("actresses", "actress")):
        credits += parse_credits(read(key), role).records
    attributes = (parse_attributes(read("countries"), "country").records
                  + parse_attributes(read("languages"), "language").records
                  + parse_attributes(read("business"), "budget-line").records)
    return build_store(parse_movies(read("movies")), parse_ratings(read("ratings")), credits,
                       attributes, parse_boxoffice_csv(read("boxoffice")))


def dataset(which):
    store = load_store()
    return build_dataset1(store) if which == 1 else build_dataset2(store)
