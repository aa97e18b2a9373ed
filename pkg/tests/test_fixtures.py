from moviepop.fixtures import CORPUS_FILES, bundled_corpus, generate_corpus, write_corpus


def test_bundled_corpus_matches_generator():
    expected = generate_corpus()
    root = bundled_corpus()
    assert sorted(p.name for p in root.iterdir() if p.is_file()) == sorted(expected)
    for name, text in expected.items():
        assert (root / name).read_text(encoding="utf-8") == text


def test_generator_is_seeded():
    assert generate_corpus(5, 60) == generate_corpus(5, 60)
    assert generate_corpus(5, 60) != generate_corpus(6, 60)


def test_write_corpus(tmp_path):
    out = write_corpus(tmp_path / "c", seed=3, n_movies=60)
    assert set(CORPUS_FILES.values()) <= {p.name for p in out.iterdir()}
    assert "movies = movies.list" in (out / "corpus.ini").read_text()
