import doctest

from raagvcd import words


def test_words_doctests():
    results = doctest.testmod(words)
    assert results.failed == 0
    assert results.attempted > 0
