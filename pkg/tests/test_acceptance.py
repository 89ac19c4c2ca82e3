"""Acceptance criteria 1-10; prints one PASS/FAIL line per criterion."""
import pytest

from fhtoeplitz import acceptance


@pytest.fixture(scope="module")
def results():
    lines = []
    out = acceptance.run(echo=lines.append)
    print()
    for line in lines:
        print(line)
    return {r.number: r for r in out}


def test_all_criteria_reported(results):
    assert sorted(results) == list(range(1, 11))


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(results, number, capsys):
    r = results[number]
    with capsys.disabled():
        print(f"\n{r.line()}")
    assert r.passed, r.details
