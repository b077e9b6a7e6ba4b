import pytest

from banachlab import CAPS_ENVIRONMENT_VARIABLE
from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.errors import CapExceededError, MalformedInputError


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv(CAPS_ENVIRONMENT_VARIABLE, raising=False)


def test_defaults():
    assert DEFAULT_CAPS.as_dict() == {
        "tsirelson": 10,
        "modified": 12,
        "dual": 10,
        "pairs": 1_000_000,
        "signs": 12,
        "width": 8,
        "ceiling": 12,
        "seed": 8191,
    }
    assert Caps.load() == DEFAULT_CAPS


def test_check():
    DEFAULT_CAPS.check("dual", 10)
    with pytest.raises(CapExceededError) as error:
        DEFAULT_CAPS.check("dual", 11, "T* support")
    assert (error.value.cap, error.value.limit, error.value.actual) == ("dual", 10, 11)
    assert str(error.value) == "cap 'dual' exceeded (T* support): 11 > 10"


@pytest.mark.parametrize(
    "text, expected",
    [("dual=12", {"dual": 12}), ("dual=12, pairs = 50", {"dual": 12, "pairs": 50}), ("", {}), ("seed=0,", {"seed": 0})],
    ids=["single", "several", "empty", "trailing comma"],
)
def test_parse_assignments(text, expected):
    assert Caps.parse_assignments(text) == expected


@pytest.mark.parametrize("text", ["dual", "dual=x", "Dual=3", "dual=-1"], ids=["no value", "text", "case", "negative"])
def test_parse_assignments_errors(text):
    with pytest.raises(MalformedInputError):
        Caps.parse_assignments(text)


@pytest.mark.parametrize(
    "overrides",
    [{"bogus": 3}, {"dual": "many"}, {"dual": 0}],
    ids=["unknown", "not integer", "not positive"],
)
def test_merge_errors(overrides):
    with pytest.raises(MalformedInputError):
        DEFAULT_CAPS.merge(overrides)


def test_seed_may_be_zero():
    assert DEFAULT_CAPS.merge({"seed": 0}).seed == 0


def test_load_precedence(tmp_path, monkeypatch):
    path = tmp_path / "caps.yml"
    path.write_text("dual: 6\npairs: 100\nsigns: 4\n", encoding="utf8")
    monkeypatch.setenv(CAPS_ENVIRONMENT_VARIABLE, "pairs=200,signs=5")
    caps = Caps.load(str(path), {"signs": 6})
    assert (caps.dual, caps.pairs, caps.signs, caps.tsirelson) == (6, 200, 6, 10)


def test_load_empty_file(tmp_path):
    path = tmp_path / "caps.yml"
    path.write_text("", encoding="utf8")
    assert Caps.load(str(path)) == DEFAULT_CAPS


@pytest.mark.parametrize("content", ["- dual\n- 3\n", "bogus: 1\n"], ids=["list", "unknown cap"])
def test_load_errors(tmp_path, content):
    path = tmp_path / "caps.yml"
    path.write_text(content, encoding="utf8")
    with pytest.raises(MalformedInputError):
        Caps.load(str(path))


def test_load_environment_errors(monkeypatch):
    monkeypatch.setenv(CAPS_ENVIRONMENT_VARIABLE, "dual:3")
    with pytest.raises(MalformedInputError):
        Caps.load()
