"""The committed invocation set must reproduce byte-identical CSV output,
regardless of thread count."""
import contextlib
import io
import json
import pathlib

import pytest

from denomlab.cli import dispatch

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"
MANIFEST = json.loads((GOLDEN_DIR / "manifest.json").read_text())


def _capture(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = dispatch(list(argv))
    assert code == 0
    return buf.getvalue()


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_golden_bytes_thread_invariant(name):
    argv = MANIFEST[name]
    expected = (GOLDEN_DIR / f"{name}.csv").read_text()
    threaded = argv[0] == "experiment"
    got1 = _capture(argv + ["--threads", "1"] if threaded else argv)
    assert got1 == expected
    if threaded:
        got8 = _capture(argv + ["--threads", "8"])
        assert got8 == expected
