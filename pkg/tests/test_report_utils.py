import io
import os
import json

import numpy as np
import pandas as pd
import pytest

from pipeline.report_utils import (
    DEFAULT_HYP,
    TerminalLogger,
    load_config,
    render_frame,
    setup_log,
    setup_seed,
    to_json_text,
)


def test_defaults_without_config():
    assert load_config(None) == DEFAULT_HYP
    assert load_config(None) is not DEFAULT_HYP


def test_example_config_matches_defaults():
    path = os.path.join(os.path.dirname(__file__), "..", "example_config.yaml")
    assert load_config(path) == DEFAULT_HYP


def test_partial_config(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("seed: 7\nvalidation_tol: 1\nunknown_key: 3\n")
    hyp = load_config(str(path))
    assert hyp["seed"] == 7
    assert hyp["validation_tol"] == 1.0
    assert isinstance(hyp["validation_tol"], float)
    assert "unknown_key" not in hyp
    assert hyp["samples"] == DEFAULT_HYP["samples"]


@pytest.mark.parametrize(
    "text, key",
    [("seed: abc\n", "seed"), ("max_sweeps: true\n", "max_sweeps"), ("comment: 3\n", "comment")],
)
def test_wrong_types(tmp_path, text, key):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    with pytest.raises(ValueError, match=key):
        load_config(str(path))


def test_non_mapping_config(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError, match="mapping"):
        load_config(str(path))


def test_terminal_logger_tees(tmp_path):
    stream = io.StringIO()
    filename = tmp_path / "run.log"
    logger = TerminalLogger(str(filename), stream)
    logger.write("==> hello\n")
    logger.flush()
    assert stream.getvalue() == "==> hello\n"
    assert filename.read_text() == "==> hello\n"


def test_setup_log(tmp_path, monkeypatch):
    monkeypatch.setattr("sys.stderr", io.StringIO())
    assert setup_log(dict(DEFAULT_HYP)) is None

    hyp = dict(DEFAULT_HYP, save_log=str(tmp_path / "logs"), comment="sweep")
    filename = setup_log(hyp)
    assert filename.startswith(str(tmp_path / "logs" / "sweep_"))
    assert filename.endswith(".log")


def test_setup_seed_is_reproducible():
    a = setup_seed(3).uniform(size=4)
    b = setup_seed(3).uniform(size=4)
    np.testing.assert_array_equal(a, b)


def test_json_handles_numpy_values():
    payload = {"n": np.int64(3), "x": np.float64(0.5), "v": np.arange(2)}
    assert json.loads(to_json_text(payload)) == {"n": 3, "x": 0.5, "v": [0, 1]}
    with pytest.raises(TypeError):
        to_json_text({"bad": object()})


def test_render_frame_without_index():
    text = render_frame(pd.DataFrame([{"degree": 0, "group": "Z"}]))
    assert text.splitlines()[0].split() == ["degree", "group"]
