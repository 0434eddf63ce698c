import logging

from featpca import TrialLogger, add_logger, create_log_handler, get_log_fpath, get_log_fpath_all
from featpca.logger import CONTEXT_ARGS


def make_logger(path, name: str):
    handler = create_log_handler(str(path), "%(run_id)s;%(strategy)s;%(k)s;%(message)s", outer_args=CONTEXT_ARGS)
    logger = add_logger(name, handler)
    logger.setLevel(logging.INFO)
    logger.propagate = False
    return logger, handler


def test_trial_lines_carry_context(tmp_path):
    path = tmp_path / "logs" / "trials.csv"
    logger, handler = make_logger(path, "featpca-test-trials")
    TrialLogger("r1", "sequential", 3, logger).info("0.5;4;0.010")
    handler.close()
    assert path.read_text(encoding="utf8") == "r1;sequential;3;0.5;4;0.010\n"


def test_missing_context_is_marked(tmp_path):
    path = tmp_path / "plain.csv"
    logger, handler = make_logger(path, "featpca-test-plain")
    logger.info("hello")
    handler.close()
    assert path.read_text(encoding="utf8") == "[run_id];[strategy];[k];hello\n"


def test_rotated_file_names(tmp_path):
    path = str(tmp_path / "log.csv")
    assert get_log_fpath(path) == path
    assert get_log_fpath(path, next=True) == str(tmp_path / "log.1.csv")
    (tmp_path / "log.csv").write_text("", encoding="utf8")
    (tmp_path / "log.1.csv").write_text("", encoding="utf8")
    assert get_log_fpath(path) == str(tmp_path / "log.1.csv")
    assert get_log_fpath_all(path) == [path, str(tmp_path / "log.1.csv")]
