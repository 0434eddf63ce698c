import os

from ..data import PipelineConfig
from ..errors import DataIOError
from ..settings import write_example_settings
from ._common import config_template

RUN_CONFIG = "featpca_run.conf"


def init_project():
    path = write_example_settings()
    print(f"created {path}" if path else "featpca_config.py already exists")
    if os.path.exists(RUN_CONFIG):
        print(f"{RUN_CONFIG} already exists")
        return
    write_file(RUN_CONFIG, "\n".join(config_template(PipelineConfig())) + "\n")
    print(f"created {RUN_CONFIG}, use it with `featpca sweep --config {RUN_CONFIG}`")


def write_file(path: str, text: str):
    try:
        with open(path, "w", encoding="utf8") as f:
            f.write(text)
    except OSError as x:
        raise DataIOError(f"cannot write {path}: {x}")


def run(args: list[str]):
    init_project()
