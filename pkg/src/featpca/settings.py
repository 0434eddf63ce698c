import ast
import importlib.util
import os
import shutil
from types import ModuleType
from typing import Any

from .errors import DataIOError, ValidationError
from .jsonobj import JsonObj

CONFIG_NAME = "featpca_config.py"
EXAMPLE_PATH = os.path.join(os.path.dirname(__file__), "featpca_config.example.py")


class Settings(JsonObj):
    """Project settings read from `featpca_config.py` in the working directory"""
    log_info_path: str
    log_errors_path: str
    log_trials_path: str
    output_folder: str
    log_to_console: bool = False


def _load_module(path: str, name: str) -> ModuleType:
    spec = importlib.util.spec_from_file_location(name, path)
    if spec is None or spec.loader is None:
        raise DataIOError(f"cannot load {path}")
    module = importlib.util.module_from_spec(spec)
    try:
        spec.loader.exec_module(module)
    except SyntaxError as x:
        raise ValidationError(f"{path}:{x.lineno}: {x.msg}")
    except OSError as x:
        raise DataIOError(f"cannot read {path}: {x}")
    return module


def load_settings(folder: str | None = None) -> Settings:
    """
    Values from `featpca_config.py` in `folder` (the working directory by
    default); keys it does not define come from the packaged example.
    """
    defaults = _load_module(EXAMPLE_PATH, "featpca_config_example")
    values = {k: getattr(defaults, k) for k in Settings.__fields__ if hasattr(defaults, k)}
    path = os.path.join(folder or os.getcwd(), CONFIG_NAME)
    if os.path.exists(path):
        user = _load_module(path, "featpca_config")
        values.update({k: getattr(user, k) for k in Settings.__fields__ if hasattr(user, k)})
    return Settings(**values).valid()


def write_example_settings(folder: str | None = None, overwrite: bool = False):
    """Copy the packaged example config into `folder`; returns the path or None if it already exists"""
    dst = os.path.join(folder or os.getcwd(), CONFIG_NAME)
    if os.path.exists(dst) and not overwrite:
        return None
    try:
        shutil.copy(EXAMPLE_PATH, dst)
    except OSError as x:
        raise DataIOError(f"cannot write {dst}: {x}")
    return dst


def parse_value(text: str) -> Any:
    """A Python literal, or the stripped text itself when it is not one"""
    text = text.strip()
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def set_dotted(data: dict[str, Any], key: str, value: Any):
    """`set_dotted(d, "hvg.n_top_genes", 2000)` sets `d["hvg"]["n_top_genes"]`"""
    *parents, last = key.split(".")
    node = data
    for p in parents:
        child = node.setdefault(p, {})
        if not isinstance(child, dict):
            raise ValidationError(f"{key}: {p} is not a section")
        node = child  # pyright: ignore[reportUnknownVariableType]
    node[last] = value


def parse_config_text(text: str, path: str = "<config>") -> dict[str, Any]:
    """
    Flat `key = value` lines. Nested sections use dotted keys
    (`kmeans.n_init = 20`), `#` starts a comment line.
    """
    data: dict[str, Any] = {}
    for i, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line == "" or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if sep == "" or key == "":
            raise ValidationError(f"{path}:{i}: expected 'key = value'")
        set_dotted(data, key, parse_value(value))
    return data


def load_config_file(path: str) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf8") as f:
            text = f.read()
    except OSError as x:
        raise DataIOError(f"cannot read {path}: {x}")
    return parse_config_text(text, path)


def merge_nested(base: dict[str, Any], over: dict[str, Any]) -> dict[str, Any]:
    """Recursive dict update; values in `over` win"""
    r = dict(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(r.get(k), dict):
            r[k] = merge_nested(r[k], v)  # pyright: ignore[reportUnknownArgumentType]
        else:
            r[k] = v
    return r
