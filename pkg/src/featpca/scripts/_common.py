import argparse
from typing import Any, Literal, TypeAliasType, get_args, get_origin

from ..data import ExpressionMatrix, PipelineConfig
from ..jsonobj import JsonObj, type_name
from ..matrix_io import load_matrix
from ..settings import load_config_file, load_settings, merge_nested, set_dotted

SKIP_FIELDS = frozenset({"input_path"})


def _resolve(t: Any) -> Any:
    return t.__value__ if isinstance(t, TypeAliasType) else t


def add_config_arguments(parser: argparse.ArgumentParser, cls: type[JsonObj], prefix: str = "", exclude: frozenset[str] = frozenset()):
    """One `--name` flag per field of `cls`; nested objects become `--section.name`"""
    descs = cls.get_field_descriptions()
    defaults = cls.get_field_defaults()
    for name, t in cls.get_field_types().items():
        if name in exclude:
            continue
        t = _resolve(t)
        key = prefix + name
        if isinstance(t, type) and issubclass(t, JsonObj):
            add_config_arguments(parser, t, key + ".")
            continue
        flags = [f"--{key}"]
        if "_" in key:
            flags.append(f"--{key.replace('_', '-')}")
        help = descs.get(name, "")
        if name in defaults:
            help += f" (default: {defaults[name]!r})"
        kw: dict[str, Any] = {"dest": key, "default": argparse.SUPPRESS, "help": help}
        origin = get_origin(t)
        if t is bool:
            kw["action"] = argparse.BooleanOptionalAction
        elif origin is list:
            el = _resolve(get_args(t)[0])
            kw["nargs"] = "*"
            if get_origin(el) is Literal:
                kw["choices"] = get_args(el)
            else:
                kw["type"] = el
        elif origin is Literal:
            kw["choices"] = get_args(t)
        elif t in (int, float, str):
            kw["type"] = t
        else:
            raise Exception(f"[featpca] unsupported config field type: {type_name(t)}")
        parser.add_argument(*flags, **kw)


def flags_to_dict(ns: argparse.Namespace, cls: type[JsonObj], prefix: str = "", exclude: frozenset[str] = frozenset()) -> dict[str, Any]:
    data: dict[str, Any] = {}
    for name, t in cls.get_field_types().items():
        if name in exclude:
            continue
        t = _resolve(t)
        key = prefix + name
        if isinstance(t, type) and issubclass(t, JsonObj):
            sub = flags_to_dict(ns, t, key + ".")
            if sub:
                data[name] = sub
        elif hasattr(ns, key):
            set_dotted(data, name, getattr(ns, key))
    return data


def create_parser(command: str, description: str, with_input: bool = True):
    parser = argparse.ArgumentParser(prog=f"featpca {command}", description=description)
    parser.add_argument("--config", help="run config file (key = value lines)")
    if with_input:
        parser.add_argument("--input_path", "--input-path", "-i", dest="input_path", default=argparse.SUPPRESS,
                            help=PipelineConfig.get_field_descriptions()["input_path"])
    add_config_arguments(parser, PipelineConfig, exclude=SKIP_FIELDS)
    return parser


def config_from_args(ns: argparse.Namespace) -> PipelineConfig:
    """defaults < project settings < `--config` file < flags"""
    data: dict[str, Any] = {"output_folder": load_settings().output_folder}
    if getattr(ns, "config", None):
        data = merge_nested(data, load_config_file(ns.config))
    data = merge_nested(data, flags_to_dict(ns, PipelineConfig, exclude=SKIP_FIELDS))
    if hasattr(ns, "input_path"):
        data["input_path"] = ns.input_path
    if data.get("delimiter") == "\\t":
        data["delimiter"] = "\t"
    return PipelineConfig.new(data).valid()


def load_input_matrix(cfg: PipelineConfig) -> ExpressionMatrix:
    return load_matrix(cfg.input_path, cfg.orientation, cfg.delimiter, cfg.cell_ids_path, cfg.gene_ids_path)


def config_template(obj: JsonObj, prefix: str = "") -> list[str]:
    """`key = value` lines for every field of `obj`, nested objects as dotted keys"""
    lines: list[str] = []
    descs = type(obj).get_field_descriptions()
    for name, v in obj.items():
        if isinstance(v, JsonObj):
            lines.append("")
            lines.extend(config_template(v, prefix + name + "."))
            continue
        if name in descs:
            lines.append(f"# {descs[name]}")
        lines.append(f"{prefix}{name} = {v!r}")
    return lines
