import inspect
import json
from dataclasses import dataclass
from types import NoneType, UnionType
from typing import Any, Callable, Literal, TypeAliasType, Union, cast, dataclass_transform, get_args, get_origin, get_type_hints, overload

from .errors import ValidationError


class JsonParseError(ValidationError):
    pass


@dataclass
class JsonField:
    default: Any
    default_factory: Callable[[], Any] | None
    desc: str | None
    repr: bool


class _Missing:
    def __repr__(self):
        return "<missing>"


MISSING: Any = _Missing()


@overload
def _field(*, default_factory: Callable[[], Any], desc: str | None = None, init: bool = True, repr: bool = True) -> Any:
    ...


@overload
def _field(*, default: Any = MISSING, desc: str | None = None, init: bool = True, repr: bool = True) -> Any:
    ...


def _field(*,
           default: Any = MISSING,
           default_factory: Callable[[], Any] | None = None,
           desc: str | None = None,
           init: bool = True,
           repr: bool = True,
           ) -> Any:
    """Configure object field"""
    return JsonField(default=default, default_factory=default_factory, desc=desc, repr=repr)


def _constructor_to_init[T](cls: type[T]) -> type[T]:
    cls.__init__ = cls.__constructor__  # type: ignore
    return cls


@dataclass_transform(kw_only_default=True, eq_default=False, field_specifiers=(JsonField, _field))
@_constructor_to_init
class JsonObj:
    """
    Typed object that round-trips through json::

        class KmeansConfig(JsonObj):
            n_clusters: int  # required field
            n_init: int = 10  # optional field with default value
            tol: float = JsonObj.field(default=1e-6, desc="Center-shift tolerance")
            seeds: list[int] = JsonObj.field(default_factory=list)
            inner: OtherObj  # nested JsonObjs are parsed from dicts
            _cache: int = 0  # ignored if starts with _

    Usage::

        obj = KmeansConfig(n_clusters=3)
        obj = KmeansConfig.new({"n_clusters": 3})
        obj = KmeansConfig.parse('{"n_clusters": 3}')

        error = obj.validate()  # str | None
        obj.valid()  # raises JsonParseError, returns obj

        obj.json()  # -> dict (nested JsonObj converted)
        obj.dumps()  # -> str, keys in declaration order

    Override `_check` for constraints beyond types (return an error or None),
    and `_serialize` to change how a value is written::

        @override
        def _serialize(self, key: str, v: Any):
            if isinstance(v, float):
                return key, round_sig(v)
    """
    __repr_fields__: list[str] | None = None

    field = _field

    def __init_subclass__(cls):
        annotations = inspect.get_annotations(cls)
        cls.__fields__ = {**getattr(cls, "__fields__", {})}
        cls.__type_hints__ = None
        for k in annotations:
            if k.startswith("_"):
                continue
            v = getattr(cls, k, MISSING)
            if isinstance(v, JsonField):
                cls.__fields__[k] = v
                setattr(cls, k, v.default)
            else:
                cls.__fields__[k] = JsonField(default=v, default_factory=None, desc=None, repr=True)

    def __constructor__(self, **data: Any):
        self.__errors__: list[str] = []
        for k, f in self.__fields__.items():
            if f.default_factory is not None:
                setattr(self, k, f.default_factory())
        types = self.get_field_types()
        for k, v in data.items():
            if k not in types:
                self.__errors__.append(f"{k} is not a field of {type(self).__name__}")
                continue
            setattr(self, k, self.__parse_item__(v, types[k]))

    @classmethod
    def new(cls, json: object):
        """Create obj from `json: dict[str, Any]` (without validation)"""
        if isinstance(json, dict):
            return cls(**cast(dict[str, Any], json))
        return cls()

    @classmethod
    def parse(cls, data: str | bytes | bytearray):
        """Deserialize data to obj (without validation)"""
        try:
            obj = json.loads(data)
        except ValueError as x:
            raise JsonParseError(f"invalid json: {x}")
        return cls.new(obj)

    def __parse_item__(self, v: Any, t: Any) -> Any:
        if isinstance(t, TypeAliasType):
            t = t.__value__
        torigin = get_origin(t)
        targs = get_args(t)
        if isinstance(t, type) and issubclass(t, JsonObj):
            return v if isinstance(v, JsonObj) else t.new(v)
        if torigin is list and isinstance(v, list):
            return [self.__parse_item__(el, targs[0]) for el in cast(list[Any], v)]
        if torigin in (UnionType, Union):
            for ut in targs:
                if validate_type(v, ut)[1] is None:
                    return self.__parse_item__(v, ut)
            for ut in targs:
                if isinstance(v, dict) and isinstance(ut, type) and issubclass(ut, JsonObj):
                    return ut.new(v)
        if t is float and isinstance(v, int) and not isinstance(v, bool):
            return float(v)
        return v

    @classmethod
    def get_type_hints(cls) -> dict[str, Any]:
        if cls.__type_hints__ is None:
            hints = get_type_hints(cls)
            cls.__type_hints__ = {k: hints[k] for k in cls.__fields__}
        return cls.__type_hints__

    get_field_types = get_type_hints

    @classmethod
    def get_field_descriptions(cls):
        return {k: f.desc for k, f in cls.__fields__.items() if f.desc is not None}

    @classmethod
    def get_field_defaults(cls):
        r: dict[str, Any] = {}
        for k, f in cls.__fields__.items():
            if f.default_factory is not None:
                r[k] = f.default_factory()
            elif f.default is not MISSING:
                r[k] = f.default
        return r

    def __repr__(self) -> str:
        repr_fields = self.__repr_fields__ or [k for k, f in self.__fields__.items() if f.repr]
        params = ", ".join(f"{k}={getattr(self, k)!r}" for k in repr_fields)
        return type(self).__name__ + f"({params})"

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.json() == cast(JsonObj, other).json()

    def validate(self) -> str | None:
        """Validate data and return error if any"""
        if self.__errors__:
            return self.__errors__[0]
        for k, t in self.get_type_hints().items():
            v = getattr(self, k)
            if v is MISSING:
                return f"{k} is undefined"
            _, err = validate_type(v, t)
            if err is not None:
                return k + err
        return self._check()

    def _check(self) -> str | None:
        return None

    def is_valid(self):
        return self.validate() is None

    def valid(self):
        """
        Validate data and raise error if any

        :raises JsonParseError: if there is any error
        """
        err = self.validate()
        if err is not None:
            raise JsonParseError(f"{type(self).__name__}: {err}")
        return self

    def items(self):
        return [(k, getattr(self, k)) for k in self.__fields__]

    def json(self) -> dict[str, Any]:
        """Get data as serializable dict"""
        r: dict[str, Any] = {}
        for k, v in self.items():
            k, v = self.__serialize_item__(k, v)
            r[k] = v
        return r

    def __serialize_item__(self, k: str, v: Any) -> tuple[str, Any]:
        s = self._serialize(k, v)
        if s is not None:
            k, v = s
        if isinstance(v, JsonObj):
            v = v.json()
        elif isinstance(v, list):
            v = [self.__serialize_item__(k, el)[1] for el in cast(list[Any], v)]
        return k, v

    def _serialize(self, key: str, v: Any) -> tuple[str, Any] | None:
        return None

    def dumps(self, indent: int | str | None = None):
        """Serialize obj to a JSON formatted str"""
        return json.dumps(self.json(), indent=indent, allow_nan=False)


def validate_type(obj: Any, otype: Any) -> tuple[Any, None] | tuple[None, str]:
    """Supports int, float, bool, str, None, list, Union, Literal, JsonObj"""
    if otype is Any:
        return obj, None
    if isinstance(otype, TypeAliasType):
        otype = otype.__value__
    if otype in (None, NoneType):
        return (None, None) if obj is None else (None, " is not None")

    torigin = get_origin(otype)
    targs = get_args(otype)

    if isinstance(otype, type) and torigin is None:
        if issubclass(otype, JsonObj):
            if not isinstance(obj, otype):
                return None, f" is not {type_name(otype)}"
            err = obj.validate()
            return (obj, None) if err is None else (None, "." + err)
        if type(obj) is bool and otype is not bool:
            return None, f" is not {type_name(otype)}"
        if otype is float and isinstance(obj, int):
            return obj, None
        if isinstance(obj, otype):
            return obj, None
        return None, f" is not {type_name(otype)}"

    if torigin is Literal:
        if obj in targs:
            return obj, None
        return None, f" is not {type_name(otype)}"

    if torigin is list:
        if not isinstance(obj, list):
            return None, f" is not {type_name(otype)}"
        for i, el in enumerate(cast(list[Any], obj)):
            _, err = validate_type(el, targs[0])
            if err is not None:
                return None, f"[{i}]{err}"
        return obj, None

    if torigin in (UnionType, Union):
        for t in targs:
            _, err = validate_type(obj, t)
            if err is None:
                return obj, None
        return None, f" is not {type_name(otype)}"

    raise Exception(f"[featpca] validate_type: unsupported type: {type_name(otype)}")


def type_name(t: Any) -> str:
    if t in (NoneType, None):
        return "None"
    torigin = get_origin(t)
    targs = get_args(t)
    if torigin is list:
        return f"list[{type_name(targs[0])}]"
    if torigin in (UnionType, Union):
        return " | ".join(type_name(v) for v in targs)
    if torigin is Literal:
        return " | ".join(repr(v) for v in targs)
    try:
        return t.__name__
    except Exception:
        return str(t)
