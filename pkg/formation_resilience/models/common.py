# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Common data model for all models."""
import math
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import fields
from typing import Any
from typing import Dict
from typing import get_args
from typing import get_origin
from typing import get_type_hints
from typing import Optional
from typing import Union

import numpy as np

from ..exception import ConfigurationError

try:
    import orjson
except ImportError:  # pragma: no cover
    import json

    orjson = None  # type: ignore[assignment]


def to_builtin(value: Any) -> Any:
    """Converts numpy values, tuples and enums to JSON-ready builtins.

    Non-finite floats become None.
    """
    result: Any
    if isinstance(value, dict):
        result = {str(k): to_builtin(v) for k, v in value.items()}
    elif isinstance(value, (list, tuple)):
        result = [to_builtin(v) for v in value]
    elif isinstance(value, np.ndarray):
        result = to_builtin(value.tolist())
    elif isinstance(value, np.generic):
        result = to_builtin(value.item())
    elif isinstance(value, float) and not math.isfinite(value):
        result = None
    elif hasattr(value, "value") and hasattr(value, "name"):
        result = value.value
    else:
        result = value
    return result


def dumps(document: Dict[str, Any], indent: bool = True) -> bytes:
    """Canonical JSON bytes of a document, keys sorted."""
    document = to_builtin(document)
    if orjson is not None:
        option = orjson.OPT_SORT_KEYS
        if indent:
            option |= orjson.OPT_INDENT_2
        return orjson.dumps(document, option=option)
    return json.dumps(
        document,
        sort_keys=True,
        indent=2 if indent else None,
        separators=None if indent else (",", ":"),
    ).encode("utf-8")


def loads(content: bytes) -> Any:
    if orjson is not None:
        return orjson.loads(content)
    return json.loads(content)


@dataclass(frozen=True)
class AbstractModel:
    @classmethod
    def from_dict(cls, env):
        return cls(**{k: v for k, v in env.items()})

    @property
    def __dict__(self):
        return asdict(self)

    @property
    def json(self) -> str:
        return dumps(self.__dict__, indent=False).decode("utf-8")


def freeze(value: Any) -> Any:
    """Lists become tuples, recursively."""
    if isinstance(value, (list, tuple)):
        return tuple(freeze(v) for v in value)
    if isinstance(value, dict):
        return {k: freeze(v) for k, v in value.items()}
    return value


def coerce(value: Any, hint: Any, path: str) -> Any:
    """Checks a TOML value against a type hint and converts it.

    Args:
        value (Any): value read from the document
        hint (Any): type hint of the field
        path (str): dotted path of the field, for the errors

    Raises:
        ConfigurationError: the value does not match the hint

    Returns:
        Any: the converted value
    """
    origin = get_origin(hint)
    arguments = get_args(hint)
    result: Any
    if hint is Any:
        result = freeze(value)
    elif origin is Union:
        if value is None and type(None) in arguments:
            result = None
        else:
            inner = [a for a in arguments if a is not type(None)]
            result = coerce(value, inner[0], path)
    elif origin is tuple:
        if not isinstance(value, (list, tuple)):
            raise ConfigurationError("expected an array", path)
        item_hint = arguments[0] if arguments else Any
        result = tuple(
            coerce(item, item_hint, f"{path}.{number}")
            for number, item in enumerate(value)
        )
    elif isinstance(hint, type) and issubclass(hint, ConfigModel):
        result = hint.from_dict(value, path)
    elif hint is bool:
        if not isinstance(value, bool):
            raise ConfigurationError("expected a boolean", path)
        result = value
    elif hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigurationError("expected an integer", path)
        result = value
    elif hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigurationError("expected a number", path)
        result = float(value)
    elif hint is str:
        if not isinstance(value, str):
            raise ConfigurationError("expected a string", path)
        result = value
    else:
        result = value
    return result


@dataclass(frozen=True)
class ConfigModel(AbstractModel):
    """Table of a scenario document.

    Unknown keys are rejected and values are converted following the type
    hints of the fields. Validation errors raised by __post_init__ are
    prefixed with the path of the table.
    """

    @classmethod
    def from_dict(cls, env, path: str = ""):
        if not isinstance(env, dict):
            raise ConfigurationError("expected a table", path or None)
        hints = get_type_hints(cls)
        known = {f.name for f in fields(cls) if f.init}
        unknown = sorted(set(env) - known)
        if unknown:
            raise ConfigurationError(f"unknown key(s) {unknown}", path or None)
        values = {
            name: coerce(value, hints[name], _join(path, name))
            for name, value in env.items()
        }
        try:
            return cls(**values)
        except TypeError as error:
            raise ConfigurationError(str(error), path or None) from error
        except ConfigurationError as error:
            if path and not (error.field or "").startswith(path):
                raise ConfigurationError(
                    error.message, _join(path, error.field)
                ) from error
            raise


def _join(path: str, name: Optional[str]) -> str:
    if not name:
        return path
    return f"{path}.{name}" if path else name
