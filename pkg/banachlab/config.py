from __future__ import annotations

import dataclasses
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Mapping

import yaml

from banachlab import CAP_ASSIGNMENT, CAPS_ENVIRONMENT_VARIABLE
from banachlab.errors import CapExceededError, MalformedInputError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Caps:
    """Size limits of every engine and harness.

    Defaults are overridden, in order, by a YAML file, the ``BANACHLAB_CAPS`` environment
    variable and explicit overrides (see :meth:`Caps.load`).
    """

    tsirelson: int = 10
    modified: int = 12
    dual: int = 10
    pairs: int = 1_000_000
    signs: int = 12
    width: int = 8
    ceiling: int = 12
    seed: int = 8191

    def check(self, cap: str, actual: int, what: str = ""):
        limit = getattr(self, cap)
        if actual > limit:
            raise CapExceededError(cap, limit, actual, what)

    def merge(self, overrides: Mapping[str, Any]) -> Caps:
        known = {field.name for field in dataclasses.fields(self)}
        values = {}
        for name, value in overrides.items():
            if name not in known:
                raise MalformedInputError(f"unknown cap '{name}', expected one of {', '.join(sorted(known))}")
            try:
                value = int(value)
            except (TypeError, ValueError) as e:
                raise MalformedInputError(f"cap '{name}' must be an integer, got '{value}'") from e
            if value < 1 and name != "seed":
                raise MalformedInputError(f"cap '{name}' must be positive, got {value}")
            values[name] = value
        return dataclasses.replace(self, **values)

    @staticmethod
    def parse_assignments(text: str) -> Dict[str, int]:
        values = {}
        for term in text.split(","):
            if term.strip() == "":
                continue
            match = CAP_ASSIGNMENT.match(term)
            if match is None:
                raise MalformedInputError(f"'{term}' is not a cap assignment of the form name=value")
            values[match.group(1)] = int(match.group(2))
        return values

    @classmethod
    def load(cls, config_path: str | None = None, overrides: Mapping[str, Any] | None = None) -> Caps:
        caps = cls()
        if config_path is not None:
            with open(config_path, encoding="utf8") as file:
                data = yaml.safe_load(file) or {}
            if not isinstance(data, dict):
                raise MalformedInputError(f"{config_path} must contain a mapping of cap names to values")
            caps = caps.merge(data)
            log.debug(f"caps loaded from {config_path}: {data}")
        environment = os.environ.get(CAPS_ENVIRONMENT_VARIABLE)
        if environment:
            caps = caps.merge(cls.parse_assignments(environment))
            log.debug(f"caps overridden from {CAPS_ENVIRONMENT_VARIABLE}: {environment}")
        if overrides:
            caps = caps.merge(overrides)
        return caps

    def as_dict(self) -> Dict[str, int]:
        return dataclasses.asdict(self)


DEFAULT_CAPS = Caps()
