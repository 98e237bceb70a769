"""Service configuration: listen address, log path, and reputation knobs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..reputation import ConfigError, ReputationConfig

SHOWN_SET_SCOPES = ("forever", "session")


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8400
    log_path: str = "coachd-events.jsonl"
    fsync: bool = False
    shown_set_scope: str = "forever"
    reputation: ReputationConfig = field(default_factory=ReputationConfig)

    def __post_init__(self) -> None:
        if self.shown_set_scope not in SHOWN_SET_SCOPES:
            raise ConfigError(
                f"shown_set_scope must be one of {SHOWN_SET_SCOPES}, got {self.shown_set_scope!r}"
            )

    @classmethod
    def from_dict(cls, data: dict) -> "ServiceConfig":
        known = {"host", "port", "log_path", "fsync", "shown_set_scope", "reputation"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        reputation = data.get("reputation", {})
        if not isinstance(reputation, dict):
            raise ConfigError("reputation must be an object")
        try:
            rep_config = ReputationConfig(**reputation)
        except TypeError as exc:
            raise ConfigError(f"bad reputation config: {exc}") from None
        return cls(
            host=data.get("host", cls.host),
            port=data.get("port", cls.port),
            log_path=data.get("log_path", cls.log_path),
            fsync=data.get("fsync", cls.fsync),
            shown_set_scope=data.get("shown_set_scope", cls.shown_set_scope),
            reputation=rep_config,
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, dict):
            raise ConfigError("service config must be a JSON object")
        return cls.from_dict(data)
