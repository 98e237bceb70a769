"""Event-sourced HTTP service: state, log, replay, hashing, and the API."""

from .app import CoachService, create_app, now_ms
from .config import ServiceConfig
from .events import (
    EventLog,
    InvalidPayloadError,
    ServiceState,
    StaleEventIdError,
    apply_event,
    display_served_payload,
    replay,
    snapshot_hash,
    state_records,
)

__all__ = [
    "CoachService",
    "EventLog",
    "InvalidPayloadError",
    "ServiceConfig",
    "ServiceState",
    "StaleEventIdError",
    "apply_event",
    "create_app",
    "display_served_payload",
    "now_ms",
    "replay",
    "snapshot_hash",
    "state_records",
]
