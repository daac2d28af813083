"""Uniform pass/fail results carrying their witness data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    ok: bool
    code: str
    details: dict[str, Any] = field(default_factory=dict)
    window_relative: bool = False

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = " (window-relative)" if self.window_relative else ""
        return f"{tag}: {self.code}{extra}"
