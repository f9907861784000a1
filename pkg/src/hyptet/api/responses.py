from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from hyptet.api.requests import TetrahedronInput


class RunReport(BaseModel):
    """Everything a CLI command computed, in a form that can be fed back with --input-json."""

    command: str
    input: Optional[TetrahedronInput] = None
    volumes: Dict[str, float] = Field(default_factory=dict)
    residuals: Dict[str, float] = Field(default_factory=dict)
    generic: Optional[bool] = None
    violated: List[str] = Field(default_factory=list)
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    failures: List[str] = Field(default_factory=list)
    timing_seconds: float = 0.0
    resources: Dict[str, float] = Field(default_factory=dict)
    metadata: Dict[str, Any] = Field(default_factory=dict)
    exit_code: int = 0
