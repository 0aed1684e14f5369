import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

from pydantic import ValidationError

from lambda_pt.core.exceptions import ConfigError
from lambda_pt.schemas.run_config import RunConfig

logger = logging.getLogger(__name__)


def _read_document(path: Path) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"{path}: cannot read config file ({e.strerror}).") from e
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    if not isinstance(document, dict):
        raise ConfigError(f"{path}: top level must be a JSON object.")
    return document


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_override(document: Dict[str, Any], assignment: str) -> None:
    """Applies one ``key=value`` override; dotted keys address nested sections."""
    key, sep, raw = assignment.partition("=")
    if not sep or not key:
        raise ConfigError(f"--set expects key=value, got '{assignment}'.")
    *parents, leaf = key.strip().split(".")
    node = document
    for part in parents:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(f"--set {key}: '{part}' is not a section.")
        node = child
    node[leaf] = _parse_value(raw.strip())


def format_validation_error(e: ValidationError) -> str:
    lines = []
    for err in e.errors():
        location = ".".join(str(part) for part in err["loc"]) or "<root>"
        lines.append(f"field '{location}': {err['msg']}")
    return "; ".join(lines)


def load_run_config(
    path: Optional[Path] = None,
    overrides: Iterable[str] = (),
    out: Optional[str] = None,
    fmt: Optional[str] = None,
) -> RunConfig:
    """
    Reads the JSON document at ``path`` (or starts empty), applies ``--set``
    overrides and the ``--out`` / ``--format`` flags, then validates.

    Raises:
        ConfigError: Unreadable file, malformed JSON or a field-level validation error.
        DegenerateCoupling: If the PT section sets v = 0.
    """
    document = _read_document(path) if path is not None else {}
    for assignment in overrides:
        apply_override(document, assignment)
    if out is not None:
        document["output"] = out
    if fmt is not None:
        document["format"] = fmt

    try:
        config = RunConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError(format_validation_error(e)) from e
    logger.debug(f"Loaded run config: {config.model_dump(exclude_none=True)}")
    return config
