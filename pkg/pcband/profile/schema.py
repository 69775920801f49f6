"""
JSON profile documents.

    {"period": 1.0, "type": "expression", "expression": "2 + cos(2*pi*x)"}
    {"type": "canonical", "canonical": "square"}
    {"type": "layers", "layers": [{"n": 1, "d": 0.5}, {"n": 3, "d": 0.5}]}

Layer documents load as LayerStack, the others as Profile.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from pcband.constants import CANONICAL_PERIOD
from pcband.exceptions import ProfileError
from pcband.profile.base import Profile
from pcband.profile.canonical import CANONICAL_NAMES, canonical_profile
from pcband.profile.expression import parse_profile_expr
from pcband.transfer.stratified import LayerStack
from pcband.utils.validation import InputValidator

logger = logging.getLogger(__name__)

Medium = Union[Profile, LayerStack]


def profile_from_document(doc: Dict[str, Any]) -> Medium:
    """
    Build a medium from a parsed profile document.

    Raises:
        ProfileError: If the document does not follow the schema or describes an invalid profile
    """
    try:
        validated, warnings = InputValidator.validate_profile_document(doc)
    except ProfileError:
        raise
    except ValueError as e:
        raise ProfileError(str(e)) from e
    for warning in warnings:
        logger.warning(warning)

    period = validated["period"]
    kind = validated["type"]
    if kind == "canonical":
        return canonical_profile(validated["canonical"], period or CANONICAL_PERIOD)
    if kind == "expression":
        return parse_profile_expr(validated["expression"], period or 1.0)
    return LayerStack.from_pairs(validated["layers"], name=validated.get("name") or "layers")


def load_profile(source: Union[str, Path, Dict[str, Any]]) -> Medium:
    """
    Load a medium from a canonical name, a JSON file path or a parsed document.

    Raises:
        ProfileError: Unknown name, missing or unparsable file, or schema violation
    """
    if isinstance(source, dict):
        return profile_from_document(source)
    text = str(source)
    if text in CANONICAL_NAMES:
        return canonical_profile(text)
    path = Path(text)
    if not path.is_file():
        raise ProfileError(
            f"Unknown profile: {text}. Give a canonical name ({', '.join(CANONICAL_NAMES)}) "
            f"or a JSON profile file"
        )
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ProfileError(f"Cannot parse profile file {path}: {e}") from e
    logger.info(f"Loaded profile document {path}")
    return profile_from_document(doc)
