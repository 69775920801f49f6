"""
Input validation utilities for pcband.

This module provides validation functions for scan parameters, layer lists
and JSON profile documents to catch common input errors before any
numerical work starts.
"""

import math
import numbers
from typing import Any, Dict, List, Sequence, Tuple

from pcband.constants import PI


def _is_number(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


class InputValidator:
    """
    Validates user-facing inputs.

    Static methods return the validated values together with a list of
    warnings for questionable but usable input, and raise ValueError for
    input that cannot be used.
    """

    @staticmethod
    def validate_scan_parameters(params: Dict[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
        """
        Validate frequency-scan parameters.

        Args:
            params: Dictionary with any of omega_min, omega_max, samples,
                theta, n_ambient

        Returns:
            Tuple of (validated_params, warnings)

        Raises:
            ValueError: For invalid inputs that cannot be corrected
        """
        validated = params.copy()
        warnings = []

        omega_min = params.get("omega_min")
        omega_max = params.get("omega_max")
        if omega_min is not None and omega_max is not None:
            if not (math.isfinite(omega_min) and math.isfinite(omega_max)):
                raise ValueError("Frequency bounds must be finite")
            if not 0 < omega_min < omega_max:
                raise ValueError(
                    f"Frequency range must satisfy 0 < omega_min < omega_max, "
                    f"got [{omega_min}, {omega_max}]"
                )
            if omega_max > 5.0:
                warnings.append(
                    f"omega_max = {omega_max} is high; oscillatory quadrature will need many panels"
                )

        if "samples" in params:
            samples = params["samples"]
            if int(samples) != samples or samples < 2:
                raise ValueError(f"Sample count must be an integer >= 2, got {samples}")
            validated["samples"] = int(samples)
            if samples > 100000:
                warnings.append(f"{samples} samples requested; the scan may take a long time")

        if "theta" in params:
            theta = params["theta"]
            if not 0 <= theta < PI / 2:
                raise ValueError(f"Incidence angle must satisfy 0 <= theta < pi/2, got {theta}")

        if "n_ambient" in params:
            if params["n_ambient"] <= 0:
                raise ValueError("Ambient refractive index must be greater than zero")

        return validated, warnings

    @staticmethod
    def validate_layers(
        layers: Sequence[Tuple[float, float]], period: Any = None
    ) -> Tuple[List[Tuple[float, float]], List[str]]:
        """
        Validate a list of (index, thickness) layers.

        Args:
            layers: Ordered (n, d) pairs
            period: Declared period, checked against the thickness sum when given

        Returns:
            Tuple of (validated_layers, warnings)

        Raises:
            ValueError: On empty stacks, non-positive values or a period mismatch
        """
        if len(layers) == 0:
            raise ValueError("A layer stack needs at least one layer")
        validated = []
        warnings = []
        for i, (n, d) in enumerate(layers):
            if not (_is_number(n) and _is_number(d)):
                raise ValueError(f"Layer {i} index and thickness must be numbers, got {n!r} and {d!r}")
            if not (math.isfinite(n) and math.isfinite(d)):
                raise ValueError(f"Layer {i} has non-finite index or thickness")
            if n <= 0:
                raise ValueError(f"Layer {i} index must be greater than zero, got {n}")
            if d <= 0:
                raise ValueError(f"Layer {i} thickness must be greater than zero, got {d}")
            validated.append((float(n), float(d)))

        total = sum(d for _, d in validated)
        if period is not None and abs(total - period) > 1e-12:
            raise ValueError(f"Layer thicknesses sum to {total}, but the period is {period}")
        thinnest = min(d for _, d in validated)
        if thinnest < 1e-6 * total:
            warnings.append(f"Layer of thickness {thinnest:.3e} is very thin relative to the period")
        return validated, warnings

    @staticmethod
    def validate_profile_document(doc: Dict[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
        """
        Validate a JSON profile document against the profile schema.

        Args:
            doc: Parsed JSON object

        Returns:
            Tuple of (validated_document, warnings)

        Raises:
            ValueError: If the document does not follow the schema
        """
        if not isinstance(doc, dict):
            raise ValueError("Profile document must be a JSON object")
        warnings = []
        validated = dict(doc)

        kind = doc.get("type")
        if kind not in ("expression", "layers", "canonical"):
            raise ValueError(
                f"Unknown profile type: {kind!r}. Valid options: expression, layers, canonical"
            )
        payloads = [key for key in ("expression", "canonical", "layers") if key in doc]
        if len(payloads) != 1:
            raise ValueError(
                f"Exactly one of expression/canonical/layers must be present, found {payloads}"
            )
        if payloads[0] != kind:
            raise ValueError(f"Profile type {kind!r} does not match its payload {payloads[0]!r}")

        if "period" in doc:
            period = doc["period"]
            if not _is_number(period) or period <= 0:
                raise ValueError(f"Period must be a positive number, got {period!r}")
            validated["period"] = float(period)
        else:
            validated["period"] = None
            if kind == "expression":
                warnings.append("No period given; expression profile uses period 1")

        if kind == "expression" and not isinstance(doc["expression"], str):
            raise ValueError("Expression profile needs a string 'expression'")
        if kind == "canonical" and not isinstance(doc["canonical"], str):
            raise ValueError("Canonical profile needs a string 'canonical'")
        if kind == "layers":
            raw = doc["layers"]
            if not isinstance(raw, list):
                raise ValueError("Layered profile needs a list 'layers'")
            pairs = []
            for i, item in enumerate(raw):
                if not isinstance(item, dict) or "n" not in item or "d" not in item:
                    raise ValueError(f"Layer {i} must be an object with 'n' and 'd'")
                pairs.append((item["n"], item["d"]))
            layers, layer_warnings = InputValidator.validate_layers(pairs, validated["period"])
            validated["layers"] = layers
            warnings.extend(layer_warnings)

        unknown = set(doc) - {"period", "type", "expression", "canonical", "layers", "name"}
        if unknown:
            warnings.append(f"Ignoring unknown profile keys: {sorted(unknown)}")

        return validated, warnings
