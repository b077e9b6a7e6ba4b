import csv
import json
import math
from fractions import Fraction
from typing import Any, Dict, Optional

from banachlab.embeddings import DistortionReport
from banachlab.inequalities import VerifierReport
from banachlab.templating.markdown_extension import ReportMarkdownExtension
from banachlab.templating.templater import Templater
from banachlab.vectors import format_rational

VERIFIER_TEMPLATE = "verifier_report.md.j2"
DISTORTION_TEMPLATE = "distortion_report.md.j2"
SIGNIFICANT_DIGITS = 12


def encode_value(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    return value


def is_numeric(value: Any) -> bool:
    return isinstance(value, Fraction) or (isinstance(value, float) and math.isfinite(value))


def encode(data: Any, decimal: Optional[int] = None) -> Any:
    if isinstance(data, dict):
        encoded = {}
        for key, value in data.items():
            encoded[str(key)] = encode(value, decimal)
            if decimal is not None and is_numeric(value):
                encoded[f"{key}_decimal"] = round(float(value), decimal)
        return encoded
    if isinstance(data, (list, tuple)):
        return [encode(value, decimal) for value in data]
    return encode_value(data)


def verifier_payload(report: VerifierReport) -> Dict[str, Any]:
    payload = {
        "lemma": report.lemma,
        "params": report.params,
        "samples": report.samples,
        "max_ratio": report.max_ratio,
        "witness": report.witness,
        "bound_claimed": report.bound_claimed,
        "pass": report.passed,
        "seed": report.seed,
    }
    if report.extra:
        payload["details"] = report.extra
    return payload


def distortion_payload(report: DistortionReport) -> Dict[str, Any]:
    return {
        "embedding": report.embedding,
        "metric": report.metric,
        "n": report.n,
        "k": report.k,
        "pairs": report.pairs,
        "lower": report.lower,
        "upper": report.upper,
        "distortion": report.distortion,
        "argmin": list(report.argmin),
        "argmax": list(report.argmax),
    }


def dumps(payload: Dict[str, Any], decimal: Optional[int] = None) -> str:
    return json.dumps(encode(payload, decimal), indent=2, sort_keys=True)


def render_markdown(template: str, payload: Dict[str, Any], decimal: Optional[int] = None) -> str:
    templater = Templater().extend(ReportMarkdownExtension(decimal))
    return templater.template(template, report=encode(payload))


def write_distortion_csv(report: DistortionReport, path: str):
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(["m", "n", "distance", "image_distance", "ratio"])
        for m, n, distance, image, ratio in report.rows:
            writer.writerow([m, n, encode_value(distance), encode_value(image), encode_value(ratio)])


def format_norm(value, decimal: Optional[int] = None) -> str:
    if isinstance(value, Fraction):
        if decimal is not None:
            shown = f"{float(value):.{decimal}f}"
        elif value.denominator == 1:
            shown = str(value.numerator)
        else:
            shown = f"{float(value):.{SIGNIFICANT_DIGITS}g}"
        return f"{shown} (= {format_rational(value)})"
    if not math.isfinite(value):
        return str(value)
    return f"{value:.{decimal}f}" if decimal is not None else f"{value:.{SIGNIFICANT_DIGITS}g}"


def format_distance(value, decimal: Optional[int] = None) -> str:
    if decimal is not None:
        return f"{float(value):.{decimal}f}"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else format_rational(value)
    return f"{value:.{SIGNIFICANT_DIGITS}g}"
