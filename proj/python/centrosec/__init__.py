"""Critical supporting hyperplanes of symmetric convex bodies."""

import json
from importlib import resources

from ._core import (
    REPORT_SCHEMA,
    ConvexBody,
    CriticalPair,
    DegenerateSection,
    ParseError,
    RejectedInstance,
    Report,
    SolverConfig,
    UnsupportedRepresentation,
    cap_volume,
    evaluate,
    fd_gradient,
    generate_instance,
    grid_census,
    mc_section,
    parse_instance,
    section,
    solve,
)

__version__ = "0.1.0"


def report_schema():
    """The JSON schema of solve reports."""
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())


def report_dict(report):
    """A solve report as plain Python data, validated against the schema."""
    import jsonschema

    data = json.loads(report.to_json())
    jsonschema.validate(data, report_schema())
    return data
