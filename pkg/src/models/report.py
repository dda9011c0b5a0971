import json
from typing import Dict, List, Optional

import jsonschema
from pydantic import BaseModel, Field

from src.utils.config import SCHEMA_VERSION


class RingEcho(BaseModel):
    """Input echo: the presentation (when there is one) and the compiled basis."""
    label: str
    char: int
    vars: List[str]
    ideal: Optional[List[str]] = None
    cap: Optional[int] = None
    dim: int
    basis: List[str]


class SeriesComparison(BaseModel):
    name: str
    expected: List[int]
    computed: List[int]
    agree_up_to: int


class ProductWitness(BaseModel):
    degrees: List[int]
    classes: List[int]
    product: List[int]
    representatives: List[str] = Field(default_factory=list)


class ClassSummary(BaseModel):
    kind: str
    description: str
    dims: List[int]
    witness: Optional[ProductWitness] = None
    qualifier: str = ''
    notes: List[str] = Field(default_factory=list)


class GolodSummary(BaseModel):
    kind: str
    description: str
    depth: Optional[int] = None
    certificate: str = ''
    witness: Optional[ProductWitness] = None
    index: Optional[int] = None
    betti: Optional[List[int]] = None
    golod: Optional[List[int]] = None


class EzdSummary(BaseModel):
    found: bool
    status: str
    mode: str
    scope: str
    budget: int
    consumed: int
    witness: Optional[str] = None
    generator: Optional[str] = None
    complementary: Optional[bool] = None


class BettiSummary(BaseModel):
    module: str
    depth: int
    values: List[int]


class HomologyCheckSummary(BaseModel):
    socle_degree: int
    dims: List[int]
    computed: List[int]
    predicted: List[int]
    agree: bool


class QuotientSummary(BaseModel):
    """Data of R/m^q computed alongside the ring itself."""
    exponent: int
    dim: int
    hilbert: List[int]
    koszul_dims: List[int]
    classification: ClassSummary
    golod: GolodSummary
    betti: Optional[BettiSummary] = None
    homology_check: Optional[HomologyCheckSummary] = None


class Flags(BaseModel):
    gorenstein: bool
    compressed: bool
    complete_intersection: bool
    koszul_consistent_up_to: Optional[int] = None


class AnalysisReport(BaseModel):
    """Full report of the analyze command."""
    schema_version: str = SCHEMA_VERSION
    ring: RingEcho
    hilbert: List[int]
    socle_degree: int
    embedding_dimension: int
    type: int
    mu_presentation: int
    flags: Flags
    koszul_dims: List[int]
    tor_polynomial: str
    classification: ClassSummary
    golod: GolodSummary
    ezd: Optional[EzdSummary] = None
    betti: Optional[BettiSummary] = None
    quotient: Optional[QuotientSummary] = None
    series: List[SeriesComparison] = Field(default_factory=list)


class QuotientReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    ring: RingEcho
    exponent: int
    quotient: RingEcho
    hilbert: List[int]


class BettiReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    ring: RingEcho
    betti: BettiSummary
    exact: Optional[bool] = None


class SeriesReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    formula: str
    params: Dict[str, str]
    depth: int
    coefficients: List[int]
    rational: Optional[str] = None
    denominator_degree: Optional[int] = None


class PfaffianReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    size: int
    vars: List[str]
    generators: List[str]
    compared_with: Optional[str] = None
    ideals_equal: Optional[bool] = None


class TrivextReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    ring: RingEcho
    extension: RingEcho
    hilbert: List[int]
    type: int
    gorenstein: bool
    compressed: bool
    complete_intersection: bool
    presentation: List[str]


class EzdReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    ring: RingEcho
    ezd: EzdSummary


class BuiltinReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    name: str
    ring: RingEcho


def validate_report(report):
    """
    Validate a report against the JSON schema of its model.

    :param report: Any report model instance
    :type report: pydantic.BaseModel
    :return: The JSON-compatible document
    :rtype: dict
    :raises jsonschema.ValidationError: If the document does not match the schema
    """
    document = report.model_dump(mode='json')
    jsonschema.validate(instance=document, schema=type(report).model_json_schema())
    return document


def dump_report(report):
    """Serialise a validated report with sorted keys, so equal inputs give equal bytes."""
    return json.dumps(validate_report(report), sort_keys=True, indent=2)


def published_schema():
    """The schema of the analyze report, as published with the tool."""
    return AnalysisReport.model_json_schema()
