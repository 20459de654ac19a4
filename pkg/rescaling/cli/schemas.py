"""
CLI Schemas - pydantic models for JSON problem descriptions
"""
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, List, Optional, Union

from pydantic import AfterValidator, BaseModel, ValidationError, field_validator, model_validator

from rescaling.exceptions import SchemaError
from rescaling.models.algebra import AlgebraPresentation
from rescaling.models.geometry import ArrangementKind, ArrangementSpec, WeightedLinkingGraph
from rescaling.models.group import GroupWord, MalcevElement, malcev_generators
from rescaling.models.power_series import PowerSeries
from rescaling.models.tensor import GradedLieDims, LieElement


class Command(str, Enum):
    HILBERT = "hilbert"
    RESCALE = "rescale"
    HOLONOMY = "holonomy"
    LCS_RANKS = "lcs-ranks"
    HOMOTOPY_RANKS = "homotopy-ranks"
    LOOP_POINCARE = "loop-poincare"
    KOSZUL_TEST = "koszul-test"
    QUILLEN_HOMOLOGY = "quillen-homology"
    BCH = "bch"
    CH_REPRESENT = "ch-represent"
    LINK_DERIVATION = "link-derivation"
    LINK_REPORT = "link-report"
    ARRANGEMENT_REPORT = "arrangement-report"
    REBRACKET = "rebracket"


class KoszulMode(str, Enum):
    SERIES = "series"
    QUILLEN = "quillen"
    CE = "ce"
    ALL = "all"


class RationalInput(BaseModel):
    n: int
    d: int = 1

    @field_validator("d")
    @classmethod
    def nonzero_denominator(cls, v: int) -> int:
        if v == 0:
            raise ValueError("denominator must be nonzero")
        return v


def _check_rational(value):
    if isinstance(value, str):
        try:
            Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"'{value}' is not a rational number") from e
    return value


Rational = Annotated[Union[int, str, RationalInput], AfterValidator(_check_rational)]


def to_fraction(value: Rational) -> Fraction:
    """int, "p/q" string or {"n": p, "d": q}"""
    if isinstance(value, RationalInput):
        return Fraction(value.n, value.d)
    return Fraction(value)


# ==================== Payloads ====================

class RelationTerm(BaseModel):
    monomial: List[int]
    coefficient: Rational = 1


class AlgebraInput(BaseModel):
    """Either a named family or generators plus relations (1-based monomials)"""
    generators: Optional[int] = None
    relations: List[List[RelationTerm]] = []
    family: Optional[str] = None
    n: Optional[int] = None
    g: Optional[int] = None
    ell: Optional[int] = None
    name: str = ""

    @model_validator(mode="after")
    def check_source(self):
        families = {"exterior": ("n",), "torus": ("n",), "wedge": ("n",), "surface": (), "generic": ("n", "ell")}
        if self.family is None and self.generators is None:
            raise ValueError("algebra needs 'generators' or a 'family'")
        if self.family is not None and self.family not in families:
            raise ValueError(f"unknown family '{self.family}', expected one of {sorted(families)}")
        for field in families.get(self.family, ()):
            if getattr(self, field) is None:
                raise ValueError(f"family '{self.family}' needs '{field}'")
        for relation in self.relations:
            for term in relation:
                if any(i < 1 or i > (self.generators or 0) for i in term.monomial):
                    raise ValueError(f"monomial {term.monomial} uses a generator outside 1..{self.generators}")
        return self

    def to_presentation(self, truncation: int) -> AlgebraPresentation:
        kwargs = {"truncation": truncation}
        if self.name:
            kwargs["name"] = self.name
        if self.family == "surface":
            return AlgebraPresentation.surface(self.g or 1, **kwargs)
        if self.family == "generic":
            return AlgebraPresentation.generic(self.n or 0, self.ell or 0, **kwargs)
        if self.family == "exterior":
            return AlgebraPresentation.exterior(self.n or 0, **kwargs)
        if self.family == "torus":
            return AlgebraPresentation.torus(self.n or 0, **kwargs)
        if self.family == "wedge":
            return AlgebraPresentation.wedge_of_circles(self.n or 0, **kwargs)
        relations = [[(term.monomial, to_fraction(term.coefficient)) for term in r] for r in self.relations]
        kwargs.setdefault("name", f"algebra-n{self.generators}")
        return AlgebraPresentation.from_monomials(self.generators, relations, **kwargs)


class SeriesInput(BaseModel):
    coefficients: List[Rational]

    @field_validator("coefficients")
    @classmethod
    def not_empty(cls, v: List[Rational]) -> List[Rational]:
        if not v:
            raise ValueError("a series needs at least its constant term")
        return v

    def to_series(self, order: int) -> PowerSeries:
        return PowerSeries.of([to_fraction(c) for c in self.coefficients], order)


class LinkInput(BaseModel):
    weights: List[List[int]]

    def to_graph(self) -> WeightedLinkingGraph:
        return WeightedLinkingGraph.from_matrix(self.weights)


class ArrangementInput(BaseModel):
    kind: ArrangementKind
    exponents: List[int] = []
    n: Optional[int] = None
    ell: Optional[int] = None

    def to_spec(self) -> ArrangementSpec:
        return ArrangementSpec(self.kind, tuple(self.exponents), self.n, self.ell)


class WordsInput(BaseModel):
    """Group words in the syntax "x1 x2^-1" """
    longitudes: List[str] = []
    compare_with: Optional[List[str]] = None
    word: Optional[str] = None
    n: Optional[int] = None
    r: int = 4

    @field_validator("longitudes", "compare_with")
    @classmethod
    def parse_all(cls, v: Optional[List[str]]) -> Optional[List[str]]:
        if v is not None:
            for text in v:
                GroupWord.parse(text, len(v))
        return v

    def group_words(self, texts: List[str]) -> List[GroupWord]:
        return [GroupWord.parse(text, len(texts)) for text in texts]

    def single_word(self) -> GroupWord:
        return GroupWord.parse(self.word or "", self.n)


class LieTerm(BaseModel):
    word: List[int]
    coefficient: Rational = 1


class BchInput(BaseModel):
    n: int
    r: int = 3
    x: List[LieTerm]
    y: List[LieTerm]

    @model_validator(mode="after")
    def check_words(self):
        if self.n < 1 or self.r < 1:
            raise ValueError("bch needs n >= 1 and r >= 1")
        for term in self.x + self.y:
            if not term.word or any(i < 1 or i > self.n for i in term.word):
                raise ValueError(f"word {term.word} must use generators 1..{self.n}")
        return self

    def element(self, terms: List[LieTerm]) -> MalcevElement:
        gens = malcev_generators(self.n)
        values = {}
        for term in terms:
            word = tuple(i - 1 for i in term.word)
            values[word] = values.get(word, Fraction(0)) + to_fraction(term.coefficient)
        return MalcevElement(LieElement.truncated(gens, self.r, values))


class RebracketInput(BaseModel):
    dims: List[int]
    m: int

    def to_dims(self) -> GradedLieDims:
        return GradedLieDims.from_list(self.dims)


# ==================== Problem spec ====================

_REQUIRED = {
    Command.HILBERT: "algebra",
    Command.RESCALE: "algebra",
    Command.HOLONOMY: "algebra",
    Command.KOSZUL_TEST: "algebra",
    Command.QUILLEN_HOMOLOGY: "algebra",
    Command.BCH: "bch",
    Command.CH_REPRESENT: "words",
    Command.LINK_DERIVATION: "words",
    Command.LINK_REPORT: "link",
    Command.ARRANGEMENT_REPORT: "arrangement",
    Command.REBRACKET: "rebracket",
}


class ProblemSpec(BaseModel):
    command: Command
    name: str = ""
    description: str = ""
    mode: KoszulMode = KoszulMode.ALL
    truncation: Optional[int] = None
    k: Optional[int] = None
    algebra: Optional[AlgebraInput] = None
    series: Optional[SeriesInput] = None
    link: Optional[LinkInput] = None
    arrangement: Optional[ArrangementInput] = None
    words: Optional[WordsInput] = None
    bch: Optional[BchInput] = None
    rebracket: Optional[RebracketInput] = None
    p_max: Optional[int] = None
    weight_max: Optional[int] = None

    @model_validator(mode="after")
    def check_payload(self):
        if self.command in (Command.LCS_RANKS, Command.HOMOTOPY_RANKS, Command.LOOP_POINCARE):
            if self.series is None and self.algebra is None:
                raise ValueError(f"'{self.command.value}' needs a 'series' or an 'algebra'")
        elif getattr(self, _REQUIRED[self.command]) is None:
            raise ValueError(f"'{self.command.value}' needs a '{_REQUIRED[self.command]}' payload")
        if self.command == Command.LINK_DERIVATION and not self.words.longitudes:
            raise ValueError("'link-derivation' needs at least one longitude")
        if self.command == Command.CH_REPRESENT and self.words.word is None:
            raise ValueError("'ch-represent' needs a 'word'")
        if self.truncation is not None and self.truncation < 1:
            raise ValueError("truncation must be >= 1")
        for field in ("p_max", "weight_max"):
            value = getattr(self, field)
            if value is not None and (self.command != Command.KOSZUL_TEST or self.mode not in (KoszulMode.CE, KoszulMode.ALL)):
                raise ValueError(f"'{field}' only applies to 'koszul-test' in ce or all mode")
            if value is not None and value < 1:
                raise ValueError(f"{field} must be >= 1")
        return self


def parse_spec(data: Any) -> ProblemSpec:
    try:
        return ProblemSpec.model_validate(data)
    except ValidationError as e:
        raise SchemaError(f"Invalid problem description: {e.errors(include_url=False)}") from e
