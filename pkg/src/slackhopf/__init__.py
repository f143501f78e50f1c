"""Slack Hopf structures on finite-dimensional comagma algebras, bialgebras,
quasi-bialgebras and finite categories, computed over exact fields."""

from importlib.resources import files

from .algebra import ComagmaAlgebra, FinDimAlgebra, conjugate_coproduct, env_invert
from .bialgebra import build_antipode, extract_antipode_data, make_counit
from .errors import (
    BoundExceeded,
    IdentityViolation,
    InvalidStructure,
    InverseMismatch,
    ModuleAxiomViolation,
    ParseError,
    PreconditionError,
    SlackHopfError,
)
from .exactlin import GF, QQ, parse_field
from .quasihopf import (
    QuasiAntipode,
    QuasiBialgebra,
    classify_slack_structure,
    left_hopf_from_antipode,
    slackness,
    torsor_decompose,
)
from .slack import check_slack_hopf, find_slack_hopf, torsor_act

__version__ = "0.1.0"


def data_path(name: str):
    """Path of a bundled example file, e.g. ``data_path("kz2.alg")``."""
    return files(__name__).joinpath("data", name)


__all__ = [
    "QQ",
    "GF",
    "parse_field",
    "FinDimAlgebra",
    "ComagmaAlgebra",
    "conjugate_coproduct",
    "env_invert",
    "check_slack_hopf",
    "find_slack_hopf",
    "torsor_act",
    "make_counit",
    "extract_antipode_data",
    "build_antipode",
    "QuasiBialgebra",
    "QuasiAntipode",
    "left_hopf_from_antipode",
    "slackness",
    "classify_slack_structure",
    "torsor_decompose",
    "data_path",
    "SlackHopfError",
    "ParseError",
    "BoundExceeded",
    "InvalidStructure",
    "IdentityViolation",
    "InverseMismatch",
    "ModuleAxiomViolation",
    "PreconditionError",
]
