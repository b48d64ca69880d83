"""Stage-approximated computably enumerable equivalence relations."""

from ceerlab.Ceer import StagedCeer, build, parse_spec
from ceerlab.Machine import Machine

__all__ = ["Machine", "StagedCeer", "build", "parse_spec"]
