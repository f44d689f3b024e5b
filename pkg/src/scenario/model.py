"""The validated scenario model.

A scenario names one command and everything it needs: the base field, the
base curve, the bundle and its sections, and run options.  Everything that
can be checked without computing is checked here.
"""

from __future__ import annotations

import re
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.coherent.system import CoherentSystemP1, random_system
from src.core.fields import FieldSpec
from src.core.forms import parse_form
from src.hyperelliptic.pipeline import HyperellipticModel
from src.scenario.replays import REPLAYS
from src.sheaves.splitting import SplittingType

_BASE_RE = re.compile(r"^(?:p1|hyperelliptic\(\s*(?P<g>\d+)\s*,\s*(?P<n>\d+)\s*\))$")


class Command(str, Enum):
    DSB = "dsb"
    LINSTAB = "linstab"
    BUTLER_AUDIT = "butler-audit"
    PAPER_VERIFY = "paper-verify"
    AUDIT_ALL = "audit-all"

    @property
    def needs_system(self) -> bool:
        return self in (Command.DSB, Command.LINSTAB, Command.BUTLER_AUDIT)


class Scenario(BaseModel):
    """One run of the workbench."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    field: str = "QQ"
    base: str = "p1"
    bundle: str | None = None
    sections: tuple[str, ...] = ()
    random_count: int | None = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0)
    prime: int | None = None
    samples: int | None = Field(default=None, ge=1)
    exhaustive: bool = False
    replay: str | None = None
    params: dict[str, int] = Field(default_factory=dict)
    grid: str = "default"
    report: str | None = None

    @field_validator("field")
    @classmethod
    def check_field(cls, v: str) -> str:
        return FieldSpec.parse(v).label

    @field_validator("base")
    @classmethod
    def check_base(cls, v: str) -> str:
        m = _BASE_RE.match(v.strip())
        if not m:
            raise ValueError(f"base must be p1 or hyperelliptic(g, n), got {v!r}")
        if m.group("g") is None:
            return "p1"
        g, n = int(m.group("g")), int(m.group("n"))
        HyperellipticModel(g, n)
        return f"hyperelliptic({g}, {n})"

    @field_validator("bundle")
    @classmethod
    def check_bundle(cls, v: str | None) -> str | None:
        return None if v is None else SplittingType.parse(v).to_text()

    @field_validator("prime")
    @classmethod
    def check_prime(cls, v: int | None) -> int | None:
        if v is not None:
            FieldSpec.prime(v)
        return v

    @model_validator(mode="after")
    def check_command(self) -> Scenario:
        if self.sections and self.random_count is not None:
            raise ValueError("give explicit sections or 'random N', not both")
        if self.command == Command.PAPER_VERIFY:
            if self.replay not in REPLAYS:
                raise ValueError(f"paper-verify needs replay in {sorted(REPLAYS)}, "
                                 f"got {self.replay!r}")
            accepted = sorted(REPLAYS[self.replay].defaults)
            unknown = sorted(set(self.params) - set(accepted))
            if unknown:
                raise ValueError(f"{self.replay} takes params {accepted}, got {unknown}")
        elif self.replay is not None or self.params:
            raise ValueError(f"replay and params need paper-verify, not {self.command.value}")
        if not self.command.needs_system:
            return self
        model = self.hyperelliptic
        if model is not None:
            expected = model.base_bundle.to_text()
            if self.bundle is not None and self.bundle != expected:
                raise ValueError(f"{self.base} fixes the bundle {expected}, got {self.bundle}")
        elif self.bundle is None:
            raise ValueError(f"{self.command.value} needs a bundle")
        if not self.sections and self.random_count is None:
            raise ValueError(f"{self.command.value} needs sections")
        rank = self.splitting.rank
        for i, sec in enumerate(self.sections):
            parts = split_section(sec)
            if len(parts) != rank:
                raise ValueError(f"section {i + 1} has {len(parts)} components, bundle rank {rank}")
        return self

    # ── Derived values ────────────────────────────────────────────

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec.parse(self.field)

    @property
    def hyperelliptic(self) -> HyperellipticModel | None:
        m = _BASE_RE.match(self.base)
        if m is None or m.group("g") is None:
            return None
        return HyperellipticModel(int(m.group("g")), int(m.group("n")))

    @property
    def splitting(self) -> SplittingType:
        model = self.hyperelliptic
        if model is not None:
            return model.base_bundle
        if self.bundle is None:
            raise ValueError("scenario declares no bundle")
        return SplittingType.parse(self.bundle)

    def build_system(self) -> CoherentSystemP1:
        """The declared system; random sections are redrawn until they generate."""
        fs = self.field_spec
        bundle = self.splitting
        if self.random_count is not None:
            return random_system(bundle, self.random_count, self.seed, fs, require_generated=True)
        sections = [
            [parse_form(text, fs, degree=a) for text, a in zip(split_section(sec), bundle.degrees)]
            for sec in self.sections
        ]
        return CoherentSystemP1.from_sections(bundle, sections, fs)


def split_section(text: str) -> list[str]:
    return [part.strip() for part in text.split(",")]
