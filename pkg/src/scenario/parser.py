"""The scenario text format.

One ``key: value`` pair per line; ``#`` starts a comment.  The only nested
value is the section list, written as indented ``- f1, f2, ...`` items under
``sections:`` (one item per section, one form per summand), or inline as
``sections: random N``.  Example::

    command: linstab
    field: GF(5)
    bundle: O(3) + O(4)
    sections: random 4
    seed: 1

Errors carry the line and column of the offending text.
"""

from __future__ import annotations

import re
from pathlib import Path

from pydantic import ValidationError

from src.core.errors import FormParseError, ScenarioError
from src.core.forms import parse_form
from src.scenario.model import Scenario, split_section

KEY_ORDER = (
    "command", "replay", "params", "field", "base", "bundle", "sections",
    "seed", "prime", "samples", "exhaustive", "grid", "report",
)
_INT_KEYS = {"seed", "prime", "samples"}
_BOOL = {"true": True, "yes": True, "false": False, "no": False}
_LINE_RE = re.compile(r"^(?P<key>[A-Za-z_][\w-]*)\s*:\s*(?P<value>.*?)\s*$")
_RANDOM_RE = re.compile(r"^random\s+(?P<count>\d+)$")
_PARAM_RE = re.compile(r"^\s*(?P<name>[a-z_]\w*)\s*=\s*(?P<value>-?\d+)\s*$")


def _strip_comment(line: str) -> str:
    m = re.search(r"(^|\s)#", line)
    return line if m is None else line[: m.start()]


def _parse_value(key: str, value: str, line: int, col: int):
    if key in _INT_KEYS:
        if not re.fullmatch(r"-?\d+", value):
            raise ScenarioError(f"{key} must be an integer, got {value!r}", line, col)
        return int(value)
    if key == "exhaustive":
        if value.lower() not in _BOOL:
            raise ScenarioError(f"exhaustive must be true or false, got {value!r}", line, col)
        return _BOOL[value.lower()]
    if key == "params":
        params = {}
        for part in value.split(","):
            m = _PARAM_RE.match(part)
            if m is None:
                raise ScenarioError(f"params must look like 'e=3, t=1', got {value!r}", line, col)
            params[m.group("name")] = int(m.group("value"))
        return params
    return value


def _check_sections(scenario: Scenario, items: list[tuple[int, int, str]]) -> None:
    """Parse every form against its summand degree, reporting the exact column."""
    fs = scenario.field_spec
    degrees = scenario.splitting.degrees
    for line, col, text in items:
        offset = 0
        for part, a in zip(text.split(","), degrees):
            lead = len(part) - len(part.lstrip())
            try:
                parse_form(part.strip(), fs, degree=a)
            except FormParseError as exc:
                inner = (exc.column or 1) - 1
                raise ScenarioError(f"section form {part.strip()!r}: {exc.reason}",
                                    line, col + offset + lead + inner) from exc
            offset += len(part) + 1


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario text."""
    raw: dict = {}
    key_lines: dict[str, tuple[int, int]] = {}
    items: list[tuple[int, int, str]] = []
    in_sections = False
    for lineno, full in enumerate(text.splitlines(), start=1):
        line = _strip_comment(full).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        if indent and in_sections:
            body = line.lstrip()
            if not body.startswith("-"):
                raise ScenarioError("expected '- <forms>' in the sections list", lineno, indent + 1)
            value = body[1:].lstrip()
            col = indent + 1 + (len(body) - len(value))
            if not value:
                raise ScenarioError("empty section", lineno, col)
            items.append((lineno, col, value))
            continue
        if indent:
            raise ScenarioError("unexpected indentation", lineno, 1)
        in_sections = False
        m = _LINE_RE.match(line)
        if m is None:
            raise ScenarioError("expected 'key: value'", lineno, 1)
        key, value = m.group("key"), m.group("value")
        col = m.start("value") + 1
        if key not in KEY_ORDER:
            raise ScenarioError(f"unknown key {key!r}; expected one of {list(KEY_ORDER)}",
                                lineno, 1)
        if key in key_lines:
            raise ScenarioError(f"duplicate key {key!r} (first on line {key_lines[key][0]})",
                                lineno, 1)
        key_lines[key] = (lineno, col)
        if key == "sections":
            if not value:
                in_sections = True
                continue
            rm = _RANDOM_RE.match(value)
            if rm is None:
                raise ScenarioError("sections must be a list or 'random N'", lineno, col)
            raw["random_count"] = int(rm.group("count"))
            continue
        if not value:
            raise ScenarioError(f"missing value for {key!r}", lineno, col)
        raw[key] = _parse_value(key, value, lineno, col)
    if items:
        raw["sections"] = tuple(v for _, _, v in items)
    elif "sections" in key_lines and "random_count" not in raw:
        raise ScenarioError("empty sections list", key_lines["sections"][0], 1)

    try:
        scenario = Scenario.model_validate(raw)
    except ValidationError as exc:
        err = exc.errors()[0]
        name = str(err["loc"][0]) if err["loc"] else None
        name = "sections" if name == "random_count" else name
        line, col = key_lines.get(name, (None, None)) if name else (None, None)
        where = f"{name}: " if name else ""
        raise ScenarioError(f"{where}{err['msg']}", line, col) from exc
    if scenario.sections:
        _check_sections(scenario, items)
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def scenario_to_text(scenario: Scenario) -> str:
    """Render a scenario so that ``parse_scenario`` gives it back."""
    values = scenario.model_dump(exclude_defaults=True, mode="json")
    values["command"] = scenario.command.value
    lines = []
    for key in KEY_ORDER:
        if key == "sections":
            if scenario.random_count is not None:
                lines.append(f"sections: random {scenario.random_count}")
            elif scenario.sections:
                lines.append("sections:")
                lines.extend(f"  - {', '.join(split_section(s))}" for s in scenario.sections)
            continue
        if key not in values:
            continue
        value = values[key]
        if key == "params":
            value = ", ".join(f"{k}={v}" for k, v in sorted(value.items()))
        elif key == "exhaustive":
            value = "true" if value else "false"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"
