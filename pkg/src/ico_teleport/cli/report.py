"""
Versioned JSON reports emitted by the CLI.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from ico_teleport import __version__
from ico_teleport.checks import VerificationReport

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_IO_ERROR = 3


@dataclass
class Report:
    """
    Result of one CLI subcommand.

    Attributes:
        command: Subcommand name.
        sections: One verification report per gate or suite.
        settings: Effective options (seed, trials, tolerances).
    """

    command: str
    sections: List[VerificationReport] = field(default_factory=list)
    settings: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(section.passed for section in self.sections)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_CHECK_FAILED

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "command": self.command,
            "status": "pass" if self.passed else "fail",
            "settings": self.settings,
            "sections": [section.to_dict() for section in self.sections],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def summary_lines(self) -> List[str]:
        lines = []
        for section in self.sections:
            mark = "✅" if section.passed else "❌"
            lines.append(f"{mark} {section.name}: max deviation {section.max_deviation:.3e}")
            for check in section.checks:
                if not check.passed:
                    lines.append(
                        f"   ↳ {check.name}: {check.max_deviation:.3e} > {check.tolerance:.1e}"
                    )
        return lines


def write_text(text: str, path: Optional[str]) -> Optional[Path]:
    """
    Write UTF-8 text with LF line endings, creating parent directories.

    Returns the written path, or None when path is None.
    """
    if path is None:
        return None
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return target
