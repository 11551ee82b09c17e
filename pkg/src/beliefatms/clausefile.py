"""Text format for weighted Horn-clause databases.

One directive per line, processed in file order (so incremental label
updates are observable), with ``#`` starting a comment:

    assume A1 0.5          declare a weighted assumption
    premise x1             declare an unconditional literal
    rule x1 & A1 => x2     Horn clause
    contra x4 & !x6        declare two literals jointly contradictory

``!`` prefixes the negative polarity of a literal name.  Syntax problems
(including masses outside [0, 1]) raise :class:`ClauseFileError` with the
offending line number; semantic problems (duplicate assumptions, unknown
literals in ``contra``, ...) propagate as :class:`beliefatms.atms.AtmsError`.
"""

from __future__ import annotations

import re
from pathlib import Path

from .atms import Engine

__all__ = ["ClauseFileError", "load_clause_text", "load_clause_file"]

_LITERAL_RE = re.compile(r"!?[A-Za-z0-9_][A-Za-z0-9_.:\-]*\Z")


class ClauseFileError(Exception):
    """A clause file line could not be parsed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _literal(token: str, line_no: int) -> str:
    if not _LITERAL_RE.match(token):
        raise ClauseFileError(line_no, f"invalid literal {token!r}")
    return token


def _split_conjunction(text: str, line_no: int) -> list[str]:
    parts = [p.strip() for p in text.split("&")]
    if any(not p for p in parts):
        raise ClauseFileError(line_no, "empty conjunct")
    return [_literal(p, line_no) for p in parts]


def load_clause_text(text: str) -> tuple[Engine, dict[str, float]]:
    """Build an engine and a mass assignment from clause-file text."""
    engine = Engine()
    masses: dict[str, float] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)
        directive = head[0]
        rest = head[1].strip() if len(head) > 1 else ""
        if directive == "assume":
            tokens = rest.split()
            if len(tokens) != 2:
                raise ClauseFileError(line_no, "expected: assume <name> <mass>")
            name = _literal(tokens[0], line_no)
            try:
                mass = float(tokens[1])
            except ValueError:
                raise ClauseFileError(
                    line_no, f"mass {tokens[1]!r} is not a number"
                ) from None
            if not 0.0 <= mass <= 1.0:
                raise ClauseFileError(line_no, f"mass {mass} is outside [0, 1]")
            engine.add_assumption(name)
            masses[name] = mass
        elif directive == "premise":
            tokens = rest.split()
            if len(tokens) != 1:
                raise ClauseFileError(line_no, "expected: premise <literal>")
            engine.add_premise(_literal(tokens[0], line_no))
        elif directive == "rule":
            if rest.count("=>") != 1:
                raise ClauseFileError(
                    line_no, "expected: rule <lit> [& <lit>...] => <lit>"
                )
            left, right = rest.split("=>")
            antecedents = _split_conjunction(left, line_no)
            consequent = _literal(right.strip(), line_no)
            engine.add_justification(antecedents, consequent)
        elif directive == "contra":
            literals = _split_conjunction(rest, line_no)
            if len(literals) != 2:
                raise ClauseFileError(line_no, "expected: contra <lit> & <lit>")
            engine.record_contradiction(literals[0], literals[1])
        else:
            raise ClauseFileError(line_no, f"unknown directive {directive!r}")
    return engine, masses


def load_clause_file(path: str | Path) -> tuple[Engine, dict[str, float]]:
    return load_clause_text(Path(path).read_text(encoding="utf-8"))
