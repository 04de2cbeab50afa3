"""Textual form of a meta-program, readable by any ASP solver."""
from typing import List

from ..lang.printer import format_choice, format_rule
from .meta import STAGE_DECISIONS, STAGES, MetaProgram


def emit_meta(meta: MetaProgram) -> str:
    """Render a meta-program deterministically.

    Rules are grouped by stage, the decision choices follow the decision facts and the
    ``#show`` directives come last. The output contains no sketch syntax.

    :param meta: The result of :func:`skasp.rewriter.meta.rewrite`.
    """
    lines: List[str] = []
    for stage in STAGES:
        lines.append(f"% {stage}")
        lines.extend(format_rule(rule) for rule, origin in zip(meta.rules, meta.provenance) if origin.stage == stage)
        if stage == STAGE_DECISIONS:
            lines.extend(format_choice(block) for block in meta.choices)
    lines.extend(f"#show {entry.decision}/1." for entry in meta.naming)
    return "\n".join(lines) + "\n"
