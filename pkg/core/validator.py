"""
core/validator.py
Validates a suite verdict before it is accepted into a report.
A failing verdict has to be replayable: its witness names a registered check and its arguments.
"""

import json

from core.report import Verdict

# Keys every replayable witness carries
REQUIRED_WITNESS_KEYS = ("check", "args")


def validate_verdict(verdict: Verdict, replayable: set) -> bool:
    """
    Returns True if the verdict can go into a SuiteReport as is.
    Sets verdict.failure_reason if not, and downgrades the verdict to a failure.
    """
    if verdict is None:
        return False

    if verdict.ok:
        return True

    witness = verdict.witness
    if not isinstance(witness, dict):
        verdict.failure_reason = f"{verdict.failure_reason} (no witness attached)".strip()
        return False

    missing = [k for k in REQUIRED_WITNESS_KEYS if k not in witness]
    if missing:
        verdict.failure_reason = (
            f"{verdict.failure_reason} (witness lacks {', '.join(missing)})".strip()
        )
        return False

    if witness["check"] not in replayable:
        verdict.failure_reason = (
            f"{verdict.failure_reason} (witness names unknown check '{witness['check']}')".strip()
        )
        return False

    try:
        json.dumps(witness)
    except (TypeError, ValueError) as e:
        verdict.failure_reason = f"{verdict.failure_reason} (witness not serialisable: {e})".strip()
        return False

    return True
