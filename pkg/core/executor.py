"""
core/executor.py
Runs the checks of a suite on a worker pool.
Each item is (check, args); args are JSON so a failure can be replayed from its witness.
Results come back in submission order whatever order the workers finish in.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

from core.budget import WORKERS
from core.errors import OrdkitError, SizeGuardError, UnsupportedInstance
from core.report import Verdict, failed, passed, skipped


def run_check(check: str, fn: Callable, args: dict) -> Verdict:
    """
    Calls fn(**args). None or True means pass, a string is the failure reason,
    a (reason, detail) tuple adds detail to the witness.
    """
    witness = {"check": check, "args": args}
    try:
        outcome = fn(**args)
    except UnsupportedInstance as e:
        return skipped(check, str(e))
    except SizeGuardError as e:
        return skipped(check, str(e))
    except OrdkitError as e:
        if e.witness is not None:
            witness["detail"] = e.witness
        return failed(check, f"{type(e).__name__}: {e}", witness)

    if outcome is None or outcome is True:
        return passed(check)
    if isinstance(outcome, Verdict):
        if not outcome.ok and not outcome.skipped:
            detail = outcome.witness
            outcome.witness = dict(witness)
            if detail is not None:
                outcome.witness["detail"] = detail
        return outcome
    if isinstance(outcome, tuple):
        reason, detail = outcome
        witness["detail"] = detail
        return failed(check, reason, witness)
    return failed(check, str(outcome), witness)


def execute_checks(
    items: list,
    checks: dict,
    workers: Optional[int] = None,
    on_result: Optional[Callable] = None,
) -> tuple:
    """
    Run every (check, args) item. Returns (verdicts, elapsed seconds).
    on_result(index, verdict) fires as each item finishes, for progress output.
    """
    t0 = time.time()
    workers = workers or WORKERS

    def one(index: int, item: tuple) -> Verdict:
        check, args = item
        verdict = run_check(check, checks[check], args)
        if on_result:
            on_result(index, verdict)
        return verdict

    if workers <= 1 or len(items) <= 1:
        verdicts = [one(i, item) for i, item in enumerate(items)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(one, i, item) for i, item in enumerate(items)]
            verdicts = [f.result() for f in futures]
    return verdicts, time.time() - t0
