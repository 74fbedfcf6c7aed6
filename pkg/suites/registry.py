"""
suites/registry.py
Loads every verification suite in this directory. A suite module exposes
NAME, DESCRIPTION, CHECKS (check name -> callable) and items(params).
"""

import importlib.util
import json
import os
import traceback
from typing import Optional

from core.budget import DEFAULT_SEED, get_corpus_size
from core.executor import execute_checks, run_check
from core.log import log, warn
from core.report import SuiteReport, Verdict
from core.validator import validate_verdict

SUITES_DIR = os.path.dirname(os.path.abspath(__file__))

SKIP = {"__init__.py", "registry.py", "common.py"}


class SuiteRegistry:
    def __init__(self, suites_dir: str = SUITES_DIR):
        self.suites_dir = suites_dir
        self.suites: dict = {}
        self._load_all()

    def _load_all(self):
        for fname in sorted(os.listdir(self.suites_dir)):
            if not fname.endswith(".py") or fname in SKIP:
                continue
            self._load_suite(fname[:-3])

    def _load_suite(self, module_name: str):
        fpath = os.path.join(self.suites_dir, f"{module_name}.py")
        try:
            spec = importlib.util.spec_from_file_location(f"suites.{module_name}", fpath)
            mod = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(mod)

            if all(hasattr(mod, attr) for attr in ("NAME", "DESCRIPTION", "CHECKS", "items")):
                self.suites[mod.NAME] = mod
            else:
                warn("REGISTRY", f"Skipped {module_name}: missing NAME, DESCRIPTION, CHECKS or items")

        except Exception as e:
            warn("REGISTRY", f"Error loading {module_name}: {e}")
            traceback.print_exc()

    def reload(self):
        self.suites = {}
        self._load_all()

    def get(self, name: str):
        if name not in self.suites:
            available = ", ".join(self.suites.keys())
            raise ValueError(f"Suite '{name}' not found. Available: {available}")
        return self.suites[name]

    @property
    def replayable(self) -> set:
        return {check for mod in self.suites.values() for check in mod.CHECKS}

    def run(self, name: str, params: Optional[dict] = None, workers: Optional[int] = None) -> SuiteReport:
        mod = self.get(name)
        params = dict(params or {})
        params["max_size"] = get_corpus_size(name, params.get("max_size"))
        params.setdefault("seed", DEFAULT_SEED)

        items = list(mod.items(params))
        log("SUITE", f"{name}: {len(items)} checks, max_size={params['max_size']}, seed={params['seed']}")
        verdicts, elapsed = execute_checks(items, mod.CHECKS, workers)

        replayable = self.replayable
        for v in verdicts:
            validate_verdict(v, replayable)

        report = SuiteReport(name, params=params, wall_time=elapsed)
        report.extend(verdicts)
        if hasattr(mod, "notes"):
            report.notes.extend(mod.notes(params))
        counts = report.counts
        log("SUITE", f"{name}: {counts['pass']} pass, {counts['fail']} fail, "
                     f"{counts['skipped']} skipped in {elapsed:.2f}s")
        return report

    def replay(self, witness: dict) -> Verdict:
        """Re-run the single check a failure witness names."""
        check = witness.get("check")
        for mod in self.suites.values():
            if check in mod.CHECKS:
                log("REPLAY", f"{mod.NAME}/{check}")
                return run_check(check, mod.CHECKS[check], dict(witness.get("args") or {}))
        raise ValueError(f"Check '{check}' is not registered by any suite")

    def list_suites(self) -> str:
        return json.dumps({name: mod.DESCRIPTION for name, mod in self.suites.items()}, indent=2)

    def list_suite_names(self) -> str:
        return ", ".join(self.suites.keys())
