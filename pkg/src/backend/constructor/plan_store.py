"""JSON storage for oscillation plans, one file per plan."""

import logging
import os
import tempfile
from pathlib import Path

from pydantic import ValidationError

from ..errors import InvalidParamsError
from ..models import OscillationPlan

logger = logging.getLogger(__name__)


class PlanStore:
    """Saves plans as ``<variant>-<seed>.json`` under a directory."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path_for(self, variant: str, seed: int) -> Path:
        return self.directory / f"{variant}-{seed}.json"

    def save_plan(self, plan: OscillationPlan, seed: int) -> Path:
        """Write atomically: temp file in the same directory, then replace."""
        target = self.path_for(plan.variant, seed)
        fd, tmp = tempfile.mkstemp(
            dir=self.directory, prefix=f".{target.stem}-", suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(plan.model_dump_json(indent=2))
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        logger.info(f"Saved plan to {target}")
        return target

    def load_plan(self, variant: str, seed: int) -> OscillationPlan:
        return load_plan_file(self.path_for(variant, seed))

    def list_plans(self) -> list[tuple[str, int]]:
        """(variant, seed) pairs of the stored plans, sorted."""
        found = []
        for path in self.directory.glob("*.json"):
            variant, _, seed = path.stem.rpartition("-")
            if variant and seed.isdigit():
                found.append((variant, int(seed)))
        return sorted(found)


def load_plan_file(path: str | Path) -> OscillationPlan:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise InvalidParamsError(f"no plan at {path}") from exc
    try:
        return OscillationPlan.model_validate_json(text)
    except ValidationError as exc:
        raise InvalidParamsError(f"malformed plan {path}: {exc}") from exc
