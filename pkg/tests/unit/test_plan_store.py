"""Unit tests for plan persistence and runtime configuration."""

import os
from unittest.mock import patch

import pytest

from src.backend.config import ConstructorConfig, EstimatorConfig
from src.backend.constructor import PlanStore, build_oscillator, load_plan_file
from src.backend.errors import InvalidParamsError
from src.backend.models import ProbSeq, TailRule


@pytest.fixture
def plan():
    return build_oscillator(
        "gen3_4cycles", ProbSeq(tail=TailRule.ones_at(5, 0)), depth=1
    )


class TestPlanStore:
    def test_round_trip(self, tmp_path, plan):
        store = PlanStore(tmp_path / "plans")
        path = store.save_plan(plan, seed=7)
        assert path.name == "gen3_4cycles-7.json"
        assert store.load_plan("gen3_4cycles", 7) == plan

    def test_overwrite_leaves_no_temp_files(self, tmp_path, plan):
        store = PlanStore(tmp_path)
        store.save_plan(plan, seed=1)
        store.save_plan(plan, seed=1)
        assert [p.name for p in tmp_path.iterdir()] == ["gen3_4cycles-1.json"]

    def test_list_plans(self, tmp_path, plan):
        store = PlanStore(tmp_path)
        store.save_plan(plan, seed=3)
        store.save_plan(plan, seed=1)
        (tmp_path / "notes.json").write_text("{}", encoding="utf-8")
        assert store.list_plans() == [("gen3_4cycles", 1), ("gen3_4cycles", 3)]

    def test_missing_plan(self, tmp_path):
        with pytest.raises(InvalidParamsError):
            PlanStore(tmp_path).load_plan("gen1_nice", 0)

    def test_malformed_plan(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"variant": 3}', encoding="utf-8")
        with pytest.raises(InvalidParamsError):
            load_plan_file(path)


class TestConfig:
    def test_constructor_from_env(self):
        with patch.dict(os.environ, {"ZOL_BUDGET": "3", "ZOL_ZETA_MIN": "0.1"}):
            config = ConstructorConfig.from_env()
        assert config.budget == 3
        assert config.zeta_min == 0.1
        assert config.pilot_trials == ConstructorConfig.pilot_trials

    def test_estimator_from_env(self):
        with patch.dict(os.environ, {"ZOL_TRIALS": "500", "ZOL_WORKERS": ""}):
            config = EstimatorConfig.from_env()
        assert config.trials == 500
        assert config.workers == 1

    def test_zeta_schedule(self):
        config = ConstructorConfig()
        assert config.zeta(1) == 0.5
        assert config.zeta(3) == 0.25
        assert config.zeta(100) == 0.05
