"""zeroone-lab backend package.

Submodules load lazily so that ``from src.backend import sample`` does not
pull in scipy or the constructor until they are needed.
"""

__version__ = "0.1.0"

import importlib

_EXPORTS = {
    "ProbSeq": ".models",
    "TailRule": ".models",
    "OscillationPlan": ".models",
    "Graph": ".sampler",
    "sample": ".sampler",
    "classify_conditions": ".seq",
    "hereditary_verdicts": ".seq",
    "gen_member": ".gen",
    "stretch": ".gen",
    "resolve_sentence": ".checkers",
    "estimate_prob": ".estimator",
    "verify_plan": ".estimator",
    "build_oscillator": ".constructor",
    "main": ".cli",
}

__all__ = sorted(_EXPORTS)


def __getattr__(name: str):
    """Import the owning submodule on first access."""
    if name in _EXPORTS:
        module = importlib.import_module(_EXPORTS[name], __name__)
        return getattr(module, name)
    raise AttributeError(f"module {__name__} has no attribute {name}")


def __dir__():
    return sorted(list(globals().keys()) + __all__)
