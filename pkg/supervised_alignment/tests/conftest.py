"""
pytest collection wiring: expand testscenarios classes into one
collected class per scenario, mirroring testscenarios.generate_scenarios.
"""

import inspect

import pytest
from _pytest.unittest import UnitTestCase
from testscenarios import WithScenarios


def pytest_pycollect_makeitem(collector, name, obj):
    if not (inspect.isclass(obj) and issubclass(obj, WithScenarios)):
        return None
    scenarios = getattr(obj, "scenarios", None)
    if not scenarios:
        return None
    items = []
    for scenario_name, params in scenarios:
        attrs = dict(params)
        attrs["scenarios"] = None
        attrs["__module__"] = obj.__module__
        sub = type("%s(%s)" % (name, scenario_name), (obj,), attrs)
        item = UnitTestCase.from_parent(
            collector, name="%s[%s]" % (name, scenario_name))
        item._obj = sub
        items.append(item)
    return items
