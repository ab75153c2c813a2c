# Copyright (C) 2026 The supervised-alignment developers
#
# This file is part of supervised-alignment.
#
# supervised-alignment is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License version 3
# as published by the Free Software Foundation
#
# supervised-alignment is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with supervised-alignment.  If not, see <http://www.gnu.org/licenses/>.

"""
Helper module to work with the JSON run configuration
"""

import copy
import hashlib
import io
import os
from collections import namedtuple

import simplejson

from supervised_alignment.errors import ConfigError
from supervised_alignment.misc import NUMERIC_TYPES
from supervised_alignment.simkit import NORMALIZATIONS
from supervised_alignment.stats import CORRELATIONS, LINKAGES, SIDEDNESS


Task = namedtuple("Task", "group category label")


def _is_int(value):
    return isinstance(value, int) and value is not True and value is not False


def _is_number(value):
    return (isinstance(value, NUMERIC_TYPES)
            and value is not True and value is not False)


class RunConfig(object):
    """
    Run configuration object.

    Wraps the decoded JSON document. Each setting is exposed as a property
    that checks its value and raises
    :class:`supervised_alignment.errors.ConfigError` naming the offending
    expression.

    .. note::
        Relative paths are resolved against ``base_dir``, the directory of
        the configuration file when loaded with :meth:`load`.
    """

    UNHASHED = ("output", "jobs")

    def __init__(self, json_obj, base_dir="."):
        if not isinstance(json_obj, dict):
            raise ConfigError("Run configuration must be a JSON object")
        self._config = json_obj
        self.base_dir = base_dir

    def __repr__(self):
        return "RunConfig({0!r})".format(self._config)

    @classmethod
    def loads(cls, text, base_dir="."):
        return cls(simplejson.loads(text), base_dir)

    @classmethod
    def load(cls, path):
        with io.open(path, "rt", encoding="utf-8") as stream:
            text = stream.read()
        return cls.loads(text, os.path.dirname(os.path.abspath(path)))

    def override(self, seed=None, jobs=None, output=None):
        """
        Return a copy with command line overrides applied.
        """
        json_obj = copy.deepcopy(self._config)
        if seed is not None:
            json_obj["seed"] = seed
        if jobs is not None:
            json_obj["jobs"] = jobs
        if output is not None:
            json_obj["output"] = os.path.abspath(output)
        return RunConfig(json_obj, self.base_dir)

    def digest(self):
        """
        SHA-256 of the canonical JSON form of the configuration.

        The output directory and the worker count do not change results
        and are left out.
        """
        relevant = dict((key, value) for key, value in self._config.items()
                        if key not in self.UNHASHED)
        canonical = simplejson.dumps(
            relevant, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def _section(self, name):
        value = self._config.get(name, {})
        if not isinstance(value, dict):
            raise ConfigError(
                "{0} value {1!r} is not an object".format(name, value),
                "config." + name)
        return value

    def _get(self, section, key, default):
        if section is None:
            return self._config.get(key, default), "config." + key
        return (self._section(section).get(key, default),
                "config.{0}.{1}".format(section, key))

    def _resolve(self, path):
        return os.path.normpath(os.path.join(self.base_dir, path))

    def _path(self, key, required):
        value, expr = self._get(None, key, None)
        if value is None:
            if required:
                raise ConfigError("{0} is required".format(key), expr)
            return
        if not isinstance(value, str) or not value:
            raise ConfigError(
                "{0} value {1!r} is not a path".format(key, value), expr)
        return self._resolve(value)

    def _boolean(self, section, key, default):
        value, expr = self._get(section, key, default)
        if value is not True and value is not False:
            raise ConfigError(
                "{0} value {1!r} is not a boolean".format(key, value), expr)
        return value

    def _choice(self, section, key, default, choices):
        value, expr = self._get(section, key, default)
        if value not in choices:
            raise ConfigError(
                "{0} value {1!r} is not one of {2}".format(
                    key, value, ", ".join(choices)), expr)
        return value

    def _positive_int(self, section, key, default):
        value, expr = self._get(section, key, default)
        if not _is_int(value):
            raise ConfigError(
                "{0} value {1!r} is not an integer".format(key, value), expr)
        if value < 1:
            raise ConfigError(
                "{0} value {1!r} must be at least 1".format(key, value), expr)
        return value

    @property
    def embeddings(self):
        return self._path("embeddings", True)

    @property
    def judgments(self):
        """
        List of judgment table paths (a single path is accepted too).
        """
        value = self._config.get("judgments")
        if value is None:
            raise ConfigError("judgments is required", "config.judgments")
        if isinstance(value, str):
            value = [value]
        if not isinstance(value, list) or not value:
            raise ConfigError(
                "judgments value {0!r} is neither a path nor a non-empty"
                " list of paths".format(value), "config.judgments")
        for index, path in enumerate(value):
            if not isinstance(path, str) or not path:
                raise ConfigError(
                    "judgments item {0!r} is not a path".format(path),
                    "config.judgments[{0}]".format(index))
        return [self._resolve(path) for path in value]

    @property
    def annotations(self):
        return self._path("annotations", False)

    @property
    def domain_map(self):
        path = self._path("domain_map", False)
        if path is None and self.annotations is not None:
            raise ConfigError(
                "domain_map is required with annotations",
                "config.domain_map")
        return path

    @property
    def output(self):
        value = self._config.get("output", "output")
        if not isinstance(value, str) or not value:
            raise ConfigError(
                "output value {0!r} is not a path".format(value),
                "config.output")
        return self._resolve(value)

    @property
    def seed(self):
        value = self._config.get("seed")
        if value is None:
            return
        if not _is_int(value) or value < 0:
            raise ConfigError(
                "seed value {0!r} is not a non-negative integer".format(
                    value), "config.seed")
        return value

    @property
    def jobs(self):
        return self._positive_int(None, "jobs", 1)

    @property
    def tasks(self):
        """
        List of :class:`Task`; the label defaults to ``group_category``.
        """
        value = self._config.get("tasks")
        if not isinstance(value, list) or not value:
            raise ConfigError(
                "tasks value {0!r} is not a non-empty list".format(value),
                "config.tasks")
        tasks = []
        for index, item in enumerate(value):
            expr = "config.tasks[{0}]".format(index)
            if not isinstance(item, dict):
                raise ConfigError(
                    "task {0!r} is not an object".format(item), expr)
            for key in ("group", "category"):
                if not isinstance(item.get(key), str) or not item[key]:
                    raise ConfigError(
                        "{0} value {1!r} is not a name".format(
                            key, item.get(key)),
                        "{0}.{1}".format(expr, key))
            label = item.get(
                "label", "{0}_{1}".format(item["group"], item["category"]))
            if not isinstance(label, str) or not label or "/" in label:
                raise ConfigError(
                    "label value {0!r} is not a usable name".format(label),
                    expr + ".label")
            tasks.append(Task(item["group"], item["category"], label))
        return tasks

    @property
    def normalization(self):
        return self._choice(
            "similarity", "normalization", "zscore", NORMALIZATIONS)

    @property
    def exclude_participants(self):
        value, expr = self._get("similarity", "exclude_participants", [])
        if (not isinstance(value, list)
                or not all(isinstance(item, str) for item in value)):
            raise ConfigError(
                "exclude_participants value {0!r} is not a list of"
                " participant ids".format(value), expr)
        return value

    @property
    def cv(self):
        return self._boolean("pruning", "cv", True)

    @property
    def refit(self):
        return self._boolean("pruning", "refit", True)

    @property
    def random_draws(self):
        return self._positive_int("pruning", "random_draws", 100)

    @property
    def n_components(self):
        value, _ = self._get("plsr", "n_components", None)
        if value is None:
            return
        return self._positive_int("plsr", "n_components", None)

    @property
    def max_components(self):
        return self._positive_int("plsr", "max_components", 20)

    @property
    def scale(self):
        return self._boolean("plsr", "scale", True)

    @property
    def full_reference(self):
        return self._boolean("plsr", "full_reference", True)

    @property
    def alpha(self):
        value, expr = self._get("stats", "alpha", 0.05)
        if not _is_number(value):
            raise ConfigError(
                "alpha value {0!r} is not a number".format(value), expr)
        if not 0 < value < 1:
            raise ConfigError(
                "alpha value {0!r} is outside (0, 1)".format(value), expr)
        return float(value)

    @property
    def sidedness(self):
        return self._choice("stats", "sidedness", "two-sided", SIDEDNESS)

    @property
    def correlation(self):
        return self._choice(
            "stats", "correlation", "pearson", tuple(CORRELATIONS))

    @property
    def linkage(self):
        return self._choice("stats", "linkage", "average", LINKAGES)

    @property
    def reference_group(self):
        value, expr = self._get("stats", "reference_group", None)
        if value is not None and (not isinstance(value, str) or not value):
            raise ConfigError(
                "reference_group value {0!r} is not a group name".format(
                    value), expr)
        return value

    @property
    def stochastic(self):
        """
        True when some enabled step draws random numbers.
        """
        return self.cv
