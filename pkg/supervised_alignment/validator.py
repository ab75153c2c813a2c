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
Validator implementation
"""

import io
import logging
import os

from supervised_alignment.config import RunConfig
from supervised_alignment.corpus_io import read_judgment_sets
from supervised_alignment.errors import (
    AlignmentError,
    ConfigError,
    ValidationError,
)


logger = logging.getLogger(__name__)


class ConfigValidator(object):
    """
    Run configuration validator.

    Checks every setting of a :class:`supervised_alignment.config.RunConfig`,
    that referenced files exist and that every task names data present in
    the judgment tables. Problems are collected, not raised one by one, and
    no heavy computation is done.
    """

    SETTINGS = (
        "embeddings", "judgments", "annotations", "domain_map", "output",
        "seed", "jobs", "tasks", "normalization", "exclude_participants",
        "cv", "refit", "random_draws", "n_components", "max_components",
        "scale", "full_reference", "alpha", "sidedness", "correlation",
        "linkage", "reference_group",
    )

    def __init__(self):
        self._expr_stack = []
        self._problems = []

    def _push(self, expr):
        self._expr_stack.append(expr)

    def _pop(self):
        self._expr_stack.pop()

    def _get_expression(self):
        return "".join(self._expr_stack)

    def _report_error(self, message, suffix=""):
        problem = ConfigError(message, self._get_expression() + suffix)
        logger.debug("configuration problem: %s", problem)
        self._problems.append(problem)

    @classmethod
    def validate(cls, config):
        """
        Validate the run configuration.

        :param config:
            configuration to check
        :type config:
            :class:`supervised_alignment.config.RunConfig`
        :rtype:
            bool
        :returns:
            True on success
        :raises `supervised_alignment.errors.ValidationError`:
            listing every problem found
        """
        problems = cls.problems(config)
        if problems:
            raise ValidationError(problems)
        return True

    @classmethod
    def problems(cls, config):
        """
        Return the list of :class:`ConfigError` found in ``config``.
        """
        if not isinstance(config, RunConfig):
            raise ValueError(
                "config value {0!r} is not a RunConfig object".format(config))
        self = cls()
        self.validate_toplevel(config)
        return self._problems

    def validate_toplevel(self, config):
        self._expr_stack = []
        self._problems = []
        self._push("config")
        settings = self._check_settings(config)
        self._check_paths(settings)
        self._check_seed(settings)
        self._check_tasks(settings)
        self._pop()

    def _check_settings(self, config):
        settings = {}
        for name in self.SETTINGS:
            try:
                settings[name] = getattr(config, name)
            except ConfigError as ex:
                self._problems.append(ex)
        return settings

    def _check_file(self, path, suffix):
        if path is not None and not os.path.isfile(path):
            self._report_error(
                "file {0!r} does not exist".format(path), suffix)

    def _check_paths(self, settings):
        for name in ("embeddings", "annotations", "domain_map"):
            self._check_file(settings.get(name), "." + name)
        self._push(".judgments")
        for index, path in enumerate(settings.get("judgments", ())):
            self._check_file(path, "[{0}]".format(index))
        self._pop()

    def _check_seed(self, settings):
        if settings.get("cv") and "seed" in settings \
                and settings["seed"] is None:
            self._report_error(
                "seed is required when cross-validated pruning is"
                " enabled", ".seed")

    def _available_sets(self, paths):
        available = set()
        for index, path in enumerate(paths):
            try:
                with io.open(path, "rt", encoding="utf-8",
                             newline="") as stream:
                    available.update(read_judgment_sets(stream))
            except (AlignmentError, UnicodeDecodeError) as ex:
                self._report_error(
                    str(ex), ".judgments[{0}]".format(index))
                return
        return available

    def _check_tasks(self, settings):
        tasks = settings.get("tasks")
        if not tasks:
            return
        self._push(".tasks")
        labels = set()
        for index, task in enumerate(tasks):
            if task.label in labels:
                self._report_error(
                    "label {0!r} used by more than one task".format(
                        task.label), "[{0}].label".format(index))
            labels.add(task.label)
        self._pop()
        paths = settings.get("judgments")
        if not paths or not all(os.path.isfile(path) for path in paths):
            return
        available = self._available_sets(paths)
        if available is None:
            return
        groups = set(group for group, _ in available)
        categories = set(category for _, category in available)
        self._push(".tasks")
        for index, task in enumerate(tasks):
            if task.category not in categories:
                self._report_error(
                    "unknown category {0!r}".format(task.category),
                    "[{0}].category".format(index))
            elif task.group not in groups:
                self._report_error(
                    "unknown group {0!r}".format(task.group),
                    "[{0}].group".format(index))
            elif (task.group, task.category) not in available:
                self._report_error(
                    "no judgments for group {0!r} and category {1!r}"
                    .format(task.group, task.category),
                    "[{0}]".format(index))
        self._pop()
        reference = settings.get("reference_group")
        if reference is not None and reference not in groups:
            self._report_error(
                "unknown group {0!r}".format(reference),
                ".stats.reference_group")
