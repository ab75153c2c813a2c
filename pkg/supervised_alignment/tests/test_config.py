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
Unit tests for the run configuration
"""

import os

from testscenarios import TestWithScenarios
from testtools import TestCase

from supervised_alignment.config import RunConfig, Task
from supervised_alignment.errors import ConfigError


MINIMAL = {
    "embeddings": "vectors.txt",
    "judgments": "ratings.csv",
    "seed": 1,
    "tasks": [{"group": "blind", "category": "light"}],
}


def config_with(**changes):
    json_obj = dict(MINIMAL)
    json_obj.update(changes)
    return RunConfig(json_obj, "/data/run")


class RunConfigTests(TestCase):

    def test_defaults(self):
        config = config_with()
        self.assertEqual(config.jobs, 1)
        self.assertEqual(config.normalization, "zscore")
        self.assertEqual(config.exclude_participants, [])
        self.assertTrue(config.cv)
        self.assertTrue(config.refit)
        self.assertEqual(config.random_draws, 100)
        self.assertEqual(config.n_components, None)
        self.assertEqual(config.max_components, 20)
        self.assertTrue(config.scale)
        self.assertTrue(config.full_reference)
        self.assertEqual(config.alpha, 0.05)
        self.assertEqual(config.sidedness, "two-sided")
        self.assertEqual(config.correlation, "pearson")
        self.assertEqual(config.linkage, "average")
        self.assertEqual(config.reference_group, None)
        self.assertEqual(config.annotations, None)
        self.assertEqual(config.domain_map, None)
        self.assertTrue(config.stochastic)

    def test_paths_are_relative_to_the_config(self):
        config = config_with(judgments=["a.csv", "/abs/b.csv"])
        self.assertEqual(config.embeddings,
                         os.path.join("/data/run", "vectors.txt"))
        self.assertEqual(config.judgments,
                         [os.path.join("/data/run", "a.csv"), "/abs/b.csv"])
        self.assertEqual(config.output, os.path.join("/data/run", "output"))

    def test_task_label_defaults_to_group_and_category(self):
        config = config_with(tasks=[
            {"group": "blind", "category": "light"},
            {"group": "sighted", "category": "light", "label": "S_light"},
        ])
        self.assertEqual(config.tasks, [
            Task("blind", "light", "blind_light"),
            Task("sighted", "light", "S_light"),
        ])

    def test_sections(self):
        config = config_with(
            similarity={"normalization": "rank",
                        "exclude_participants": ["p9"]},
            pruning={"cv": False, "random_draws": 5},
            plsr={"n_components": 3, "scale": False},
            stats={"alpha": 0.01, "sidedness": "greater",
                   "correlation": "spearman", "linkage": "complete"})
        self.assertEqual(config.normalization, "rank")
        self.assertEqual(config.exclude_participants, ["p9"])
        self.assertFalse(config.cv)
        self.assertFalse(config.stochastic)
        self.assertEqual(config.random_draws, 5)
        self.assertEqual(config.n_components, 3)
        self.assertFalse(config.scale)
        self.assertEqual(config.alpha, 0.01)
        self.assertEqual(config.sidedness, "greater")
        self.assertEqual(config.correlation, "spearman")
        self.assertEqual(config.linkage, "complete")

    def test_loads(self):
        config = RunConfig.loads('{"seed": 4}', "/tmp")
        self.assertEqual(config.seed, 4)
        self.assertEqual(config.base_dir, "/tmp")

    def test_not_an_object(self):
        self.assertRaises(ConfigError, RunConfig, [])

    def test_override(self):
        config = config_with().override(seed=9, jobs=4, output="/out")
        self.assertEqual(config.seed, 9)
        self.assertEqual(config.jobs, 4)
        self.assertEqual(config.output, "/out")

    def test_digest_ignores_location_and_workers(self):
        config = config_with()
        self.assertEqual(
            config.digest(), config.override(jobs=8, output="/x").digest())
        self.assertNotEqual(config.digest(), config.override(seed=2).digest())


class RunConfigFailureTests(TestWithScenarios, TestCase):

    scenarios = [
        ("alpha_out_of_range", {
            'changes': {"stats": {"alpha": 1.5}},
            'setting': 'alpha',
            'config_expr': 'config.stats.alpha',
        }),
        ("alpha_not_a_number", {
            'changes': {"stats": {"alpha": "small"}},
            'setting': 'alpha',
            'config_expr': 'config.stats.alpha',
        }),
        ("unknown_sidedness", {
            'changes': {"stats": {"sidedness": "upwards"}},
            'setting': 'sidedness',
            'config_expr': 'config.stats.sidedness',
        }),
        ("section_not_an_object", {
            'changes': {"stats": 3},
            'setting': 'linkage',
            'config_expr': 'config.stats',
        }),
        ("zero_jobs", {
            'changes': {"jobs": 0},
            'setting': 'jobs',
            'config_expr': 'config.jobs',
        }),
        ("boolean_jobs", {
            'changes': {"jobs": True},
            'setting': 'jobs',
            'config_expr': 'config.jobs',
        }),
        ("negative_seed", {
            'changes': {"seed": -1},
            'setting': 'seed',
            'config_expr': 'config.seed',
        }),
        ("missing_embeddings", {
            'changes': {"embeddings": None},
            'setting': 'embeddings',
            'config_expr': 'config.embeddings',
        }),
        ("empty_judgments", {
            'changes': {"judgments": []},
            'setting': 'judgments',
            'config_expr': 'config.judgments',
        }),
        ("judgment_path_not_a_string", {
            'changes': {"judgments": ["a.csv", 5]},
            'setting': 'judgments',
            'config_expr': 'config.judgments[1]',
        }),
        ("annotations_without_domain_map", {
            'changes': {"annotations": "binder.csv"},
            'setting': 'domain_map',
            'config_expr': 'config.domain_map',
        }),
        ("tasks_missing", {
            'changes': {"tasks": []},
            'setting': 'tasks',
            'config_expr': 'config.tasks',
        }),
        ("task_without_category", {
            'changes': {"tasks": [{"group": "blind"}]},
            'setting': 'tasks',
            'config_expr': 'config.tasks[0].category',
        }),
        ("task_label_with_slash", {
            'changes': {"tasks": [
                {"group": "a", "category": "b", "label": "x/y"}]},
            'setting': 'tasks',
            'config_expr': 'config.tasks[0].label',
        }),
        ("scale_not_boolean", {
            'changes': {"plsr": {"scale": "yes"}},
            'setting': 'scale',
            'config_expr': 'config.plsr.scale',
        }),
        ("zero_components", {
            'changes': {"plsr": {"n_components": 0}},
            'setting': 'n_components',
            'config_expr': 'config.plsr.n_components',
        }),
        ("unknown_normalization", {
            'changes': {"similarity": {"normalization": "whiten"}},
            'setting': 'normalization',
            'config_expr': 'config.similarity.normalization',
        }),
        ("excluded_not_a_list", {
            'changes': {"similarity": {"exclude_participants": "p1"}},
            'setting': 'exclude_participants',
            'config_expr': 'config.similarity.exclude_participants',
        }),
    ]

    def test_config_expr(self):
        config = config_with(**self.changes)
        ex = self.assertRaises(ConfigError, getattr, config, self.setting)
        self.assertEqual(ex.config_expr, self.config_expr)
