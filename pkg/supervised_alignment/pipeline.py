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
End to end orchestration of a run.

Output layout::

    <output>/
        manifest.json
        tasks/<label>/       per-task similarity, pruning and probing
        reference/<label>/   probing with every embedding feature
        cross/               tables comparing tasks
"""

import csv
import hashlib
import io
import logging
import os
from collections import OrderedDict

import numpy as np
import scipy
import simplejson
import versiontools

from supervised_alignment import __version__
from supervised_alignment.corpus_io import (
    load_annotations,
    load_embeddings,
    load_judgment_sets,
)
from supervised_alignment.errors import StageError
from supervised_alignment.extensions import (
    accuracy_profile_extension,
    prediction_matrix_extension,
    prune_cv_report_extension,
    retained_feature_set_extension,
)
from supervised_alignment.misc import format_cell, parallel_map, task_seed
from supervised_alignment.plsr import condense_domains, loocv_stack
from supervised_alignment.pruning import prune, prune_cv
from supervised_alignment.setanalysis import (
    compression_ratio,
    dice_matrix,
    frequency_histogram,
    never_retained,
    top_activation_words,
    write_histogram,
)
from supervised_alignment.simkit import group_similarity
from supervised_alignment.stats import (
    accuracy_profile,
    cluster_profiles,
    discrepancy_test,
    write_discrepancy_table,
    write_profiles,
)

logger = logging.getLogger(__name__)


STAGES = ("prune", "probe", "stats", "report")

# Stages executed by a full run; "report" only rebuilds tables
RUN_STAGES = ("prune", "probe", "stats")

MANIFEST = "manifest.json"
TASKS_DIR = "tasks"
REFERENCE_DIR = "reference"
CROSS_DIR = "cross"
REFERENCE_LABEL = "all_features"

# Number of words listed per never retained feature
TOP_WORDS = 20


def file_digest(path):
    digest = hashlib.sha256()
    with io.open(path, "rb") as stream:
        for chunk in iter(lambda: stream.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


class Pipeline(object):
    """
    Run the stages of an analysis described by a validated
    :class:`supervised_alignment.config.RunConfig`.

    Each stage stores its artifacts under the output directory and the
    later stages read them back, so ``probe``, ``stats`` and ``report`` can
    run on their own against the output of an earlier run.
    """

    STAGE_METHODS = {
        "prune": "run_pruning",
        "probe": "run_probing",
        "stats": "run_statistics",
        "report": "run_report",
    }

    def __init__(self, config):
        self.config = config
        self.output = config.output
        self.jobs = config.jobs
        self.tasks = config.tasks
        self._datasets = None
        self._embeddings = None
        self._annotations = None

    def __repr__(self):
        return "Pipeline(output={0!r}, tasks={1})".format(
            self.output, [task.label for task in self.tasks])

    # Input data

    def datasets(self):
        if self._datasets is None:
            datasets = load_judgment_sets(self.config.judgments)
            excluded = self.config.exclude_participants
            if excluded:
                logger.info("excluding participant(s) %s",
                            ", ".join(excluded))
                datasets = OrderedDict(
                    (key, dataset.drop_participants(excluded))
                    for key, dataset in datasets.items())
            self._datasets = datasets
        return self._datasets

    def dataset(self, task):
        return self.datasets()[(task.group, task.category)]

    def annotations(self):
        if self._annotations is None and self.config.annotations is not None:
            self._annotations = load_annotations(
                self.config.annotations, self.config.domain_map)
        return self._annotations

    def embeddings(self):
        """
        Embedding table restricted to the words some stage needs.
        """
        if self._embeddings is None:
            words = set()
            for task in self.tasks:
                words.update(self.dataset(task).words)
            annotations = self.annotations()
            if annotations is not None:
                words.update(annotations.words)
            self._embeddings = load_embeddings(
                self.config.embeddings, sorted(words))
            logger.info("loaded %d embeddings with %d features",
                        self._embeddings.n, self._embeddings.dims)
        return self._embeddings

    # Output helpers

    def path(self, *parts):
        return os.path.join(self.output, *parts)

    def _open(self, *parts):
        path = self.path(*parts)
        directory = os.path.dirname(path)
        if not os.path.isdir(directory):
            os.makedirs(directory)
        return io.open(path, "wt", encoding="utf-8", newline="")

    def write_table(self, write, *parts):
        with self._open(*parts) as stream:
            write(stream)

    def write_json(self, doc, *parts):
        with self._open(*parts) as stream:
            stream.write(simplejson.dumps(doc, sort_keys=True, indent=2))
            stream.write("\n")

    def read_json(self, *parts):
        with io.open(self.path(*parts), "rt", encoding="utf-8") as stream:
            return simplejson.load(stream)

    def _stage(self, stage, task, func, *args):
        try:
            return func(*args)
        except StageError:
            raise
        except Exception as ex:
            logger.debug("stage %s failed", stage, exc_info=True)
            raise StageError(stage, task, ex)

    def _inner_jobs(self):
        # Tasks already share the pool when there are several of them
        return 1 if len(self.tasks) > 1 else self.jobs

    # Pruning

    def prune_task(self, task):
        """
        Build the group matrix of one task, prune against it and, when
        enabled, cross-validate the pruning.
        """
        dataset = self.dataset(task)
        emb = self.embeddings()
        jobs = self._inner_jobs()
        h = group_similarity(dataset, self.config.normalization)
        self.write_table(h.write, TASKS_DIR, task.label, "similarity.csv")
        retained = prune(emb, h, jobs, task.category, task.group)
        self.write_table(retained.write, TASKS_DIR, task.label,
                         "retained.csv")
        self.write_json(retained_feature_set_extension.to_json(retained),
                        TASKS_DIR, task.label, "retained.json")
        if self.config.cv:
            report = prune_cv(
                emb, dataset, task_seed(self.config.seed, task.label),
                self.config.random_draws, self.config.refit,
                self.config.normalization, jobs)
            self.write_table(report.write, TASKS_DIR, task.label, "cv.csv")
            self.write_json(prune_cv_report_extension.to_json(report),
                            TASKS_DIR, task.label, "cv.json")
        return retained

    def run_pruning(self):
        self._stage("load", None, self.embeddings)
        parallel_map(
            lambda task: self._stage(
                "prune", task.label, self.prune_task, task),
            self.tasks, self.jobs)
        self._stage("report", None, self.pruning_tables)

    def stored_retained_sets(self):
        return OrderedDict(
            (task.label, retained_feature_set_extension.from_json(
                self.read_json(TASKS_DIR, task.label, "retained.json")))
            for task in self.tasks)

    def stored_cv_reports(self):
        reports = OrderedDict()
        for task in self.tasks:
            parts = (TASKS_DIR, task.label, "cv.json")
            if os.path.isfile(self.path(*parts)):
                reports[task.label] = prune_cv_report_extension.from_json(
                    self.read_json(*parts))
        return reports

    def pruning_tables(self):
        """
        Write the cross-task pruning tables from stored retained sets.
        """
        retained = self.stored_retained_sets()
        reports = self.stored_cv_reports()
        emb = self.embeddings()
        labels = list(retained)
        sets = list(retained.values())

        def write_summary(stream):
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(("run", "group", "category", "baseline_rho",
                             "retained_rho", "retained_size", "dims"))
            for label, features in retained.items():
                writer.writerow((
                    label, features.group_label, features.category_label,
                    format_cell(features.baseline_rho),
                    format_cell(features.achieved_rho), features.size,
                    features.dims))

        def write_cv(stream):
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(("run", "baseline_rho", "retained_rho",
                             "random_rho", "retained_size"))
            for label, report in reports.items():
                writer.writerow((
                    label, format_cell(report.mean_baseline_rho),
                    format_cell(report.mean_retained_rho),
                    format_cell(report.mean_random_rho),
                    format_cell(report.mean_retained_size)))

        def write_compression(stream):
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(("run", "retained_size", "retained_ratio",
                             "all_features_ratio"))
            for task in self.tasks:
                words = emb.restrict(self.dataset(task).words)
                features = retained[task.label]
                writer.writerow((
                    task.label, features.size,
                    format_cell(compression_ratio(words, features)),
                    format_cell(compression_ratio(
                        words, range(emb.dims)))))

        def write_never_retained(stream):
            annotations = self.annotations()
            pool = emb if annotations is None else emb.restrict(
                annotations.words)
            k = min(TOP_WORDS, pool.n)
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(("feature_index", "top_words"))
            for feature in never_retained(sets, emb.dims):
                writer.writerow((feature, " ".join(
                    top_activation_words(pool, [feature], k))))

        self.write_table(write_summary, CROSS_DIR, "pruning.csv")
        if reports:
            self.write_table(write_cv, CROSS_DIR, "pruning_cv.csv")
        self.write_table(dice_matrix(sets, labels, self.jobs).write,
                         CROSS_DIR, "dice.csv")
        self.write_table(
            lambda stream: write_histogram(
                frequency_histogram(sets, emb.dims), stream),
            CROSS_DIR, "histogram.csv")
        self.write_table(write_compression, CROSS_DIR, "compression.csv")
        self.write_table(write_never_retained, CROSS_DIR,
                         "never_retained.csv")

    # Probing

    def probe(self, label, features, directory):
        """
        Stack leave-one-out predictions from ``features``, condense them
        into domains and score them.
        """
        config = self.config
        annotations = self.annotations()
        pm = loocv_stack(
            self.embeddings(), features, annotations, config.n_components,
            config.scale, config.max_components, self._inner_jobs(), label)
        condensed = condense_domains(pm, annotations)
        profile = accuracy_profile(pm, config.correlation)
        self.write_table(pm.write, directory, label, "predictions.csv")
        self.write_table(pm.write_ground_truth, directory, label,
                         "ground_truth.csv")
        self.write_table(condensed.write, directory, label,
                         "predictions_domains.csv")
        self.write_table(condensed.write_ground_truth, directory, label,
                         "ground_truth_domains.csv")
        self.write_table(profile.write, directory, label, "accuracy.csv")
        self.write_table(profile.write_words, directory, label,
                         "accuracy_words.csv")
        self.write_json(prediction_matrix_extension.to_json(pm),
                        directory, label, "predictions.json")
        self.write_json(prediction_matrix_extension.to_json(condensed),
                        directory, label, "predictions_domains.json")
        self.write_json(accuracy_profile_extension.to_json(profile),
                        directory, label, "profile.json")
        return profile

    def run_probing(self):
        self._stage("load", None, self.embeddings)
        retained = self._stage("probe", None, self.stored_retained_sets)
        parallel_map(
            lambda task: self._stage(
                "probe", task.label, self.probe, task.label,
                retained[task.label], TASKS_DIR),
            self.tasks, self.jobs)
        if self.config.full_reference:
            self._stage("probe", REFERENCE_LABEL, self.probe,
                        REFERENCE_LABEL, range(self.embeddings().dims),
                        REFERENCE_DIR)

    # Statistics

    def stored_profiles(self):
        profiles = OrderedDict(
            (task.label, accuracy_profile_extension.from_json(
                self.read_json(TASKS_DIR, task.label, "profile.json")))
            for task in self.tasks)
        parts = (REFERENCE_DIR, REFERENCE_LABEL, "profile.json")
        if self.config.full_reference and os.path.isfile(self.path(*parts)):
            profiles[REFERENCE_LABEL] = accuracy_profile_extension.from_json(
                self.read_json(*parts))
        return profiles

    def stored_condensed(self, task):
        return prediction_matrix_extension.from_json(self.read_json(
            TASKS_DIR, task.label, "predictions_domains.json"))

    def discrepancy_reports(self):
        """
        Compare the groups of every category that has more than one.

        The reference group (the configured one, else the first by name)
        is run A of every comparison of its category.
        """
        config = self.config
        reports = OrderedDict()
        for category in sorted(set(task.category for task in self.tasks)):
            by_group = OrderedDict(sorted(
                (task.group, task) for task in self.tasks
                if task.category == category))
            if len(by_group) < 2:
                logger.info("category %r has a single group; no"
                            " discrepancy test", category)
                continue
            reference = config.reference_group
            if reference not in by_group:
                reference = next(iter(by_group))
            condensed_a = self.stored_condensed(by_group[reference])
            for group, task in by_group.items():
                if group == reference:
                    continue
                key = category if len(by_group) == 2 else "{0}_{1}".format(
                    category, group)
                reports[key] = discrepancy_test(
                    condensed_a, self.stored_condensed(task), config.alpha,
                    config.sidedness, strict=False)
        return reports

    def statistics_tables(self):
        profiles = self.stored_profiles()
        annotations = self.annotations()
        self.write_table(
            lambda stream: write_profiles(profiles.values(), stream),
            CROSS_DIR, "accuracy.csv")
        self.write_table(
            lambda stream: write_profiles(
                profiles.values(), stream, annotations),
            CROSS_DIR, "accuracy_domains.csv")
        reports = self.discrepancy_reports()
        for key, report in reports.items():
            self.write_table(report.write, CROSS_DIR,
                             "discrepancy_{0}.csv".format(key))
        self.write_table(
            lambda stream: write_discrepancy_table(reports, stream),
            CROSS_DIR, "discrepancy.csv")
        clustered = []
        for task in self.tasks:
            profile = profiles[task.label]
            if profile.defined:
                clustered.append(profile)
            else:
                logger.warning("profile %r has undefined correlations and"
                               " is not clustered", task.label)
        if len(clustered) < 2:
            logger.warning("fewer than 2 profiles; no clustering")
            return
        dendrogram = cluster_profiles(clustered, self.config.linkage)
        self.write_table(dendrogram.write, CROSS_DIR, "clustering.csv")
        self.write_json(
            {"labels": list(dendrogram.labels),
             "tree": dendrogram.nested(),
             "leaf_order": dendrogram.leaf_order()},
            CROSS_DIR, "clustering.json")

    def run_statistics(self):
        self._stage("stats", None, self.statistics_tables)

    def run_report(self):
        self._stage("report", None, self.pruning_tables)
        if self.config.annotations is not None:
            self._stage("report", None, self.statistics_tables)

    # Whole runs

    def run(self, stages=RUN_STAGES):
        """
        Run the given stages in order and write the manifest.

        On failure the outputs written so far are kept, the manifest is
        marked FAILED and the :class:`StageError` is raised again.
        """
        completed = []
        try:
            for stage in stages:
                if stage in ("probe", "stats") \
                        and self.config.annotations is None:
                    logger.info("no annotations configured; skipping %s",
                                stage)
                    continue
                logger.info("running stage %s", stage)
                getattr(self, self.STAGE_METHODS[stage])()
                completed.append(stage)
        except StageError as ex:
            logger.error("%s", ex)
            self.write_manifest("FAILED", completed, ex)
            raise
        return self.write_manifest("OK", completed)

    def output_checksums(self):
        checksums = OrderedDict()
        for root, dirs, files in os.walk(self.output):
            dirs.sort()
            for name in sorted(files):
                path = os.path.join(root, name)
                relative = os.path.relpath(path, self.output).replace(
                    os.sep, "/")
                if relative != MANIFEST:
                    checksums[relative] = file_digest(path)
        return checksums

    def write_manifest(self, status, stages, failure=None):
        """
        Record the run in ``manifest.json``: status, configuration hash,
        seed, package versions and the SHA-256 of every output file.
        """
        manifest = OrderedDict((
            ("status", status),
            ("stages", list(stages)),
            ("config_sha256", self.config.digest()),
            ("seed", self.config.seed),
            ("versions", OrderedDict((
                ("supervised_alignment",
                 versiontools.format_version(__version__)),
                ("numpy", np.__version__),
                ("scipy", scipy.__version__),
                ("simplejson", simplejson.__version__),
            ))),
            ("outputs", self.output_checksums()),
        ))
        if failure is not None:
            manifest["failure"] = OrderedDict((
                ("stage", failure.stage),
                ("task", failure.task),
                ("error", type(failure.cause).__name__),
                ("cause", str(failure.cause)),
            ))
        self.write_json(manifest, MANIFEST)
        return manifest


def run(config, stages=RUN_STAGES):
    """
    Run ``stages`` for a validated configuration and return the manifest.
    """
    return Pipeline(config).run(stages)
