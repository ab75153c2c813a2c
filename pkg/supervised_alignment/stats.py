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
Statistics over probing results: prediction accuracy profiles, paired
tests of prediction errors between two groups, Bonferroni control and
hierarchical clustering of accuracy profiles.
"""

import csv
import logging
from collections import OrderedDict, namedtuple

import numpy as np
import simplejson
from scipy import stats as scipy_stats
from scipy.cluster import hierarchy
from scipy.spatial.distance import squareform

from supervised_alignment.errors import (
    DegenerateTestError,
    DomainError,
    MappingError,
    UndefinedCorrelationError,
)
from supervised_alignment.misc import format_cell
from supervised_alignment.simkit import pearson, spearman


logger = logging.getLogger(__name__)

CORRELATIONS = OrderedDict((("pearson", pearson), ("spearman", spearman)))
SIDEDNESS = ("two-sided", "greater", "less")
LINKAGES = ("average", "complete", "single")
# relative spread under which paired differences count as constant
DEGENERATE_TOLERANCE = 1e-9


def _nanmean(values):
    values = np.asarray(values, dtype=float)
    values = values[~np.isnan(values)]
    if values.size == 0:
        return np.nan
    return float(values.mean())


class AccuracyProfile(object):
    """
    Correlations between predictions and ground truth, per dimension
    (column) and per word (row). Undefined correlations are NaN and are
    left out of every mean.
    """

    def __init__(self, label, dims, per_dim_r, words, per_word_r):
        self.label = label
        self.dims = tuple(dims)
        self.words = tuple(words)
        self.per_dim_r = np.array(per_dim_r, dtype=float)
        self.per_word_r = np.array(per_word_r, dtype=float)
        if self.per_dim_r.shape != (len(self.dims),):
            raise DomainError("one correlation is needed per dimension")
        if self.per_word_r.shape != (len(self.words),):
            raise DomainError("one correlation is needed per word")

    def __repr__(self):
        return "AccuracyProfile({0!r}, mean_dim_r={1!r})".format(
            self.label, self.mean_dim_r)

    @property
    def mean_dim_r(self):
        return _nanmean(self.per_dim_r)

    @property
    def mean_word_r(self):
        return _nanmean(self.per_word_r)

    @property
    def defined(self):
        return not np.isnan(self.per_dim_r).any()

    def domain_means(self, domain_map):
        """
        Average the per-dimension correlations into domains.

        :param domain_map:
            :class:`supervised_alignment.corpus_io.AnnotationTable` or a
            mapping of dimension to domain
        :returns:
            OrderedDict of domain to mean correlation
        """
        domains = getattr(domain_map, "domains", None)
        domain_map = getattr(domain_map, "domain_map", domain_map)
        orphans = [dim for dim in self.dims if dim not in domain_map]
        if orphans:
            raise MappingError(
                "dimension(s) without a domain: {0}".format(
                    ", ".join(orphans)))
        if domains is None:
            domains = []
            for dim in self.dims:
                if domain_map[dim] not in domains:
                    domains.append(domain_map[dim])
        return OrderedDict(
            (domain, _nanmean([r for dim, r in zip(self.dims, self.per_dim_r)
                               if domain_map[dim] == domain]))
            for domain in domains)

    def write(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("dimension", "r"))
        for dim, r in zip(self.dims, self.per_dim_r):
            writer.writerow((dim, format_cell(r)))

    def write_words(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("word", "r"))
        for word, r in zip(self.words, self.per_word_r):
            writer.writerow((word, format_cell(r)))


def _correlation(method):
    try:
        return CORRELATIONS[method]
    except KeyError:
        raise DomainError(
            "unknown correlation {0!r}, expected one of {1}".format(
                method, ", ".join(CORRELATIONS)))


def _safe(correlate, a, b):
    try:
        return correlate(a, b)
    except (UndefinedCorrelationError, DomainError):
        return np.nan


def accuracy_profile(pm, method="pearson"):
    """
    Correlate predictions with ground truth by column and by row.

    :param pm:
        :class:`supervised_alignment.plsr.PredictionMatrix`
    :param method:
        ``'pearson'`` (default) or ``'spearman'``
    """
    correlate = _correlation(method)
    per_dim = [_safe(correlate, pm.values[:, column],
                     pm.ground_truth[:, column])
               for column in range(len(pm.dims))]
    per_word = [_safe(correlate, pm.values[row], pm.ground_truth[row])
                for row in range(len(pm.words))]
    undefined = int(np.isnan(per_dim).sum())
    if undefined:
        logger.warning("%s: %d dimension correlation(s) undefined",
                       pm.label, undefined)
    return AccuracyProfile(pm.label, pm.dims, per_dim, pm.words, per_word)


def write_profiles(profiles, stream, domain_map=None):
    """
    Write one row per profile and one column per dimension (or per domain
    when ``domain_map`` is given).
    """
    profiles = list(profiles)
    writer = csv.writer(stream, lineterminator="\n")
    if domain_map is None:
        columns = profiles[0].dims if profiles else ()
        rows = [profile.per_dim_r for profile in profiles]
    else:
        means = [profile.domain_means(domain_map) for profile in profiles]
        columns = tuple(means[0]) if means else ()
        rows = [list(mean.values()) for mean in means]
    writer.writerow(("run",) + tuple(columns) + ("mean",))
    for profile, row in zip(profiles, rows):
        writer.writerow([profile.label]
                        + [format_cell(value) for value in row]
                        + [format_cell(_nanmean(row))])


def paired_t(differences, sidedness="two-sided"):
    """
    One-sample t statistic of paired differences against zero.

    :returns:
        ``(t, p)``; identical pairs (all differences zero) give
        ``(0.0, 1.0)`` and constant non-zero differences give
        ``(nan, nan)``
    """
    differences = np.asarray(differences, dtype=float)
    n = differences.size
    if n < 2:
        raise DomainError("a paired test needs at least 2 pairs")
    if sidedness not in SIDEDNESS:
        raise DomainError(
            "unknown sidedness {0!r}, expected one of {1}".format(
                sidedness, ", ".join(SIDEDNESS)))
    if not np.any(differences):
        return 0.0, 1.0
    mean = differences.mean()
    spread = differences.std(ddof=1)
    if spread <= DEGENERATE_TOLERANCE * abs(mean):
        return np.nan, np.nan
    t = float(mean / (spread / np.sqrt(n)))
    df = n - 1
    if sidedness == "greater":
        p = scipy_stats.t.sf(t, df)
    elif sidedness == "less":
        p = scipy_stats.t.cdf(t, df)
    else:
        p = 2.0 * scipy_stats.t.sf(abs(t), df)
    return t, float(p)


def bonferroni_threshold(alpha, m):
    """
    Per-test significance threshold

    >>> bonferroni_threshold(0.05, 1)
    0.05
    """
    if m < 1:
        raise DomainError("number of tests must be at least 1")
    return alpha / float(m)


def bonferroni(p_values, alpha=0.05, m=None):
    """
    Flag p-values below alpha / m (m defaults to the number of p-values).
    NaN p-values are never significant.

    >>> bonferroni([0.01, 0.001], 0.05, 14)
    [False, True]
    """
    p_values = list(p_values)
    if m is None:
        m = len(p_values)
    threshold = bonferroni_threshold(alpha, m)
    return [bool(p < threshold) for p in p_values]


DomainTest = namedtuple(
    "DomainTest", "domain t df p significant degenerate")


class DiscrepancyReport(object):
    """
    Paired tests of absolute prediction errors of two runs, per domain.

    A positive t means run B made larger errors, so run A predicted that
    domain more accurately.
    """

    def __init__(self, label_a, label_b, tests, alpha, m,
                 sidedness="two-sided"):
        self.label_a = label_a
        self.label_b = label_b
        self.tests = list(tests)
        self.alpha = alpha
        self.m = m
        self.sidedness = sidedness

    def __repr__(self):
        return "DiscrepancyReport({0!r} vs {1!r}, significant={2})".format(
            self.label_a, self.label_b,
            sum(test.significant for test in self.tests))

    @property
    def threshold(self):
        return bonferroni_threshold(self.alpha, self.m)

    def __getitem__(self, domain):
        for test in self.tests:
            if test.domain == domain:
                return test
        raise KeyError(domain)

    def write(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(DomainTest._fields)
        for test in self.tests:
            writer.writerow([format_cell(value) for value in test])


def discrepancy_test(pm_a, pm_b, alpha=0.05, sidedness="two-sided", m=None,
                     strict=True):
    """
    Compare the absolute errors of two prediction matrices, per domain,
    with paired t-tests over words.

    For each column, e_a(w) = |pred_a(w) - truth(w)| and likewise e_b; the
    test runs on e_b - e_a so positive t favours run A. Significance is
    Bonferroni corrected for ``m`` tests (the number of columns by
    default).

    :raises DomainError:
        when words, columns or ground truth differ
    :raises DegenerateTestError:
        when ``strict`` and some domain has constant non-zero differences;
        the partial report is attached to the error
    """
    if pm_a.words != pm_b.words or pm_a.dims != pm_b.dims:
        raise DomainError(
            "prediction matrices {0!r} and {1!r} have different axes"
            .format(pm_a.label, pm_b.label))
    if not np.array_equal(pm_a.ground_truth, pm_b.ground_truth):
        raise DomainError(
            "prediction matrices {0!r} and {1!r} have different ground"
            " truth".format(pm_a.label, pm_b.label))
    if m is None:
        m = len(pm_a.dims)
    truth = pm_a.ground_truth
    errors_a = np.abs(pm_a.values - truth)
    errors_b = np.abs(pm_b.values - truth)
    df = len(pm_a.words) - 1
    results = [paired_t(errors_b[:, column] - errors_a[:, column], sidedness)
               for column in range(len(pm_a.dims))]
    flags = bonferroni([p for _, p in results], alpha, m)
    tests = [DomainTest(domain, t, df, p, flag, bool(np.isnan(t)))
             for domain, (t, p), flag in zip(pm_a.dims, results, flags)]
    report = DiscrepancyReport(pm_a.label, pm_b.label, tests, alpha, m,
                               sidedness)
    degenerate = [test.domain for test in tests if test.degenerate]
    if degenerate:
        if strict:
            raise DegenerateTestError(degenerate, report)
        logger.warning("%s vs %s: degenerate domain(s) %s", pm_a.label,
                       pm_b.label, ", ".join(degenerate))
    return report


def write_discrepancy_table(reports, stream):
    """
    Write reports side by side: one row per domain, a t column and a
    significance column per report (keyed by the report's mapping key).

    :param reports:
        OrderedDict mapping a column label (e.g. the category) to a
        :class:`DiscrepancyReport`
    """
    writer = csv.writer(stream, lineterminator="\n")
    header = ["domain"]
    for key in reports:
        header.extend(("{0}_t".format(key), "{0}_significant".format(key)))
    writer.writerow(header)
    if not reports:
        return
    domains = [test.domain for test in next(iter(reports.values())).tests]
    for domain in domains:
        row = [domain]
        for report in reports.values():
            test = report[domain]
            row.extend((format_cell(test.t), format_cell(test.significant)))
        writer.writerow(row)


class Dendrogram(object):
    """
    Agglomerative clustering result.

    :ivar labels:
        leaf labels in lexicographic order; leaf i is ``labels[i]``
    :ivar linkage:
        scipy linkage matrix: row s merges nodes ``linkage[s, 0]`` and
        ``linkage[s, 1]`` at height ``linkage[s, 2]``; node ids at or above
        len(labels) refer to earlier merges
    """

    def __init__(self, labels, linkage):
        self.labels = tuple(labels)
        self.linkage = np.asarray(linkage, dtype=float)

    def __repr__(self):
        return "Dendrogram({0})".format(self.to_text())

    @property
    def heights(self):
        return self.linkage[:, 2].tolist()

    def merges(self):
        """
        Return ``(left, right, height, size)`` tuples where left and right
        are leaf labels or nested tuples of earlier merges.
        """
        nodes = list(self.labels)
        merged = []
        for left, right, height, size in self.linkage:
            node = (nodes[int(left)], nodes[int(right)])
            nodes.append(node)
            merged.append(node + (float(height), int(size)))
        return merged

    def leaf_order(self):
        return [self.labels[index]
                for index in hierarchy.leaves_list(self.linkage)]

    def nested(self):
        """
        Nested ``[left, right, height]`` lists down to leaf labels.
        """
        def walk(node):
            if node.is_leaf():
                return self.labels[node.id]
            return [walk(node.left), walk(node.right), float(node.dist)]
        return walk(hierarchy.to_tree(self.linkage))

    def to_text(self):
        return simplejson.dumps(self.nested())

    def write(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("step", "left", "right", "height", "size"))
        for step, (left, right, height, size) in enumerate(self.linkage, 1):
            writer.writerow((step, int(left), int(right),
                             format_cell(float(height)), int(size)))


def cluster_profiles(profiles, method="average"):
    """
    Cluster accuracy profiles by the correlation of their per-dimension
    accuracies.

    Distance is 1 - Pearson r between per_dim_r vectors; profiles are
    ordered by label first so equal distances merge in lexicographic
    label order.

    :raises DomainError:
        with fewer than 2 profiles, mixed dimensions or undefined entries
        (impute or drop them first)
    """
    profiles = sorted(profiles, key=lambda profile: profile.label)
    if len(profiles) < 2:
        raise DomainError("clustering needs at least 2 profiles")
    if method not in LINKAGES:
        raise DomainError(
            "unknown linkage {0!r}, expected one of {1}".format(
                method, ", ".join(LINKAGES)))
    labels = [profile.label for profile in profiles]
    if len(set(labels)) != len(labels):
        raise DomainError("profile labels must be unique")
    dims = profiles[0].dims
    for profile in profiles:
        if profile.dims != dims:
            raise DomainError(
                "profile {0!r} has different dimensions".format(
                    profile.label))
        if not profile.defined:
            raise DomainError(
                "profile {0!r} has undefined correlations; impute or drop"
                " them first".format(profile.label))
    k = len(profiles)
    distances = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            distance = 1.0 - pearson(profiles[i].per_dim_r,
                                     profiles[j].per_dim_r)
            distances[i, j] = distances[j, i] = distance
    linkage = hierarchy.linkage(squareform(distances, checks=False),
                                method=method)
    return Dendrogram(labels, linkage)
