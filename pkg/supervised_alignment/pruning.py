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
Supervised pruning of embedding features.

Features are ranked by how much the alignment with a human similarity
matrix drops when each one is left out. They are then reinserted one at a
time in descending order of importance and the prefix with the highest
alignment is retained.
"""

import csv
import logging
from collections import namedtuple

import numpy as np

from supervised_alignment.errors import (
    DegenerateVectorError,
    DomainError,
    FoldSizeError,
    FormatError,
    PruningFailureError,
    UndefinedCorrelationError,
)
from supervised_alignment.misc import format_cell, parallel_map
from supervised_alignment.simkit import (
    alignment,
    cosine_matrix,
    group_similarity,
    spearman,
)


logger = logging.getLogger(__name__)

DEFAULT_RANDOM_DRAWS = 100


def order_features(scores):
    """
    Order feature indices by descending importance, lower index first on
    ties

    >>> order_features(np.array([0.1, 0.3, 0.1, -0.2]))
    (1, 0, 2, 3)
    """
    scores = np.asarray(scores, dtype=float)
    order = np.lexsort((np.arange(scores.size), -scores))
    return tuple(int(index) for index in order)


class RetainedFeatureSet(object):
    """
    Result of pruning one similarity matrix.

    :ivar ranking:
        every feature index, by descending importance
    :ivar size:
        length of the retained prefix of :attr:`ranking`
    :ivar scores:
        importance D of every feature, indexed by feature
    :ivar cumulative:
        alignment of each prefix of :attr:`ranking` (entry s-1 for prefix
        size s); NaN where the prefix admits no valid similarity matrix
    """

    def __init__(self, ranking, size, scores, cumulative,
                 category_label="", group_label=""):
        ranking = tuple(int(index) for index in ranking)
        scores = np.array(scores, dtype=float)
        cumulative = np.array(cumulative, dtype=float)
        dims = scores.size
        if sorted(ranking) != list(range(dims)):
            raise DomainError(
                "ranking must hold every feature index of [0, {0}) once"
                .format(dims))
        if cumulative.shape != (dims,):
            raise DomainError(
                "expected {0} prefix alignments, got {1}".format(
                    dims, cumulative.size))
        if ranking != order_features(scores):
            raise DomainError("ranking is not ordered by importance")
        if not 1 <= size <= dims:
            raise DomainError(
                "retained size {0} outside [1, {1}]".format(size, dims))
        if np.isnan(cumulative[size - 1]):
            raise DomainError(
                "retained prefix {0} has no alignment".format(size))
        scores.setflags(write=False)
        cumulative.setflags(write=False)
        self._ranking = ranking
        self._size = int(size)
        self._scores = scores
        self._cumulative = cumulative
        self.category_label = category_label
        self.group_label = group_label

    def __repr__(self):
        return ("RetainedFeatureSet(size={0}, dims={1},"
                " achieved_rho={2!r})").format(
                    self._size, self.dims, self.achieved_rho)

    def __len__(self):
        return self._size

    def __eq__(self, other):
        if not isinstance(other, RetainedFeatureSet):
            return NotImplemented
        return (self._ranking == other._ranking
                and self._size == other._size
                and np.array_equal(self._scores, other._scores)
                and np.array_equal(self._cumulative, other._cumulative,
                                   equal_nan=True)
                and self.category_label == other.category_label
                and self.group_label == other.group_label)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    @property
    def ranking(self):
        return self._ranking

    @property
    def size(self):
        return self._size

    @property
    def indices(self):
        """
        Retained feature indices, most important first.
        """
        return self._ranking[:self._size]

    @property
    def scores(self):
        return self._scores

    @property
    def cumulative(self):
        return self._cumulative

    @property
    def dims(self):
        return self._scores.size

    @property
    def achieved_rho(self):
        return float(self._cumulative[self._size - 1])

    @property
    def baseline_rho(self):
        """
        Alignment with every feature (NaN when the full set is degenerate).
        """
        return float(self._cumulative[-1])

    def top(self, n):
        """
        Return the ``n`` most important retained features.
        """
        if not 1 <= n <= self._size:
            raise DomainError(
                "cannot take {0} of {1} retained features".format(
                    n, self._size))
        return self._ranking[:n]

    def write(self, stream):
        """
        Write the ranking as ``rank,feature_index,D,cumulative_rho,retained``
        records, one per feature.
        """
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(
            ("rank", "feature_index", "D", "cumulative_rho", "retained"))
        for rank, feature in enumerate(self._ranking, 1):
            writer.writerow((
                rank, feature, format_cell(self._scores[feature]),
                format_cell(self._cumulative[rank - 1]),
                format_cell(rank <= self._size)))

    @classmethod
    def read(cls, stream, category_label="", group_label=""):
        reader = csv.reader(stream)
        header = next(reader, None)
        if header is None or header[:2] != ["rank", "feature_index"]:
            raise FormatError("not a retained feature record stream", 1)
        ranking = []
        scores = {}
        cumulative = []
        size = 0
        for row in reader:
            feature = int(row[1])
            ranking.append(feature)
            scores[feature] = float(row[2])
            cumulative.append(float(row[3]) if row[3] else np.nan)
            if row[4] == "true":
                size += 1
        return cls(ranking, size,
                   [scores[feature] for feature in range(len(ranking))],
                   cumulative, category_label, group_label)


def _features_without(dims, feature):
    return [index for index in range(dims) if index != feature]


def rank_features(emb, h, jobs=1):
    """
    Importance of every feature: the alignment with all features minus the
    alignment with that feature left out. Positive values mark features
    whose removal hurts.

    :param emb:
        embedding table covering the words of ``h``
    :param h:
        supervising :class:`supervised_alignment.simkit.SimilarityMatrix`
    :param jobs:
        number of threads evaluating the leave-one-out alignments
    :returns:
        array of d importance scores
    :raises DegenerateVectorError:
        when removing a feature leaves a word with a zero vector
    """
    emb = emb.restrict(h.words)
    dims = emb.dims
    if dims < 2:
        raise DomainError(
            "ranking needs at least 2 features, got {0}".format(dims))
    full = alignment(cosine_matrix(emb), h)

    def reduced(feature):
        return alignment(
            cosine_matrix(emb, _features_without(dims, feature)), h)

    return full - np.array(parallel_map(reduced, range(dims), jobs))


def _prefix_alignment(emb, h, features):
    try:
        return alignment(cosine_matrix(emb, features), h)
    except (DegenerateVectorError, UndefinedCorrelationError) as ex:
        logger.debug("prefix of %d feature(s) skipped: %s",
                     len(features), ex)
        return None


def prune(emb, h, jobs=1, category_label="", group_label=""):
    """
    Retain the prefix of the importance ranking that best aligns with
    ``h``.

    Every prefix size is evaluated; prefixes leaving some word with a zero
    vector (or producing constant similarities) are skipped. The earliest
    prefix wins on exact ties.

    :raises PruningFailureError:
        when no prefix yields a valid alignment
    """
    if len(h.words) < 3:
        raise DomainError(
            "pruning needs at least 3 words, got {0}".format(len(h.words)))
    emb = emb.restrict(h.words)
    dims = emb.dims
    if dims == 1:
        scores = np.zeros(1)
    else:
        scores = rank_features(emb, h, jobs)
    ranking = order_features(scores)
    evaluated = parallel_map(
        lambda size: _prefix_alignment(emb, h, ranking[:size]),
        range(1, dims + 1), jobs)
    cumulative = np.full(dims, np.nan)
    best = None
    for size, rho in enumerate(evaluated, 1):
        if rho is None:
            continue
        cumulative[size - 1] = rho
        if best is None or rho > cumulative[best - 1]:
            best = size
    if best is None:
        raise PruningFailureError(
            "no prefix of the {0} ranked features gives a valid"
            " alignment".format(dims))
    skipped = int(np.isnan(cumulative).sum())
    if skipped:
        logger.debug("%d of %d prefix sizes skipped", skipped, dims)
    retained = RetainedFeatureSet(
        ranking, best, scores, cumulative, category_label, group_label)
    logger.info(
        "retained %d of %d features (rho %.4f, all features %.4f)",
        retained.size, dims, retained.achieved_rho, retained.baseline_rho)
    return retained


def prune_dataset(emb, dataset, normalization="zscore", jobs=1):
    """
    Build the group matrix of ``dataset`` and prune against it.
    """
    h = group_similarity(dataset, normalization)
    return prune(emb, h, jobs, dataset.category_label, dataset.group_label)


class RandomBaseline(object):
    """
    Randomly drawn feature subsets and, when scored, their alignments.
    """

    def __init__(self, subsets, rhos=None):
        self.subsets = subsets
        self.rhos = rhos

    @property
    def mean(self):
        """
        Mean alignment over draws with a defined alignment (NaN if none).
        """
        if self.rhos is None:
            return np.nan
        return _nanmean(self.rhos)


def _nanmean(values):
    values = np.asarray(values, dtype=float)
    values = values[~np.isnan(values)]
    if values.size == 0:
        return np.nan
    return float(values.mean())


def random_baseline(d, size, draws, rng_seed, score=None):
    """
    Draw feature subsets matched in size to a retained set.

    Subsets are drawn uniformly without replacement and returned sorted.
    When ``score`` is given it maps a subset to an alignment and the
    result carries the alignments and their mean.

    :param rng_seed:
        integer seed, :class:`numpy.random.SeedSequence` or
        :class:`numpy.random.Generator`
    :raises DomainError:
        when ``size`` is outside [1, d] or ``draws`` is below 1
    """
    if not 1 <= size <= d:
        raise DomainError(
            "random subset size {0} outside [1, {1}]".format(size, d))
    if draws < 1:
        raise DomainError("at least one random draw is needed")
    rng = np.random.default_rng(rng_seed)
    subsets = [tuple(sorted(rng.choice(d, size=size, replace=False).tolist()))
               for _ in range(draws)]
    if score is None:
        return RandomBaseline(subsets)
    return RandomBaseline(
        subsets, np.array([score(subset) for subset in subsets], dtype=float))


FoldRecord = namedtuple(
    "FoldRecord",
    "target baseline_rho retained_rho random_rho retained_size")


class PruneCVReport(object):
    """
    Leave-one-word-out evaluation of pruning for one dataset.

    Each fold holds out one word; the test pairs are the pairs containing
    it.
    """

    def __init__(self, folds, category_label="", group_label=""):
        self.folds = list(folds)
        self.category_label = category_label
        self.group_label = group_label

    def __repr__(self):
        return "PruneCVReport(folds={0}, retained={1!r}, random={2!r})".format(
            len(self.folds), self.mean_retained_rho, self.mean_random_rho)

    @property
    def mean_baseline_rho(self):
        return _nanmean([fold.baseline_rho for fold in self.folds])

    @property
    def mean_retained_rho(self):
        return _nanmean([fold.retained_rho for fold in self.folds])

    @property
    def mean_random_rho(self):
        return _nanmean([fold.random_rho for fold in self.folds])

    @property
    def mean_retained_size(self):
        return float(np.mean([fold.retained_size for fold in self.folds]))

    def write(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(FoldRecord._fields)
        for fold in self.folds:
            writer.writerow([format_cell(value) for value in fold])
        writer.writerow((
            "mean", format_cell(self.mean_baseline_rho),
            format_cell(self.mean_retained_rho),
            format_cell(self.mean_random_rho),
            format_cell(self.mean_retained_size)))


def _test_rho(emb, target, train, human, features):
    try:
        model = cosine_matrix(emb, features).row(target, train)
        return spearman(model, human)
    except (DegenerateVectorError, UndefinedCorrelationError) as ex:
        logger.warning("held-out alignment for %r undefined: %s", target, ex)
        return np.nan


def prune_cv(emb, dataset, rng_seed, draws=DEFAULT_RANDOM_DRAWS, refit=True,
             normalization="zscore", jobs=1):
    """
    Leave-one-word-out cross-validation of pruning.

    In each fold one word is the target. Pruning runs on the matrix over
    the other words; with ``refit`` the group matrix is rebuilt from the
    ratings of training pairs only, otherwise the full-data matrix is
    restricted. The held-out pairs (target against every other word) are
    scored with all features, with the retained set and with ``draws``
    random sets of the same size, against the target's row of the
    full-data group matrix.

    Each fold draws from its own generator spawned from ``rng_seed``, so
    results do not depend on ``jobs``.

    :raises FoldSizeError:
        when the category has fewer than 4 words
    """
    words = dataset.words
    if len(words) < 4:
        raise FoldSizeError(
            "{0} words leave {1} test pair(s) per fold; at least 3 are"
            " needed".format(len(words), len(words) - 1))
    emb = emb.restrict(words)
    full_h = group_similarity(dataset, normalization)
    if not isinstance(rng_seed, np.random.SeedSequence):
        rng_seed = np.random.SeedSequence(rng_seed)
    fold_seeds = rng_seed.spawn(len(words))

    def run_fold(position):
        target = words[position]
        train = tuple(word for word in words if word != target)
        if refit:
            h_train = group_similarity(
                dataset.restrict(train), normalization)
        else:
            h_train = full_h.restrict(train)
        retained = prune(emb.restrict(train), h_train)
        human = full_h.row(target, train)

        def score(features):
            return _test_rho(emb, target, train, human, features)

        random = random_baseline(
            emb.dims, retained.size, draws, fold_seeds[position], score)
        return FoldRecord(
            target, score(None), score(retained.indices), random.mean,
            retained.size)

    folds = parallel_map(run_fold, range(len(words)), jobs)
    report = PruneCVReport(
        folds, dataset.category_label, dataset.group_label)
    logger.info(
        "cross-validated pruning of %s/%s: base %.4f, retained %.4f,"
        " random %.4f", dataset.group_label, dataset.category_label,
        report.mean_baseline_rho, report.mean_retained_rho,
        report.mean_random_rho)
    return report
