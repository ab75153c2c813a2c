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
Comparisons between retained feature sets: size matched Dice overlap,
feature frequency across sets, compressibility and the words that
activate a group of features most.
"""

import csv
import itertools
import zlib

import numpy as np

from supervised_alignment.errors import DomainError
from supervised_alignment.misc import (
    feature_indices,
    format_cell,
    format_value,
    parallel_map,
)


# Raw DEFLATE (an LZ77 family codec) at its strongest setting
COMPRESSION_LEVEL = 9


def _dims_of(features):
    return getattr(features, "dims", None)


def dice(u, v):
    """
    Dice coefficient of two ranked feature sets after size matching.

    The larger set is truncated to its top ranked features so that both
    sets have the size n of the smaller one; the result is
    2 |U & V| / 2n.

    :param u, v:
        :class:`supervised_alignment.pruning.RetainedFeatureSet` or
        sequences of feature indices, most important first

    >>> dice([3, 1, 4, 9], [1, 3])
    1.0
    >>> dice([0, 1], [2, 3])
    0.0
    """
    dims_u, dims_v = _dims_of(u), _dims_of(v)
    if dims_u is not None and dims_v is not None and dims_u != dims_v:
        raise DomainError(
            "feature sets come from {0} and {1} features".format(
                dims_u, dims_v))
    u, v = feature_indices(u), feature_indices(v)
    if not u or not v:
        raise DomainError("Dice coefficient of an empty feature set")
    n = min(len(u), len(v))
    common = set(u[:n]).intersection(v[:n])
    return 2.0 * len(common) / (2.0 * n)


class DiceMatrix(object):
    """
    Symmetric matrix of pairwise Dice coefficients between labelled runs.
    """

    def __init__(self, labels, values):
        self.labels = tuple(labels)
        values = np.array(values, dtype=float)
        values.setflags(write=False)
        self.values = values

    def __repr__(self):
        return "DiceMatrix({0!r})".format(self.labels)

    def write(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("run",) + self.labels)
        for label, row in zip(self.labels, self.values):
            writer.writerow([label] + [format_cell(value) for value in row])


def dice_matrix(sets, labels=None, jobs=1):
    """
    Dice coefficients for every pair of retained sets.

    :param labels:
        run labels; defaults to ``group_category`` of each set
    """
    sets = list(sets)
    if labels is None:
        labels = ["{0}_{1}".format(s.group_label, s.category_label)
                  for s in sets]
    if len(labels) != len(sets):
        raise DomainError("one label is needed per feature set")
    pairs = list(itertools.combinations(range(len(sets)), 2))
    coefficients = parallel_map(
        lambda pair: dice(sets[pair[0]], sets[pair[1]]), pairs, jobs)
    values = np.eye(len(sets))
    for (i, j), value in zip(pairs, coefficients):
        values[i, j] = values[j, i] = value
    return DiceMatrix(labels, values)


def _check_dims(sets, d):
    for features in sets:
        dims = _dims_of(features)
        if dims is not None and dims != d:
            raise DomainError(
                "feature set over {0} features mixed with d={1}".format(
                    dims, d))
        for index in feature_indices(features):
            if not 0 <= index < d:
                raise DomainError(
                    "feature index {0} outside [0, {1})".format(index, d))


def feature_counts(sets, d):
    """
    Number of sets each of the d features appears in.
    """
    sets = list(sets)
    _check_dims(sets, d)
    counts = np.zeros(d, dtype=int)
    for features in sets:
        counts[list(set(feature_indices(features)))] += 1
    return counts


def frequency_histogram(sets, d):
    """
    Histogram of how many sets each feature appears in.

    Entry c of the result is the number of features found in exactly c of
    the sets, for c from 0 to len(sets); the entries sum to d.

    >>> frequency_histogram([[0, 1, 2], [3, 4, 5]], 10).tolist()
    [4, 6, 0]
    """
    sets = list(sets)
    counts = feature_counts(sets, d)
    return np.bincount(counts, minlength=len(sets) + 1)


def write_histogram(histogram, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("appearances", "features"))
    for appearances, features in enumerate(histogram):
        writer.writerow((appearances, int(features)))


def never_retained(sets, d):
    """
    Features that appear in none of the sets, in index order.
    """
    return tuple(int(index)
                 for index in np.flatnonzero(feature_counts(sets, d) == 0))


def canonical_text(matrix):
    """
    Fixed precision text form of a matrix: one line per row, values with
    six significant digits separated by single spaces.
    """
    lines = [" ".join(format_value(value) for value in row)
             for row in np.asarray(matrix)]
    return ("\n".join(lines) + "\n").encode("ascii")


def deflated_size(raw):
    """
    Size of ``raw`` as a bare deflate stream (no zlib header or checksum)
    at :data:`COMPRESSION_LEVEL`.
    """
    compressor = zlib.compressobj(
        COMPRESSION_LEVEL, zlib.DEFLATED, -zlib.MAX_WBITS)
    return len(compressor.compress(raw) + compressor.flush())


def compression_ratio(emb, subset):
    """
    Compressed over raw size of the column-restricted embedding matrix in
    its canonical text form, in (0, 1].

    Deflate can always store a block verbatim, so inputs the codec cannot
    shrink (tiny or random ones) are reported as 1.

    The ratio depends on row order; pass canonically ordered tables.
    """
    features = feature_indices(subset)
    if not features:
        raise DomainError("compression of an empty feature subset")
    raw = canonical_text(emb.columns(features))
    return min(deflated_size(raw) / float(len(raw)), 1.0)


def top_activation_words(emb, features, k):
    """
    The ``k`` words with the highest sum of values over ``features``,
    highest first, ties broken alphabetically.
    """
    features = feature_indices(features)
    if not features:
        raise DomainError("no features to sum over")
    if not 1 <= k <= emb.n:
        raise DomainError(
            "cannot return {0} of {1} words".format(k, emb.n))
    totals = emb.columns(features).sum(axis=1)
    order = sorted(range(emb.n),
                   key=lambda row: (-totals[row], emb.vocab[row]))
    return [emb.vocab[row] for row in order[:k]]
