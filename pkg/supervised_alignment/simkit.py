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
Similarity matrices: cosine similarity over embeddings, group matrices of
normalized human judgments and rank alignment between the two.
"""

import csv
import logging

import numpy as np
from scipy.stats import pearsonr, rankdata

from supervised_alignment.corpus_io import pair_key
from supervised_alignment.errors import (
    AlignmentDomainError,
    DegenerateParticipantError,
    DegenerateVectorError,
    DomainError,
    FormatError,
    ShapeError,
    UndefinedCorrelationError,
    UnratedPairError,
)
from supervised_alignment.misc import format_cell, upper_indices


logger = logging.getLogger(__name__)

NORMALIZATIONS = ("zscore", "zscore_sample", "minmax", "rank")


class SimilarityMatrix(object):
    """
    Symmetric word by word similarity matrix.

    :ivar words:
        tuple of k words labelling rows and columns
    :ivar values:
        read-only k by k symmetric array
    :ivar upper:
        strict upper triangle flattened row-major, k(k-1)/2 values
    """

    def __init__(self, words, values):
        words = tuple(words)
        values = np.array(values, dtype=float)
        k = len(words)
        if values.shape != (k, k):
            raise ShapeError(
                "similarity values have shape {0}, expected {1}".format(
                    values.shape, (k, k)))
        if len(set(words)) != k:
            raise DomainError("similarity matrix words are not unique")
        if not np.array_equal(values, values.T):
            raise DomainError("similarity matrix is not symmetric")
        values.setflags(write=False)
        self._words = words
        self._values = values
        upper = values[upper_indices(k)]
        upper.setflags(write=False)
        self._upper = upper

    def __repr__(self):
        return "SimilarityMatrix(k={0})".format(len(self._words))

    def __eq__(self, other):
        if not isinstance(other, SimilarityMatrix):
            return NotImplemented
        return (self._words == other._words
                and np.array_equal(self._values, other._values))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    @property
    def words(self):
        return self._words

    @property
    def values(self):
        return self._values

    @property
    def upper(self):
        return self._upper

    @property
    def k(self):
        return len(self._words)

    def restrict(self, words):
        """
        Return the sub-matrix over ``words`` (in the given order).
        """
        position = dict((word, index)
                        for index, word in enumerate(self._words))
        missing = [word for word in words if word not in position]
        if missing:
            raise AlignmentDomainError(
                "word(s) not in similarity matrix: {0}".format(
                    ", ".join(missing)))
        rows = [position[word] for word in words]
        return SimilarityMatrix(words, self._values[np.ix_(rows, rows)])

    def row(self, word, others):
        """
        Return the similarities between ``word`` and each of ``others``.
        """
        position = dict((w, index) for index, w in enumerate(self._words))
        return self._values[position[word], [position[w] for w in others]]

    def write(self, stream):
        """
        Write a square delimited table with word headers.
        """
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("word",) + self._words)
        for word, row in zip(self._words, self._values):
            writer.writerow([word] + [format_cell(value) for value in row])

    @classmethod
    def read(cls, stream):
        reader = csv.reader(stream)
        header = next(reader, None)
        if not header or header[0] != "word":
            raise FormatError("similarity table must start with 'word'", 1)
        words = tuple(header[1:])
        rows = []
        for index, row in enumerate(reader):
            if row[0] != words[index]:
                raise FormatError(
                    "row label {0!r} does not match column {1!r}".format(
                        row[0], words[index]), reader.line_num)
            if not all(row[1:]):
                raise FormatError(
                    "row {0!r} has an empty cell".format(row[0]),
                    reader.line_num)
            rows.append([float(cell) for cell in row[1:]])
        return cls(words, rows)


def cosine_matrix(emb, feature_subset=None):
    """
    Pairwise cosine similarity of the rows of an embedding table.

    :param emb:
        :class:`supervised_alignment.corpus_io.EmbeddingTable`
    :param feature_subset:
        optional collection of column indices; the cosine is computed on
        the restricted vectors
    :raises DegenerateVectorError:
        when a restricted row has zero norm

    >>> from supervised_alignment.corpus_io import EmbeddingTable
    >>> sim = cosine_matrix(EmbeddingTable(["a", "b"], [[2, 0], [1, 0]]))
    >>> float(sim.values[0, 1])
    1.0
    """
    matrix = emb.columns(feature_subset)
    norms = np.sqrt(np.einsum("ij,ij->i", matrix, matrix))
    zero = np.flatnonzero(norms == 0)
    if zero.size:
        raise DegenerateVectorError(emb.vocab[zero[0]])
    unit = matrix / norms[:, None]
    values = unit.dot(unit.T)
    values = np.clip((values + values.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(values, 1.0)
    return SimilarityMatrix(emb.vocab, values)


def _normalize(ratings, normalization, participant):
    ratings = np.asarray(ratings, dtype=float)
    if ratings.size < 2 or np.all(ratings == ratings[0]):
        raise DegenerateParticipantError(participant)
    if normalization == "zscore":
        return (ratings - ratings.mean()) / ratings.std()
    if normalization == "zscore_sample":
        return (ratings - ratings.mean()) / ratings.std(ddof=1)
    if normalization == "minmax":
        low, high = ratings.min(), ratings.max()
        return (ratings - low) / (high - low)
    if normalization == "rank":
        return rankdata(ratings) / float(ratings.size)
    raise DomainError(
        "unknown normalization {0!r}, expected one of {1}".format(
            normalization, ", ".join(NORMALIZATIONS)))


def group_similarity(dataset, normalization="zscore"):
    """
    Average within-participant normalized ratings into a group matrix.

    Each participant's ratings are normalized over that participant's
    available pairs (z-score with the population standard deviation by
    default); the group value of a pair is the mean over the participants
    who rated it. The diagonal is 0 and never used.

    :raises DegenerateParticipantError:
        when a participant gave constant ratings
    :raises UnratedPairError:
        when no participant rated some pair of category words
    """
    words = dataset.words
    position = dict((word, index) for index, word in enumerate(words))
    k = len(words)
    totals = np.zeros((k, k))
    counts = np.zeros((k, k), dtype=int)
    for participant in dataset.participants:
        given = dataset.ratings(participant)
        keys = list(given)
        scores = _normalize(
            [given[key] for key in keys], normalization, participant)
        for (word1, word2), score in zip(keys, scores):
            i, j = position[word1], position[word2]
            totals[i, j] += score
            totals[j, i] += score
            counts[i, j] += 1
            counts[j, i] += 1
    rows, cols = upper_indices(k)
    unrated = [pair_key(words[i], words[j])
               for i, j in zip(rows, cols) if counts[i, j] == 0]
    if unrated:
        raise UnratedPairError(
            "{0} pair(s) rated by nobody, e.g. {1!r}".format(
                len(unrated), unrated[0]))
    values = np.zeros((k, k))
    rated = counts > 0
    values[rated] = totals[rated] / counts[rated]
    return SimilarityMatrix(words, values)


def pearson(a, b):
    """
    Pearson correlation of two vectors.

    >>> round(pearson([1, 2, 3], [2, 4, 7]), 6)
    0.993399

    :raises UndefinedCorrelationError:
        when either vector is constant
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError(
            "correlated vectors have shapes {0} and {1}".format(
                a.shape, b.shape))
    if a.size < 2:
        raise DomainError(
            "correlation needs at least 2 values, got {0}".format(a.size))
    # Exact test: centering leaves rounding residue on constant floats
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise UndefinedCorrelationError(
            "correlation with a constant vector is undefined")
    return float(np.clip(pearsonr(a, b)[0], -1.0, 1.0))


def spearman(a, b):
    """
    Spearman rank correlation with average ranks for ties.

    >>> spearman([1, 2, 3], [3, 2, 1])
    -1.0
    >>> round(spearman([1, 2, 2, 4], [1, 3, 2, 4]), 12)
    0.948683298051

    :raises UndefinedCorrelationError:
        when either vector is constant
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError(
            "correlated vectors have shapes {0} and {1}".format(
                a.shape, b.shape))
    if a.size < 3:
        raise DomainError(
            "rank correlation needs at least 3 values, got {0}".format(
                a.size))
    return pearson(rankdata(a), rankdata(b))


def alignment(z, h):
    """
    Rank alignment of two similarity matrices over the same words: the
    Spearman correlation of their upper triangles.

    :raises AlignmentDomainError:
        when the word lists differ (in content or order)
    """
    if z.words != h.words:
        raise AlignmentDomainError(
            "similarity matrices are defined over different words")
    return spearman(z.upper, h.upper)
