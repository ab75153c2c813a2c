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
Readers and writers for embedding files, similarity judgments and semantic
annotations.

Every table built here is immutable after construction: numpy arrays are
marked read-only and word lists are tuples, so tables can be shared between
threads.
"""

import csv
import io
import logging
import math
from collections import OrderedDict

import numpy as np

from supervised_alignment.errors import (
    DomainError,
    DuplicationError,
    FormatError,
    MappingError,
    MissingWordError,
    RangeError,
    SelfPairError,
    ShapeError,
)
from supervised_alignment.misc import format_value


logger = logging.getLogger(__name__)

MIN_RATING = 1
MAX_RATING = 7


def _frozen(values):
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


def _index_words(words, what):
    index = {}
    for position, word in enumerate(words):
        if word in index:
            raise DuplicationError(
                "{0} {1!r} appears more than once".format(what, word))
        index[word] = position
    return index


class EmbeddingTable(object):
    """
    Vocabulary indexed matrix of word vectors.

    :ivar vocab:
        tuple of n unique lowercase tokens
    :ivar values:
        read-only n by d array of finite floats
    """

    def __init__(self, vocab, values):
        vocab = tuple(vocab)
        values = _frozen(values)
        if values.ndim != 2:
            raise ShapeError(
                "embedding values must be a matrix, got {0} dimension(s)"
                .format(values.ndim))
        if values.shape[0] != len(vocab):
            raise ShapeError(
                "{0} tokens but {1} vectors".format(
                    len(vocab), values.shape[0]))
        if len(vocab) < 2 or values.shape[1] < 1:
            raise DomainError(
                "an embedding table needs at least 2 words and 1 feature,"
                " got {0}x{1}".format(*values.shape))
        if not np.all(np.isfinite(values)):
            raise FormatError("embedding contains non-finite values")
        self._index = _index_words(vocab, "token")
        self._vocab = vocab
        self._values = values

    def __repr__(self):
        return "EmbeddingTable(n={0}, dims={1})".format(self.n, self.dims)

    def __len__(self):
        return len(self._vocab)

    def __contains__(self, word):
        return word in self._index

    def __eq__(self, other):
        if not isinstance(other, EmbeddingTable):
            return NotImplemented
        return (self._vocab == other._vocab
                and np.array_equal(self._values, other._values))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    @property
    def vocab(self):
        return self._vocab

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return self._values.shape[0]

    @property
    def dims(self):
        return self._values.shape[1]

    def index(self, word):
        """
        Return the row of ``word``.

        :raises MissingWordError:
            when the word is not in the vocabulary
        """
        try:
            return self._index[word]
        except KeyError:
            raise MissingWordError([word])

    def indices(self, words):
        """
        Return the rows of ``words``, reporting every absent word at once.
        """
        missing = [word for word in words if word not in self._index]
        if missing:
            raise MissingWordError(missing)
        return [self._index[word] for word in words]

    def vector(self, word):
        return self._values[self.index(word)]

    def restrict(self, words):
        """
        Return a new table holding only ``words``, in the given order.
        """
        words = tuple(words)
        return EmbeddingTable(words, self._values[self.indices(words)])

    def columns(self, features=None):
        """
        Return the n by |features| matrix of the selected feature columns
        (all columns when ``features`` is None).
        """
        if features is None:
            return self._values
        features = list(features)
        if not features:
            raise DomainError("feature subset is empty")
        for feature in features:
            if not 0 <= feature < self.dims:
                raise DomainError(
                    "feature index {0} outside [0, {1})".format(
                        feature, self.dims))
        return self._values[:, features]


def parse_embeddings(source, vocab_filter=None):
    """
    Parse a text embedding file.

    Each non-empty line holds a token followed by d whitespace separated
    numbers; d must be the same on every line. Tokens are lowercased.

    :param source:
        iterable of text lines (an open file, a list of strings...)
    :param vocab_filter:
        optional collection of words; when given only these words are kept
        and every one of them must be present
    :returns:
        :class:`EmbeddingTable` in file order
    :raises FormatError:
        on inconsistent widths, unparsable or non-finite values and
        duplicate tokens
    :raises MissingWordError:
        listing every filtered word absent from the source

    >>> table = parse_embeddings(["a 1 0", "b 0 1"])
    >>> table.n, table.dims
    (2, 2)
    """
    wanted = None
    if vocab_filter is not None:
        wanted = set(word.lower() for word in vocab_filter)
    vocab = []
    rows = []
    seen = set()
    dims = None
    for line_no, line in enumerate(source, 1):
        fields = line.split()
        if not fields:
            continue
        token = fields[0].lower()
        width = len(fields) - 1
        if width == 0:
            raise FormatError(
                "token {0!r} has no values".format(token), line_no)
        if dims is None:
            dims = width
        elif width != dims:
            raise FormatError(
                "expected {0} values, found {1}".format(dims, width),
                line_no)
        if token in seen:
            raise FormatError(
                "token {0!r} appears more than once".format(token), line_no)
        seen.add(token)
        if wanted is not None and token not in wanted:
            continue
        try:
            row = [float(field) for field in fields[1:]]
        except ValueError as ex:
            raise FormatError(str(ex), line_no)
        if not all(math.isfinite(value) for value in row):
            raise FormatError(
                "token {0!r} has a non-finite value".format(token), line_no)
        vocab.append(token)
        rows.append(row)
    if wanted is not None:
        missing = wanted.difference(vocab)
        if missing:
            raise MissingWordError(missing)
    if dims is None:
        raise FormatError("no embedding records found")
    logger.debug("parsed %d vectors of %d features", len(vocab), dims)
    return EmbeddingTable(vocab, np.array(rows).reshape(len(rows), dims))


def format_embeddings(table, stream):
    """
    Write a table in the text format read by :func:`parse_embeddings`,
    with six significant digits per value.
    """
    for token, row in zip(table.vocab, table.values):
        stream.write(token)
        for value in row:
            stream.write(" ")
            stream.write(format_value(value))
        stream.write("\n")


def load_embeddings(path, vocab_filter=None):
    with io.open(path, "rt", encoding="utf-8") as stream:
        return parse_embeddings(stream, vocab_filter)


def pair_key(word1, word2):
    """
    Order-insensitive key of a word pair

    >>> pair_key("see", "look")
    ('look', 'see')
    """
    if word1 <= word2:
        return (word1, word2)
    return (word2, word1)


class JudgmentDataset(object):
    """
    Pairwise similarity ratings of one group of participants for one
    category of words.

    :ivar words:
        tuple of category members
    :ivar participants:
        tuple of participant identifiers (sorted)
    """

    def __init__(self, words, ratings, category_label="", group_label=""):
        """
        :param ratings:
            mapping of participant id to a mapping of pair keys (see
            :func:`pair_key`) to ratings; absent pairs are simply missing
        """
        self._words = tuple(words)
        _index_words(self._words, "word")
        members = set(self._words)
        self._ratings = OrderedDict()
        for participant in sorted(ratings):
            given = OrderedDict()
            for (word1, word2), rating in sorted(
                    ratings[participant].items()):
                if word1 == word2:
                    raise SelfPairError(
                        "participant {0!r} rated {1!r} against itself"
                        .format(participant, word1))
                for word in (word1, word2):
                    if word not in members:
                        raise MissingWordError([word], "category words")
                if not MIN_RATING <= rating <= MAX_RATING:
                    raise RangeError(
                        "rating {0!r} outside [{1}, {2}]".format(
                            rating, MIN_RATING, MAX_RATING))
                key = pair_key(word1, word2)
                if key in given:
                    raise DuplicationError(
                        "participant {0!r} rated {1!r} twice".format(
                            participant, key))
                given[key] = float(rating)
            self._ratings[participant] = given
        self.category_label = category_label
        self.group_label = group_label

    def __repr__(self):
        return ("JudgmentDataset(group={0!r}, category={1!r}, words={2},"
                " participants={3})").format(
                    self.group_label, self.category_label,
                    len(self._words), len(self._ratings))

    def __len__(self):
        return len(self._ratings)

    def __eq__(self, other):
        if not isinstance(other, JudgmentDataset):
            return NotImplemented
        return (self._words == other._words
                and self._ratings == other._ratings
                and self.category_label == other.category_label
                and self.group_label == other.group_label)

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
    def participants(self):
        return tuple(self._ratings)

    @property
    def n_ratings(self):
        return sum(len(given) for given in self._ratings.values())

    def ratings(self, participant):
        """
        Return a copy of the pair to rating mapping of one participant.
        """
        try:
            return OrderedDict(self._ratings[participant])
        except KeyError:
            raise DomainError(
                "unknown participant {0!r}".format(participant))

    def pairs(self):
        """
        Return the keys of every unordered pair of category words, in
        row-major upper triangle order of :attr:`words`.
        """
        words = self._words
        return [pair_key(words[i], words[j])
                for i in range(len(words))
                for j in range(i + 1, len(words))]

    def restrict(self, words):
        """
        Return a dataset over ``words`` holding only the pairs inside it.

        Participants left without any pair are dropped.
        """
        words = tuple(words)
        members = set(words)
        missing = members.difference(self._words)
        if missing:
            raise MissingWordError(missing, "category words")
        ratings = OrderedDict()
        for participant, given in self._ratings.items():
            kept = dict((key, rating) for key, rating in given.items()
                        if key[0] in members and key[1] in members)
            if kept:
                ratings[participant] = kept
        return JudgmentDataset(
            words, ratings, self.category_label, self.group_label)

    def drop_participants(self, participants):
        """
        Return a dataset without the given participants (unknown ids are
        ignored).
        """
        dropped = set(participants)
        ratings = OrderedDict(
            (participant, given)
            for participant, given in self._ratings.items()
            if participant not in dropped)
        return JudgmentDataset(
            self._words, ratings, self.category_label, self.group_label)


_JUDGMENT_COLUMNS = ("participant", "word1", "word2", "rating")


def read_judgment_sets(source, category_label=None, group_label=None):
    """
    Parse a judgment table that may hold several groups and categories.

    The header must name the columns ``participant,word1,word2,rating``;
    optional ``group`` and ``category`` columns split the rows into
    datasets. Without those columns ``group_label``/``category_label`` (or
    the empty string) label the single dataset; with them the labels act
    as filters.

    :returns:
        OrderedDict mapping ``(group, category)`` to
        :class:`JudgmentDataset`, sorted by key; category words are sorted
        so the result does not depend on row order
    """
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise FormatError("judgment table is empty", 1)
    columns = [column.strip().lower() for column in header]
    for required in _JUDGMENT_COLUMNS:
        if required not in columns:
            raise FormatError(
                "header lacks column {0!r}".format(required), 1)
    position = dict((name, columns.index(name)) for name in columns)
    collected = {}
    for row in reader:
        line_no = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(columns):
            raise FormatError(
                "expected {0} cells, found {1}".format(
                    len(columns), len(row)), line_no)

        def cell(name):
            return row[position[name]].strip()

        if "group" in position:
            group = cell("group")
            if group_label is not None and group != group_label:
                continue
        else:
            group = group_label or ""
        if "category" in position:
            category = cell("category")
            if category_label is not None and category != category_label:
                continue
        else:
            category = category_label or ""
        participant = cell("participant")
        word1 = cell("word1").lower()
        word2 = cell("word2").lower()
        try:
            rating = float(cell("rating"))
        except ValueError:
            raise FormatError(
                "rating {0!r} is not a number".format(cell("rating")),
                line_no)
        if not MIN_RATING <= rating <= MAX_RATING:
            raise RangeError(
                "line {0}: rating {1!r} outside [{2}, {3}]".format(
                    line_no, rating, MIN_RATING, MAX_RATING))
        if word1 == word2:
            raise SelfPairError(
                "line {0}: word {1!r} paired with itself".format(
                    line_no, word1))
        key = pair_key(word1, word2)
        given = collected.setdefault(
            (group, category), {}).setdefault(participant, {})
        if key in given:
            raise DuplicationError(
                "line {0}: participant {1!r} already rated {2!r}".format(
                    line_no, participant, key))
        given[key] = rating
    datasets = OrderedDict()
    for group, category in sorted(collected):
        ratings = collected[(group, category)]
        words = set()
        for given in ratings.values():
            for key in given:
                words.update(key)
        datasets[(group, category)] = JudgmentDataset(
            sorted(words), ratings, category, group)
    return datasets


def parse_judgments(source, category_label=None, group_label=None):
    """
    Parse a judgment table holding a single (group, category) dataset.

    :raises RangeError:
        for ratings outside [1, 7]
    :raises SelfPairError:
        when a word is paired with itself
    :raises DuplicationError:
        when a participant rates the same unordered pair twice
    """
    datasets = read_judgment_sets(source, category_label, group_label)
    if not datasets:
        raise FormatError("judgment table holds no ratings")
    if len(datasets) > 1:
        raise DomainError(
            "judgment table holds {0} datasets ({1}); select one with"
            " group_label and category_label".format(
                len(datasets),
                ", ".join("{0}/{1}".format(*key) for key in datasets)))
    return next(iter(datasets.values()))


def load_judgment_sets(paths):
    """
    Read and merge judgment sets from several files.
    """
    datasets = OrderedDict()
    for path in paths:
        with io.open(path, "rt", encoding="utf-8", newline="") as stream:
            for key, dataset in read_judgment_sets(stream).items():
                if key in datasets:
                    raise DuplicationError(
                        "judgment set {0}/{1} given by more than one"
                        " file".format(*key))
                datasets[key] = dataset
    return OrderedDict((key, datasets[key]) for key in sorted(datasets))


class AnnotationTable(object):
    """
    Human ratings of words on semantic dimensions, with the assignment of
    each dimension to a broader domain.

    :ivar words:
        tuple of annotated words
    :ivar dim_names:
        tuple of dimension labels
    :ivar values:
        read-only words by dimensions array of non-negative floats
    :ivar domain_map:
        OrderedDict mapping each dimension (in column order) to its domain
    :ivar domains:
        tuple of domain labels in order of first appearance
    """

    def __init__(self, words, dim_names, values, domain_map):
        self._words = tuple(words)
        self._dim_names = tuple(dim_names)
        self._index = _index_words(self._words, "annotation word")
        _index_words(self._dim_names, "dimension")
        values = _frozen(values)
        if values.shape != (len(self._words), len(self._dim_names)):
            raise ShapeError(
                "annotation values have shape {0}, expected {1}".format(
                    values.shape, (len(self._words), len(self._dim_names))))
        if not np.all(np.isfinite(values)):
            raise FormatError("annotation contains non-finite values")
        if np.any(values < 0):
            raise RangeError("annotation contains negative values")
        orphans = [dim for dim in self._dim_names if dim not in domain_map]
        if orphans:
            raise MappingError(
                "dimension(s) without a domain: {0}".format(
                    ", ".join(orphans)))
        self._domain_map = OrderedDict(
            (dim, domain_map[dim]) for dim in self._dim_names)
        domains = []
        for domain in domain_map.values():
            if domain not in domains:
                domains.append(domain)
        empty = [domain for domain in domains
                 if domain not in self._domain_map.values()]
        if empty:
            raise MappingError(
                "domain(s) without dimensions: {0}".format(
                    ", ".join(empty)))
        self._domains = tuple(domains)
        self._values = values

    def __repr__(self):
        return "AnnotationTable(words={0}, dims={1}, domains={2})".format(
            len(self._words), len(self._dim_names), len(self._domains))

    def __len__(self):
        return len(self._words)

    @property
    def words(self):
        return self._words

    @property
    def dim_names(self):
        return self._dim_names

    @property
    def values(self):
        return self._values

    @property
    def domain_map(self):
        return OrderedDict(self._domain_map)

    @property
    def domains(self):
        return self._domains

    def index(self, word):
        try:
            return self._index[word]
        except KeyError:
            raise MissingWordError([word], "annotation table")

    def domain_members(self, domain):
        """
        Return the dimensions assigned to ``domain``, in column order.
        """
        members = tuple(dim for dim, owner in self._domain_map.items()
                        if owner == domain)
        if not members:
            raise MappingError("unknown domain {0!r}".format(domain))
        return members


def parse_domain_map(source):
    """
    Parse a ``dimension,domain`` table into an OrderedDict in file order.
    """
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise FormatError("domain map is empty", 1)
    columns = [column.strip().lower() for column in header]
    if columns[:2] != ["dimension", "domain"]:
        raise FormatError(
            "domain map header must be 'dimension,domain'", 1)
    domain_map = OrderedDict()
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < 2 or not row[1].strip():
            raise MappingError(
                "line {0}: dimension without a domain".format(
                    reader.line_num))
        dim, domain = row[0].strip(), row[1].strip()
        if dim in domain_map:
            raise MappingError(
                "line {0}: dimension {1!r} mapped twice".format(
                    reader.line_num, dim))
        domain_map[dim] = domain
    return domain_map


def parse_annotations(source, domain_map_source):
    """
    Parse semantic annotations and their dimension to domain mapping.

    Repeated words keep their first occurrence; later ones are dropped
    with a warning. Mapped dimensions absent from the data are ignored
    with a warning.

    :raises MappingError:
        when a dimension has no domain or a domain ends up without
        dimensions
    """
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise FormatError("annotation table is empty", 1)
    if header[0].strip().lower() != "word":
        raise FormatError("first annotation column must be 'word'", 1)
    dim_names = [name.strip() for name in header[1:]]
    if not dim_names:
        raise FormatError("annotation table has no dimensions", 1)
    words = []
    rows = []
    seen = set()
    for row in reader:
        line_no = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise FormatError(
                "expected {0} cells, found {1}".format(
                    len(header), len(row)), line_no)
        word = row[0].strip().lower()
        if word in seen:
            logger.warning(
                "annotation word %r repeated on line %d; keeping the first"
                " occurrence", word, line_no)
            continue
        try:
            values = [float(cell) for cell in row[1:]]
        except ValueError as ex:
            raise FormatError(str(ex), line_no)
        seen.add(word)
        words.append(word)
        rows.append(values)
    domain_map = parse_domain_map(domain_map_source)
    unused = [dim for dim in domain_map if dim not in dim_names]
    if unused:
        logger.warning(
            "domain map lists dimension(s) absent from the annotations: %s",
            ", ".join(unused))
    return AnnotationTable(
        words, dim_names, np.array(rows).reshape(len(rows), len(dim_names)),
        domain_map)


def load_annotations(path, domain_map_path):
    with io.open(path, "rt", encoding="utf-8", newline="") as stream:
        with io.open(domain_map_path, "rt", encoding="utf-8",
                     newline="") as map_stream:
            return parse_annotations(stream, map_stream)
