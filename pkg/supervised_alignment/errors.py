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
Error classes used by this package
"""


class AlignmentError(ValueError):
    """
    Base class of every error raised by this package.
    """


class FormatError(AlignmentError):
    """
    An exception raised when an input file does not follow its format.

    :ivar line:
        1-based line number of the offending record (or None when the
        problem is not bound to a single line)
    """

    def __init__(self, message, line=None):
        super(FormatError, self).__init__(message)
        self.message = message
        self.line = line

    def __str__(self):
        if self.line is None:
            return self.message
        return "line {0}: {1}".format(self.line, self.message)


class MissingWordError(AlignmentError):
    """
    An exception raised when requested words are absent from a table.

    :ivar words:
        sorted list of every absent word
    """

    def __init__(self, words, where="embedding table"):
        self.words = sorted(words)
        self.where = where
        super(MissingWordError, self).__init__(str(self))

    def __str__(self):
        return "{0} word(s) missing from {1}: {2}".format(
            len(self.words), self.where, ", ".join(self.words))


class RangeError(AlignmentError):
    """
    A value lies outside of its permitted range.
    """


class SelfPairError(AlignmentError):
    """
    A judgment pairs a word with itself.
    """


class DuplicationError(AlignmentError):
    """
    A record was given more than once.
    """


class MappingError(AlignmentError):
    """
    The dimension to domain mapping is incomplete or inconsistent.
    """


class DegenerateVectorError(AlignmentError):
    """
    A word vector has zero norm on the selected features.

    :ivar word:
        the offending word
    """

    def __init__(self, word):
        self.word = word
        super(DegenerateVectorError, self).__init__(
            "vector of {0!r} has zero norm on the selected"
            " features".format(word))


class DegenerateParticipantError(AlignmentError):
    """
    A participant gave the same rating to every pair.

    :ivar participant:
        identifier of the participant
    """

    def __init__(self, participant):
        self.participant = participant
        super(DegenerateParticipantError, self).__init__(
            "participant {0!r} has constant ratings and cannot be"
            " normalized".format(participant))


class UnratedPairError(AlignmentError):
    """
    No participant rated a pair that the group matrix needs.
    """


class UndefinedCorrelationError(AlignmentError):
    """
    A correlation was requested for a constant vector.
    """


class AlignmentDomainError(AlignmentError):
    """
    Two similarity matrices are not defined over the same words.
    """


class PruningFailureError(AlignmentError):
    """
    No prefix of the feature ranking produced a usable similarity matrix.
    """


class FoldSizeError(AlignmentError):
    """
    A cross-validation fold is too small to be evaluated.
    """


class DomainError(AlignmentError):
    """
    An argument lies outside of the domain of an operation.
    """


class RankError(AlignmentError):
    """
    More latent components were requested than the data supports.
    """


class DegeneratePredictorError(AlignmentError):
    """
    A predictor column is constant over the training rows.
    """


class ShapeError(AlignmentError):
    """
    An array does not have the expected shape.
    """


class FoldError(AlignmentError):
    """
    A leave-one-out fold failed.

    :ivar word:
        the held-out word of the failing fold
    :ivar cause:
        the original exception
    """

    def __init__(self, word, cause):
        self.word = word
        self.cause = cause
        super(FoldError, self).__init__(
            "fold holding out {0!r} failed: {1}".format(word, cause))


class DegenerateTestError(AlignmentError):
    """
    Paired differences were constant (and non-zero) for some domains.

    :ivar domains:
        labels of the degenerate domains
    :ivar report:
        the partial :class:`supervised_alignment.stats.DiscrepancyReport`
        where degenerate domains carry NaN statistics
    """

    def __init__(self, domains, report=None):
        self.domains = list(domains)
        self.report = report
        super(DegenerateTestError, self).__init__(
            "paired differences have zero variance for domain(s): "
            "{0}".format(", ".join(self.domains)))


class ConfigError(AlignmentError):
    """
    An exception raised when there is a problem with the run configuration.

    :ivar config_expr:
        Expression that points at the offending setting. It always starts
        with a root object called ``'config'``, for example
        ``'config.stats.alpha'``.
    """

    def __init__(self, message, config_expr="config"):
        super(ConfigError, self).__init__(message)
        self.message = message
        self.config_expr = config_expr

    def __str__(self):
        return "{0}: {1}".format(self.config_expr, self.message)


class ValidationError(AlignmentError):
    """
    An exception raised when validation of a run configuration found one
    or more problems.

    :ivar problems:
        list of :class:`ConfigError`, in the order they were found
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super(ValidationError, self).__init__(str(self))

    def __str__(self):
        return "configuration has {0} problem(s):\n{1}".format(
            len(self.problems),
            "\n".join("  " + str(problem) for problem in self.problems))


class StageError(AlignmentError):
    """
    A pipeline stage failed.

    :ivar stage:
        name of the failing stage
    :ivar task:
        label of the task being processed (or None for cross-task stages)
    :ivar cause:
        the original exception
    """

    def __init__(self, stage, task, cause):
        self.stage = stage
        self.task = task
        self.cause = cause
        super(StageError, self).__init__(str(self))

    def __str__(self):
        return "stage {0!r} failed (task={1!r}): {2}".format(
            self.stage, self.task, self.cause)
