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
Result extensions, allow to serialize and deserialize stored artifacts
(retained feature sets, cross-validation reports, prediction matrices and
accuracy profiles) as JSON documents so that later stages can resume from
them.

Undefined values (NaN) are stored as ``null``.
"""

import math

from supervised_alignment.errors import FormatError
from supervised_alignment.plsr import PredictionMatrix
from supervised_alignment.pruning import (
    FoldRecord,
    PruneCVReport,
    RetainedFeatureSet,
)
from supervised_alignment.stats import AccuracyProfile


def _floats_to_json(values):
    return [None if math.isnan(value) else float(value)
            for value in values]


def _floats_from_json(values):
    return [float("nan") if value is None else float(value)
            for value in values]


def _float_to_json(value):
    return _floats_to_json([value])[0]


def _float_from_json(value):
    return _floats_from_json([value])[0]


def _check(doc, kind, fields):
    if not isinstance(doc, dict):
        raise TypeError("JSON document must be an object")
    if doc.get("kind") != kind:
        raise FormatError(
            "JSON document kind {0!r} is not {1!r}".format(
                doc.get("kind"), kind))
    missing = [field for field in fields if field not in doc]
    if missing:
        raise FormatError(
            "JSON document lacks field(s): {0}".format(", ".join(missing)))


class retained_feature_set_extension(object):
    """
    Proxy for serializing
    :class:`supervised_alignment.pruning.RetainedFeatureSet` instances
    """

    KIND = "retained_feature_set"
    FIELDS = ("group", "category", "ranking", "size", "scores", "cumulative")

    @classmethod
    def to_json(cls, obj):
        return {
            "kind": cls.KIND,
            "group": obj.group_label,
            "category": obj.category_label,
            "ranking": list(obj.ranking),
            "size": obj.size,
            "scores": _floats_to_json(obj.scores),
            "cumulative": _floats_to_json(obj.cumulative),
        }

    @classmethod
    def from_json(cls, doc):
        _check(doc, cls.KIND, cls.FIELDS)
        return RetainedFeatureSet(
            doc["ranking"], doc["size"], _floats_from_json(doc["scores"]),
            _floats_from_json(doc["cumulative"]), doc["category"],
            doc["group"])


class prune_cv_report_extension(object):
    """
    Proxy for serializing
    :class:`supervised_alignment.pruning.PruneCVReport` instances
    """

    KIND = "prune_cv_report"
    FIELDS = ("group", "category", "folds")

    @classmethod
    def to_json(cls, obj):
        return {
            "kind": cls.KIND,
            "group": obj.group_label,
            "category": obj.category_label,
            "folds": [{
                "target": fold.target,
                "baseline_rho": _float_to_json(fold.baseline_rho),
                "retained_rho": _float_to_json(fold.retained_rho),
                "random_rho": _float_to_json(fold.random_rho),
                "retained_size": int(fold.retained_size),
            } for fold in obj.folds],
        }

    @classmethod
    def from_json(cls, doc):
        _check(doc, cls.KIND, cls.FIELDS)
        folds = [FoldRecord(
            fold["target"], _float_from_json(fold["baseline_rho"]),
            _float_from_json(fold["retained_rho"]),
            _float_from_json(fold["random_rho"]), fold["retained_size"])
            for fold in doc["folds"]]
        return PruneCVReport(folds, doc["category"], doc["group"])


class prediction_matrix_extension(object):
    """
    Proxy for serializing
    :class:`supervised_alignment.plsr.PredictionMatrix` instances
    """

    KIND = "prediction_matrix"
    FIELDS = ("label", "words", "dims", "values", "ground_truth",
              "provenance")

    @classmethod
    def to_json(cls, obj):
        return {
            "kind": cls.KIND,
            "label": obj.label,
            "words": list(obj.words),
            "dims": list(obj.dims),
            "values": [_floats_to_json(row) for row in obj.values],
            "ground_truth": [_floats_to_json(row)
                             for row in obj.ground_truth],
            "provenance": dict(obj.provenance),
        }

    @classmethod
    def from_json(cls, doc):
        _check(doc, cls.KIND, cls.FIELDS)
        return PredictionMatrix(
            doc["words"], doc["dims"],
            [_floats_from_json(row) for row in doc["values"]],
            [_floats_from_json(row) for row in doc["ground_truth"]],
            doc["label"], sorted(doc["provenance"].items()))


class accuracy_profile_extension(object):
    """
    Proxy for serializing
    :class:`supervised_alignment.stats.AccuracyProfile` instances
    """

    KIND = "accuracy_profile"
    FIELDS = ("label", "dims", "per_dim_r", "words", "per_word_r")

    @classmethod
    def to_json(cls, obj):
        return {
            "kind": cls.KIND,
            "label": obj.label,
            "dims": list(obj.dims),
            "per_dim_r": _floats_to_json(obj.per_dim_r),
            "words": list(obj.words),
            "per_word_r": _floats_to_json(obj.per_word_r),
        }

    @classmethod
    def from_json(cls, doc):
        _check(doc, cls.KIND, cls.FIELDS)
        return AccuracyProfile(
            doc["label"], doc["dims"], _floats_from_json(doc["per_dim_r"]),
            doc["words"], _floats_from_json(doc["per_word_r"]))
