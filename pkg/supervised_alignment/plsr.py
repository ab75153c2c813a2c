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
Partial least squares regression from embedding features to semantic
annotations, and the leave-one-out stacked prediction matrices built
with it.

Components are extracted with NIPALS and deflation of both blocks.
Predictors are centered and (optionally) scaled to unit variance, targets
are centered only.
"""

import csv
import logging
from collections import OrderedDict

import numpy as np

from supervised_alignment.errors import (
    AlignmentError,
    DegeneratePredictorError,
    DomainError,
    FoldError,
    MappingError,
    RankError,
    ShapeError,
)
from supervised_alignment.misc import (
    feature_indices,
    format_cell,
    parallel_map,
)


logger = logging.getLogger(__name__)

DEFAULT_MAX_COMPONENTS = 20
TOLERANCE = 1e-10
MAX_ITERATIONS = 500
# residual norms below this fraction of the initial norm count as zero
RANK_TOLERANCE = 1e-10


def default_components(n_features, n_train, cap=DEFAULT_MAX_COMPONENTS):
    """
    Number of components used when none is configured

    >>> default_components(300, 533)
    20
    >>> default_components(1, 533)
    1
    """
    return max(1, min(cap, n_features, n_train - 1))


class PlsrModel(object):
    """
    Fitted PLS regression.

    :ivar x_weights:
        p by A matrix of weight vectors W
    :ivar x_loadings:
        p by A matrix of predictor loadings P
    :ivar y_loadings:
        m by A matrix of target loadings Q
    :ivar x_scores:
        n by A matrix of training scores T (mutually orthogonal)
    :ivar coefficients:
        p by m regression coefficients acting on centered and scaled
        predictors
    """

    def __init__(self, x_mean, x_scale, y_mean, x_weights, x_loadings,
                 y_loadings, x_scores):
        self.x_mean = x_mean
        self.x_scale = x_scale
        self.y_mean = y_mean
        self.x_weights = x_weights
        self.x_loadings = x_loadings
        self.y_loadings = y_loadings
        self.x_scores = x_scores
        self.x_rotations = x_weights.dot(
            np.linalg.inv(x_loadings.T.dot(x_weights)))
        self.coefficients = self.x_rotations.dot(y_loadings.T)

    def __repr__(self):
        return "PlsrModel(n_components={0}, p={1}, m={2})".format(
            self.n_components, self.n_features, self.n_targets)

    @property
    def n_components(self):
        return self.x_weights.shape[1]

    @property
    def n_features(self):
        return self.x_weights.shape[0]

    @property
    def n_targets(self):
        return self.y_loadings.shape[0]

    def predict(self, x_new):
        """
        Predict targets for one row (1-d input) or several rows.
        """
        x_new = np.asarray(x_new, dtype=float)
        single = x_new.ndim == 1
        if single:
            x_new = x_new[None, :]
        if x_new.ndim != 2 or x_new.shape[1] != self.n_features:
            raise ShapeError(
                "expected {0} predictor columns, got shape {1}".format(
                    self.n_features, x_new.shape))
        predicted = ((x_new - self.x_mean) / self.x_scale).dot(
            self.coefficients) + self.y_mean
        if single:
            return predicted[0]
        return predicted


def _dominant_direction(x):
    # right singular vector of the largest singular value, sign fixed so
    # that its largest entry is positive
    _, _, vt = np.linalg.svd(x, full_matrices=False)
    direction = vt[0]
    if direction[np.argmax(np.abs(direction))] < 0:
        direction = -direction
    return direction


def _first_weight(x, y, y_norm0, tol, max_iter, component):
    y_norm = np.linalg.norm(y)
    if y_norm <= RANK_TOLERANCE * y_norm0:
        # targets are fully explained, keep spanning the predictors
        return _dominant_direction(x)
    u = y[:, np.argmax((y * y).sum(axis=0))]
    w_old = None
    for iteration in range(1, max_iter + 1):
        w = x.T.dot(u)
        w_norm = np.linalg.norm(w)
        if w_norm == 0:
            return _dominant_direction(x)
        w /= w_norm
        t = x.dot(w)
        if y.shape[1] == 1:
            return w
        q = y.T.dot(t) / t.dot(t)
        qq = q.dot(q)
        if qq == 0:
            return w
        u = y.dot(q) / qq
        if w_old is not None and np.linalg.norm(w - w_old) < tol:
            return w
        w_old = w
    logger.warning(
        "component %d did not converge after %d iterations",
        component + 1, max_iter)
    return w


def plsr_fit(x, y, n_components, scale=True, tol=TOLERANCE,
             max_iter=MAX_ITERATIONS):
    """
    Fit a PLS regression of ``y`` on ``x``.

    :param x:
        n by p predictor matrix
    :param y:
        n by m target matrix (or a vector of n targets)
    :param n_components:
        number of latent components, at most min(n - 1, p)
    :param scale:
        scale predictors to unit variance after centering
    :raises RankError:
        when more components are requested than the predictors support
    :raises DegeneratePredictorError:
        when a predictor column is constant
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    if x.ndim != 2 or y.ndim != 2 or x.shape[0] != y.shape[0]:
        raise ShapeError(
            "predictors {0} and targets {1} do not line up".format(
                x.shape, y.shape))
    n, p = x.shape
    if n < 3 or p < 1:
        raise DomainError(
            "regression needs at least 3 rows and 1 predictor, got"
            " {0}x{1}".format(n, p))
    limit = min(n - 1, p)
    if not 1 <= n_components <= limit:
        raise RankError(
            "{0} components requested, at most {1} possible with {2} rows"
            " and {3} predictors".format(n_components, limit, n, p))
    constant = np.flatnonzero(np.all(x == x[0], axis=0))
    if constant.size:
        raise DegeneratePredictorError(
            "predictor column(s) {0} are constant".format(
                ", ".join(str(index) for index in constant)))
    x_mean = x.mean(axis=0)
    x_scale = np.ones(p)
    residual_x = x - x_mean
    if scale:
        x_scale = residual_x.std(axis=0, ddof=1)
        residual_x = residual_x / x_scale
    y_mean = y.mean(axis=0)
    residual_y = y - y_mean
    x_norm0 = np.linalg.norm(residual_x)
    y_norm0 = np.linalg.norm(residual_y)
    weights, loadings, y_loadings, scores = [], [], [], []
    for component in range(n_components):
        if np.linalg.norm(residual_x) <= RANK_TOLERANCE * x_norm0:
            raise RankError(
                "predictors have rank {0}, cannot extract {1}"
                " components".format(component, n_components))
        w = _first_weight(
            residual_x, residual_y, y_norm0, tol, max_iter, component)
        t = residual_x.dot(w)
        tt = t.dot(t)
        p_loading = residual_x.T.dot(t) / tt
        q_loading = residual_y.T.dot(t) / tt
        residual_x = residual_x - np.outer(t, p_loading)
        residual_y = residual_y - np.outer(t, q_loading)
        weights.append(w)
        loadings.append(p_loading)
        y_loadings.append(q_loading)
        scores.append(t)
    return PlsrModel(
        x_mean, x_scale, y_mean, np.column_stack(weights),
        np.column_stack(loadings), np.column_stack(y_loadings),
        np.column_stack(scores))


def plsr_predict(model, x_new):
    """
    Apply a fitted model to one row or a matrix of rows.

    :raises ShapeError:
        when the width of ``x_new`` differs from the training predictors
    """
    return model.predict(x_new)


class PredictionMatrix(object):
    """
    Leave-one-out stacked predictions of words on semantic dimensions,
    aligned with the ground truth.

    :ivar provenance:
        OrderedDict describing how the predictions were produced (retained
        features, component count, scaling)
    """

    def __init__(self, words, dims, values, ground_truth, label="",
                 provenance=None):
        self.words = tuple(words)
        self.dims = tuple(dims)
        shape = (len(self.words), len(self.dims))
        values = np.array(values, dtype=float)
        ground_truth = np.array(ground_truth, dtype=float)
        if values.shape != shape or ground_truth.shape != shape:
            raise ShapeError(
                "predictions {0} and ground truth {1} must both be {2}"
                .format(values.shape, ground_truth.shape, shape))
        values.setflags(write=False)
        ground_truth.setflags(write=False)
        self.values = values
        self.ground_truth = ground_truth
        self.label = label
        self.provenance = OrderedDict(provenance or ())

    def __repr__(self):
        return "PredictionMatrix({0!r}, {1}x{2})".format(
            self.label, len(self.words), len(self.dims))

    def _write(self, matrix, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("word",) + self.dims)
        for word, row in zip(self.words, matrix):
            writer.writerow([word] + [format_cell(value) for value in row])

    def write(self, stream):
        self._write(self.values, stream)

    def write_ground_truth(self, stream):
        self._write(self.ground_truth, stream)


def loocv_stack(emb, retained, ann, n_components=None, scale=True,
                max_components=DEFAULT_MAX_COMPONENTS, jobs=1, label=""):
    """
    Stack leave-one-out PLS predictions of every annotated word.

    Row w of the result is predicted by a model fit on every word but w.

    :param retained:
        retained feature set (or sequence of feature indices) used as
        predictors
    :param n_components:
        component count; None picks min(max_components, |features|,
        n_train - 1)
    :raises FoldError:
        naming the held-out word when a fold fails to fit
    """
    features = feature_indices(retained)
    if not features:
        raise DomainError("no retained features to regress from")
    x = emb.restrict(ann.words).columns(features)
    y = ann.values
    n = len(ann.words)
    if n_components is None:
        n_components = default_components(len(features), n - 1,
                                          max_components)

    def fold(row):
        mask = np.ones(n, dtype=bool)
        mask[row] = False
        try:
            model = plsr_fit(x[mask], y[mask], n_components, scale)
        except AlignmentError as ex:
            raise FoldError(ann.words[row], ex)
        return model.predict(x[row])

    values = np.vstack(parallel_map(fold, range(n), jobs))
    logger.info("stacked %d leave-one-out predictions from %d features"
                " with %d components", n, len(features), n_components)
    provenance = OrderedDict((
        ("features", list(features)),
        ("n_components", n_components),
        ("scale", bool(scale)),
    ))
    return PredictionMatrix(ann.words, ann.dim_names, values, y, label,
                            provenance)


def condense_domains(pm, domain_map):
    """
    Average the dimension columns of a prediction matrix into domains.

    Both predictions and ground truth are condensed; each domain column is
    the unweighted mean of its member dimensions.

    :param domain_map:
        :class:`supervised_alignment.corpus_io.AnnotationTable` or a
        mapping of dimension to domain
    :raises MappingError:
        when a dimension has no domain
    """
    domains = getattr(domain_map, "domains", None)
    domain_map = getattr(domain_map, "domain_map", domain_map)
    orphans = [dim for dim in pm.dims if dim not in domain_map]
    if orphans:
        raise MappingError(
            "dimension(s) without a domain: {0}".format(", ".join(orphans)))
    if domains is None:
        domains = []
        for dim in pm.dims:
            if domain_map[dim] not in domains:
                domains.append(domain_map[dim])
    members = [[column for column, dim in enumerate(pm.dims)
                if domain_map[dim] == domain] for domain in domains]
    empty = [domain for domain, columns in zip(domains, members)
             if not columns]
    if empty:
        raise MappingError(
            "domain(s) without dimensions: {0}".format(", ".join(empty)))
    values = np.column_stack(
        [pm.values[:, columns].mean(axis=1) for columns in members])
    truth = np.column_stack(
        [pm.ground_truth[:, columns].mean(axis=1) for columns in members])
    provenance = OrderedDict(pm.provenance)
    provenance["condensed"] = True
    return PredictionMatrix(pm.words, domains, values, truth, pm.label,
                            provenance)
