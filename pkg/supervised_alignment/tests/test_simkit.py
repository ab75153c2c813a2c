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
Unit tests for similarity matrices and rank alignment
"""

import io
import math

import numpy as np
from scipy import stats as scipy_stats
from testscenarios import TestWithScenarios
from testtools import TestCase

from supervised_alignment.corpus_io import EmbeddingTable, JudgmentDataset
from supervised_alignment.errors import (
    AlignmentDomainError,
    DegenerateParticipantError,
    DegenerateVectorError,
    DomainError,
    FormatError,
    UndefinedCorrelationError,
    UnratedPairError,
)
from supervised_alignment.simkit import (
    SimilarityMatrix,
    alignment,
    cosine_matrix,
    group_similarity,
    pearson,
    spearman,
)
from supervised_alignment.tests.synthetic import (
    random_embedding,
    random_similarity,
)


class CosineMatrixTests(TestWithScenarios, TestCase):

    scenarios = [
        ("orthogonal", {
            'rows': [[1, 0], [0, 1]],
            'subset': None,
            'expected': 0.0,
        }),
        ("colinear", {
            'rows': [[2, 0], [1, 0]],
            'subset': None,
            'expected': 1.0,
        }),
        ("single_shared_feature", {
            'rows': [[1, 1, 0], [1, 0, 1]],
            'subset': [0],
            'expected': 1.0,
        }),
        ("opposite", {
            'rows': [[1, 2], [-2, -4]],
            'subset': None,
            'expected': -1.0,
        }),
    ]

    def test_off_diagonal(self):
        sim = cosine_matrix(EmbeddingTable(["a", "b"], self.rows),
                            self.subset)
        self.assertAlmostEqual(sim.values[0, 1], self.expected, places=15)
        self.assertEqual(sim.values[0, 0], 1.0)
        self.assertEqual(sim.values[1, 1], 1.0)


class CosineMatrixPropertyTests(TestCase):

    def test_zero_restricted_row_is_named(self):
        emb = EmbeddingTable(["a", "b", "c"], [[1, 1], [0, 1], [1, 0]])
        ex = self.assertRaises(DegenerateVectorError, cosine_matrix, emb, [0])
        self.assertEqual(ex.word, "b")

    def test_positive_row_rescaling(self):
        rng = np.random.default_rng(3)
        emb = random_embedding(rng, 6, 5)
        values = emb.values.copy()
        values[2] *= 7.5
        scaled = EmbeddingTable(emb.vocab, values)
        np.testing.assert_allclose(
            cosine_matrix(scaled).values, cosine_matrix(emb).values,
            atol=1e-12)

    def test_upper_length(self):
        rng = np.random.default_rng(4)
        for k in range(2, 9):
            sim = cosine_matrix(random_embedding(rng, k, 3))
            self.assertEqual(sim.upper.size, k * (k - 1) // 2)

    def test_exact_symmetry(self):
        rng = np.random.default_rng(5)
        values = cosine_matrix(random_embedding(rng, 9, 7)).values
        self.assertTrue(np.array_equal(values, values.T))


class SimilarityMatrixTests(TestCase):

    def test_upper_is_row_major(self):
        sim = SimilarityMatrix(
            ["a", "b", "c"], [[1, 2, 3], [2, 1, 4], [3, 4, 1]])
        self.assertEqual(sim.upper.tolist(), [2, 3, 4])

    def test_asymmetric_rejected(self):
        self.assertRaises(
            DomainError, SimilarityMatrix, ["a", "b"], [[1, 2], [3, 1]])

    def test_table_is_read_back(self):
        sim = random_similarity(np.random.default_rng(1), ["x", "y", "z"])
        stream = io.StringIO()
        sim.write(stream)
        stream.seek(0)
        self.assertEqual(SimilarityMatrix.read(stream), sim)

    def test_empty_cell_rejected(self):
        stream = io.StringIO(u"word,a,b\na,1.0,\nb,0.5,1.0\n")
        ex = self.assertRaises(FormatError, SimilarityMatrix.read, stream)
        self.assertEqual(ex.line, 2)

    def test_restrict(self):
        sim = SimilarityMatrix(
            ["a", "b", "c"], [[1, 2, 3], [2, 1, 4], [3, 4, 1]])
        self.assertEqual(sim.restrict(["c", "a"]).values.tolist(),
                         [[1, 3], [3, 1]])


class GroupSimilarityTests(TestCase):

    def dataset(self, ratings):
        return JudgmentDataset(["a", "b", "c"], ratings)

    def test_population_zscore(self):
        h = group_similarity(self.dataset(
            {"p": {("a", "b"): 2, ("a", "c"): 4, ("b", "c"): 6}}))
        z = math.sqrt(1.5)
        np.testing.assert_allclose(h.upper, [-z, 0.0, z], atol=1e-12)
        self.assertEqual(h.values[0, 0], 0.0)

    def test_sample_zscore(self):
        h = group_similarity(self.dataset(
            {"p": {("a", "b"): 2, ("a", "c"): 4, ("b", "c"): 6}}),
            "zscore_sample")
        np.testing.assert_allclose(h.upper, [-1.0, 0.0, 1.0], atol=1e-12)

    def test_matches_scipy_zscore(self):
        ratings = [1, 5, 3]
        h = group_similarity(self.dataset(
            {"p": dict(zip([("a", "b"), ("a", "c"), ("b", "c")],
                           ratings))}))
        np.testing.assert_allclose(
            h.upper, scipy_stats.zscore(ratings), atol=1e-12)

    def test_identical_participants(self):
        given = {("a", "b"): 1, ("a", "c"): 7, ("b", "c"): 3}
        single = group_similarity(self.dataset({"p1": given}))
        double = group_similarity(self.dataset({"p1": given, "p2": given}))
        np.testing.assert_allclose(double.values, single.values, atol=1e-12)

    def test_affine_invariance(self):
        given = {("a", "b"): 1, ("a", "c"): 7, ("b", "c"): 3}
        shifted = dict((key, 0.5 * value + 3) for key, value in given.items())
        np.testing.assert_allclose(
            group_similarity(self.dataset({"p": given})).values,
            group_similarity(self.dataset({"p": shifted})).values,
            atol=1e-12)

    def test_pairs_missing_for_some_participants(self):
        h = group_similarity(self.dataset({
            "p1": {("a", "b"): 1, ("a", "c"): 7},
            "p2": {("a", "b"): 2, ("b", "c"): 6},
        }))
        np.testing.assert_allclose(h.upper, [-1.0, 1.0, 1.0], atol=1e-12)

    def test_constant_participant(self):
        ex = self.assertRaises(
            DegenerateParticipantError, group_similarity, self.dataset(
                {"p": {("a", "b"): 4, ("a", "c"): 4, ("b", "c"): 4}}))
        self.assertEqual(ex.participant, "p")

    def test_unrated_pair(self):
        self.assertRaises(
            UnratedPairError, group_similarity,
            self.dataset({"p": {("a", "b"): 1, ("a", "c"): 7}}))

    def test_unknown_normalization(self):
        self.assertRaises(
            DomainError, group_similarity,
            self.dataset({"p": {("a", "b"): 1, ("a", "c"): 7,
                                ("b", "c"): 2}}), "whiten")


class SpearmanTests(TestWithScenarios, TestCase):

    scenarios = [
        ("monotone", {
            'a': [1, 2, 3], 'b': [10, 20, 30], 'expected': 1.0}),
        ("reversed", {
            'a': [1, 2, 3], 'b': [3, 2, 1], 'expected': -1.0}),
        ("one_tie", {
            'a': [1, 2, 2, 4], 'b': [1, 3, 2, 4],
            'expected': 0.9486832980505138}),
    ]

    def test_value(self):
        self.assertAlmostEqual(
            spearman(self.a, self.b), self.expected, places=12)


class CorrelationParityTests(TestCase):

    def test_agrees_with_scipy_on_tied_vectors(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            n = rng.integers(3, 30)
            a = rng.normal(size=n)
            b = rng.normal(size=n)
            # Ties from a coarse grid
            ties_a = rng.random(n) < 0.3
            ties_b = rng.random(n) < 0.3
            a[ties_a] = np.round(a[ties_a])
            b[ties_b] = np.round(b[ties_b])
            if np.ptp(a) == 0 or np.ptp(b) == 0:
                continue
            self.assertAlmostEqual(
                spearman(a, b), scipy_stats.spearmanr(a, b)[0], delta=1e-10)
            self.assertAlmostEqual(
                pearson(a, b), scipy_stats.pearsonr(a, b)[0], delta=1e-10)

    def test_constant_vector(self):
        self.assertRaises(
            UndefinedCorrelationError, spearman, [1, 1, 1], [1, 2, 3])

    def test_constant_fractional_vector(self):
        self.assertRaises(
            UndefinedCorrelationError, pearson, [0.1, 0.1, 0.1], [1, 2, 3])
        self.assertRaises(
            UndefinedCorrelationError, pearson, [1, 2, 3], [0.7] * 3)

    def test_too_short(self):
        self.assertRaises(DomainError, spearman, [1, 2], [2, 1])


class AlignmentTests(TestCase):

    def setUp(self):
        super(AlignmentTests, self).setUp()
        self.z = random_similarity(
            np.random.default_rng(11), ["a", "b", "c", "d"])

    def test_self_alignment(self):
        self.assertAlmostEqual(alignment(self.z, self.z), 1.0, places=12)

    def test_reversed_ranks(self):
        values = -np.array(self.z.values)
        h = SimilarityMatrix(self.z.words, values)
        self.assertAlmostEqual(alignment(self.z, h), -1.0, places=12)

    def test_monotone_transform(self):
        h = SimilarityMatrix(self.z.words, np.exp(3 * self.z.values))
        self.assertAlmostEqual(alignment(self.z, h), 1.0, places=12)

    def test_tie_matches_spearman(self):
        z = SimilarityMatrix(
            ["a", "b", "c", "d"],
            [[1, 1, 2, 2], [1, 1, 4, 1], [2, 4, 1, 3], [2, 1, 3, 1]])
        h = SimilarityMatrix(
            ["a", "b", "c", "d"],
            [[1, 1, 3, 2], [1, 1, 4, 5], [3, 4, 1, 6], [2, 5, 6, 1]])
        self.assertAlmostEqual(
            alignment(z, h), scipy_stats.spearmanr(z.upper, h.upper)[0],
            delta=1e-12)

    def test_word_order_mismatch(self):
        h = self.z.restrict(["b", "a", "c", "d"])
        self.assertRaises(AlignmentDomainError, alignment, self.z, h)
