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
Unit tests for corpus readers
"""

import io
import itertools

from testscenarios import TestWithScenarios
from testtools import TestCase

from supervised_alignment.corpus_io import (
    EmbeddingTable,
    JudgmentDataset,
    format_embeddings,
    parse_annotations,
    parse_embeddings,
    parse_judgments,
    read_judgment_sets,
)
from supervised_alignment.errors import (
    DomainError,
    DuplicationError,
    FormatError,
    MappingError,
    MissingWordError,
    RangeError,
    SelfPairError,
)


class EmbeddingParserTests(TestCase):

    def test_tokens_are_lowercased(self):
        table = parse_embeddings(["Cat 1 2", "DOG 3 4"])
        self.assertEqual(table.vocab, ("cat", "dog"))
        self.assertEqual(table.vector("dog").tolist(), [3.0, 4.0])

    def test_blank_lines_are_skipped(self):
        table = parse_embeddings(["a 1", "", "b 2", "   "])
        self.assertEqual(table.n, 2)

    def test_vocab_filter_keeps_file_order(self):
        table = parse_embeddings(["a 1", "b 2", "c 3"], ["c", "a"])
        self.assertEqual(table.vocab, ("a", "c"))

    def test_vocab_filter_reports_every_absent_word(self):
        ex = self.assertRaises(
            MissingWordError, parse_embeddings, ["a 1", "b 2"],
            ["zebra", "a", "apple"])
        self.assertEqual(ex.words, ["apple", "zebra"])

    def test_values_are_read_only(self):
        table = parse_embeddings(["a 1 2", "b 3 4"])
        self.assertRaises(ValueError, table.values.__setitem__, (0, 0), 5)

    def test_format_is_read_back(self):
        table = EmbeddingTable(["a", "b"], [[0.25, -1.5], [3.0, 0.0]])
        stream = io.StringIO()
        format_embeddings(table, stream)
        self.assertEqual(stream.getvalue(), "a 0.25 -1.5\nb 3 0\n")
        self.assertEqual(
            parse_embeddings(io.StringIO(stream.getvalue())), table)


class EmbeddingParserFailureTests(TestWithScenarios, TestCase):

    scenarios = [
        ("width_mismatch", {
            'lines': ["a 1 2", "b 1 2", "c 1"],
            'line': 3,
        }),
        ("duplicate_token", {
            'lines': ["a 1", "b 2", "A 3"],
            'line': 3,
        }),
        ("not_a_number", {
            'lines': ["a 1", "b x"],
            'line': 2,
        }),
        ("non_finite", {
            'lines': ["a 1", "b nan"],
            'line': 2,
        }),
        ("token_without_values", {
            'lines': ["a"],
            'line': 1,
        }),
    ]

    def test_format_error_names_the_line(self):
        ex = self.assertRaises(FormatError, parse_embeddings, self.lines)
        self.assertEqual(ex.line, self.line)


class EmbeddingTableTests(TestCase):

    def setUp(self):
        super(EmbeddingTableTests, self).setUp()
        self.table = EmbeddingTable(
            ["a", "b", "c"], [[1, 2, 3], [4, 5, 6], [7, 8, 9]])

    def test_restrict_follows_requested_order(self):
        table = self.table.restrict(["c", "a"])
        self.assertEqual(table.vocab, ("c", "a"))
        self.assertEqual(table.values[0].tolist(), [7, 8, 9])

    def test_columns(self):
        self.assertEqual(
            self.table.columns([2, 0]).tolist(),
            [[3, 1], [6, 4], [9, 7]])

    def test_columns_out_of_range(self):
        self.assertRaises(DomainError, self.table.columns, [3])

    def test_empty_columns(self):
        self.assertRaises(DomainError, self.table.columns, [])

    def test_unknown_word(self):
        self.assertRaises(MissingWordError, self.table.index, "zebra")

    def test_too_small(self):
        self.assertRaises(DomainError, EmbeddingTable, ["a"], [[1.0]])


JUDGMENTS = (
    "group,category,participant,word1,word2,rating\n"
    "blind,light,p1,shine,glow,6\n"
    "blind,light,p1,shine,dark,2\n"
    "blind,light,p1,glow,dark,1\n"
    "sighted,light,p2,glow,shine,7\n"
    "sighted,sound,p3,bang,hum,3\n"
)


class JudgmentReaderTests(TestCase):

    def test_sets_are_split_and_sorted(self):
        datasets = read_judgment_sets(io.StringIO(JUDGMENTS))
        self.assertEqual(
            list(datasets),
            [("blind", "light"), ("sighted", "light"), ("sighted", "sound")])
        blind = datasets[("blind", "light")]
        self.assertEqual(blind.words, ("dark", "glow", "shine"))
        self.assertEqual(blind.group_label, "blind")
        self.assertEqual(blind.category_label, "light")
        self.assertEqual(blind.n_ratings, 3)

    def test_pairs_are_unordered(self):
        datasets = read_judgment_sets(io.StringIO(JUDGMENTS))
        ratings = datasets[("sighted", "light")].ratings("p2")
        self.assertEqual(dict(ratings), {("glow", "shine"): 7.0})

    def test_labels_filter(self):
        datasets = read_judgment_sets(
            io.StringIO(JUDGMENTS), category_label="sound")
        self.assertEqual(list(datasets), [("sighted", "sound")])

    def test_single_set(self):
        dataset = parse_judgments(
            io.StringIO(JUDGMENTS), category_label="light",
            group_label="blind")
        self.assertEqual(len(dataset), 1)

    def test_several_sets_need_a_selection(self):
        self.assertRaises(
            DomainError, parse_judgments, io.StringIO(JUDGMENTS))

    def test_without_group_columns(self):
        dataset = parse_judgments(io.StringIO(
            "participant,word1,word2,rating\np,a,b,3\np,a,c,4\n"),
            category_label="toy")
        self.assertEqual(dataset.category_label, "toy")
        self.assertEqual(dataset.group_label, "")
        self.assertEqual(dataset.words, ("a", "b", "c"))

    def test_row_order_does_not_matter(self):
        header, rows = JUDGMENTS.splitlines()[0], JUDGMENTS.splitlines()[1:]
        expected = read_judgment_sets(io.StringIO(JUDGMENTS))
        for order in itertools.permutations(rows):
            shuffled = "\n".join((header,) + order) + "\n"
            self.assertEqual(
                read_judgment_sets(io.StringIO(shuffled)), expected)

    def test_fractional_ratings_are_kept(self):
        dataset = parse_judgments(io.StringIO(
            "participant,word1,word2,rating\np,a,b,4.5\np,a,c,1\n"))
        self.assertEqual(dataset.ratings("p")[("a", "b")], 4.5)

    def test_header_is_required(self):
        ex = self.assertRaises(
            FormatError, read_judgment_sets,
            io.StringIO("participant,word1,word2\np,a,b\n"))
        self.assertEqual(ex.line, 1)


class JudgmentReaderFailureTests(TestWithScenarios, TestCase):

    scenarios = [
        ("rating_above_range", {
            'rows': "p,a,b,8\n",
            'raises': RangeError,
        }),
        ("rating_below_range", {
            'rows': "p,a,b,0\n",
            'raises': RangeError,
        }),
        ("self_pair", {
            'rows': "p,a,a,4\n",
            'raises': SelfPairError,
        }),
        ("duplicate_pair_reversed", {
            'rows': "p,a,b,4\np,b,a,5\n",
            'raises': DuplicationError,
        }),
        ("rating_not_a_number", {
            'rows': "p,a,b,high\n",
            'raises': FormatError,
        }),
    ]

    def test_rejected(self):
        source = io.StringIO("participant,word1,word2,rating\n" + self.rows)
        self.assertRaises(self.raises, read_judgment_sets, source)


class JudgmentDatasetTests(TestCase):

    def setUp(self):
        super(JudgmentDatasetTests, self).setUp()
        self.dataset = JudgmentDataset(
            ["a", "b", "c"],
            {"p2": {("a", "b"): 2, ("b", "c"): 5},
             "p1": {("a", "c"): 7}},
            "cat", "grp")

    def test_participants_sorted(self):
        self.assertEqual(self.dataset.participants, ("p1", "p2"))

    def test_pairs(self):
        self.assertEqual(
            self.dataset.pairs(),
            [("a", "b"), ("a", "c"), ("b", "c")])

    def test_restrict_drops_empty_participants(self):
        dataset = self.dataset.restrict(["a", "b"])
        self.assertEqual(dataset.participants, ("p2",))
        self.assertEqual(dataset.n_ratings, 1)

    def test_drop_participants_ignores_unknown(self):
        dataset = self.dataset.drop_participants(["p1", "nobody"])
        self.assertEqual(dataset.participants, ("p2",))
        self.assertEqual(dataset.words, ("a", "b", "c"))

    def test_unknown_word(self):
        self.assertRaises(
            MissingWordError, JudgmentDataset, ["a", "b"],
            {"p": {("a", "z"): 3}})


DOMAIN_MAP = (
    "dimension,domain\n"
    "vision,sensory\naudition,sensory\nsocial,social\n")


class AnnotationParserTests(TestCase):

    def test_parse(self):
        table = parse_annotations(
            io.StringIO("word,vision,audition,social\n"
                        "Sun,6,0.5,1\nbell,1,6,2\n"),
            io.StringIO(DOMAIN_MAP))
        self.assertEqual(table.words, ("sun", "bell"))
        self.assertEqual(table.domains, ("sensory", "social"))
        self.assertEqual(table.domain_members("sensory"),
                         ("vision", "audition"))
        self.assertEqual(table.values[1].tolist(), [1.0, 6.0, 2.0])

    def test_repeated_word_keeps_first(self):
        table = parse_annotations(
            io.StringIO("word,vision,audition,social\n"
                        "sun,6,0,1\nsun,1,1,1\n"),
            io.StringIO(DOMAIN_MAP))
        self.assertEqual(table.words, ("sun",))
        self.assertEqual(table.values[0].tolist(), [6.0, 0.0, 1.0])

    def test_dimension_without_domain(self):
        self.assertRaises(
            MappingError, parse_annotations,
            io.StringIO("word,vision,smell\nsun,6,0\n"),
            io.StringIO(DOMAIN_MAP))

    def test_negative_rating(self):
        self.assertRaises(
            RangeError, parse_annotations,
            io.StringIO("word,vision,audition,social\nsun,-1,0,1\n"),
            io.StringIO(DOMAIN_MAP))

    def test_domain_mapped_twice(self):
        self.assertRaises(
            MappingError, parse_annotations,
            io.StringIO("word,vision\nsun,1\n"),
            io.StringIO("dimension,domain\nvision,a\nvision,b\n"))
