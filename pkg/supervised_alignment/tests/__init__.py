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
Package with unit tests for supervised-alignment
"""

import doctest
import unittest


def app_modules():
    return [
        'supervised_alignment',
        'supervised_alignment.cli',
        'supervised_alignment.config',
        'supervised_alignment.corpus_io',
        'supervised_alignment.errors',
        'supervised_alignment.extensions',
        'supervised_alignment.misc',
        'supervised_alignment.pipeline',
        'supervised_alignment.plsr',
        'supervised_alignment.pruning',
        'supervised_alignment.setanalysis',
        'supervised_alignment.shortcuts',
        'supervised_alignment.simkit',
        'supervised_alignment.stats',
        'supervised_alignment.validator',
    ]


def test_modules():
    return [
        'supervised_alignment.tests.test_cli',
        'supervised_alignment.tests.test_config',
        'supervised_alignment.tests.test_corpus_io',
        'supervised_alignment.tests.test_extensions',
        'supervised_alignment.tests.test_pipeline',
        'supervised_alignment.tests.test_plsr',
        'supervised_alignment.tests.test_pruning',
        'supervised_alignment.tests.test_setanalysis',
        'supervised_alignment.tests.test_simkit',
        'supervised_alignment.tests.test_stats',
        'supervised_alignment.tests.test_validator',
    ]


def test_suite():
    """
    Build an unittest.TestSuite() object with all the tests in _modules.
    Each module is harvested for both regular unittests and doctests
    """
    modules = app_modules() + test_modules()
    suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    for name in modules:
        __import__(name, fromlist=[''])
        tests = loader.loadTestsFromName(name)
        suite.addTests(tests)
        doctests = doctest.DocTestSuite(name)
        suite.addTests(doctests)
    return suite
