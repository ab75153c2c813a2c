#!/usr/bin/env python
#
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

from setuptools import setup, find_packages


setup(
    name='supervised-alignment',
    version=":versiontools:supervised_alignment:__version__",
    author="The supervised-alignment developers",
    description=("Supervised pruning of word embeddings against human"
                 " similarity judgments and probing of the retained"
                 " features"),
    packages=find_packages(),
    test_suite='supervised_alignment.tests.test_suite',
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        ("License :: OSI Approved :: GNU Library or Lesser General Public"
         " License (LGPL)"),
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering"],
    install_requires=[
        'numpy >= 1.22',
        'scipy >= 1.7',
        'simplejson >= 2.0.9',
        'versiontools >= 1.3.1'],
    setup_requires=[
        'versiontools >= 1.3.1'],
    tests_require=[
        'testscenarios >= 0.1',
        'testtools >= 0.9.2'],
    entry_points={
        'console_scripts': [
            'supervised-alignment = supervised_alignment.cli:main']},
    zip_safe=True)
