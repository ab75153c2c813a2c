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
Stuff that does not belong anywhere else
"""

import decimal
import zlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np


# List of types recognized as numeric (bool is handled separately)
NUMERIC_TYPES = (int, float, decimal.Decimal)

# Six significant digits round-trip typical published vectors
VALUE_FORMAT = "%.6g"


def format_value(value):
    """
    Format a number the way embedding files and compression input are written

    >>> format_value(0.1234567)
    '0.123457'
    >>> format_value(0.0)
    '0'
    """
    return VALUE_FORMAT % value


def format_cell(value):
    """
    Format a table cell so that reruns produce identical bytes.

    Floats use ``repr`` (shortest round-tripping form), NaN is written as
    an empty cell.

    >>> format_cell(0.5)
    '0.5'
    >>> format_cell(float('nan'))
    ''
    >>> format_cell(True)
    'true'
    """
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if np.isnan(value):
            return ""
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def feature_indices(features):
    """
    Coerce a retained feature set or a sequence of indices to a tuple of
    ints, keeping the given order.
    """
    indices = getattr(features, "indices", features)
    return tuple(int(index) for index in indices)


def upper_indices(k):
    """
    Row-major indices of the strict upper triangle of a k by k matrix

    >>> rows, cols = upper_indices(3)
    >>> list(zip(rows.tolist(), cols.tolist()))
    [(0, 1), (0, 2), (1, 2)]
    """
    return np.triu_indices(k, 1)


def task_seed(seed, label):
    """
    Derive a seed sequence for a task from the run seed and the task label.

    The label enters through CRC32 so that the value is stable across
    interpreter runs and independent of the position of the task.
    """
    return np.random.SeedSequence(
        [int(seed), zlib.crc32(label.encode("utf-8"))])


def parallel_map(func, items, jobs=1):
    """
    Apply ``func`` to every item and return the results in input order.

    With ``jobs`` above 1 the calls run on a thread pool; numpy releases
    the interpreter lock inside its kernels so threads are enough.
    """
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, items))
