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
One liners that make the code shorter
"""

from supervised_alignment.config import RunConfig
from supervised_alignment.pipeline import Pipeline
from supervised_alignment.validator import ConfigValidator


def validate(config_text, base_dir="."):
    """
    Validate the run configuration given as JSON text. The text is
    converted to a JSON object with :func:`simplejson.loads`.

    :param config_text:
        Text of the JSON run configuration
    :param base_dir:
        Directory that relative paths are resolved against
    :returns:
        Same as
        :meth:`supervised_alignment.validator.ConfigValidator.validate`
    :raises:
        Whatever may be raised by simplejson (in particular
        :class:`simplejson.JSONDecodeError`, a subclass of
        :class:`ValueError`)
    :raises:
        :class:`supervised_alignment.errors.ValidationError` listing every
        problem, :class:`supervised_alignment.errors.ConfigError` when the
        text is not a JSON object
    """
    return ConfigValidator.validate(RunConfig.loads(config_text, base_dir))


def run(config_path, seed=None, jobs=None, output=None):
    """
    Load, validate and run the configuration stored at ``config_path``.

    :returns:
        the run manifest
    """
    config = RunConfig.load(config_path).override(seed, jobs, output)
    ConfigValidator.validate(config)
    return Pipeline(config).run()
