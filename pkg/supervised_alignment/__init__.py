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
Supervised representational alignment

Prune word-embedding features so that they best predict human similarity
judgments, then probe the retained feature subspaces against human
annotated semantic dimensions.
"""

__version__ = (1, 0, 0, "final", 0)
