#
# This file is part of ipalg.
#
# Copyright (C) 2025-2026 ipalg contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, version 3.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see https://www.gnu.org/licenses/.
#

# Desk-scale guards, exceeding one of them is an explicit error
MAX_CELLS = 2 ** 24
MAX_VERTEX_DIMENSION = 12
MAX_VERTEX_CONSTRAINTS = 64
MAX_ELIMINATED_VARIABLES = 16
MAX_RAYS = 4096

DEFAULT_CONFIG_PATH = "/etc/ipalg/ipalg_defaults.json"
DEFAULT_CONFIG_ENV = "IPALG_DEFAULTS"

CELL_LABEL_SEPARATOR = "|"
SIGMA_REFERENCE_PREFIX = "sigma:"

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_GUARD_EXCEEDED = 3
