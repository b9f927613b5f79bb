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

import jsonpickle

from abc import ABC


class JSONMessage(ABC):
    # Plain JSON without py/object tags, key order follows attribute order
    def as_json(self, indent: int = 2) -> str:
        return jsonpickle.encode(self, unpicklable=False, indent=indent)
