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

import pytest

from hypothesis import HealthCheck, settings
from loguru import logger

settings.register_profile("ipalg", deadline=None, max_examples=100, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("ipalg")


@pytest.fixture(autouse=True)
def quiet_logging():
    logger.remove()
    yield
