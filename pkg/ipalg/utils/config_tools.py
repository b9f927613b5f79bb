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

import json

from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, List, Union
from loguru import logger
from jsonschema import Draft7Validator

from ipalg.common.exceptions import Diagnostic, ModelParseException


def get_asset_relative_to(base, file) -> str:
    return f"{Path(base).parent.resolve()}/{file}"


@lru_cache(maxsize=None)
def _model_validator() -> Draft7Validator:
    with open(get_asset_relative_to(__file__, "../assets/model.schema.json"), "r") as handle:
        schema = json.load(handle)
    return Draft7Validator(schema)


def json_path(parts: Iterable[Union[str, int]]) -> str:
    path = "$"
    for part in parts:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def schema_diagnostics(instance: Any) -> List[Diagnostic]:
    errors = sorted(_model_validator().iter_errors(instance),
                    key=lambda error: [str(p) for p in error.absolute_path])
    return [Diagnostic(error.message, json_path(error.absolute_path)) for error in errors]


def load_model(model_path: Path):
    from ipalg.helper.model_helper import parse_model

    if not model_path.exists():
        raise ModelParseException([Diagnostic(f"Unable to find model file '{model_path}'")])

    try:
        with open(model_path, "r") as handle:
            text = handle.read()
    except OSError as ex:
        raise ModelParseException([Diagnostic(f"Unable to read model file '{model_path}': {ex}")]) from ex

    document = parse_model(text)
    logger.debug(f"Loaded model '{model_path}' with {len(document.pieces)} pieces over {document.space}")
    return document
