"""
Bundled examples - problem descriptions shipped under data/examples
"""
import json
import logging
from pathlib import Path
from typing import List, Optional

from rescaling.cli.schemas import ProblemSpec, parse_spec
from rescaling.config import settings
from rescaling.exceptions import SchemaError

logger = logging.getLogger(__name__)


def example_paths(directory: Optional[Path] = None) -> List[Path]:
    directory = Path(directory or settings.EXAMPLES_DIR)
    if not directory.is_dir():
        logger.warning(f"Examples directory {directory} not found")
        return []
    return sorted(directory.glob("*.json"))


def bundled_examples(directory: Optional[Path] = None) -> List[ProblemSpec]:
    """Every bundled example, validated, in file name order"""
    examples = []
    for path in example_paths(directory):
        with open(path, encoding="utf-8") as handle:
            try:
                data = json.load(handle)
            except json.JSONDecodeError as e:
                raise SchemaError(f"Bundled example {path.name} is not valid JSON: {e}") from e
        spec = parse_spec(data)
        if not spec.name:
            spec.name = path.stem
        examples.append(spec)
    return examples


def get_example(name: str, directory: Optional[Path] = None) -> ProblemSpec:
    for spec in bundled_examples(directory):
        if spec.name == name:
            return spec
    raise SchemaError(f"No bundled example named '{name}'")
