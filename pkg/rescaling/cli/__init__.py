# CLI Package
from .commands import run, execute
from .examples import bundled_examples, get_example
from .schemas import ProblemSpec, Command, parse_spec

__all__ = [
    'run',
    'execute',
    'bundled_examples',
    'get_example',
    'ProblemSpec',
    'Command',
    'parse_spec',
]
