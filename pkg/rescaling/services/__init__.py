# Services Package
from .tensor_lie_service import TensorLieService, tensor_lie_service
from .algebra_service import AlgebraService, algebra_service
from .quillen_service import QuillenService, quillen_service
from .lcs_service import LCSService, lcs_service
from .malcev_service import MalcevService, malcev_service
from .geometry_service import GeometryService, geometry_service

__all__ = [
    'TensorLieService',
    'tensor_lie_service',
    'AlgebraService',
    'algebra_service',
    'QuillenService',
    'quillen_service',
    'LCSService',
    'lcs_service',
    'MalcevService',
    'malcev_service',
    'GeometryService',
    'geometry_service',
]
