from .services import AmplifyService, GraphService, ReductionService, VerificationService, WalkService
from .repositories import GraphRepository

__version__ = "1.0.0"
