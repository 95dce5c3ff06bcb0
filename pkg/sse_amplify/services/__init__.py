from .GraphService import GraphService
from .WalkService import WalkService
from .AmplifyService import AmplifyService
from .ReductionService import ReductionService
from .VerificationService import VerificationService
