from .AmplifyCommands import amplify
from .ProfileCommands import profile, classify
from .CertificateCommands import extract
from .ReductionCommands import regularize, peel
from .VerifyCommands import verify

__all__ = ["amplify", "profile", "classify", "extract", "regularize", "peel", "verify"]
