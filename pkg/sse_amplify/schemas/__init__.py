from .GraphSchema import WeightedGraph, VertexSet
from .ProfileSchema import ProfileResult, SseVariant, SseVerdict, Verdict
from .WalkSchema import WalkOperator, PowerReport
from .AmplifySchema import (
    AmplifyParams,
    AmplifyReport,
    AmplifyResult,
    Certificate,
    CertificateTrace,
    SandwichBounds,
    TruncationResult,
    WalkLengthChoice,
)
from .ReductionSchema import PeelResult, ProjectionReport, RegularizedGraph
from .RunConfigSchema import ReportFormat, RunConfig
from .VerificationSchema import SuiteReport
