from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from sse_amplify.repositories import GraphRepository
from sse_amplify.services import (
    AmplifyService,
    GraphService,
    ReductionService,
    VerificationService,
    WalkService,
)
from sse_amplify.utils import CorpusUtils
from sse_amplify.utils.config import Settings


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def graph_service(settings) -> GraphService:
    return GraphService(settings)


@pytest.fixture
def walk_service(graph_service, settings) -> WalkService:
    return WalkService(graph_service, settings)


@pytest.fixture
def amplify_service(graph_service, walk_service, settings) -> AmplifyService:
    return AmplifyService(graph_service, walk_service, settings)


@pytest.fixture
def reduction_service(graph_service, settings) -> ReductionService:
    return ReductionService(graph_service, settings)


@pytest.fixture
def verification_service(graph_service, settings) -> VerificationService:
    return VerificationService(graph_service, settings)


@pytest.fixture
def repository(graph_service) -> GraphRepository:
    return GraphRepository(graph_service)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def data_dir() -> Path:
    return CorpusUtils.DATA_DIR


@pytest.fixture
def two_triangles(graph_service):
    return CorpusUtils.disjoint_cliques(graph_service, 3)


@pytest.fixture
def cycle6(graph_service):
    return CorpusUtils.cycle_graph(graph_service, 6)


@pytest.fixture
def cycle4(graph_service):
    return CorpusUtils.cycle_graph(graph_service, 4)


@pytest.fixture
def single_edge(graph_service):
    return graph_service.build_graph(2, [(0, 1, 1.0)])


@pytest.fixture
def star3(graph_service):
    return CorpusUtils.star_graph(graph_service, 3)


def records(output: str, kind: str = None):
    """Parse record lines of a records-format report into dicts."""
    parsed = []
    for line in output.splitlines():
        if not line.startswith("record="):
            continue
        fields = dict(part.split("=", 1) for part in line.split(" "))
        if kind is None or fields["record"] == kind:
            parsed.append(fields)
    return parsed


@pytest.fixture
def parse_records():
    return records
