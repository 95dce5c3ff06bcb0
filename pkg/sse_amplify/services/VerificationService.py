import logging
import math
import time
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..schemas import SuiteReport, WeightedGraph
from ..utils import CorpusUtils
from ..utils.config import Settings, settings as default_settings
from ..utils.GraphUtils import relative_gap
from .AmplifyService import AmplifyService, PremiseUnmetError
from .GraphService import GraphService
from .ReductionService import DegenerateProjectionError, ReductionService
from .WalkService import WalkService

logger = logging.getLogger("sse_amplify")

# Block expansion every generated block of size <= 16 reaches.
SUITE_KAPPA = 0.25
POWERING_SECONDS = 120.0


class SuiteTally:
    """Counts checks of the form margin >= -tolerance."""

    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.checks = 0
        self.skipped = 0
        self.violations = 0
        self.worst_slack = math.inf
        self.started = time.perf_counter()

    def check(self, margin: float, tolerance: float = 0.0) -> bool:
        self.checks += 1
        self.worst_slack = min(self.worst_slack, margin)
        if margin < -tolerance:
            self.violations += 1
            return False
        return True

    def check_all(self, margins: np.ndarray, tolerance: float = 0.0) -> None:
        if margins.size == 0:
            return
        self.checks += int(margins.size)
        self.worst_slack = min(self.worst_slack, float(margins.min()))
        self.violations += int(np.count_nonzero(margins < -tolerance))

    def report(self) -> SuiteReport:
        report = SuiteReport(
            name=self.name,
            cases=self.cases,
            checks=self.checks,
            skipped=self.skipped,
            violations=self.violations,
            worst_slack=0.0 if math.isinf(self.worst_slack) else self.worst_slack,
            seconds=time.perf_counter() - self.started,
        )
        if report.violations:
            logger.warning(f"suite {self.name}: {report.violations} violations")
        else:
            logger.debug(f"suite {self.name}: {report.checks} checks passed")
        return report


class VerificationService:
    def __init__(
        self,
        graph_service: Optional[GraphService] = None,
        config: Optional[Settings] = None,
    ):
        self.config = config or default_settings
        self.graph_service = graph_service or GraphService(self.config)
        self.walk_service = WalkService(self.graph_service, self.config)
        self.amplify_service = AmplifyService(self.graph_service, self.walk_service, self.config)
        self.reduction_service = ReductionService(self.graph_service, self.config)

    def run_all(self, seed: int = 0, quick: bool = False, power_n: int = 120) -> List[SuiteReport]:
        rng = np.random.default_rng(seed)
        scale = 10 if quick else 1
        corpus = self.structured_corpus(rng)
        if quick:
            corpus = corpus[:6]
        return [
            self.walk_facts(rng, count=200 // scale),
            self.sweep_guarantee(rng, count=200 // scale),
            self.sandwich(rng, count=max(50 // scale, 2)),
            self.per_set_bound(corpus),
            self.lazy_halving(corpus),
            self.truncation(rng, count=500 // scale),
            self.certificates(rng, planted=max(20 // scale, 2), expanders=10 if not quick else 2),
            self.regularization(rng, count=10 if not quick else 3),
            self.peeling(rng, planted=5 if not quick else 1),
            self.powering(rng, n=power_n if not quick else min(power_n, 40)),
        ]

    def structured_corpus(self, rng: np.random.Generator) -> List[WeightedGraph]:
        """Named graphs topped up with random weighted ones to 20 graphs of n <= 10."""
        named = [graph for _, graph in CorpusUtils.named_corpus(self.graph_service)]
        extra = CorpusUtils.random_corpus(self.graph_service, rng, 20 - len(named), max_n=10)
        return named + extra

    def _random_graphs(self, rng: np.random.Generator, count: int, max_n: int) -> List[WeightedGraph]:
        return CorpusUtils.random_corpus(self.graph_service, rng, count, max_n=max_n)

    # ------------------------------------------------------------------ walks

    def walk_facts(self, rng: np.random.Generator, count: int = 200, max_n: int = 12) -> SuiteReport:
        tally = SuiteTally("walk_facts")
        for graph in self._random_graphs(rng, count, max_n):
            tally.cases += 1
            walk = self.walk_service.lazy_operator(graph)
            transition = self.walk_service.transition_matrix(walk)
            d = graph.degrees
            v = rng.normal(size=graph.n)
            scale = float(d @ (v * v))

            stepped = self.walk_service.apply_walk(walk, v, 1)
            norm_after = float(d @ (stepped * stepped))
            second = float(v @ (d * (transition @ (transition @ v))))
            tally.check(-abs(norm_after - second) / scale, 1e-9)

            first = float(v @ (d * (transition @ v)))
            tally.check((scale - first) / scale, 1e-12)
            tally.check((first - second) / scale, 1e-12)

            x = np.abs(v)
            mass = float(d @ x)
            tally.check(-abs(float(d @ (transition @ x)) - mass) / mass, 1e-9)
        return tally.report()

    def sweep_guarantee(self, rng: np.random.Generator, count: int = 200, max_n: int = 12) -> SuiteReport:
        tally = SuiteTally("sweep_guarantee")
        for graph in self._random_graphs(rng, count, max_n):
            tally.cases += 1
            z = rng.random(graph.n)
            z[rng.integers(graph.n)] = 0.0
            rayleigh = self.graph_service.rayleigh_quotient(graph, z)
            swept = self.graph_service.sweep_cut(graph, z)
            tally.check(math.sqrt(2 * rayleigh) - swept.expansion, 1e-9)
        return tally.report()

    # -------------------------------------------------------------- amplify

    def sandwich(
        self,
        rng: np.random.Generator,
        count: int = 50,
        max_n: int = 12,
        ts: Sequence[int] = (1, 2, 4, 8, 16),
        deltas: Sequence[float] = (0.15, 0.3),
        etas: Sequence[float] = (0.25, 0.5),
    ) -> SuiteReport:
        tally = SuiteTally("sandwich")
        for graph in self._random_graphs(rng, count, max_n):
            tally.cases += 1
            for t in ts:
                powered = self.walk_service.power_graph(graph, t)
                for delta in deltas:
                    measured = self.graph_service.profile_exact(powered, delta).phi
                    for eta in etas:
                        bounds = self.amplify_service.sandwich_bounds(graph, delta, eta, t)
                        if math.isinf(measured):
                            tally.skipped += 1
                            continue
                        tally.check(bounds.upper - measured, 1e-9)
                        tally.check(measured - bounds.lower, 1e-9)
        return tally.report()

    def per_set_bound(
        self, corpus: Sequence[WeightedGraph], ts: Sequence[int] = (1, 2, 4, 8)
    ) -> SuiteReport:
        tally = SuiteTally("per_set_bound")
        for graph in corpus:
            tally.cases += 1
            for t in ts:
                powered = self.walk_service.power_graph(graph, t)
                for (_, volumes, cuts), (_, powered_volumes, powered_cuts) in zip(
                    self.graph_service.subset_table(graph),
                    self.graph_service.subset_table(powered),
                ):
                    phi = cuts / volumes
                    phi_t = powered_cuts / powered_volumes
                    survival = 1 - (1 - phi / 2) ** t
                    tally.check_all(survival - phi_t, 1e-9)
                    tally.check_all(t / 2 * phi - phi_t, 1e-9)
        return tally.report()

    def lazy_halving(self, corpus: Sequence[WeightedGraph]) -> SuiteReport:
        tally = SuiteTally("lazy_halving")
        for graph in corpus:
            tally.cases += 1
            lazy = self.walk_service.power_graph(graph, 1)
            for (_, volumes, cuts), (_, lazy_volumes, lazy_cuts) in zip(
                self.graph_service.subset_table(graph),
                self.graph_service.subset_table(lazy),
            ):
                tally.check_all(-np.abs(lazy_cuts / lazy_volumes - cuts / volumes / 2), 1e-12)
        return tally.report()

    def truncation(self, rng: np.random.Generator, count: int = 500, max_n: int = 12) -> SuiteReport:
        tally = SuiteTally("truncation")
        for graph in self._random_graphs(rng, count, max_n):
            tally.cases += 1
            x = rng.random(graph.n)
            x[rng.random(graph.n) < 0.3] = 0.0
            if not np.any(x > 0):
                x[0] = 1.0
            d = graph.degrees
            theta = rng.uniform(0.0, 1.2) * float(d @ (x * x)) / (4 * float(d @ x))
            result = self.amplify_service.truncate(x, theta, graph)
            if not result.sparsity_condition or result.rayleigh_after is None:
                tally.skipped += 1
                continue
            tally.check(2 * result.rayleigh_before - result.rayleigh_after, 1e-9)
        return tally.report()

    def certificates(
        self, rng: np.random.Generator, planted: int = 20, expanders: int = 10
    ) -> SuiteReport:
        tally = SuiteTally("certificates")
        eta = 0.5
        for _ in range(planted):
            tally.cases += 1
            graph, members = CorpusUtils.planted_two_block(self.graph_service, rng)
            t = int(rng.choice([4, 8, 16]))
            self._check_certificate(tally, graph, members, t, eta, beta=0.9, planted=True)

        for k in range(expanders):
            tally.cases += 1
            n = 12 + (k // 2) % 5
            graph = CorpusUtils.complete_graph(self.graph_service, n)
            members = (0,) if k % 2 == 0 else (n - 1,)
            self._check_certificate(tally, graph, members, 16, eta, beta=0.1)
        return tally.report()

    def _check_certificate(
        self,
        tally: SuiteTally,
        graph: WeightedGraph,
        members: Tuple[int, ...],
        t: int,
        eta: float,
        beta: float,
        planted: bool = False,
    ) -> None:
        """Planted instances must meet the premise; a refusal counts only where it does not hold."""
        amplified, threshold = self.amplify_service.premise_check(graph, members, t, eta, beta)
        premise = amplified <= threshold
        if planted and not tally.check(threshold - amplified):
            logger.warning(f"planted instance misses the premise ({amplified} > {threshold})")
        try:
            certificate = self.amplify_service.extract_certificate(graph, members, t, eta, beta)
        except PremiseUnmetError:
            if premise:
                logger.warning(f"premise held ({amplified} <= {threshold}) but extraction failed")
            tally.check(-1.0 if premise else 0.0)
            return

        recheck = self.graph_service.expansion(graph, certificate.vertex_set.members)
        tally.check(beta - recheck.expansion)
        tally.check(certificate.volume_bound - recheck.volume)

    # ------------------------------------------------------------- reductions

    def regularization(self, rng: np.random.Generator, count: int = 10, sets_per_graph: int = 5) -> SuiteReport:
        tally = SuiteTally("regularization")
        named = CorpusUtils.named_corpus(self.graph_service)
        for _, graph in named[:count]:
            tally.cases += 1
            regularized = self.reduction_service.regularize(
                graph, seed=int(rng.integers(2**31)), kappa=SUITE_KAPPA
            )
            regular = regularized.graph
            tally.check(-float(np.max(np.abs(regular.degrees - 4.0))), 1e-12)
            tally.check(-abs(regular.n - graph.total_volume), 1e-9)

            for _ in range(sets_per_graph):
                members = self._random_proper_subset(rng, graph.n)
                lifted = self.reduction_service.lift_set(regularized, members)
                source = self.graph_service.expansion(graph, members)
                image = self.graph_service.expansion(regular, lifted)
                tally.check(-abs(image.cut_weight - source.cut_weight), 1e-12)
                tally.check(-abs(image.expansion - source.expansion / 4), 1e-12)
                self._check_projection(tally, rng, regularized, members, lifted)
        return tally.report()

    def _check_projection(self, tally, rng, regularized, members, lifted) -> None:
        perturbed = set(lifted)
        inside_blocks = [v for v in members if regularized.block_size[v] >= 2]
        if inside_blocks:
            v = inside_blocks[int(rng.integers(len(inside_blocks)))]
            perturbed.discard(regularized.block_start[v])
        outside = [u for u in range(regularized.graph.n) if u not in perturbed]
        if outside:
            perturbed.add(outside[int(rng.integers(len(outside)))])
        if not perturbed or len(perturbed) == regularized.graph.n:
            tally.skipped += 1
            return
        try:
            report = self.reduction_service.project_set(regularized, perturbed)
        except DegenerateProjectionError:
            tally.skipped += 1
            return

        tally.check(report.internal_cut_bound - report.internal_cut, 1e-9)
        tally.check(report.sym_diff_bound - report.sym_diff, 1e-9)
        if not report.guarantee_vacuous:
            tally.check(report.star_expansion_bound - report.star_expansion, 1e-9)
            tally.check(report.derived_guarantee - report.projected.expansion, 1e-9)

    def _random_proper_subset(self, rng: np.random.Generator, n: int) -> Tuple[int, ...]:
        size = int(rng.integers(1, n))
        return tuple(sorted(rng.choice(n, size=size, replace=False).tolist()))

    def peeling(self, rng: np.random.Generator, planted: int = 5) -> SuiteReport:
        tally = SuiteTally("peeling")
        triangles = nx.disjoint_union_all([nx.complete_graph(3)] * 3 + [nx.complete_graph(8)])
        instances = [
            (CorpusUtils.disjoint_cliques(self.graph_service, 4), 0.6, 0.5),
            (CorpusUtils.complete_graph(self.graph_service, 12), 0.25, 0.5),
            (CorpusUtils.from_networkx(self.graph_service, triangles), 25 / 74, 0.5),
            (CorpusUtils.two_cliques(self.graph_service, 5), 0.5, 0.5),
            (CorpusUtils.cycle_graph(self.graph_service, 12), 0.3, 0.5),
        ]
        for _ in range(planted):
            graph, _ = CorpusUtils.planted_two_block(self.graph_service, rng)
            instances.append((graph, 0.6, 0.5))

        for graph, delta, s in instances:
            tally.cases += 1
            result = self.reduction_service.peel_search(graph, delta, s)
            tally.check(graph.n - result.iterations)
            exists = self.graph_service.profile_window(graph, delta / 4, delta).phi < 1 - s
            tally.check(0.0 if exists == result.found else -1.0)
            if result.found:
                total = graph.total_volume
                recheck = self.graph_service.expansion(graph, result.vertex_set.members)
                tally.check(1 - s - recheck.expansion, 1e-12)
                tally.check(recheck.volume - delta * total / 4, 1e-9 * total)
                tally.check(delta * total - recheck.volume, 1e-9 * total)
        return tally.report()

    # -------------------------------------------------------------- powering

    def powering(self, rng: np.random.Generator, n: int = 120, t: int = 1024) -> SuiteReport:
        tally = SuiteTally("powering")
        tally.cases += 1
        weights = np.triu(rng.uniform(0.1, 1.0, size=(n, n)), k=1)
        graph = self.graph_service.graph_from_weights(weights + weights.T)

        started = time.perf_counter()
        report = self.walk_service.power_graph_report(graph, t)
        elapsed = time.perf_counter() - started
        logger.debug(f"powering n={n} t={t} took {elapsed:.3f}s")

        powered = report.graph.weights
        tally.check(-abs(report.squarings - (t.bit_length() - 1)))
        tally.check(-float(np.max(np.abs(powered - powered.T))), 1e-12)
        tally.check(-relative_gap(report.graph.degrees, graph.degrees), 1e-9)
        tally.check(POWERING_SECONDS - elapsed)
        return tally.report()
