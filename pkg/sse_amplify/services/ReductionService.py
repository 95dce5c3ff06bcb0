import logging
import math
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..schemas import PeelResult, ProjectionReport, RegularizedGraph, VertexSet, WeightedGraph
from ..utils.config import Settings, settings as default_settings
from ..utils.GraphUtils import popcounts
from .GraphService import (
    EmptySetError,
    FullSetError,
    GraphService,
    IndexOutOfRangeError,
    InvalidDeltaError,
    InvalidGapParametersError,
)

logger = logging.getLogger("sse_amplify")

# finder(G_i, delta, s) -> members of a set in G_i, or None
Finder = Callable[[WeightedGraph, float, float], Optional[Sequence[int]]]

EXPANDER_DEGREE = 3.0
VOLUME_SLACK = 1e-12
EXPANSION_SLACK = 1e-12


class ReductionServiceError(Exception):
    """Base exception for ReductionService errors"""

    pass


class ExpanderGenerationFailedError(ReductionServiceError):
    pass


class WeightedInputUnsupportedError(ReductionServiceError):
    """Raised when regularize receives weights other than 1 or self-loops"""

    pass


class DegenerateProjectionError(ReductionServiceError):
    pass


class FinderContractViolationError(ReductionServiceError):
    pass


class ReductionService:
    def __init__(
        self,
        graph_service: Optional[GraphService] = None,
        config: Optional[Settings] = None,
    ):
        self.config = config or default_settings
        self.graph_service = graph_service or GraphService(self.config)

    # -------------------------------------------------------------- expanders

    def build_expander(
        self, m: int, seed: int = 0, kappa: Optional[float] = None
    ) -> WeightedGraph:
        """3-regular (by weight) block on m vertices with edge expansion >= kappa."""
        if m < 1:
            raise ExpanderGenerationFailedError(f"block size must be positive, got {m}")
        kappa = self.config.KAPPA if kappa is None else kappa

        if m == 1:
            return self.graph_service.build_graph(1, [(0, 0, EXPANDER_DEGREE)])
        if m <= 4:
            weight = EXPANDER_DEGREE / (m - 1)
            edges = [(i, j, weight) for i in range(m) for j in range(i + 1, m)]
            return self.graph_service.build_graph(m, edges)

        for attempt in range(self.config.EXPANDER_RETRY_CAP):
            rng = np.random.default_rng([seed, m, attempt])
            candidate = self.graph_service.graph_from_weights(
                self._permutation_multigraph(m, rng)
            )
            measured = self.block_expansion(candidate)
            if measured >= kappa:
                logger.debug(f"expander m={m} accepted on attempt {attempt}: {measured}")
                return candidate
            logger.debug(f"expander m={m} attempt {attempt} rejected: {measured} < {kappa}")

        raise ExpanderGenerationFailedError(
            f"no block of size {m} reached expansion {kappa} "
            f"in {self.config.EXPANDER_RETRY_CAP} attempts"
        )

    def _permutation_multigraph(self, m: int, rng: np.random.Generator) -> np.ndarray:
        """Hamiltonian cycle plus a perfect matching, multi-edges summed.

        For odd m the unmatched vertex gets a self-loop of weight 1.
        """
        weights = np.zeros((m, m))
        cycle = rng.permutation(m)
        for a, b in zip(cycle, np.roll(cycle, -1)):
            weights[a, b] += 1.0
            weights[b, a] += 1.0
        matching = rng.permutation(m)
        for a, b in zip(matching[0:m - 1:2], matching[1::2]):
            weights[a, b] += 1.0
            weights[b, a] += 1.0
        if m % 2:
            weights[matching[-1], matching[-1]] += 1.0
        return weights

    def block_expansion(self, block: WeightedGraph) -> float:
        """min E(B, A-B) / min(|B|, |A-B|); spectral lower bound past the brute-force cap."""
        m = block.n
        if m == 1:
            return math.inf
        if m <= self.config.EXPANDER_BRUTE_FORCE_CAP:
            best = math.inf
            for masks, _, cuts in self.graph_service.subset_table(block):
                sizes = popcounts(masks, m)
                ratios = cuts / np.minimum(sizes, m - sizes)
                best = min(best, float(ratios.min()))
            return best

        sqrt_degrees = np.sqrt(block.degrees)
        normalized = block.weights / np.outer(sqrt_degrees, sqrt_degrees)
        second = float(np.linalg.eigvalsh(normalized)[-2])
        return (1 - second) / 2

    # --------------------------------------------------------- regularization

    def regularize(
        self, graph: WeightedGraph, seed: int = 0, kappa: Optional[float] = None
    ) -> RegularizedGraph:
        if graph.has_self_loops or any(w != 1.0 for _, _, w in graph.edges):
            raise WeightedInputUnsupportedError(
                "regularization needs an unweighted graph without self-loops"
            )
        kappa = self.config.KAPPA if kappa is None else kappa

        sizes = [int(round(d)) for d in graph.degrees]
        starts = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(int).tolist()
        total = sum(sizes)
        weights = np.zeros((total, total))
        for v, (start, size) in enumerate(zip(starts, sizes)):
            block = self.build_expander(size, seed=seed + v, kappa=kappa)
            weights[start:start + size, start:start + size] = block.weights

        next_port = list(starts)
        ports = []
        for u, v, _ in graph.edges:
            pu, pv = next_port[u], next_port[v]
            next_port[u] += 1
            next_port[v] += 1
            weights[pu, pv] += 1.0
            weights[pv, pu] += 1.0
            ports.append((pu, pv))

        regular = self.graph_service.graph_from_weights(weights)
        logger.debug(f"regularized n={graph.n} into n'={regular.n}")
        return RegularizedGraph(
            graph=regular,
            source=graph,
            block_start=tuple(starts),
            block_size=tuple(sizes),
            ports=tuple(ports),
            kappa=kappa,
        )

    def lift_set(self, regularized: RegularizedGraph, members: Iterable[int]) -> Tuple[int, ...]:
        members = self.graph_service.normalize_members(regularized.source, members)
        return tuple(u for v in members for u in regularized.block(v))

    def project_set(
        self, regularized: RegularizedGraph, members: Iterable[int]
    ) -> ProjectionReport:
        """Round a set of G' to whole blocks and report the bounds of the rounding."""
        regular = regularized.graph
        lifted = self.graph_service.expansion(regular, members)
        beta = lifted.expansion
        kappa = regularized.kappa

        inside = np.zeros(regular.n, dtype=bool)
        inside[list(lifted.members)] = True
        selected = []
        internal_cut = 0.0
        sym_diff = 0
        for v in range(regularized.source_n):
            block = np.asarray(regularized.block(v))
            hit = block[inside[block]]
            miss = block[~inside[block]]
            if 2 * hit.size >= block.size:
                selected.append(v)
                sym_diff += miss.size
            else:
                sym_diff += hit.size
            if hit.size and miss.size:
                internal_cut += float(regular.weights[np.ix_(hit, miss)].sum())

        if not selected or len(selected) == regularized.source_n:
            raise DegenerateProjectionError(
                f"projection selects {len(selected)} of {regularized.source_n} vertices"
            )

        star = self.graph_service.expansion(regular, self.lift_set(regularized, selected))
        projected = self.graph_service.expansion(regularized.source, selected)

        size = len(lifted)
        ratio = 4 * beta / kappa
        fields = {}
        vacuous = ratio >= 1
        if vacuous:
            logger.warning(
                f"projection guarantee is vacuous: 4 beta / kappa = {ratio} >= 1"
            )
        else:
            star_bound = beta * (1 + 4 / kappa) / (1 - ratio)
            stated = 10 / kappa * beta
            fields = dict(
                star_expansion_bound=star_bound,
                derived_guarantee=4 * star_bound,
                stated_guarantee=stated,
                stated_guarantee_holds=projected.expansion <= stated + EXPANSION_SLACK,
            )

        return ProjectionReport(
            projected=projected,
            beta=beta,
            kappa=kappa,
            lifted_size=size,
            internal_cut=internal_cut,
            internal_cut_bound=4 * beta * size,
            sym_diff=sym_diff,
            sym_diff_bound=ratio * size,
            star_expansion=star.expansion,
            guarantee_vacuous=vacuous,
            **fields,
        )

    # ---------------------------------------------------------------- peeling

    def exact_finder(
        self, graph: WeightedGraph, delta: float, s: float
    ) -> Optional[Tuple[int, ...]]:
        """In-window witness when one expands poorly enough, else the best set of volume <= delta N."""
        windowed = self.graph_service.profile_window(graph, delta / 4, delta)
        if windowed.found and windowed.phi < 1 - s:
            return windowed.witness.members
        result = self.graph_service.profile_exact(graph, delta)
        if result.found and result.phi < 1 - s:
            return result.witness.members
        return None

    def sweep_finder(
        self, graph: WeightedGraph, delta: float, s: float
    ) -> Optional[Tuple[int, ...]]:
        result = self.graph_service.profile_heuristic(graph, delta)
        if result.found and result.phi < 1 - s:
            return result.witness.members
        return None

    def peel_search(
        self,
        graph: WeightedGraph,
        delta: float,
        s: float,
        finder: Optional[Finder] = None,
    ) -> PeelResult:
        """Grow a set with volume in [delta N / 4, delta N] out of small non-expanding pieces.

        Each round hands the remaining graph (removed weight kept as self-loops,
        so volumes stay those of G) to ``finder``.
        """
        if not 0 < delta <= 1:
            raise InvalidDeltaError(f"delta must lie in (0, 1], got {delta}")
        if not 0 < s < 1:
            raise InvalidGapParametersError(f"s must lie in (0, 1), got {s}")

        if finder is None:
            if graph.n <= self.graph_service.exact_cap:
                finder = self.exact_finder
            else:
                logger.warning(
                    f"n = {graph.n} exceeds the exact cap, peeling with the sweep heuristic"
                )
                finder = self.sweep_finder
        heuristic = finder == self.sweep_finder

        total = graph.total_volume
        low = delta * total / 4 * (1 - VOLUME_SLACK)
        high = delta * total * (1 + VOLUME_SLACK)

        remaining = np.arange(graph.n)
        collected: List[int] = []
        pieces: List[Tuple[int, ...]] = []
        iterations = 0
        outcome: Optional[Tuple[int, ...]] = None
        while True:
            collected_volume = float(graph.degrees[collected].sum()) if collected else 0.0
            if collected and low <= collected_volume <= high:
                outcome = tuple(sorted(collected))
                break
            if remaining.size == 0 or iterations >= graph.n:
                break

            subgraph = self.graph_service.induced_with_loops(graph, remaining)
            iterations += 1
            local = finder(subgraph, delta, s)
            if local is None:
                break
            self._check_finder(subgraph, local, delta, s)

            piece = tuple(sorted(remaining[list(local)].tolist()))
            piece_volume = float(graph.degrees[list(piece)].sum())
            if low <= piece_volume <= high:
                if self.graph_service.expansion(graph, piece).expansion <= 1 - s:
                    outcome = piece
                    break
                merged = tuple(sorted(collected + list(piece)))
                if float(graph.degrees[list(merged)].sum()) <= high:
                    outcome = merged
                    break
                logger.warning("in-window piece expands in G and cannot be merged")
                break

            pieces.append(piece)
            collected.extend(piece)
            remaining = np.setdiff1d(remaining, piece)

        found = self._verified(graph, outcome, low, high, s) if outcome else None
        return PeelResult(
            found=found is not None,
            vertex_set=found,
            iterations=iterations,
            pieces=tuple(pieces),
            delta=delta,
            s=s,
            heuristic=heuristic,
        )

    def _check_finder(
        self, subgraph: WeightedGraph, local: Sequence[int], delta: float, s: float
    ) -> None:
        try:
            returned = self.graph_service.expansion(subgraph, local)
        except (EmptySetError, FullSetError, IndexOutOfRangeError) as e:
            raise FinderContractViolationError(f"finder returned a degenerate set: {e}")
        limit = delta * subgraph.total_volume * (1 + VOLUME_SLACK)
        if not (returned.expansion < 1 - s and returned.volume <= limit):
            raise FinderContractViolationError(
                f"finder set has expansion {returned.expansion} and volume "
                f"{returned.volume}; needs < {1 - s} and <= {limit}"
            )

    def _verified(
        self,
        graph: WeightedGraph,
        members: Tuple[int, ...],
        low: float,
        high: float,
        s: float,
    ) -> Optional[VertexSet]:
        candidate = self.graph_service.expansion(graph, members)
        if candidate.expansion <= 1 - s + EXPANSION_SLACK and low <= candidate.volume <= high:
            return candidate
        logger.warning(
            f"peeled set rejected on re-verification: expansion {candidate.expansion}, "
            f"volume {candidate.volume}"
        )
        return None
