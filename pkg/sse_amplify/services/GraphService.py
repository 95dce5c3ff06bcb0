import logging
import math
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..schemas import ProfileResult, SseVariant, SseVerdict, Verdict, VertexSet, WeightedGraph
from ..utils.config import Settings, settings as default_settings
from ..utils.constants import SSE_PRIME_SOUNDNESS_FACTOR
from ..utils.GraphUtils import indicator_rows, members_from_mask

logger = logging.getLogger("sse_amplify")

# Relative slack on volume-window boundaries (delta * N is rarely exact in floats).
VOLUME_SLACK = 1e-12


class GraphServiceError(Exception):
    """Base exception for GraphService errors"""

    pass


class DuplicateEdgeError(GraphServiceError):
    """Raised when the same unordered pair appears twice in an edge list"""

    pass


class NonPositiveWeightError(GraphServiceError):
    pass


class IsolatedVertexError(GraphServiceError):
    """Raised when a vertex ends up with zero degree"""

    pass


class IndexOutOfRangeError(GraphServiceError):
    pass


class AsymmetricWeightsError(GraphServiceError):
    pass


class EmptySetError(GraphServiceError):
    pass


class FullSetError(GraphServiceError):
    pass


class GraphTooLargeForExactOracleError(GraphServiceError):
    pass


class ZeroVectorError(GraphServiceError):
    pass


class InvalidVectorError(GraphServiceError):
    """Raised for vectors of the wrong length or with negative entries"""

    pass


class InvalidGapParametersError(GraphServiceError):
    pass


class InvalidDeltaError(GraphServiceError):
    pass


class GraphService:
    def __init__(self, config: Optional[Settings] = None, exact_cap: Optional[int] = None):
        self.config = config or default_settings
        self.exact_cap = exact_cap if exact_cap is not None else self.config.EXACT_CAP

    # ------------------------------------------------------------------ build

    def build_graph(
        self, n: int, edges: Iterable[Tuple[int, int, float]]
    ) -> WeightedGraph:
        """Build a graph from (i, j, w) triples; i == j adds a self-loop."""
        if n < 1:
            raise IndexOutOfRangeError(f"vertex count must be positive, got {n}")

        weights = np.zeros((n, n))
        seen = set()
        canonical = []
        for i, j, w in edges:
            i, j, w = int(i), int(j), float(w)
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRangeError(f"edge ({i}, {j}) is outside 0..{n - 1}")
            if not w > 0:
                raise NonPositiveWeightError(f"edge ({i}, {j}) has weight {w}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise DuplicateEdgeError(f"pair {key} appears more than once")
            seen.add(key)
            weights[key[0], key[1]] = w
            weights[key[1], key[0]] = w
            canonical.append((key[0], key[1], w))

        return self._assemble(weights, tuple(canonical))

    def graph_from_weights(self, matrix: np.ndarray) -> WeightedGraph:
        """Build a graph from a dense symmetric non-negative weight matrix."""
        weights = np.array(matrix, dtype=float)
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
            raise AsymmetricWeightsError(f"weights must be square, got {weights.shape}")
        if weights.size and weights.min() < 0:
            raise NonPositiveWeightError("weights contain negative entries")
        scale = max(1.0, float(np.abs(weights).max()) if weights.size else 1.0)
        if not np.allclose(weights, weights.T, rtol=0.0, atol=1e-12 * scale):
            raise AsymmetricWeightsError("weight matrix is not symmetric")

        weights = 0.5 * (weights + weights.T)
        rows, cols = np.nonzero(np.triu(weights))
        edges = tuple(
            zip(rows.tolist(), cols.tolist(), weights[rows, cols].tolist())
        )
        return self._assemble(weights, edges)

    def _assemble(self, weights: np.ndarray, edges) -> WeightedGraph:
        degrees = weights.sum(axis=1)
        isolated = np.flatnonzero(degrees <= 0)
        if isolated.size:
            raise IsolatedVertexError(
                f"vertices with zero degree: {isolated.tolist()[:10]}"
            )
        return WeightedGraph(
            n=weights.shape[0],
            weights=weights,
            degrees=degrees,
            total_volume=float(degrees.sum()),
            edges=edges,
        )

    def induced_with_loops(
        self, graph: WeightedGraph, keep: Sequence[int]
    ) -> WeightedGraph:
        """Subgraph on ``keep`` with weight to removed vertices folded into self-loops.

        Degrees, and therefore the total volume, are unchanged.
        """
        keep = np.asarray(sorted(set(int(v) for v in keep)), dtype=int)
        if keep.size == 0:
            raise EmptySetError("cannot induce a subgraph on no vertices")
        sub = graph.weights[np.ix_(keep, keep)].copy()
        lost = np.clip(graph.degrees[keep] - sub.sum(axis=1), 0.0, None)
        sub[np.diag_indices_from(sub)] += lost
        return self.graph_from_weights(sub)

    # -------------------------------------------------------------- expansion

    def normalize_members(self, graph: WeightedGraph, members: Iterable[int]) -> Tuple[int, ...]:
        normalized = tuple(sorted(set(int(v) for v in members)))
        for v in normalized:
            if not 0 <= v < graph.n:
                raise IndexOutOfRangeError(f"vertex {v} is outside 0..{graph.n - 1}")
        return normalized

    def expansion(self, graph: WeightedGraph, members: Iterable[int]) -> VertexSet:
        members = self.normalize_members(graph, members)
        if not members:
            raise EmptySetError("expansion of the empty set is undefined")
        if len(members) == graph.n:
            raise FullSetError("expansion of the full vertex set is undefined")

        inside = np.zeros(graph.n, dtype=bool)
        inside[list(members)] = True
        volume = float(graph.degrees[inside].sum())
        cut_weight = float(graph.weights[np.ix_(inside, ~inside)].sum())
        return VertexSet(
            members=members,
            volume=volume,
            cut_weight=cut_weight,
            expansion=cut_weight / volume,
        )

    def rayleigh_quotient(self, graph: WeightedGraph, x: np.ndarray) -> float:
        """x^T L x / x^T D x with L = D - A; self-loops cancel."""
        x = self._check_vector(graph, x, allow_negative=True)
        denominator = float(graph.degrees @ (x * x))
        if denominator <= 0:
            raise ZeroVectorError("Rayleigh quotient of the zero vector is undefined")
        numerator = denominator - float(x @ (graph.weights @ x))
        return max(numerator, 0.0) / denominator

    # ------------------------------------------------------------ exact oracle

    def check_exact_cap(self, graph: WeightedGraph) -> None:
        if graph.n > self.exact_cap:
            raise GraphTooLargeForExactOracleError(
                f"n = {graph.n} exceeds the exact oracle cap {self.exact_cap}"
            )

    def subset_table(
        self, graph: WeightedGraph
    ) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """Yield (masks, volumes, cut weights) for every non-empty proper subset.

        Masks come in increasing order, in blocks of 2**ORACLE_CHUNK_BITS.
        """
        n = graph.n
        last = (1 << n) - 1
        block = 1 << min(self.config.ORACLE_CHUNK_BITS, max(n, 1))
        for start in range(1, last, block):
            masks = np.arange(start, min(start + block, last), dtype=np.int64)
            rows = indicator_rows(masks, n)
            volumes = rows @ graph.degrees
            cuts = np.einsum("ij,ij->i", rows @ graph.weights, 1.0 - rows)
            yield masks, volumes, cuts

    def profile_window(
        self, graph: WeightedGraph, lower: float, upper: float
    ) -> ProfileResult:
        """Exact minimal expansion over sets with vol in [lower*N, upper*N]."""
        if not 0 < upper <= 1 or not 0 <= lower <= upper:
            raise InvalidDeltaError(f"invalid volume window [{lower}, {upper}]")
        self.check_exact_cap(graph)

        total = graph.total_volume
        low_volume = lower * total * (1 - VOLUME_SLACK)
        high_volume = upper * total * (1 + VOLUME_SLACK)
        tie = self.config.TIE_TOLERANCE

        best = math.inf
        candidate_masks: List[np.ndarray] = []
        candidate_phis: List[np.ndarray] = []
        for masks, volumes, cuts in self.subset_table(graph):
            ok = (volumes <= high_volume) & (volumes >= low_volume)
            if not ok.any():
                continue
            phis = cuts[ok] / volumes[ok]
            chunk_best = float(phis.min())
            if chunk_best > best + tie:
                continue
            best = min(best, chunk_best)
            near = phis <= best + tie
            candidate_masks.append(masks[ok][near])
            candidate_phis.append(phis[near])

        if math.isinf(best):
            logger.debug(f"no subset with volume fraction in [{lower}, {upper}]")
            return ProfileResult(delta=upper, lower=lower, phi=math.inf, exact=True)

        masks = np.concatenate(candidate_masks)
        phis = np.concatenate(candidate_phis)
        tied = masks[phis <= best + tie]
        members = min((members_from_mask(int(m)) for m in tied))
        witness = self.expansion(graph, members)
        return ProfileResult(
            delta=upper, lower=lower, phi=witness.expansion, witness=witness, exact=True
        )

    def profile_exact(self, graph: WeightedGraph, delta: float) -> ProfileResult:
        if not 0 < delta <= 1:
            raise InvalidDeltaError(f"delta must lie in (0, 1], got {delta}")
        return self.profile_window(graph, 0.0, delta)

    # ------------------------------------------------------------------ sweep

    def sweep_cut(
        self,
        graph: WeightedGraph,
        z: np.ndarray,
        max_volume: Optional[float] = None,
    ) -> VertexSet:
        """Best prefix of the support of z in descending order (ties by index)."""
        z = self._check_vector(graph, z)
        support = np.flatnonzero(z > 0)
        if support.size == 0:
            raise ZeroVectorError("sweep needs a vector with positive entries")

        best = self._sweep(graph, z, support, max_volume)
        if best is None:
            raise FullSetError("no proper prefix of the support fits the volume cap")
        return self.expansion(graph, best)

    def _sweep(
        self,
        graph: WeightedGraph,
        z: np.ndarray,
        support: np.ndarray,
        max_volume: Optional[float],
    ) -> Optional[Tuple[int, ...]]:
        order = support[np.lexsort((support, -z[support]))]
        inside = np.zeros(graph.n, dtype=bool)
        volume = 0.0
        cut = 0.0
        best_phi = math.inf
        best_length = 0
        for length, v in enumerate(order[: graph.n - 1], start=1):
            volume += graph.degrees[v]
            if max_volume is not None and volume > max_volume:
                break
            to_inside = float(graph.weights[v, inside].sum())
            cut += graph.degrees[v] - graph.weights[v, v] - 2.0 * to_inside
            inside[v] = True
            phi = max(cut, 0.0) / volume
            if phi < best_phi:
                best_phi = phi
                best_length = length
        if best_length == 0:
            return None
        return tuple(sorted(order[:best_length].tolist()))

    def profile_heuristic(self, graph: WeightedGraph, delta: float) -> ProfileResult:
        """Sweep over lazy-walk vectors from seed vertices; no optimality claim."""
        if not 0 < delta <= 1:
            raise InvalidDeltaError(f"delta must lie in (0, 1], got {delta}")
        cap = delta * graph.total_volume * (1 + VOLUME_SLACK)
        seed_count = min(graph.n, self.config.HEURISTIC_MAX_SEEDS)
        seeds = np.unique(np.linspace(0, graph.n - 1, num=seed_count).round().astype(int))

        best: Optional[Tuple[int, ...]] = None
        best_phi = math.inf
        for seed in seeds:
            z = np.zeros(graph.n)
            z[seed] = 1.0
            steps = 0
            length = 1
            while length <= self.config.HEURISTIC_WALK_STEPS:
                while steps < length:
                    z = 0.5 * (z + (graph.weights @ z) / graph.degrees)
                    steps += 1
                members = self._sweep(graph, z, np.flatnonzero(z > 0), cap)
                if members is not None:
                    phi = self.expansion(graph, members).expansion
                    if phi < best_phi:
                        best, best_phi = members, phi
                length *= 2

        if best is None:
            return ProfileResult(delta=delta, phi=math.inf, exact=False)
        logger.debug(f"sweep heuristic at delta={delta}: phi={best_phi}")
        witness = self.expansion(graph, best)
        return ProfileResult(delta=delta, phi=witness.expansion, witness=witness, exact=False)

    # --------------------------------------------------------- classification

    def classify_instance(
        self,
        graph: WeightedGraph,
        delta: float,
        c: float,
        s: float,
        variant: SseVariant = SseVariant.SSE,
    ) -> SseVerdict:
        if not 0 < s < c < 1:
            raise InvalidGapParametersError(f"need 0 < s < c < 1, got s={s}, c={c}")
        if not 0 < delta <= 1:
            raise InvalidDeltaError(f"delta must lie in (0, 1], got {delta}")
        variant = SseVariant(variant)

        completeness_window = (delta / 2, delta)
        if variant is SseVariant.SSE:
            soundness_window = (0.0, delta)
        elif variant is SseVariant.SSE_PRIME:
            soundness_window = (0.0, min(SSE_PRIME_SOUNDNESS_FACTOR * delta, 1.0))
        else:
            soundness_window = (delta / 4, delta)

        completeness = self.profile_window(graph, *completeness_window)
        soundness = self.profile_window(graph, *soundness_window)

        if completeness.found and completeness.phi < 1 - c:
            verdict, witness = Verdict.COMPLETENESS_HOLDS, completeness.witness
        elif not soundness.found or soundness.phi >= 1 - s:
            verdict, witness = Verdict.SOUNDNESS_HOLDS, None
        else:
            verdict, witness = Verdict.NEITHER, soundness.witness

        return SseVerdict(
            variant=variant,
            verdict=verdict,
            delta=delta,
            c=c,
            s=s,
            completeness_window=completeness_window,
            soundness_window=soundness_window,
            completeness_phi=completeness.phi,
            soundness_phi=soundness.phi,
            witness=witness,
        )

    # ---------------------------------------------------------------- helpers

    def _check_vector(
        self, graph: WeightedGraph, x, allow_negative: bool = False
    ) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (graph.n,):
            raise InvalidVectorError(f"vector has shape {x.shape}, expected ({graph.n},)")
        if not allow_negative and np.any(x < 0):
            raise InvalidVectorError("vector has negative entries")
        return x
