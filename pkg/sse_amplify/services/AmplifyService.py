import logging
import math
from typing import Iterable, Optional, Tuple

import numpy as np

from ..schemas import (
    AmplifyParams,
    AmplifyReport,
    AmplifyResult,
    Certificate,
    CertificateTrace,
    SandwichBounds,
    TruncationResult,
    WalkLengthChoice,
    WeightedGraph,
)
from ..utils.config import Settings, settings as default_settings
from ..utils.constants import (
    F_EXPONENT_LIMIT,
    LOWER_BOUND_DENOMINATOR,
    WALK_LENGTH_NUMERATOR,
)
from ..utils.GraphUtils import indicator
from .GraphService import GraphService
from .WalkService import DimensionMismatchError, InvalidStepCountError, WalkService

logger = logging.getLogger("sse_amplify")


class AmplifyServiceError(Exception):
    """Base exception for AmplifyService errors"""

    pass


class InvalidFParametersError(AmplifyServiceError):
    """Raised when f(eps) = f_scale * eps^f_exponent is out of range"""

    pass


class NegativeInputError(AmplifyServiceError):
    pass


class PremiseUnmetError(AmplifyServiceError):
    """Raised when no certificate can be extracted.

    Only a legitimate negative answer when the set expands well in G^t.
    """

    pass


class InvalidAmplifyParametersError(AmplifyServiceError):
    pass


class AmplifyService:
    def __init__(
        self,
        graph_service: Optional[GraphService] = None,
        walk_service: Optional[WalkService] = None,
        config: Optional[Settings] = None,
    ):
        self.config = config or default_settings
        self.graph_service = graph_service or GraphService(self.config)
        self.walk_service = walk_service or WalkService(self.graph_service, self.config)

    # ------------------------------------------------------------ walk length

    def choose_t(
        self,
        epsilon: float,
        f_scale: float = 1.0,
        f_exponent: float = 1 / 3,
        eta: Optional[float] = None,
    ) -> WalkLengthChoice:
        if not 0 < epsilon < 1:
            raise InvalidFParametersError(f"epsilon must lie in (0, 1), got {epsilon}")
        if f_exponent >= F_EXPONENT_LIMIT:
            raise InvalidFParametersError(
                f"f exponent must be below {F_EXPONENT_LIMIT}, got {f_exponent}"
            )
        if f_scale <= 0:
            raise InvalidFParametersError(f"f scale must be positive, got {f_scale}")

        f_value = f_scale * epsilon**f_exponent
        if f_value > 1:
            raise InvalidFParametersError(f"f(epsilon) = {f_value} exceeds 1")

        # Rounding keeps f = 1 (or any exact ratio) from landing one above.
        t = math.ceil(round(WALK_LENGTH_NUMERATOR / f_value**2, 9))
        figure = t / 2 * epsilon
        return WalkLengthChoice(
            t=t,
            f_value=f_value,
            completeness_figure=figure,
            soundness_figure=self.soundness_floor(f_value, t, 0.5),
            meets_eta=None if eta is None else figure <= eta,
        )

    def resolve_t(self, params: AmplifyParams) -> int:
        if params.t is not None:
            if params.t < 1:
                raise InvalidStepCountError(f"walk length must be at least 1, got {params.t}")
            return params.t
        if params.epsilon is None:
            raise InvalidAmplifyParametersError("either t or epsilon is required")
        return self.choose_t(
            params.epsilon, params.f_scale, params.f_exponent, params.eta
        ).t

    # ----------------------------------------------------------------- bounds

    def survival_lower_bound(self, phi: float, t: int) -> float:
        """Probability lower bound that a lazy walk from pi_S stays in S for t steps."""
        return (1 - phi / 2) ** t

    def soundness_floor(self, phi: float, t: int, eta: float) -> float:
        phi = min(phi, 1.0)
        return min(1 - (1 - phi**2 / LOWER_BOUND_DENOMINATOR) ** t, 1 - eta)

    def premise_threshold(self, beta: float, t: int, eta: float) -> float:
        return self.soundness_floor(beta, t, eta)

    def premise_check(
        self,
        graph: WeightedGraph,
        members: Iterable[int],
        t: int,
        eta: float,
        beta: float,
    ) -> Tuple[float, float]:
        """(phi_{G^t}(S), threshold); the certificate is guaranteed when the first is <= the second."""
        powered = self.walk_service.power_graph(graph, t)
        amplified = self.graph_service.expansion(powered, members).expansion
        return amplified, self.premise_threshold(beta, t, eta)

    def sandwich_bounds(
        self, graph: WeightedGraph, delta: float, eta: float, t: int
    ) -> SandwichBounds:
        if not 0 < eta <= 1:
            raise InvalidAmplifyParametersError(f"eta must lie in (0, 1], got {eta}")
        wide_delta = min(4 * delta / eta, 1.0)
        phi_delta = self.graph_service.profile_exact(graph, delta).phi
        phi_wide = self.graph_service.profile_exact(graph, wide_delta).phi

        upper = math.inf if math.isinf(phi_delta) else t / 2 * phi_delta
        lower = self.soundness_floor(phi_wide, t, eta)
        return SandwichBounds(
            t=t,
            delta=delta,
            eta=eta,
            wide_delta=wide_delta,
            phi_delta=phi_delta,
            phi_wide=phi_wide,
            lower=lower,
            upper=upper,
        )

    # -------------------------------------------------------------- reduction

    def amplify_graph(
        self,
        graph: WeightedGraph,
        params: AmplifyParams,
        members: Optional[Iterable[int]] = None,
        soundness_phi: Optional[float] = None,
    ) -> AmplifyResult:
        """G^t plus the bounds that can be stated for it.

        ``members`` adds the completeness side for that set; ``soundness_phi``
        is phi_G(4 delta / eta), measured or assumed by the caller.
        """
        t = self.resolve_t(params)
        power = self.walk_service.power_graph_report(graph, t)

        fields = {}
        if params.epsilon is not None:
            fields["completeness_figure"] = t / 2 * params.epsilon
        if members is not None:
            source = self.graph_service.expansion(graph, members)
            fields["source_expansion"] = source.expansion
            fields["completeness_bound"] = t / 2 * source.expansion
            fields["survival_bound"] = 1 - self.survival_lower_bound(source.expansion, t)
            fields["amplified_expansion"] = self.graph_service.expansion(
                power.graph, source.members
            ).expansion
        if soundness_phi is not None:
            fields["soundness_phi"] = soundness_phi
            fields["soundness_floor"] = self.soundness_floor(soundness_phi, t, params.eta)

        report = AmplifyReport(
            t=t,
            squarings=power.squarings,
            multiplications=power.multiplications,
            **fields,
        )
        return AmplifyResult(graph=power.graph, report=report)

    # ------------------------------------------------------------ certificate

    def truncate(
        self, x: np.ndarray, theta: float, graph: WeightedGraph
    ) -> TruncationResult:
        x = np.asarray(x, dtype=float)
        if x.shape != (graph.n,):
            raise DimensionMismatchError(f"vector has shape {x.shape}, expected ({graph.n},)")
        if theta < 0 or np.any(x < 0):
            raise NegativeInputError("truncation needs x >= 0 and theta >= 0")

        y = np.where(x > theta, x - theta, 0.0)
        l1_mass = float(graph.degrees @ x)
        l2_mass = float(graph.degrees @ (x * x))

        before = self.graph_service.rayleigh_quotient(graph, x) if l2_mass > 0 else None
        after = self.graph_service.rayleigh_quotient(graph, y) if np.any(y > 0) else None
        return TruncationResult(
            y=y,
            theta=theta,
            sparsity_condition=bool(4 * theta * l1_mass <= l2_mass),
            rayleigh_before=before,
            rayleigh_after=after,
        )

    def extract_certificate(
        self,
        graph: WeightedGraph,
        members: Iterable[int],
        t: int,
        eta: float,
        beta: float,
    ) -> Certificate:
        """Find a set of expansion < beta in G from S, which expands poorly in G^t.

        Walks 1_S forward looking for the first step whose D-norm barely
        shrinks, truncates that vector at eta/4 and sweeps it on the lazy
        graph. The swept set is re-checked in G before it is returned.
        """
        if t < 1:
            raise InvalidStepCountError(f"walk length must be at least 1, got {t}")
        if not 0 < eta <= 1:
            raise InvalidAmplifyParametersError(f"eta must lie in (0, 1], got {eta}")
        if not 0 < beta <= 1:
            raise InvalidAmplifyParametersError(f"beta must lie in (0, 1], got {beta}")

        source = self.graph_service.expansion(graph, members)
        beta_hat = beta / 2
        threshold = 1 - beta_hat**2 / 4
        theta = eta / 4

        walk = self.walk_service.lazy_operator(graph)
        current = indicator(graph.n, source.members)
        norm = float(graph.degrees @ (current * current))
        ratios = []
        step = None
        for i in range(t // 2 + 1):
            following = self.walk_service.apply_walk(walk, current, 1)
            following_norm = float(graph.degrees @ (following * following))
            ratios.append(following_norm / norm)
            if ratios[-1] > threshold:
                step = i
                break
            current, norm = following, following_norm

        if step is None:
            raise PremiseUnmetError(
                f"no step in 0..{t // 2} keeps the norm ratio above {threshold}"
            )

        lazy = self.walk_service.lazy_graph(graph)
        truncated = self.truncate(current, theta, lazy)
        if truncated.is_zero:
            raise PremiseUnmetError(f"walk vector at step {step} vanishes after truncation at {theta}")

        swept = self.graph_service.sweep_cut(lazy, truncated.y)
        candidate = self.graph_service.expansion(graph, swept.members)
        volume_bound = 4 * source.volume / eta
        if not (candidate.expansion < beta and candidate.volume <= volume_bound):
            logger.warning(
                f"swept set rejected: expansion {candidate.expansion} (need < {beta}), "
                f"volume {candidate.volume} (cap {volume_bound})"
            )
            raise PremiseUnmetError("swept set fails re-verification in G")

        logger.debug(f"certificate from step {step}: {len(candidate)} vertices")
        return Certificate(
            vertex_set=candidate,
            beta=beta,
            volume_bound=volume_bound,
            trace=CertificateTrace(
                step_index=step,
                ratios=tuple(ratios),
                theta=theta,
                beta_hat=beta_hat,
                source_members=source.members,
                source_volume=source.volume,
            ),
        )
