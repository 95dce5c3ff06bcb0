from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .GraphSchema import VertexSet, WeightedGraph


class RegularizedGraph(BaseModel):
    """4-regular replacement of an unweighted graph.

    Block A_v occupies vertices ``block_start[v] .. block_start[v] + block_size[v] - 1``.
    ``ports[k]`` is the pair of block vertices joined for the k-th input edge.
    """

    graph: WeightedGraph
    source: WeightedGraph
    block_start: Tuple[int, ...]
    block_size: Tuple[int, ...]
    ports: Tuple[Tuple[int, int], ...]
    kappa: float

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def source_n(self) -> int:
        return len(self.block_size)

    def block(self, v: int) -> range:
        return range(self.block_start[v], self.block_start[v] + self.block_size[v])


class ProjectionReport(BaseModel):
    projected: VertexSet
    beta: float
    kappa: float
    lifted_size: int  # |S'|
    internal_cut: float  # sum_v E(B_v, A_v \ B_v)
    internal_cut_bound: float  # 4 beta |S'|
    sym_diff: int  # |S' delta S*|
    sym_diff_bound: float  # (4 beta / kappa) |S'|
    star_expansion: float
    star_expansion_bound: Optional[float] = None
    derived_guarantee: Optional[float] = None
    stated_guarantee: Optional[float] = None
    stated_guarantee_holds: Optional[bool] = None
    guarantee_vacuous: bool = False

    model_config = ConfigDict(frozen=True)

    @property
    def chain_holds(self) -> bool:
        tol = 1e-9
        ok = self.internal_cut <= self.internal_cut_bound + tol
        ok = ok and self.sym_diff <= self.sym_diff_bound + tol
        if self.star_expansion_bound is not None:
            ok = ok and self.star_expansion <= self.star_expansion_bound + tol
        if self.derived_guarantee is not None:
            ok = ok and self.projected.expansion <= self.derived_guarantee + tol
        return ok


class PeelResult(BaseModel):
    found: bool
    vertex_set: Optional[VertexSet] = None
    iterations: int
    pieces: Tuple[Tuple[int, ...], ...] = ()
    delta: float
    s: float
    heuristic: bool = False

    model_config = ConfigDict(frozen=True)
