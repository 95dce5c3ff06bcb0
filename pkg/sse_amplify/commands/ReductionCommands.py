import click
import numpy as np

from ..schemas import RunConfig
from ..utils.CommandUtils import (
    FRACTION,
    CommandServices,
    emit,
    emit_config,
    fail_verification,
    input_options,
    translate_errors,
)
from ..utils.constants import ERROR_MESSAGES, EXIT_CODES
from ..utils.ReportUtils import flatten, vertex_set_fields

DEGREE_TOLERANCE = 1e-12


@click.command("regularize")
@input_options
@click.option("--out", "output_path", type=click.Path(dir_okay=False), help="Write G' here.")
@click.option("--map", "map_path", type=click.Path(dir_okay=False),
              help="Block map sidecar (default: <out>.map).")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--project", "project_text", help="Set of G' vertices to project back onto G.")
@translate_errors
def regularize(
    input_path, output_path, map_path, seed, project_text, allow_loops, exact_cap, report_format
):
    """Replace every vertex by a 3-regular expander block, giving a 4-regular graph."""
    services = CommandServices(exact_cap)
    projected_members = services.repository.parse_vertex_list(project_text) if project_text else ()
    config = RunConfig(
        command="regularize",
        input_path=input_path,
        output_path=output_path,
        seed=seed,
        exact_cap=services.graph_service.exact_cap,
        allow_loops=allow_loops,
        members=projected_members,
        report_format=report_format,
    )
    graph = services.repository.read_edge_list(input_path, allow_loops=allow_loops)
    regularized = services.reduction_service.regularize(graph, seed=seed)

    deviation = float(np.max(np.abs(regularized.graph.degrees - 4.0)))
    if deviation > DEGREE_TOLERANCE:
        fail_verification(f"regularized graph deviates from 4-regular by {deviation}")

    projection = None
    if projected_members:
        projection = services.reduction_service.project_set(regularized, projected_members)
        if not projection.chain_holds:
            fail_verification("projection bounds fail on this instance")

    if output_path:
        services.repository.write_edge_list(regularized.graph, output_path)
        services.repository.write_block_map(regularized, map_path or f"{output_path}.map")
    elif map_path:
        services.repository.write_block_map(regularized, map_path)

    emit_config(config)
    emit(
        "regularize",
        {
            "n": graph.n,
            "nPrime": regularized.graph.n,
            "kappa": regularized.kappa,
            "blockSizes": regularized.block_size,
            "maxDegreeDeviation": deviation,
        },
        report_format,
    )
    if projection is not None:
        fields = flatten(projection)
        fields["chainHolds"] = projection.chain_holds
        emit("projection", fields, report_format)


@click.command("peel")
@input_options
@click.option("--delta", type=FRACTION, required=True)
@click.option("--s", "s", type=FRACTION, required=True, help="Soundness parameter.")
@click.option("--heuristic", is_flag=True, help="Peel with the sweep finder.")
@translate_errors
def peel(input_path, delta, s, heuristic, allow_loops, exact_cap, report_format):
    """Search for a non-expanding set with volume in [delta N / 4, delta N]."""
    services = CommandServices(exact_cap)
    config = RunConfig(
        command="peel",
        input_path=input_path,
        delta=(delta,),
        s=s,
        exact_cap=services.graph_service.exact_cap,
        heuristic=heuristic,
        allow_loops=allow_loops,
        report_format=report_format,
    )
    graph = services.repository.read_edge_list(input_path, allow_loops=allow_loops)
    finder = services.reduction_service.sweep_finder if heuristic else None
    result = services.reduction_service.peel_search(graph, delta, s, finder=finder)

    emit_config(config)
    fields = {
        "found": result.found,
        "iterations": result.iterations,
        "pieces": result.pieces,
        "delta": result.delta,
        "s": result.s,
        "heuristic": result.heuristic,
    }
    if result.found:
        fields.update(vertex_set_fields(result.vertex_set))
    emit("peel", fields, report_format)

    if not result.found:
        click.echo(ERROR_MESSAGES["PEEL_NOT_FOUND"], err=True)
        raise click.exceptions.Exit(EXIT_CODES["NEGATIVE_ANSWER"])
