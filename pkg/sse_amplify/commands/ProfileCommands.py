import click

from ..schemas import RunConfig, SseVariant, Verdict
from ..utils.CommandUtils import (
    FRACTION,
    CommandServices,
    emit,
    emit_config,
    fail_verification,
    input_options,
    translate_errors,
)
from ..utils.ReportUtils import flatten, vertex_set_fields

EXPANSION_TOLERANCE = 1e-12


@click.command("profile")
@input_options
@click.option("--delta", "deltas", type=FRACTION, multiple=True, required=True,
              help="Volume fraction; repeat for several (1/3 and 0.25 both work).")
@click.option("--heuristic", is_flag=True, help="Sweep heuristic instead of the exact oracle.")
@translate_errors
def profile(input_path, deltas, heuristic, allow_loops, exact_cap, report_format):
    """Expansion profile phi_G(delta) with a witness set."""
    services = CommandServices(exact_cap)
    config = RunConfig(
        command="profile",
        input_path=input_path,
        delta=tuple(deltas),
        exact_cap=services.graph_service.exact_cap,
        heuristic=heuristic,
        allow_loops=allow_loops,
        report_format=report_format,
    )
    graph = services.repository.read_edge_list(input_path, allow_loops=allow_loops)

    results = []
    for delta in deltas:
        if heuristic:
            result = services.graph_service.profile_heuristic(graph, delta)
        else:
            result = services.graph_service.profile_exact(graph, delta)
        if result.found:
            recheck = services.graph_service.expansion(graph, result.witness.members)
            cap = delta * graph.total_volume * (1 + EXPANSION_TOLERANCE)
            if abs(recheck.expansion - result.phi) > EXPANSION_TOLERANCE or recheck.volume > cap:
                fail_verification(f"witness at delta={delta} fails re-verification")
        results.append(result)

    emit_config(config)
    for result in results:
        fields = {"delta": result.delta, "phi": result.phi, "exact": result.exact}
        if result.found:
            fields.update(vertex_set_fields(result.witness))
        else:
            fields.update(setMembers=(), volume=None, cutWeight=None, expansion=None)
        emit("profile", fields, report_format)


@click.command("classify")
@input_options
@click.option("--delta", type=FRACTION, required=True)
@click.option("--c", "c", type=FRACTION, required=True, help="Completeness parameter.")
@click.option("--s", "s", type=FRACTION, required=True, help="Soundness parameter.")
@click.option("--variant", type=click.Choice([v.value for v in SseVariant]),
              default=SseVariant.SSE.value, show_default=True)
@translate_errors
def classify(input_path, delta, c, s, variant, allow_loops, exact_cap, report_format):
    """Decide which promise of a small set expansion variant the graph satisfies."""
    services = CommandServices(exact_cap)
    config = RunConfig(
        command="classify",
        input_path=input_path,
        delta=(delta,),
        c=c,
        s=s,
        variant=variant,
        exact_cap=services.graph_service.exact_cap,
        allow_loops=allow_loops,
        report_format=report_format,
    )
    graph = services.repository.read_edge_list(input_path, allow_loops=allow_loops)
    verdict = services.graph_service.classify_instance(graph, delta, c, s, SseVariant(variant))
    recheck_verdict(services, graph, verdict)

    emit_config(config)
    emit("classify", flatten(verdict), report_format)


def recheck_verdict(services, graph, verdict) -> None:
    """Recompute the verdict's witness and confirm the verdict follows from the measured minima."""
    threshold_c, threshold_s = 1 - verdict.c, 1 - verdict.s
    if verdict.verdict is Verdict.COMPLETENESS_HOLDS:
        consistent = verdict.completeness_phi < threshold_c
    elif verdict.verdict is Verdict.SOUNDNESS_HOLDS:
        consistent = not verdict.completeness_phi < threshold_c and verdict.soundness_phi >= threshold_s
    else:
        consistent = not verdict.completeness_phi < threshold_c and verdict.soundness_phi < threshold_s
    if not consistent:
        fail_verification(f"verdict {verdict.verdict.value} disagrees with the measured minima")

    if verdict.witness is None:
        if verdict.verdict is not Verdict.SOUNDNESS_HOLDS:
            fail_verification(f"verdict {verdict.verdict.value} carries no witness")
        return

    if verdict.verdict is Verdict.COMPLETENESS_HOLDS:
        (lower, upper), phi = verdict.completeness_window, verdict.completeness_phi
    else:
        (lower, upper), phi = verdict.soundness_window, verdict.soundness_phi
    recheck = services.graph_service.expansion(graph, verdict.witness.members)
    slack = graph.total_volume * EXPANSION_TOLERANCE
    in_window = lower * graph.total_volume - slack <= recheck.volume <= upper * graph.total_volume + slack
    if abs(recheck.expansion - phi) > EXPANSION_TOLERANCE or not in_window:
        fail_verification(f"{verdict.verdict.value} witness fails re-verification")
