import click

from ..schemas import AmplifyParams, RunConfig
from ..utils.CommandUtils import (
    FRACTION,
    CommandServices,
    emit,
    emit_config,
    fail_verification,
    input_options,
    parse_members,
    translate_errors,
)
from ..utils.GraphUtils import relative_gap
from ..utils.ReportUtils import flatten

# Relative degree drift tolerated between G and G^t.
DEGREE_TOLERANCE = 1e-9
BOUND_TOLERANCE = 1e-9


@click.command("amplify")
@input_options
@click.option("--out", "output_path", type=click.Path(dir_okay=False), help="Write G^t here.")
@click.option("--t", "t", type=int, help="Walk length; derived from --epsilon when omitted.")
@click.option("--epsilon", type=FRACTION, help="Completeness gap eps of the input instance.")
@click.option("--f-scale", type=float, default=1.0, show_default=True)
@click.option("--f-exp", "f_exponent", type=FRACTION, default="1/3", show_default=True)
@click.option("--eta", type=FRACTION, default=0.5, show_default=True)
@click.option("--delta", type=FRACTION, help="Report the soundness floor at phi_G(4 delta / eta).")
@click.option("--set", "members_text", help="Vertices of S for the completeness report.")
@translate_errors
def amplify(
    input_path, output_path, t, epsilon, f_scale, f_exponent, eta, delta,
    members_text, allow_loops, exact_cap, report_format,
):
    """Replace G by the t-step lazy walk graph G^t."""
    if t is None and epsilon is None:
        raise click.UsageError("give --t or --epsilon")

    services = CommandServices(exact_cap)
    choice = None
    if t is None:
        choice = services.amplify_service.choose_t(epsilon, f_scale, f_exponent, eta)
        t = choice.t
    params = AmplifyParams(
        epsilon=epsilon, t=t, eta=eta, delta=delta if delta is not None else 0.5,
        f_scale=f_scale, f_exponent=f_exponent,
    )
    members = parse_members(services, members_text)
    config = RunConfig(
        command="amplify",
        input_path=input_path,
        output_path=output_path,
        t=t,
        delta=(delta,) if delta is not None else (),
        eta=eta,
        epsilon=epsilon,
        f_scale=f_scale,
        f_exponent=f_exponent,
        exact_cap=services.graph_service.exact_cap,
        allow_loops=allow_loops,
        members=members,
        report_format=report_format,
    )

    graph = services.repository.read_edge_list(input_path, allow_loops=allow_loops)
    soundness_phi = None
    if delta is not None:
        wide = min(4 * delta / eta, 1.0)
        soundness_phi = services.graph_service.profile_exact(graph, wide).phi
    result = services.amplify_service.amplify_graph(
        graph, params, members=members or None, soundness_phi=soundness_phi
    )

    drift = relative_gap(result.graph.degrees, graph.degrees)
    if drift > DEGREE_TOLERANCE:
        fail_verification(f"G^{t} changed degrees by {drift}")
    report = result.report
    if report.amplified_expansion is not None:
        if report.amplified_expansion > report.completeness_bound + BOUND_TOLERANCE:
            fail_verification("amplified expansion exceeds (t/2) phi_G(S)")
        if report.amplified_expansion > report.survival_bound + BOUND_TOLERANCE:
            fail_verification("amplified expansion exceeds 1 - (1 - phi_G(S)/2)^t")

    if output_path:
        services.repository.write_edge_list(result.graph, output_path)

    emit_config(config)
    fields = flatten(report)
    if choice is not None:
        fields.update(
            fValue=choice.f_value,
            soundnessFigure=choice.soundness_figure,
            meetsEta=choice.meets_eta,
        )
    fields.update(n=result.graph.n, storedPairs=len(result.graph.edges), degreeDrift=drift)
    emit("amplify", fields, report_format)
