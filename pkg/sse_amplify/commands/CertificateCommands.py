import click

from ..schemas import RunConfig
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
from ..utils.ReportUtils import certificate_fields


@click.command("extract")
@input_options
@click.option("--set", "members_text", required=True, help="Vertices of S, e.g. '0 1 2'.")
@click.option("--t", "t", type=int, required=True)
@click.option("--eta", type=FRACTION, default=0.5, show_default=True)
@click.option("--beta", type=FRACTION, required=True, help="Expansion the certificate must beat.")
@translate_errors
def extract(input_path, members_text, t, eta, beta, allow_loops, exact_cap, report_format):
    """Turn a set that expands poorly in G^t into a sparse cut of G."""
    services = CommandServices(exact_cap)
    members = parse_members(services, members_text)
    config = RunConfig(
        command="extract",
        input_path=input_path,
        t=t,
        eta=eta,
        beta=beta,
        exact_cap=services.graph_service.exact_cap,
        allow_loops=allow_loops,
        members=members,
        report_format=report_format,
    )
    graph = services.repository.read_edge_list(input_path, allow_loops=allow_loops)
    amplified, threshold = services.amplify_service.premise_check(graph, members, t, eta, beta)

    emit_config(config)
    emit(
        "premise",
        {"amplifiedExpansion": amplified, "threshold": threshold, "holds": amplified <= threshold},
        report_format,
    )

    certificate = services.amplify_service.extract_certificate(graph, members, t, eta, beta)
    recheck = services.graph_service.expansion(graph, certificate.vertex_set.members)
    if not (recheck.expansion < beta and recheck.volume <= certificate.volume_bound):
        fail_verification("certificate fails re-verification in G")
    emit("certificate", certificate_fields(certificate), report_format)
