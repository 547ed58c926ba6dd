from django.core.management.base import BaseCommand, CommandError

from finspinor.config import DEFAULT_SEED, METRIC_MAX_N
from finspinor.documents import load_metric, metric_document, write_json
from finspinor.errors import FinspinorError
from finspinor.herm import standard_herm_basis, vector_components
from finspinor.metric import det_invariant, finsler_power, metric_coefficients
from finspinor.sampling import make_rng, random_hermitian

from ._options import EXIT_VERIFY_FAILED, check_range, library_errors
from .logging_config import setup_logging

logger = setup_logging()

SPOT_CHECKS = 20
SPOT_TOL = 1e-9


def spot_check(path, n: int, seed: int = DEFAULT_SEED) -> float:
    """Re-read a MetricDocument and compare X^N with det X on random X."""
    metric = load_metric(path)
    basis = standard_herm_basis(n)
    rng = make_rng(seed, n)
    worst = 0.0
    for _ in range(SPOT_CHECKS):
        X = random_hermitian(rng, n)
        det = det_invariant(X)
        value = finsler_power(vector_components(X, basis), metric)
        worst = max(worst, abs(value - det) / max(1.0, abs(det)))
    return worst


class Command(BaseCommand):
    help = "Writes the coefficients G of the degree-N Finslerian form as JSON"
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("-n", "--n", type=int, required=True,
                            help=f"spinor dimension, 2..{METRIC_MAX_N}")
        parser.add_argument("-o", "--out", required=True, help="output JSON file")

    def handle(self, *args, **options):
        n = check_range("N", options["n"], 2, METRIC_MAX_N)
        out = options["out"]
        logger.info(f"[metric] N={n} -> {out}")

        with library_errors("metric"):
            metric = metric_coefficients(standard_herm_basis(n))
        write_json(out, metric_document(metric))
        logger.info(f"[metric] Wrote {len(metric.nonzero())} nonzero of "
                    f"{len(metric.coefficients)} coefficients")

        try:
            deviation = spot_check(out, n)
        except FinspinorError as e:
            raise CommandError(f"re-reading {out} failed: {e}", returncode=EXIT_VERIFY_FAILED) from e
        if deviation > SPOT_TOL:
            raise CommandError(f"diagonal consistency spot check failed: {deviation:.3e}",
                               returncode=EXIT_VERIFY_FAILED)
        logger.info(f"[metric] Spot check on reload passed (max deviation {deviation:.3e})")
