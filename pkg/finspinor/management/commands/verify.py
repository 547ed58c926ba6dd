from django.core.management.base import BaseCommand, CommandError

from finspinor.config import DEFAULT_SAMPLES, DEFAULT_SEED, VERIFY_MAX_N
from finspinor.sampling import GENERATOR_NAME
from finspinor.verification import format_table, run_suites

from ._options import EXIT_VERIFY_FAILED, check_range
from .logging_config import setup_logging

logger = setup_logging()


class Command(BaseCommand):
    help = "Runs every invariant suite for N = 2..max-n and prints a pass/fail table"
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("--max-n", type=int, default=VERIFY_MAX_N, dest="max_n",
                            help=f"largest N to check, 2..{VERIFY_MAX_N}")
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="64-bit seed")
        parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                            help="random samples per suite")

    def handle(self, *args, **options):
        max_n = check_range("max-n", options["max_n"], 2, VERIFY_MAX_N)
        samples = check_range("samples", options["samples"], 1)
        seed = options["seed"]
        logger.info(f"[verify] N=2..{max_n}, seed={seed} ({GENERATOR_NAME}), samples={samples}")

        results = run_suites(max_n, seed, samples)
        self.stdout.write(format_table(results))

        failed = [r for r in results if not r.passed]
        if failed:
            raise CommandError(f"{len(failed)} of {len(results)} suites failed",
                               returncode=EXIT_VERIFY_FAILED)
        logger.info(f"[verify] All {len(results)} suites passed")
