from django.core.management.base import BaseCommand

from finspinor.documents import basis_document, write_json
from finspinor.herm import standard_herm_basis

from ._options import check_range, library_errors
from .logging_config import setup_logging

logger = setup_logging()


class Command(BaseCommand):
    help = "Writes the standard Herm(N) basis E_alpha and its dual E^alpha as JSON"
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("-n", "--n", type=int, required=True, help="spinor dimension N >= 2")
        parser.add_argument("-o", "--out", required=True, help="output JSON file")

    def handle(self, *args, **options):
        n = check_range("N", options["n"], 2)
        logger.info(f"[gen-basis] N={n} -> {options['out']}")
        with library_errors("gen-basis"):
            basis = standard_herm_basis(n)
        write_json(options["out"], basis_document(basis))
        logger.info(f"[gen-basis] Wrote {basis.size} basis elements ({basis.basis_id})")
