from django.core.management.base import BaseCommand

from finspinor.documents import dumps, fl_document
from finspinor.herm import epimorphism_L

from ._options import check_range, library_errors, load_basis_option, load_change
from .logging_config import setup_logging

logger = setup_logging()


class Command(BaseCommand):
    help = "Prints L(C), the FL(N^2,R) image of an SL(N,C) matrix, as JSON"
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("-n", "--n", type=int, required=True, help="spinor dimension N >= 2")
        parser.add_argument("-i", "--input", required=True, help="MatrixDocument with det = 1")
        parser.add_argument("--basis", help="basis document from gen-basis (default: standard basis)")

    def handle(self, *args, **options):
        n = check_range("N", options["n"], 2)
        logger.info(f"[map] N={n}, input={options['input']}, basis={options['basis'] or 'standard'}")
        C = load_change(options["input"], n)
        basis = load_basis_option(options["basis"], n)
        with library_errors("map"):
            L = epimorphism_L(C, basis)
        self.stdout.write(dumps(fl_document(L)), ending="")
