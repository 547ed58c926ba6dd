from django.core.management.base import BaseCommand

from finspinor.herm import is_in_kernel

from ._options import check_range, library_errors, load_basis_option, load_change
from .logging_config import setup_logging

logger = setup_logging()


class Command(BaseCommand):
    help = "Tells whether an SL(N,C) matrix lies in the kernel of L"
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("-n", "--n", type=int, required=True, help="spinor dimension N >= 2")
        parser.add_argument("-i", "--input", required=True, help="MatrixDocument with det = 1")
        parser.add_argument("--basis", help="basis document from gen-basis (default: standard basis)")

    def handle(self, *args, **options):
        n = check_range("N", options["n"], 2)
        logger.info(f"[kernel] N={n}, input={options['input']}")
        C = load_change(options["input"], n)
        basis = load_basis_option(options["basis"], n)
        with library_errors("kernel"):
            inside = is_in_kernel(C, basis)
        self.stdout.write(f"kernel: {'true' if inside else 'false'}")
