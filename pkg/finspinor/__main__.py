"""``finspinor <command>`` entry point.

Accepts the hyphenated command names (``gen-basis``) and hands off to
Django's command dispatcher the same way ``manage.py`` does.
"""
import os
import sys

COMMANDS = {
    "gen-basis": "gen_basis",
    "map": "map",
    "metric": "metric",
    "kernel": "kernel",
    "verify": "verify",
}


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    if len(argv) > 1:
        argv[1] = COMMANDS.get(argv[1], argv[1])
    argv[0] = "finspinor"
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'finspinor.settings')
    from django.core.management import execute_from_command_line
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
