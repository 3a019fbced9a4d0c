import sys

from django.core.exceptions import ValidationError
from django.core.management.base import (BaseCommand, CommandError,
                                         CommandParser)
from django.db import DatabaseError

from terrain.conf import PipelineConfig
from terrain.exceptions import TerrainError

USAGE_ERROR = 1
DATA_ERROR = 2


class TerrainCommandParser(CommandParser):
    """Command line parse errors are usage errors."""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(USAGE_ERROR, '%s: error: %s\n' % (self.prog, message))
        raise CommandError('Error: %s' % message, returncode=USAGE_ERROR)


class TerrainCommand(BaseCommand):
    """
    Base of the pipeline commands.

    Invalid arguments, options and configuration (including an unmigrated
    run registry) exit with status 1, data errors raised by the terrain
    library with status 2.
    """
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = TerrainCommandParser
        return parser

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=USAGE_ERROR) from exc
        except (TerrainError, OSError) as exc:
            raise CommandError(str(exc), returncode=DATA_ERROR) from exc
        except DatabaseError as exc:
            raise CommandError('run registry unavailable (%s); has "manage.py migrate" been run?'
                               % exc, returncode=USAGE_ERROR) from exc

    def add_scale_arguments(self, parser):
        parser.add_argument('--scales', help='Comma separated odd window sizes, e.g. 3,5,7.')
        parser.add_argument('--threads', type=int,
                            help='Worker threads for the roughness maps; 0 means one per CPU.')

    def config(self, **options):
        return PipelineConfig.from_options(**options)

    def success(self, message):
        self.stdout.write(self.style.SUCCESS(message))
