from django.core.management.base import CommandError

from terrain.management.base import USAGE_ERROR, TerrainCommand
from terrain.models import ComparisonRun


class Command(TerrainCommand):
    help = 'List recorded comparison runs, or print the matrices of one run.'

    def add_arguments(self, parser):
        parser.add_argument('--run', type=int, help='Primary key of the run to print.')
        parser.add_argument('--r2', action='store_true', help='Print R^2 instead of r.')

    def handle(self, *args, **options):
        if options['run'] is None:
            for run in ComparisonRun.objects.all():
                self.stdout.write('#%d %s %s %dx%d cell=%r scales=%s' % (
                    run.pk, run.created.strftime('%Y-%m-%d %H:%M'), run.get_status_display(),
                    run.nrows, run.ncols, run.cell_size, ','.join(map(str, run.scales))))
            return

        try:
            run = ComparisonRun.objects.get(pk=options['run'])
        except ComparisonRun.DoesNotExist:
            raise CommandError('no comparison run #%d' % options['run'], returncode=USAGE_ERROR)
        self.stdout.write('%s' % run)
        for scale in run.scales:
            labels, rows = run.matrix(scale, squared=options['r2'])
            self.stdout.write('w=%d' % scale)
            self.stdout.write('\t'.join([''] + [label.value for label in labels]))
            for label, row in zip(labels, rows):
                self.stdout.write('\t'.join([label.value] + ['%.4f' % v for v in row]))
