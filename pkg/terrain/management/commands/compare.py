from terrain.compare import index_summary, scale_sweep
from terrain.formats import (read_esri_ascii, write_matrix_csv,
                             write_summary_csv)
from terrain.management.base import TerrainCommand
from terrain.models import ComparisonRun


class Command(TerrainCommand):
    help = ('Correlate the five roughness maps of a DEM at every window scale; '
            'writes corr_w<w>.csv, r2_w<w>.csv and summary_w<w>.csv.')

    def add_arguments(self, parser):
        parser.add_argument('input', help='ESRI ASCII DEM.')
        parser.add_argument('--outdir', default='.', help='Directory for the CSV matrices.')
        parser.add_argument('--record', action='store_true',
                            help='Also store the matrices in the run registry.')
        self.add_scale_arguments(parser)

    def handle(self, *args, **options):
        config = self.config(**options)
        outdir = config.ensure_outdir()
        dem = read_esri_ascii(options['input'])

        run = None
        if options['record']:
            run = ComparisonRun.objects.start_run(options['input'], dem.spec.cell,
                                                  dem.shape, config.scales)
        try:
            sweep = scale_sweep(dem, config.scales, threads=config.threads)
        except Exception:
            if run is not None:
                run.fail()
            raise

        for matrix in sweep:
            write_matrix_csv(matrix.labels, matrix.r, outdir / ('corr_w%d.csv' % matrix.scale))
            write_matrix_csv(matrix.labels, matrix.r2, outdir / ('r2_w%d.csv' % matrix.scale))
            write_summary_csv(index_summary(matrix), outdir / ('summary_w%d.csv' % matrix.scale))
        if run is not None:
            run.complete(sweep)
            self.stdout.write('Recorded comparison run #%d' % run.pk)
        self.success('Compared %d scale(s) %s; matrices written to %s'
                     % (len(sweep), ','.join(map(str, sweep.scales)), outdir))
