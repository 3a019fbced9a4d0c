from pathlib import Path

from django.core.management import call_command

from terrain.management.base import TerrainCommand


class Command(TerrainCommand):
    help = ('Run detrend, grid, roughness and compare on an XYZ point cloud, '
            'leaving every intermediate artifact in --outdir.')

    def add_arguments(self, parser):
        parser.add_argument('input', help='XYZ text file.')
        parser.add_argument('--outdir', default='.', help='Directory for every artifact.')
        parser.add_argument('--cell', type=float, help='DEM cell size in meters.')
        parser.add_argument('--indices', help='Indices for the roughness maps.')
        parser.add_argument('--normalize', action='store_true', default=None,
                            help='Also write normalized roughness maps.')
        parser.add_argument('--slope-unit', choices=('radians', 'degrees'),
                            help='Unit of the written SLOPE maps.')
        parser.add_argument('--record', action='store_true',
                            help='Store the comparison matrices in the run registry.')
        self.add_scale_arguments(parser)

    def handle(self, *args, **options):
        config = self.config(**options)
        outdir = config.ensure_outdir()
        stem = Path(options['input']).stem
        detrended = outdir / ('%s_detrended.xyz' % stem)
        dem = outdir / ('%s.asc' % stem)
        common = {'stdout': self.stdout, 'stderr': self.stderr}
        scales = ','.join(map(str, config.scales))

        call_command('detrend', options['input'], str(detrended), **common)
        call_command('grid', str(detrended), str(dem), cell=config.cell, **common)
        call_command('roughness', str(dem), outdir=str(outdir), scales=scales,
                     indices=','.join(i.value for i in config.indices),
                     normalize=config.normalize, slope_unit=config.slope_unit,
                     threads=config.threads, **common)
        call_command('compare', str(dem), outdir=str(outdir), scales=scales,
                     threads=config.threads, record=options['record'], **common)
        self.success('Pipeline finished; artifacts in %s' % outdir)
