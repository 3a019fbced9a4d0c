from terrain.formats import read_esri_ascii, write_pgm
from terrain.management.base import TerrainCommand


class Command(TerrainCommand):
    help = 'Render an ESRI ASCII grid as a min-max normalized 8-bit PGM image.'

    def add_arguments(self, parser):
        parser.add_argument('input', help='ESRI ASCII grid.')
        parser.add_argument('output', help='Binary PGM (P5) image.')

    def handle(self, *args, **options):
        grid = read_esri_ascii(options['input'])
        write_pgm(grid, options['output'])
        self.success('Rendered %dx%d grid to %s' % (grid.spec.ncols, grid.spec.nrows, options['output']))
