from terrain.formats import read_xyz, write_esri_ascii
from terrain.gridding import delaunay, interpolate_grid, make_grid_spec
from terrain.management.base import TerrainCommand


class Command(TerrainCommand):
    help = 'Grid an XYZ point cloud into an ESRI ASCII DEM by TIN linear interpolation.'

    def add_arguments(self, parser):
        parser.add_argument('input', help='XYZ text file, normally detrended.')
        parser.add_argument('output', help='ESRI ASCII grid (.asc).')
        parser.add_argument('--cell', type=float, help='Cell size in meters.')

    def handle(self, *args, **options):
        config = self.config(**options)
        cloud = read_xyz(options['input'])
        dem = interpolate_grid(delaunay(cloud), make_grid_spec(cloud, config.cell))
        write_esri_ascii(dem, options['output'])
        self.success('Wrote %dx%d DEM (%d NoData cells) to %s'
                     % (dem.spec.nrows, dem.spec.ncols, dem.nodata_count, options['output']))
