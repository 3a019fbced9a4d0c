from django.core.exceptions import ValidationError

from terrain.conf import parse_csv
from terrain.formats import save_xyz, write_esri_ascii
from terrain.management.base import TerrainCommand
from terrain.synthetic import SinusoidField, sample_cloud, sinusoid_surface


class Command(TerrainCommand):
    help = 'Write a synthetic rough surface (sum of random sinusoids) as a DEM or a point cloud.'

    def add_arguments(self, parser):
        parser.add_argument('output', help='Target .asc (DEM) or .xyz (cloud) file.')
        parser.add_argument('--kind', choices=('dem', 'cloud'), default='dem')
        parser.add_argument('--rows', type=int, default=128)
        parser.add_argument('--cols', type=int, default=128)
        parser.add_argument('--cell', type=float, default=1.0)
        parser.add_argument('--terms', type=int, default=8, help='Number of sinusoids.')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--points', type=int, default=5000, help='Cloud size for --kind cloud.')
        parser.add_argument('--tilt', default='0,0',
                            help='Global slope "b1,b2" added to the surface (dz/dx, dz/dy).')

    def handle(self, *args, **options):
        tilt = parse_csv(options['tilt'], cast=float)
        if len(tilt) != 2:
            raise ValidationError('--tilt takes two slopes "b1,b2", got %d value(s)' % len(tilt),
                                  code='invalid_tilt')
        b1, b2 = tilt
        plane = (0.0, b1, b2)
        if options['kind'] == 'dem':
            dem = sinusoid_surface(options['rows'], options['cols'], options['cell'],
                                   n_terms=options['terms'], seed=options['seed'], plane=plane)
            write_esri_ascii(dem, options['output'])
            self.success('Wrote %dx%d synthetic DEM to %s'
                         % (options['rows'], options['cols'], options['output']))
        else:
            field = SinusoidField(n_terms=options['terms'], seed=options['seed'], plane=plane)
            bounds = (0.0, 0.0, options['cols'] * options['cell'], options['rows'] * options['cell'])
            cloud = sample_cloud(field, options['points'], bounds, seed=options['seed'])
            save_xyz(cloud, options['output'], header='synthetic cloud, seed %d' % options['seed'])
            self.success('Wrote %d synthetic points to %s' % (len(cloud), options['output']))
