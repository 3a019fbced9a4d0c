from pathlib import Path

from terrain.formats import read_xyz, save_xyz
from terrain.management.base import TerrainCommand
from terrain.pointcloud import detrend, fit_plane, mean_spacing


def report_path(output):
    return Path(output).with_suffix('.report.txt')


class Command(TerrainCommand):
    help = 'Subtract the best-fitting plane from an XYZ point cloud.'

    def add_arguments(self, parser):
        parser.add_argument('input', help='XYZ text file.')
        parser.add_argument('output', help='Detrended XYZ text file.')

    def handle(self, *args, **options):
        cloud = read_xyz(options['input'])
        plane = fit_plane(cloud)
        detrended = detrend(cloud, plane)
        output = Path(options['output'])
        save_xyz(detrended, output)

        report = report_path(output)
        report.write_text(
            'points %d\n'
            'b0 %r\n'
            'b1 %r\n'
            'b2 %r\n'
            'mean_spacing %r\n' % (len(cloud), plane.b0, plane.b1, plane.b2, mean_spacing(cloud))
        )
        self.success('Detrended %d points with plane z = %r + %r*x + %r*y; wrote %s and %s'
                     % (len(cloud), plane.b0, plane.b1, plane.b2, output, report))
