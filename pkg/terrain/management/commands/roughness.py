import logging
from pathlib import Path

import numpy as np

from terrain.formats import read_esri_ascii, write_esri_ascii
from terrain.management.base import TerrainCommand
from terrain.roughness import RoughnessIndex, normalize01, roughness_maps

logger = logging.getLogger(__name__)


def map_filename(stem, index, scale, normalized=False):
    return '%s_%s_w%d%s.asc' % (stem, RoughnessIndex(index).value, scale,
                                '_norm' if normalized else '')


class Command(TerrainCommand):
    help = 'Write one roughness map per (index, window scale) for an ESRI ASCII DEM.'

    def add_arguments(self, parser):
        parser.add_argument('input', help='ESRI ASCII DEM.')
        parser.add_argument('--outdir', default='.', help='Directory for the maps.')
        parser.add_argument('--indices', help='Comma separated subset of %s.'
                            % ','.join(RoughnessIndex.values))
        parser.add_argument('--normalize', action='store_true', default=None,
                            help='Also write min-max normalized maps (*_norm.asc).')
        parser.add_argument('--slope-unit', choices=('radians', 'degrees'),
                            help='Unit of the written SLOPE maps.')
        self.add_scale_arguments(parser)

    def handle(self, *args, **options):
        config = self.config(**options)
        outdir = config.ensure_outdir()
        dem = read_esri_ascii(options['input'])
        stem = Path(options['input']).stem

        maps = roughness_maps(dem, config.scales, config.indices, config.threads)
        written = 0
        for (scale, index), grid in maps.items():
            if index == RoughnessIndex.SLOPE and config.slope_unit == 'degrees':
                grid = grid.with_values(np.degrees(grid.values))
            write_esri_ascii(grid, outdir / map_filename(stem, index, scale))
            written += 1
            if config.normalize and not grid.mask.any():
                logger.warning('%s at w=%d has no valid cell; not normalized',
                               RoughnessIndex(index).value, scale)
            elif config.normalize:
                write_esri_ascii(normalize01(grid), outdir / map_filename(stem, index, scale, True))
                written += 1
        self.success('Wrote %d roughness map(s) to %s' % (written, outdir))
