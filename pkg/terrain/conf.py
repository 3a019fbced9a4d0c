"""
Pipeline configuration: project settings overridden by command options.
"""
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

from django.conf import settings
from django.core.exceptions import ValidationError

from .roughness import RoughnessIndex
from .validators import PositiveCellSizeValidator, WindowScaleListValidator

SLOPE_UNITS = ('radians', 'degrees')


def parse_csv(value, cast=str):
    """Accept '3,5,7', a list, or None."""
    if value is None:
        return None
    if isinstance(value, str):
        value = [v.strip() for v in value.split(',') if v.strip()]
    try:
        return tuple(cast(v) for v in value)
    except ValueError as exc:
        raise ValidationError('invalid list value: %s' % exc, code='invalid_list')


def parse_index(value):
    try:
        return RoughnessIndex(str(value).upper())
    except ValueError:
        raise ValidationError(
            'unknown roughness index %(value)s; choose from %(choices)s',
            code='invalid_index',
            params={'value': value, 'choices': ', '.join(RoughnessIndex.values)})


@dataclass(frozen=True)
class PipelineConfig:
    input: Optional[Path] = None
    cell: float = 1.0
    scales: Tuple[int, ...] = (3, 5, 7, 9, 11)
    indices: Tuple[RoughnessIndex, ...] = field(default_factory=RoughnessIndex.ordered)
    outdir: Optional[Path] = None
    normalize: bool = False
    slope_unit: str = 'radians'
    threads: int = 0

    @classmethod
    def from_options(cls, **options):
        """
        Build from management command options; options left as None fall
        back to the TERRAIN_* settings. Raises ``ValidationError``.
        """
        def pick(name, setting):
            value = options.get(name)
            return getattr(settings, setting) if value is None else value

        indices = parse_csv(pick('indices', 'TERRAIN_INDICES'))
        config = cls(
            input=Path(options['input']) if options.get('input') else None,
            cell=float(pick('cell', 'TERRAIN_CELL_SIZE')),
            scales=parse_csv(pick('scales', 'TERRAIN_SCALES'), cast=int),
            indices=tuple(parse_index(i) for i in indices),
            outdir=Path(options['outdir']) if options.get('outdir') else None,
            normalize=bool(pick('normalize', 'TERRAIN_NORMALIZE')),
            slope_unit=pick('slope_unit', 'TERRAIN_SLOPE_UNIT'),
            threads=int(pick('threads', 'TERRAIN_THREADS')),
        )
        config.validate()
        return config

    def validate(self):
        PositiveCellSizeValidator()(self.cell)
        WindowScaleListValidator()(list(self.scales))
        if not self.indices:
            raise ValidationError('select at least one roughness index', code='invalid_index')
        if self.slope_unit not in SLOPE_UNITS:
            raise ValidationError('slope unit must be one of %s' % ', '.join(SLOPE_UNITS),
                                  code='invalid_slope_unit')
        if self.threads < 0:
            raise ValidationError('thread count must be 0 (auto) or positive', code='invalid_threads')

    def ensure_outdir(self):
        """Create the output directory if needed and check it is writable."""
        try:
            self.outdir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ValidationError('cannot create output directory %s: %s' % (self.outdir, exc),
                                  code='invalid_outdir')
        if not os.access(self.outdir, os.W_OK):
            raise ValidationError('output directory %s is not writable' % self.outdir,
                                  code='invalid_outdir')
        return self.outdir
