import math

from django.db import models, transaction
from django.utils.translation import gettext_lazy as _
from model_utils.models import TimeStampedModel

from .roughness import RoughnessIndex
from .validators import (PositiveCellSizeValidator, WindowScaleListValidator,
                         WindowScaleValidator)


class ComparisonRunManager(models.Manager):
    """
    Manager for ComparisonRun with helpers to open a run and to store a
    finished scale sweep.
    """

    def start_run(self, source, cell_size, shape, scales):
        nrows, ncols = shape
        run = self.model(source=str(source), cell_size=cell_size, nrows=nrows,
                         ncols=ncols, scales=sorted(scales))
        run.full_clean()
        run.save(using=self._db)
        return run

    def record_sweep(self, sweep, source, cell_size, shape):
        """Create a completed run holding every matrix of ``sweep``."""
        with transaction.atomic(using=self._db):
            run = self.start_run(source, cell_size, shape, sweep.scales)
            run.complete(sweep)
        return run


class ComparisonRun(TimeStampedModel):
    """
    One scale sweep over one DEM. Correlations live in CorrelationRecord.
    """
    class StatusChoices(models.TextChoices):
        RUNNING = 'RUNNING', _('Running')
        COMPLETED = 'COMPLETED', _('Completed')
        FAILED = 'FAILED', _('Failed')

    source = models.CharField(_('source DEM'), max_length=500)
    cell_size = models.FloatField(_('cell size (m)'), validators=[PositiveCellSizeValidator()])
    nrows = models.PositiveIntegerField()
    ncols = models.PositiveIntegerField()
    # window scales in increasing order
    scales = models.JSONField(default=list, validators=[WindowScaleListValidator()])
    status = models.CharField(max_length=10, choices=StatusChoices.choices,
                              default=StatusChoices.RUNNING)

    objects = ComparisonRunManager()

    class Meta:
        ordering = ['-created']

    def __str__(self):
        return '%s (%s)' % (self.source, self.get_status_display())

    def complete(self, sweep):
        records = [
            CorrelationRecord(run=self, scale=matrix.scale, index_a=a, index_b=b,
                              r=None if math.isnan(r) else r,
                              r2=None if math.isnan(r2) else r2)
            for matrix in sweep
            for a, b, r, r2 in matrix.pairs()
        ]
        with transaction.atomic():
            CorrelationRecord.objects.bulk_create(records)
            self.status = self.StatusChoices.COMPLETED
            self.save(update_fields=['status', 'modified'])

    def fail(self):
        self.status = self.StatusChoices.FAILED
        self.save(update_fields=['status', 'modified'])

    def matrix(self, scale, squared=False):
        """Rebuild the full symmetric matrix of one scale, NaN where undefined."""
        labels = RoughnessIndex.ordered()
        position = {label.value: k for k, label in enumerate(labels)}
        rows = [[math.nan] * len(labels) for _ in labels]
        for record in self.correlations.filter(scale=scale):
            value = record.r2 if squared else record.r
            value = math.nan if value is None else value
            i, j = position[record.index_a], position[record.index_b]
            rows[i][j] = rows[j][i] = value
        return labels, rows


class CorrelationRecord(models.Model):
    """r and R^2 of one index pair at one scale; NULL means undefined."""
    run = models.ForeignKey(ComparisonRun, related_name='correlations', on_delete=models.CASCADE)
    scale = models.PositiveSmallIntegerField(validators=[WindowScaleValidator()])
    index_a = models.CharField(max_length=10, choices=RoughnessIndex.choices)
    index_b = models.CharField(max_length=10, choices=RoughnessIndex.choices)
    r = models.FloatField(null=True, blank=True)
    r2 = models.FloatField(null=True, blank=True)

    class Meta:
        ordering = ['scale', 'id']
        constraints = [
            models.UniqueConstraint(fields=['run', 'scale', 'index_a', 'index_b'],
                                    name='unique_correlation_per_run_pair'),
        ]

    def __str__(self):
        return 'w=%d %s/%s r=%s' % (self.scale, self.index_a, self.index_b, self.r)
