# Generated by Django 4.2.11 on 2026-10-18 09:12

from django.db import migrations, models
import django.db.models.deletion
import django.utils.timezone
import model_utils.fields
import terrain.validators


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ComparisonRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created', model_utils.fields.AutoCreatedField(default=django.utils.timezone.now, editable=False, verbose_name='created')),
                ('modified', model_utils.fields.AutoLastModifiedField(default=django.utils.timezone.now, editable=False, verbose_name='modified')),
                ('source', models.CharField(max_length=500, verbose_name='source DEM')),
                ('cell_size', models.FloatField(validators=[terrain.validators.PositiveCellSizeValidator()], verbose_name='cell size (m)')),
                ('nrows', models.PositiveIntegerField()),
                ('ncols', models.PositiveIntegerField()),
                ('scales', models.JSONField(default=list, validators=[terrain.validators.WindowScaleListValidator()])),
                ('status', models.CharField(choices=[('RUNNING', 'Running'), ('COMPLETED', 'Completed'), ('FAILED', 'Failed')], default='RUNNING', max_length=10)),
            ],
            options={
                'ordering': ['-created'],
            },
        ),
        migrations.CreateModel(
            name='CorrelationRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('scale', models.PositiveSmallIntegerField(validators=[terrain.validators.WindowScaleValidator()])),
                ('index_a', models.CharField(choices=[('RMSH', 'Root mean square height'), ('LDRE', 'Std. of locally detrended residual elevation'), ('RT', 'Std. of residual topography'), ('SLOPE', 'Std. of slope'), ('CURVATURE', 'Std. of curvature')], max_length=10)),
                ('index_b', models.CharField(choices=[('RMSH', 'Root mean square height'), ('LDRE', 'Std. of locally detrended residual elevation'), ('RT', 'Std. of residual topography'), ('SLOPE', 'Std. of slope'), ('CURVATURE', 'Std. of curvature')], max_length=10)),
                ('r', models.FloatField(blank=True, null=True)),
                ('r2', models.FloatField(blank=True, null=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='correlations', to='terrain.comparisonrun')),
            ],
            options={
                'ordering': ['scale', 'id'],
            },
        ),
        migrations.AddConstraint(
            model_name='correlationrecord',
            constraint=models.UniqueConstraint(fields=('run', 'scale', 'index_a', 'index_b'), name='unique_correlation_per_run_pair'),
        ),
    ]
