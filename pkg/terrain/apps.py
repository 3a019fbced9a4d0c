from django.apps import AppConfig


class TerrainConfig(AppConfig):
    name = 'terrain'
    verbose_name = 'Terrain roughness'
    default_auto_field = 'django.db.models.BigAutoField'
