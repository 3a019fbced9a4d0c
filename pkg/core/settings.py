"""
Django settings for the terrain roughness project.

Every tunable is read through python-decouple, from the environment or a
`.env` file next to manage.py. See `.env.example` for the full list.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/
"""
# coding: utf-8
from decouple import (
    config,
    Csv
)
from pathlib import Path
from dj_database_url import parse as db_url


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# The project serves no web requests; the key only seeds Django internals.
SECRET_KEY = config('SECRET_KEY', default='terrain-roughness-local')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='', cast=Csv())


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',

    # local apps
    'terrain',
]


# Database
# Stores comparison runs recorded with `--record`.
# https://pypi.org/project/python-decouple/#id9

DATABASES = {
    'default': config(
        'DATABASE_URL',
        default='sqlite:///' + str(BASE_DIR / 'db.sqlite3'),
        cast=db_url
    )
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Logging
# https://docs.djangoproject.com/en/4.2/topics/logging/

TERRAIN_LOG_LEVEL = config('TERRAIN_LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
        'terrain': {
            'handlers': ['console'],
            'level': TERRAIN_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Terrain pipeline defaults
# Each one can be overridden per invocation by the matching command option.

TERRAIN_CELL_SIZE = config('TERRAIN_CELL_SIZE', default=1.0, cast=float)

TERRAIN_SCALES = config('TERRAIN_SCALES', default='3,5,7,9,11', cast=Csv(int))

TERRAIN_INDICES = config('TERRAIN_INDICES', default='RMSH,LDRE,RT,SLOPE,CURVATURE', cast=Csv())

# 0 means one worker per CPU
TERRAIN_THREADS = config('TERRAIN_THREADS', default=0, cast=int)

TERRAIN_SLOPE_UNIT = config('TERRAIN_SLOPE_UNIT', default='radians')

TERRAIN_NORMALIZE = config('TERRAIN_NORMALIZE', default=False, cast=bool)
