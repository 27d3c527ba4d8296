"""
Django settings for the monodromy project.

The project has no web surface: Django provides the app registry, the
management-command CLI, templates and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Sample factorizations, charts and descriptors shipped with the repo
DATA_DIR = BASE_DIR / "data"

# Nothing is signed; Django still expects a key to be configured.
SECRET_KEY = config("SECRET_KEY", default="monodromy-insecure-local-key")


# Application definition

DJANGO_APPS = []

THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'apps.common.apps.CommonConfig',
    'apps.sl2z.apps.Sl2zConfig',
    'apps.factorization.apps.FactorizationConfig',
    'apps.orbits.apps.OrbitsConfig',
    'apps.charts.apps.ChartsConfig',
    'apps.sblf.apps.SblfConfig',
    'apps.cli.apps.CliConfig',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [BASE_DIR / 'templates'],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

# Nothing is persisted; Django falls back to the dummy backend.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Search budgets and oracle sizes
MONODROMY = {
    "ORBIT_ENTRY_BOUND": config("ORBIT_ENTRY_BOUND", default=20, cast=int),
    "ORBIT_NODE_BUDGET": config("ORBIT_NODE_BUDGET", default=200_000, cast=int),
    # entry bounds double on an exhausted frontier, up to this value
    "ORBIT_ENTRY_BOUND_CEILING": config(
        "ORBIT_ENTRY_BOUND_CEILING", default=160, cast=int
    ),
    "ORBIT_JOBS": config("ORBIT_JOBS", default=1, cast=int),
    "SUBWORD_SCAN_LIMIT": config("SUBWORD_SCAN_LIMIT", default=24, cast=int),
    "SCRAMBLE_STEPS": config("SCRAMBLE_STEPS", default=200, cast=int),
    # scrambles never create an entry above this value
    "SCRAMBLE_HEIGHT_CAP": config("SCRAMBLE_HEIGHT_CAP", default=20, cast=int),
    "CONJUGATE_WORD_LENGTH": config("CONJUGATE_WORD_LENGTH", default=8, cast=int),
}


LOG_LEVEL = config("LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}
