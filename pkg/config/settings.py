"""
Django settings for the fourcalc project.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'fourcalc-local-only-not-a-secret')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    # Third party apps
    'rest_framework',

    # Local apps
    'fpgroup',
    'lattice',
    'swengine',
    'manifold',
    'paperlib',
    'cli',
]

# No models are defined; the database is only here so management commands boot.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework settings (serializers only, no views)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
}

# ============================================================================
# COSET ENUMERATION
# ============================================================================

FOURCALC_MAX_COSETS = int(os.getenv('FOURCALC_MAX_COSETS', '1000000'))
FOURCALC_MAX_DEFINITIONS = int(os.getenv('FOURCALC_MAX_DEFINITIONS', '10000000'))

# 'hlt' (relator based, with lookahead) or 'felsch' (coset-table based)
FOURCALC_ENUMERATION_STRATEGY = os.getenv('FOURCALC_ENUMERATION_STRATEGY', 'hlt')
FOURCALC_LOOKAHEAD = os.getenv('FOURCALC_LOOKAHEAD', 'True') == 'True'

# Longest relator allowed to define an eliminated generator
FOURCALC_TIETZE_MAX_LENGTH = int(os.getenv('FOURCALC_TIETZE_MAX_LENGTH', '6'))

# Largest target group order searched for nontriviality witnesses
FOURCALC_QUOTIENT_CEILING = int(os.getenv('FOURCALC_QUOTIENT_CEILING', '16'))

# ============================================================================
# BASIC CLASS ENUMERATION
# ============================================================================

# Bound on |K.b| per search-basis vector
FOURCALC_EVAL_BOUND = int(os.getenv('FOURCALC_EVAL_BOUND', '4'))
FOURCALC_SEARCH_BOX_LIMIT = int(os.getenv('FOURCALC_SEARCH_BOX_LIMIT', '2000000'))

# Expanded SWState size above which serialization refuses
FOURCALC_MAX_SW_KEYS = int(os.getenv('FOURCALC_MAX_SW_KEYS', '4096'))

# ============================================================================
# SCENARIOS
# ============================================================================

FOURCALC_MAX_N = int(os.getenv('FOURCALC_MAX_N', '100'))
FOURCALC_MAX_B2 = int(os.getenv('FOURCALC_MAX_B2', '16'))
FOURCALC_SCENARIO_WORKERS = int(os.getenv('FOURCALC_SCENARIO_WORKERS', '1'))
REPORT_SCHEMA_VERSION = '1.0'

# Certificate cache (completed coset enumerations only)
FOURCALC_CACHE = os.getenv('FOURCALC_CACHE', str(BASE_DIR / '.fourcalc_cache'))

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
    },
    'certificates': {
        'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
        'LOCATION': FOURCALC_CACHE,
        'TIMEOUT': None,
    },
}

# ============================================================================
# LOGGING
# ============================================================================

# Everything goes to stderr; stdout carries reports only.
FOURCALC_LOG_LEVEL = os.getenv('FOURCALC_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': FOURCALC_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('fpgroup', 'lattice', 'swengine', 'manifold', 'paperlib', 'cli')
    },
}
