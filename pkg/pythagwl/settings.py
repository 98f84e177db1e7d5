"""
Django settings for the pythagwl project.

The project hosts no web surface; Django supplies settings, logging
configuration, management commands and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'pythagwl-insecure-local-key')

DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'pythag',  # Pythagorean won-loss toolkit
]

# No models; commands and tests never open a database connection
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging: one stderr handler, report output stays on stdout
PYTHAG_LOG_LEVEL = os.getenv('PYTHAG_LOG_LEVEL', 'WARNING').upper()

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
            'formatter': 'plain',
        },
    },
    'loggers': {
        'pythag': {
            'handlers': ['console'],
            'level': PYTHAG_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Pythagorean toolkit configuration
PYTHAG_SEED = int(os.getenv('PYTHAG_SEED', '20120521'))
PYTHAG_DATA_FILE = Path(os.getenv('PYTHAG_DATA_FILE', BASE_DIR / 'data' / 'mlb_1991_2011.csv'))
PYTHAG_ALPHA = float(os.getenv('PYTHAG_ALPHA', '0.05'))
PYTHAG_MAX_GRID_POINTS = int(os.getenv('PYTHAG_MAX_GRID_POINTS', str(10**7)))
PYTHAG_WORKERS = int(os.getenv('PYTHAG_WORKERS', '1'))
