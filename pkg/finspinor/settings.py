"""
Django settings for the finspinor project.

The project has no database, URL routing or templates: it exists to host the
management commands in ``finspinor/management/commands``. Runtime knobs
(tolerances, log location, defaults) live in ``config.jsonc``, see
``finspinor/config.py``.
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; nothing here is signed or served.
SECRET_KEY = 'finspinor-cli-no-secrets'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'finspinor',
]

DATABASES = {}

# Logging is configured by finspinor.management.commands.logging_config
LOGGING_CONFIG = None


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True
