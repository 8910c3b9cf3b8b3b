# core/settings.py
from pathlib import Path
from environs import Env
from decouple import config
from celery.schedules import crontab


# ==============================================================================
# CORE PATHS & CONFIGURATION
# ==============================================================================

env = Env()
env.read_env()  # Optional .env next to manage.py; nothing in it is required.

BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals (signing); the toolkit serves no requests.
SECRET_KEY = env("SECRET_KEY", default='qec-toolkit-local-key-not-for-deployment')

DEBUG = env.bool("DEBUG", default=False)

ALLOWED_HOSTS = []


# ==============================================================================
# APPLICATION DEFINITION
# ==============================================================================

INSTALLED_APPS = [
    # rest_framework imports auth and contenttypes models.
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third-Party Apps
    'rest_framework',

    # Local Apps
    'qutrit',
    'qec',
    'verification',
]

# Nothing is persisted: codes, sweeps and reports are recomputed on demand.
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True


# ==============================================================================
# ASYNCHRONOUS TASKS (Celery)
# ==============================================================================
CELERY_BROKER_URL = config('REDIS_URL', default="redis://127.0.0.1:6379/0")
CELERY_RESULT_BACKEND = config('REDIS_URL', default="redis://127.0.0.1:6379/0")

CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'

# Inline execution unless a worker is deployed; set CELERY_EAGER=false then.
CELERY_TASK_ALWAYS_EAGER = env.bool("CELERY_EAGER", default=True)
CELERY_TASK_EAGER_PROPAGATES = True

CELERY_TASK_DEFAULT_QUEUE = 'verification'
CELERY_TASK_TRACK_STARTED = True
CELERY_ACKS_LATE = True
CELERYD_PREFETCH_MULTIPLIER = 1
CELERY_TASK_REJECT_ON_WORKER_LOST = True

# Nightly regression run of every asserted suite when beat is deployed.
CELERY_BEAT_SCHEDULE = {
    'nightly-verification': {
        'task': 'verification.tasks.run_all_suites',
        'schedule': crontab(minute='0', hour='3'),
    },
}


# ==============================================================================
# DJANGO REST FRAMEWORK (JSON documents only)
# ==============================================================================
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}


# ==============================================================================
# LOGGING CONFIGURATION (CONSOLE-ONLY)
# ==============================================================================
# Logs go to stderr so that reports written to stdout stay machine-readable.
APP_LOG_LEVEL = env.str("APP_LOG_LEVEL", default="INFO")

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {module} [{process:d}:{thread:d}] - {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        '': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
        'qutrit': {
            'handlers': ['console'],
            'level': APP_LOG_LEVEL,
            'propagate': False,
        },
        'qec': {
            'handlers': ['console'],
            'level': APP_LOG_LEVEL,
            'propagate': False,
        },
        'verification': {
            'handlers': ['console'],
            'level': APP_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# ==============================================================================
# TOOLKIT CONFIGURATION
# ==============================================================================
# Every key can be overridden by an environment variable named QEC_<KEY>.
QEC_CONFIG = {
    "STATE_TOL": env.float("QEC_STATE_TOL", default=1e-10),
    "ALGEBRA_TOL": env.float("QEC_ALGEBRA_TOL", default=1e-12),
    "FIDELITY_TOL": env.float("QEC_FIDELITY_TOL", default=1e-9),
    "KL_TOL": env.float("QEC_KL_TOL", default=1e-9),
    "ANCILLA_TOL": env.float("QEC_ANCILLA_TOL", default=1e-9),
    "RANDOM_SEED": env.int("QEC_RANDOM_SEED", default=20240607),
    "RANDOM_LOGICAL_STATES": env.int("QEC_RANDOM_LOGICAL_STATES", default=3),
    "MAX_QUTRITS": env.int("QEC_MAX_QUTRITS", default=8),
    "MAX_MATRIX_QUTRITS": env.int("QEC_MAX_MATRIX_QUTRITS", default=3),
    "PHASE_SWEEP_CHUNK": env.int("QEC_PHASE_SWEEP_CHUNK", default=243),
    "REPORT_SCHEMA_VERSION": env.int("QEC_REPORT_SCHEMA_VERSION", default=1),
}
