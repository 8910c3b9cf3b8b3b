from django.apps import AppConfig


class QecConfig(AppConfig):
    name = 'qec'
    verbose_name = 'Ternary error-correcting codes'
