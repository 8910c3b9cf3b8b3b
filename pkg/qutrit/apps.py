from django.apps import AppConfig


class QutritConfig(AppConfig):
    name = 'qutrit'
    verbose_name = 'Qutrit algebra and simulation'
