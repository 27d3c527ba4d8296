from django.apps import AppConfig


class SblfConfig(AppConfig):
    name = 'apps.sblf'
    verbose_name = "SBLF classification"
