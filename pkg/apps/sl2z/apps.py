from django.apps import AppConfig


class Sl2zConfig(AppConfig):
    name = 'apps.sl2z'
    verbose_name = "SL(2,Z) arithmetic"
