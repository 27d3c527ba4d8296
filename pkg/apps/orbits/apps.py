from django.apps import AppConfig


class OrbitsConfig(AppConfig):
    name = 'apps.orbits'
    verbose_name = "Hurwitz orbit search"
