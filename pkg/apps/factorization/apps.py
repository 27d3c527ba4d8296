from django.apps import AppConfig


class FactorizationConfig(AppConfig):
    name = 'apps.factorization'
    verbose_name = "Monodromy factorizations"
