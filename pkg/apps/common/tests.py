import importlib
import os
from unittest import mock

from django.test import SimpleTestCase


class TestLoggingSettings(SimpleTestCase):
    def logger_level(self, name, **environ):
        with mock.patch.dict(os.environ, environ):
            if "LOG_LEVEL" not in environ:
                os.environ.pop("LOG_LEVEL", None)
            importlib.reload(importlib.import_module("monodromy.settings.base"))
            module = importlib.reload(importlib.import_module(f"monodromy.settings.{name}"))
        return module.LOGGING["loggers"]["apps"]["level"]

    def test_default_levels(self):
        self.assertEqual(self.logger_level("dev"), "DEBUG")
        self.assertEqual(self.logger_level("prod"), "WARNING")

    def test_level_from_environment(self):
        self.assertEqual(self.logger_level("dev", LOG_LEVEL="INFO"), "INFO")
        self.assertEqual(self.logger_level("prod", LOG_LEVEL="ERROR"), "ERROR")


class TestProjectLayout(SimpleTestCase):
    def test_apps_is_a_regular_package(self):
        import apps

        # test discovery skips namespace packages, which have no __file__
        self.assertIsNotNone(apps.__file__)


# python manage.py test apps.common.tests
