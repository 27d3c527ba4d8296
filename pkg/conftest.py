import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "monodromy.settings.dev")
django.setup()
