from .base import *
from decouple import config

DEBUG = True

LOGGING["loggers"]["apps"]["level"] = config("LOG_LEVEL", default="DEBUG")
