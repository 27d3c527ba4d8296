from .base import *
from decouple import config

DEBUG = False

LOGGING["loggers"]["apps"]["level"] = config("LOG_LEVEL", default="WARNING")
