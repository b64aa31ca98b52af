from .constants import *
from .exceptions import *
from .settings import settings, Settings
from .log import enable_logging, log
