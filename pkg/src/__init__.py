# typlab - typicality lab for one-parameter families of piecewise expanding maps
# src package marker
from src.config.settings import TOOL_VERSION as __version__
