from schreierlab.config.settings import AppConfig
from schreierlab.config.loader import load_config
from schreierlab.config.environment import RuntimeSettings
