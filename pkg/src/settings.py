"""
Harmonia settings module.
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Default logging level for the CLI (stdout is reserved for results)
DEFAULT_LOG_LEVEL = "WARNING"

# Long solves are disabled unless a deadline (seconds) is given
DEFAULT_DEADLINE = 0
DEFAULT_THREADS = 1
JSON_INDENT = 2


class Settings(BaseSettings):
    log_level: str = DEFAULT_LOG_LEVEL
    threads: int = Field(DEFAULT_THREADS, ge=1)
    deadline: int = Field(DEFAULT_DEADLINE, ge=0)
    json_indent: int = JSON_INDENT

    # to override, e.g.: export HARMONIA_THREADS=4
    model_config = SettingsConfigDict(env_prefix="HARMONIA_")


settings = Settings()
