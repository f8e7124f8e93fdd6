import logging
from pathlib import Path

import structlog
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

logger = structlog.get_logger(__name__)


def shipped_config_path() -> Path:
    """Returns the directory holding the example experiment configs."""
    return Path(__file__).parent.resolve() / "configs"


class Settings(BaseSettings):
    """
    Runtime settings for the command line tool.

    Only explicit constructor arguments are honoured: runs must be reproducible
    from flags and config files alone, so environment variables and dotenv
    files are never read.
    """

    log_level: str = "INFO"
    log_json: bool = False

    # Where fig1.cfg, fig2.cfg and phase_equiv.cfg live
    config_dir: Path = shipped_config_path()

    # Process pool size for the sweep subcommand (1 runs in-process)
    sweep_workers: int = 1

    model_config = SettingsConfigDict(extra="forbid")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],  # noqa: ARG003
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,  # noqa: ARG003
        dotenv_settings: PydanticBaseSettingsSource,  # noqa: ARG003
        file_secret_settings: PydanticBaseSettingsSource,  # noqa: ARG003
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


def configure_logging(level: str = "INFO", *, json: bool = False) -> None:
    """Configure structlog once for the process."""
    renderer = (
        structlog.processors.JSONRenderer()
        if json
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelNamesMapping()[level.upper()]
        ),
        cache_logger_on_first_use=False,
    )
    logger.debug("Logging has been configured.", level=level, json=json)
