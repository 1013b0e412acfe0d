import logging
from pathlib import Path

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Runtime configuration, read from FRIG_* environment variables or a .env file"""

    model_config = SettingsConfigDict(env_prefix="FRIG_", env_file=".env", extra="ignore")

    log_level: str = "WARNING"
    data_dir: Path = BASE_DIR / "data"
    brute_force_limit: int = 20
    sweep_workers: int = 1
    tolerance: float = 1e-9

    def configure_logging(self) -> None:
        """Apply the configured log level to the root logger"""
        logging.basicConfig(
            level=getattr(logging, self.log_level.upper(), logging.WARNING),
            format="%(levelname)s %(name)s: %(message)s",
        )


# Create a singleton instance of the settings
settings = Settings()
