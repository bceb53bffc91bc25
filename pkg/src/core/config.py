import os
import logging
from typing import List

import yaml
from pydantic import BaseModel, Field, ValidationError

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("Settings")

DEFAULT_CONFIG_PATH = "./config/config.yaml"


class ServiceSettings(BaseModel):
    name: str = "Semantic R(G) API"
    version: str = "1.0.0"
    host: str = "0.0.0.0"
    port: int = 8000


class LoggingSettings(BaseModel):
    level: str = Field(default="INFO", description="Root log level applied by the CLI")


class ExperimentSettings(BaseModel):
    point_mass_step: float = Field(default=0.25, gt=0, description="Grid step for point-mass comparisons")
    sensitivity_steps: List[float] = Field(default=[0.25, 0.5, 1.0], description="Grid steps rerun by the sensitivity report")


class ToleranceSettings(BaseModel):
    """Every acceptance tolerance used by table verdicts"""
    table1_bits: float = 0.15
    table1_efficiency: float = 0.05
    table2_pa: float = 0.02
    table2_bits: float = 0.15
    table2_efficiency: float = 0.02
    point_mass_efficiency: float = 0.03
    grid_sensitivity_bits: float = 0.05


class OutputSettings(BaseModel):
    out_dir: str = "./results"


class Settings(BaseModel):
    """Application settings loaded from config/config.yaml"""
    service: ServiceSettings = Field(default_factory=ServiceSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    experiments: ExperimentSettings = Field(default_factory=ExperimentSettings)
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    outputs: OutputSettings = Field(default_factory=OutputSettings)


def load_settings(config_path: str = DEFAULT_CONFIG_PATH) -> Settings:
    """
    Load application settings

    Args:
        config_path: Path to YAML configuration file

    Returns:
        Settings (model defaults when the file is missing or unreadable)
    """
    if not os.path.exists(config_path):
        logger.info(f"No settings file at {config_path}, using defaults")
        return Settings()
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
        return Settings(**raw)
    except (yaml.YAMLError, ValidationError, TypeError) as e:
        logger.error(f"Error loading settings from {config_path}: {e}")
        return Settings()
