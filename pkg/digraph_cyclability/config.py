"""
Configuration module for the digraph cyclability toolkit
Loads environment variables and provides settings for the oracle, grower and scans
"""

import os
import logging
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


# ============================================================================
# ORACLE CONFIGURATION
# ============================================================================

class OracleConfig:
    """Limits for the exact subset-DP oracle"""

    # Largest order the oracle accepts (2^n * n^2 state transitions)
    ORACLE_CAP: int = int(os.getenv("ORACLE_CAP", "14"))


# ============================================================================
# GROWER CONFIGURATION
# ============================================================================

class GrowerConfig:
    """Configuration for the cycle grower and its bounded searches"""

    # Improvement budget is BUDGET_FACTOR * n iterations
    GROWER_BUDGET_FACTOR: int = int(os.getenv("GROWER_BUDGET_FACTOR", "10"))

    # DFS node expansions allowed per bypass / pair-cycle search
    BYPASS_SEARCH_BUDGET: int = int(os.getenv("BYPASS_SEARCH_BUDGET", "200000"))

    @classmethod
    def default_budget(cls, order: int) -> int:
        """Improvement iterations allowed for a digraph of the given order"""
        return cls.GROWER_BUDGET_FACTOR * max(order, 1)


# ============================================================================
# SCAN CONFIGURATION
# ============================================================================

class ScanConfig:
    """Configuration for exhaustive and randomized verification campaigns"""

    # Parallel workers (1 = run in-process)
    SCAN_WORKERS: int = int(os.getenv("SCAN_WORKERS", "1"))

    # Digraphs per dispatched work unit
    SCAN_CHUNK_SIZE: int = int(os.getenv("SCAN_CHUNK_SIZE", "4096"))

    # Random Y subsets drawn per digraph under the sampled policy (Y=V is always added)
    SCAN_SAMPLED_K: int = int(os.getenv("SCAN_SAMPLED_K", "4"))

    # Arc probability for random digraphs
    SCAN_ARC_PROBABILITY: float = float(os.getenv("SCAN_ARC_PROBABILITY", "0.5"))

    # Full enumeration has 2^(n(n-1)) digraphs
    EXHAUSTIVE_MAX_ORDER: int = int(os.getenv("EXHAUSTIVE_MAX_ORDER", "5"))

    # Entries kept per report (violations and condition reports)
    REPORT_VIOLATION_CAP: int = int(os.getenv("REPORT_VIOLATION_CAP", "10000"))

    @classmethod
    def validate(cls) -> bool:
        """Validate scan settings"""
        problems = []

        if cls.SCAN_WORKERS < 1:
            problems.append(f"SCAN_WORKERS must be >= 1, got {cls.SCAN_WORKERS}")
        if cls.SCAN_CHUNK_SIZE < 1:
            problems.append(f"SCAN_CHUNK_SIZE must be >= 1, got {cls.SCAN_CHUNK_SIZE}")
        if cls.SCAN_SAMPLED_K < 0:
            problems.append(f"SCAN_SAMPLED_K must be >= 0, got {cls.SCAN_SAMPLED_K}")
        if not 0.0 < cls.SCAN_ARC_PROBABILITY < 1.0:
            problems.append(
                f"SCAN_ARC_PROBABILITY must lie in (0, 1), got {cls.SCAN_ARC_PROBABILITY}"
            )
        if cls.REPORT_VIOLATION_CAP < 1:
            problems.append(
                f"REPORT_VIOLATION_CAP must be >= 1, got {cls.REPORT_VIOLATION_CAP}"
            )

        for problem in problems:
            logging.warning(problem)

        return not problems


# ============================================================================
# LOGGING CONFIGURATION
# ============================================================================

class LogConfig:
    """Logging configuration"""

    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: Optional[Path] = (
        Path(os.environ["LOG_FILE"]) if os.getenv("LOG_FILE") else None
    )

    # Log format
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    DATE_FORMAT: str = "%Y-%m-%d %H:%M:%S"

    @classmethod
    def setup_logging(cls, level: Optional[str] = None) -> None:
        """
        Configure logging for the entire application

        Records go to stderr so command output on stdout stays parseable.

        Args:
            level: Optional level name overriding LOG_LEVEL
        """
        handlers = [logging.StreamHandler()]

        if cls.LOG_FILE is not None:
            cls.LOG_FILE.parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(cls.LOG_FILE))

        logging.basicConfig(
            level=getattr(logging, (level or cls.LOG_LEVEL).upper()),
            format=cls.LOG_FORMAT,
            datefmt=cls.DATE_FORMAT,
            handlers=handlers,
            force=True
        )


# ============================================================================
# VALIDATION
# ============================================================================

def validate_configuration() -> bool:
    """
    Validate all configuration settings

    Returns:
        bool: True if configuration is valid, False otherwise
    """
    logger = logging.getLogger(__name__)

    valid = True

    if OracleConfig.ORACLE_CAP < 1:
        logger.error(f"ORACLE_CAP must be >= 1, got {OracleConfig.ORACLE_CAP}")
        valid = False

    if GrowerConfig.GROWER_BUDGET_FACTOR < 1:
        logger.error(
            f"GROWER_BUDGET_FACTOR must be >= 1, got {GrowerConfig.GROWER_BUDGET_FACTOR}"
        )
        valid = False

    if GrowerConfig.BYPASS_SEARCH_BUDGET < 1:
        logger.error(
            f"BYPASS_SEARCH_BUDGET must be >= 1, got {GrowerConfig.BYPASS_SEARCH_BUDGET}"
        )
        valid = False

    if not ScanConfig.validate():
        logger.error("Scan configuration validation failed")
        valid = False

    if valid:
        logger.debug("Configuration validation successful")
    return valid
