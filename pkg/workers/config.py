"""
Worker configuration.

Centralized configuration management for the command-line experiment runner.
"""
import os
from dotenv import load_dotenv

load_dotenv(override=True)

# Output Configuration
OUTPUT_DIR = os.getenv("QWALK_OUTPUT_DIR", "./output")  # Base directory for relative --out paths

# Sweep Configuration
MAX_SWEEP_WORKERS = int(os.getenv("MAX_SWEEP_WORKERS", "4"))  # Processes used for overall sweeps

# Logging Configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# Validation
if MAX_SWEEP_WORKERS < 1:
    raise ValueError("MAX_SWEEP_WORKERS must be at least 1")
