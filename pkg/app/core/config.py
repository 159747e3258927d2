import os

from dotenv import load_dotenv  # type: ignore[import-not-found]

load_dotenv()  # Load environment variables from .env file


# FPT routines enumerate 2^n sign patterns
N_CAP = int(os.getenv("NNFOPT_N_CAP", "12"))

# Brute-force oracle configuration
ORACLE_MAX_VARS = int(os.getenv("NNFOPT_ORACLE_MAX_VARS", "24"))
ORACLE_CHUNK = int(os.getenv("NNFOPT_ORACLE_CHUNK", "65536"))

# CNF -> DNNF compiler
COMPILE_CACHE_LIMIT = int(os.getenv("NNFOPT_COMPILE_CACHE_LIMIT", "1000000"))

# Worker count for pattern enumeration (never changes results)
JOBS = int(os.getenv("NNFOPT_JOBS", "1"))

LOG_LEVEL = os.getenv("NNFOPT_LOG_LEVEL", "WARNING")
