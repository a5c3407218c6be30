import os
from fractions import Fraction

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Application settings
APP_TITLE = "etaq"
APP_DESCRIPTION = "Exact eta-quotient expansions, Sturm certificates and vanishing-set checks"
APP_VERSION = "0.1.0"

# Logging settings
LOG_LEVEL = os.getenv("ETAQ_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# Cache settings
CACHE_DIR = os.getenv("ETAQ_CACHE_DIR", os.path.join(os.path.expanduser("~"), ".cache", "etaq"))

# Worker settings
DEFAULT_JOBS = int(os.getenv("ETAQ_JOBS", 1))
DEFAULT_LIMIT = int(os.getenv("ETAQ_DEFAULT_LIMIT", 2000))

# Arithmetic settings
PRIME_SIEVE_BOUND = int(os.getenv("ETAQ_PRIME_SIEVE_BOUND", 1_000_000))
MAX_SERIES_LIMIT = int(os.getenv("ETAQ_MAX_SERIES_LIMIT", 400_000))

# Verification settings
IDENTITY_CHECK_LIMIT = 2000
VANISHING_LIMIT = 10_000

# Growth thresholds
G1_FLOOR = 1120
G1_THRESHOLD = Fraction(4, 3)
G2_FLOOR = 309_400
G2_THRESHOLD = Fraction(8)

# Check worker count
if DEFAULT_JOBS < 1:
    print(f"Warning: ETAQ_JOBS={DEFAULT_JOBS} is not a valid worker count, using 1.")
    DEFAULT_JOBS = 1
