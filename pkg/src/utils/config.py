import os
from dotenv import load_dotenv

load_dotenv()

# Arithmetic defaults
DEFAULT_CHARACTERISTIC = int(os.getenv('ARTIN_CHAR', '101'))
MAX_CHARACTERISTIC = 2 ** 31

# Resolution / series depth
DEFAULT_DEPTH = int(os.getenv('ARTIN_DEPTH', '6'))
MAX_DEPTH = 8
MATRIX_ENTRY_LIMIT = int(os.getenv('ARTIN_MATRIX_LIMIT', str(2 * 10 ** 7)))

# Degree cap search for ring files without an explicit cap (inclusive range)
CAP_SEARCH_START = 3
CAP_SEARCH_STOP = 12

# Exact zero divisor search
EZD_MODES = ('linear', 'full', 'random', 'auto')
EZD_DEFAULT_MODE = os.getenv('ARTIN_EZD_MODE', 'linear')
EZD_DEFAULT_BUDGET = int(os.getenv('ARTIN_EZD_BUDGET', str(10 ** 5)))
EZD_FULL_AUTO_LIMIT = 2 ** 14

DEFAULT_SEED = int(os.getenv('ARTIN_SEED', '0'))

# Reports
SCHEMA_VERSION = '1.0'

# Logging
LOG_LEVEL = os.getenv('ARTIN_LOG_LEVEL', 'WARNING')
LOG_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'
