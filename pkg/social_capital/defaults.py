import os

SRC_DIR = os.path.dirname(__file__)

EXAMPLE_DIR = os.path.join(SRC_DIR, '..', 'example')

GOAL_ID = 'G1'

# threshold at which an implicit link is treated as explicit
TAU = 1.0

# decay rate of the exponential belief function
LAMBDA = 0.0

BELIEF_MODES = ('ratio', 'exp')
BELIEF_MODE = 'ratio'

OUTPUT_FORMATS = ('csv', 'json-lines')
OUTPUT_FORMAT = 'csv'

# decimal places of reported values
PRECISION = 3

# Net-SC sums the accumulative column by default
NET_MODES = ('accumulative', 'instant')
NET_MODE = 'accumulative'

CAPACITY_SOURCES = ('commits', 'profile')
CAPACITY_SOURCE = 'commits'

# no limit on hops when searching for closure paths
MAX_PATH_HOPS = None

REPORT_FIELDS = ('interval', 'agent', 'links', 'relation', 'capacity', 'benevolence',
                 'pbenevolence', 'instant_sc', 'accumulative_sc', 'net_sc')

EXPLAIN_FIELDS = ('interval', 'section', 'subtask', 'source', 'target', 'value')

RECORD_FIELDS = ('timestamp', 'contributor', 'package', 'class',
                 'lines_added', 'lines_deleted', 'commit')

JSON_LOG_EXTENSIONS = ('.jsonl', '.json', '.ndjson')
TABLE_LOG_EXTENSIONS = {'.csv': ',', '.tsv': '\t'}

# process exit codes
EXIT_SUCCESS = 0
EXIT_ERROR = 1
EXIT_PARSE_FAILURE = 2
EXIT_CONFIG_FAILURE = 3
EXIT_NO_DATA = 4
