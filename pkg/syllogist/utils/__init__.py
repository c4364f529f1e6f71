from .logging import add_run_id, new_run_id, run_id, setup_logging
from .timing import TimeUsage, time_usage
from .yaml import read_yaml
