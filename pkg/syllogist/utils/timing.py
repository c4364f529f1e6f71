import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator


@dataclass
class TimeUsage:
    """Milliseconds spent in a block; filled in when the block exits."""

    total_ms: float = 0.0
    process_ms: float = 0.0

    def log_fields(self) -> dict[str, float]:
        return {"total_ms": self.total_ms, "process_ms": self.process_ms}


@contextmanager
def time_usage() -> Iterator[TimeUsage]:
    usage = TimeUsage()
    wall_start = time.perf_counter_ns()
    process_start = time.process_time_ns()
    try:
        yield usage
    finally:
        # Also recorded when the command raises.
        usage.process_ms = round((time.process_time_ns() - process_start) / 1e6, 3)
        usage.total_ms = round((time.perf_counter_ns() - wall_start) / 1e6, 3)
