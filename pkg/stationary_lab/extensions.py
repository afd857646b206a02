import logging
from concurrent.futures import ThreadPoolExecutor

_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def init_logging(level="INFO"):
    """Configure the root handler once; later calls only change the level."""
    root = logging.getLogger()
    if not any(getattr(h, "_lab_handler", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        handler._lab_handler = True
        root.addHandler(handler)
    root.setLevel(getattr(logging, str(level).upper(), logging.INFO))


class WorkerPool:
    """Thread pool for grid sweeps; results always come back in input order."""

    def __init__(self, threads=1):
        self.threads = max(1, int(threads))

    def configure(self, threads):
        self.threads = max(1, int(threads))

    def map_ordered(self, fn, items):
        items = list(items)
        if self.threads == 1 or len(items) < 2:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            # executor.map yields in submission order
            return list(executor.map(fn, items))


pool = WorkerPool()
