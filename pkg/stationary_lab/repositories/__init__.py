# Repository layer for report and sample files
from .sample_repository import SampleRepository

__all__ = [
    'SampleRepository'
]
