from services.storage.datasets import DATASET_IDS, PublishedSolution, load_dataset, published_solutions, resolve_frig
from services.storage.frig_store import load_frig, parse_frig, save_frig
from services.storage.reproduction import reproduce_tables
from services.storage.tables import load_preferences, write_csv, write_surface

__all__ = [
    "DATASET_IDS",
    "PublishedSolution",
    "load_dataset",
    "load_frig",
    "load_preferences",
    "parse_frig",
    "published_solutions",
    "reproduce_tables",
    "resolve_frig",
    "save_frig",
    "write_csv",
    "write_surface",
]
